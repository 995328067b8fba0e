# Licensed under an MIT open source license - see LICENSE

import pytest

from ..cache import directory_override


@pytest.fixture(autouse=True)
def _no_cache_env(monkeypatch):
    # tests choose their cache directory explicitly
    monkeypatch.delenv('KR_CACHE_DIR', raising=False)


@pytest.fixture
def fresh_cache(tmp_path):
    """
    Runs the test against an empty on-disk q-character cache
    """
    with directory_override(str(tmp_path)):
        yield str(tmp_path)
