# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Cache of KR q-characters. Only the spectral base c=0 is stored; other bases
are obtained by shifting. Documents live in memory and, when a cache
directory is configured, as one JSON file per (algebra, node, level).

Readers never take the lock. Writers build the full document first and then
swap it in (``os.replace`` on disk, a single dict assignment in memory).

"""

import contextlib
import json
import os
import tempfile
import threading

from astropy import log

from . import conf
from .exceptions import CacheError

__all__ = ['QCharacterCache', 'get_cache', 'cache_directory', 'clear_caches',
           'directory_override']

_caches = {}
_registry_lock = threading.Lock()


_override = None


def cache_directory():
    """
    Returns the configured cache directory, or None for in-memory caching.
    An active `directory_override` wins, then the KR_CACHE_DIR environment
    variable, then ``conf.cache_dir``.
    """
    path = _override or os.environ.get('KR_CACHE_DIR') or conf.cache_dir
    return os.path.abspath(path) if path else None


@contextlib.contextmanager
def directory_override(path):
    """
    Uses ``path`` as the cache directory inside the block (used by the
    command line ``--cache-dir`` flag)
    """
    global _override
    previous = _override
    _override = path
    try:
        yield
    finally:
        _override = previous


def get_cache(directory=None):
    """
    Returns the cache bound to a directory (the configured one by default)
    """
    if directory is None:
        directory = cache_directory()
    cache = _caches.get(directory)
    if cache is None:
        with _registry_lock:
            cache = _caches.setdefault(directory, QCharacterCache(directory))
    return cache


def clear_caches():
    """
    Drops every in-memory cache layer (files on disk are left alone)
    """
    with _registry_lock:
        _caches.clear()


class QCharacterCache(object):

    def __init__(self, directory=None):
        """
        Stores KR q-character documents keyed by (algebra, node, level)
        """
        self._directory = directory
        self._documents = {}
        self._derived = {}
        self._lock = threading.Lock()
        if directory is not None and not os.path.exists(directory):
            os.makedirs(directory)

    @property
    def directory(self):
        return self._directory

    def filename(self, algebra, node, level):
        return os.path.join(self._directory,
                            '{0}_{1}_{2}.json'.format(algebra, node, level))

    def get(self, algebra, node, level):
        """
        Returns the cached document or None
        """
        key = (algebra, node, level)
        document = self._documents.get(key)
        if document is not None or self._directory is None:
            return document
        fname = self.filename(algebra, node, level)
        if not os.path.exists(fname):
            return None
        try:
            with open(fname) as fh:
                document = json.load(fh)
        except (OSError, ValueError) as e:
            raise CacheError("cannot read cache file {0}: {1}".format(fname, e))
        if (document.get('algebra'), document.get('node'),
                document.get('level')) != key:
            raise CacheError("cache file {0} does not match its key".format(fname))
        log.debug("loaded {0}".format(fname))
        with self._lock:
            self._documents[key] = document
        return document

    def put(self, document):
        """
        Stores a complete document
        """
        key = (document['algebra'], document['node'], document['level'])
        if self._directory is not None:
            fname = self.filename(*key)
            fd, tmp = tempfile.mkstemp(dir=self._directory, suffix='.tmp')
            try:
                with os.fdopen(fd, 'w') as fh:
                    json.dump(document, fh, sort_keys=True)
                os.replace(tmp, fname)
            except OSError:
                if os.path.exists(tmp):
                    os.remove(tmp)
                raise
            log.debug("wrote {0}".format(fname))
        with self._lock:
            self._documents[key] = document

    def derived(self, key, compute):
        """
        Memoizes a value computed from cached documents (for instance a
        classical restriction), scoped to this cache
        """
        value = self._derived.get(key)
        if value is None:
            value = compute()
            with self._lock:
                self._derived[key] = value
        return value

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy QCharacterCache; directory={0}; entries={1} >>".format(
            self._directory, len(self._documents))
