# Licensed under an MIT open source license - see LICENSE

"""
krpy computes characters of Kirillov-Reshetikhin modules and their tensor
products, and checks the multiplicity inequalities that hold along the
reverse dominance order on partitions.
"""

# Packages may add whatever they like to this file, but
# should keep this content at the top.
# ----------------------------------------------------------------------------
from ._astropy_init import *   # noqa
# ----------------------------------------------------------------------------

from astropy import config as _config


class Conf(_config.ConfigNamespace):
    """
    Configuration parameters for `krpy`.
    """
    cache_dir = _config.ConfigItem(
        '',
        'Directory holding cached q-characters as JSON documents. Empty means '
        'in-memory caching only. The KR_CACHE_DIR environment variable takes '
        'precedence.')
    term_budget = _config.ConfigItem(
        1000000,
        'Maximum number of monomials a single Frenkel-Mukhin expansion may '
        'produce.')
    factor_search_cap = _config.ConfigItem(
        100000,
        'Maximum number of candidate products tried when searching for a '
        'KR tensor factorization.')
    factor_max_size = _config.ConfigItem(
        6,
        'Maximum number of KR factors in a factorization candidate.')
    max_int_bits = _config.ConfigItem(
        0,
        'Raise an error when a multiplicity needs this many bits. 0 disables '
        'the guard.')
    njobs = _config.ConfigItem(
        1,
        'Number of processes used for verification grids.')


conf = Conf()

from .liealg import cartan_data, parse_algebra   # noqa
from .partitions import Partition   # noqa
from .qchar import YMonomial, QCharacter, fm_qcharacter   # noqa
from .krmodules import KRTensor, kr_character   # noqa
