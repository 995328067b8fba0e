# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Partitions of m under the reverse dominance order, its cover relation, and
the order on partitions of a dominant weight.

"""

import itertools

import networkx as nx
from astropy import log

from .exceptions import PreconditionError, IncomparablePartitionsError

__all__ = ['Partition', 'WeightedPartition', 'parse_partition',
           'partitions_of', 'reverse_dominance_leq', 'covers', 'is_cover',
           'cover_chain', 'extremal', 'cfs_leq', 'poset_graph', 'poset_dot',
           'format_partition', 'unit_moves', 'iter_partitions',
           'poset_json']


class Partition(object):

    def __init__(self, parts):
        """
        A weakly decreasing sequence of positive integers
        """
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise PreconditionError("a partition needs at least one part")
        if any(p <= 0 for p in parts):
            raise PreconditionError(
                "parts must be positive: {0}".format(parts))
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PreconditionError(
                "parts must be weakly decreasing: {0}".format(parts))
        self._parts = parts

    @property
    def parts(self):
        return self._parts

    @property
    def m(self):
        """
        Returns the sum of the parts
        """
        return sum(self._parts)

    @property
    def k(self):
        """
        Returns the number of parts
        """
        return len(self._parts)

    def padded(self, length):
        """
        Returns the parts padded with zeros to the given length
        """
        return self._parts + (0,) * (length - len(self._parts))

    def prefix_sums(self, length=None):
        return tuple(itertools.accumulate(self.padded(length or self.k)))

    def __iter__(self):
        return iter(self._parts)

    def __len__(self):
        return len(self._parts)

    def __getitem__(self, idx):
        return self._parts[idx]

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._parts == other._parts

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        return self._parts < other._parts

    def __hash__(self):
        return hash(self._parts)

    def __str__(self):
        return ','.join(str(p) for p in self._parts)

    def __repr__(self):
        return "Partition({0})".format(list(self._parts))


class WeightedPartition(object):

    def __init__(self, algebra, parts):
        """
        A sequence of dominant weights (zero weights allowed) summing to a
        fixed dominant weight
        """
        self._algebra = algebra
        self._parts = tuple(tuple(int(c) for c in p) for p in parts)
        for p in self._parts:
            if len(p) != algebra.rank or not algebra.is_dominant(p):
                raise PreconditionError(
                    "{0} is not a dominant weight of {1}".format(p, algebra.name))

    @property
    def algebra(self):
        return self._algebra

    @property
    def parts(self):
        return self._parts

    @property
    def total(self):
        """
        Returns the dominant weight partitioned by the parts
        """
        total = self._algebra.zero()
        for p in self._parts:
            total = self._algebra.add(total, p)
        return total

    def padded(self, length):
        return self._parts + (self._algebra.zero(),) * (length - len(self._parts))

    def __len__(self):
        return len(self._parts)

    def __eq__(self, other):
        if not isinstance(other, WeightedPartition):
            return NotImplemented
        return self._algebra == other._algebra and self._parts == other._parts

    def __hash__(self):
        return hash((self._algebra, self._parts))

    def __repr__(self):
        return "WeightedPartition({0}, {1})".format(self._algebra.name,
                                                    list(self._parts))


def parse_partition(text):
    """
    Parses the comma-separated form ``5,1``
    """
    try:
        parts = [int(p) for p in str(text).split(',') if p.strip()]
    except ValueError:
        raise PreconditionError("cannot parse partition {0!r}".format(text))
    return Partition(parts)


def format_partition(lam):
    return str(_coerce(lam))


def _partitions(m, largest, k):
    if m == 0:
        if k is None or k == 0:
            yield ()
        return
    if k == 0 or (k is not None and largest * k < m):
        return
    for first in range(min(m, largest), 0, -1):
        rest = None if k is None else k - 1
        for tail in _partitions(m - first, first, rest):
            yield (first,) + tail


def iter_partitions(m, k=None):
    """
    Lazily yields the partitions of `partitions_of`, in the same order
    """
    if m < 1:
        raise PreconditionError("m must be positive, got {0}".format(m))
    if k is not None and k < 1:
        raise PreconditionError("k must be positive, got {0}".format(k))
    for p in _partitions(m, m, k):
        yield Partition(p)


def partitions_of(m, k=None):
    """
    Returns all partitions of m (of length k when given) in reverse
    lexicographic order

    Parameters
    ----------
    m : int
        The integer to partition, m >= 1
    k : int, optional
        Restrict to partitions with exactly k parts

    """
    return list(iter_partitions(m, k))


def _coerce(p):
    return p if isinstance(p, Partition) else Partition(p)


def reverse_dominance_leq(lam, mu):
    """
    Returns True when every prefix sum of lam is at least the corresponding
    prefix sum of mu (up to the shorter length)
    """
    lam, mu = _coerce(lam), _coerce(mu)
    if lam.m != mu.m:
        raise PreconditionError(
            "{0} and {1} partition different integers".format(lam, mu))
    length = min(lam.k, mu.k)
    return all(a >= b for a, b in zip(lam.prefix_sums(length),
                                      mu.prefix_sums(length)))


def unit_moves(lam):
    """
    Returns ``((i, j), nu)`` for every partition nu obtained from lam by moving
    one unit from part i to part j > i (1-based, one zero part appended), in
    lexicographic order of (i, j)
    """
    lam = _coerce(lam)
    padded = list(lam.padded(lam.k + 1))
    moves = []
    for i in range(len(padded)):
        if padded[i] == 0:
            continue
        for j in range(i + 1, len(padded)):
            nu = list(padded)
            nu[i] -= 1
            nu[j] += 1
            if any(a < b for a, b in zip(nu, nu[1:])):
                continue
            moves.append(((i + 1, j + 1), Partition([p for p in nu if p])))
    return moves


def _cover_moves(lam):
    moves = unit_moves(lam)
    result = []
    for ij, nu in moves:
        between = any(xi != nu and reverse_dominance_leq(xi, nu)
                      for _, xi in moves)
        if not between:
            result.append((ij, nu))
    return result


def covers(lam):
    """
    Returns every partition covering lam in the reverse dominance order
    """
    return [nu for _, nu in _cover_moves(lam)]


def is_cover(lam, mu):
    return _coerce(mu) in covers(lam)


def cover_chain(lam, mu):
    """
    Returns a chain lam = nu_0, ..., nu_l = mu of covers. At each step the
    cover move with the smallest (i, j) that stays below mu is applied.
    """
    lam, mu = _coerce(lam), _coerce(mu)
    if lam.m != mu.m or not reverse_dominance_leq(lam, mu):
        raise IncomparablePartitionsError(str(lam), str(mu))
    chain = [lam]
    current = lam
    while current != mu:
        for _, nu in _cover_moves(current):
            if reverse_dominance_leq(nu, mu):
                current = nu
                break
        else:
            raise IncomparablePartitionsError(str(current), str(mu))
        chain.append(current)
    return chain


def extremal(m, k=None):
    """
    Returns the (minimum, maximum) of P(m) or of P(m, k)
    """
    if m < 1:
        raise PreconditionError("m must be positive, got {0}".format(m))
    if k is None:
        return Partition([m]), Partition([1] * m)
    if k < 1 or k > m:
        raise PreconditionError(
            "no partition of {0} has {1} parts".format(m, k))
    ell, p = divmod(m, k)
    lowest = Partition([m - k + 1] + [1] * (k - 1))
    highest = Partition([ell + 1] * p + [ell] * (k - p))
    return lowest, highest


def _smallest_sums(values):
    """
    Returns the minimum subset sums for every subset size: the l-th entry is
    the sum of the l smallest values
    """
    return tuple(itertools.accumulate(sorted(values)))


def cfs_leq(cd, lam, mu):
    """
    Order on partitions of a dominant weight: for every positive root alpha and
    every l, the minimum over l-subsets of the parts' alpha-pairings of lam is
    at most that of mu

    Parameters
    ----------
    cd : CartanData
    lam, mu : WeightedPartition or sequence of weights
        Both must partition the same dominant weight. Parts are padded with
        zero weights to a common length, and l ranges up to that length.

    """
    if not isinstance(lam, WeightedPartition):
        lam = WeightedPartition(cd, lam)
    if not isinstance(mu, WeightedPartition):
        mu = WeightedPartition(cd, mu)
    if lam.total != mu.total:
        raise PreconditionError(
            "{0} and {1} partition different weights".format(lam, mu))
    length = max(len(lam), len(mu))
    left = lam.padded(length)
    right = mu.padded(length)
    for root, _ in cd.positive_roots:
        a = _smallest_sums(cd.coroot_pairing(p, root) for p in left)
        b = _smallest_sums(cd.coroot_pairing(p, root) for p in right)
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def poset_graph(m, covers_only=True):
    """
    Returns P(m) as a networkx DiGraph. With covers_only the edges are the
    cover relations, otherwise every strict relation lam < mu.
    """
    graph = nx.DiGraph()
    elements = partitions_of(m)
    graph.add_nodes_from(elements)
    for lam in elements:
        if covers_only:
            targets = covers(lam)
        else:
            targets = [mu for mu in elements
                       if mu != lam and reverse_dominance_leq(lam, mu)]
        graph.add_edges_from((lam, mu) for mu in targets)
    log.debug("P({0}): {1} elements, {2} edges".format(
        m, graph.number_of_nodes(), graph.number_of_edges()))
    return graph


def _labelled(graph):
    labelled = nx.DiGraph()
    labelled.add_nodes_from(str(p) for p in graph.nodes)
    labelled.add_edges_from(sorted((str(a), str(b)) for a, b in graph.edges))
    return labelled


def poset_dot(m):
    """
    Returns the cover graph of P(m) in DOT format
    """
    graph = _labelled(poset_graph(m))
    graph.graph['name'] = 'P{0}'.format(m)
    return nx.nx_pydot.to_pydot(graph).to_string()


def poset_json(m):
    """
    Returns the cover graph of P(m) as networkx adjacency data
    """
    return nx.adjacency_data(_labelled(poset_graph(m)))
