# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Classical characters of KR modules and of their tensor products, and the
verification suites built on them: multiplicity inequalities along the
reverse dominance order, the Q-system, kernels of the surjections and the
Schur-difference explorer.

"""

import time

from astropy import log

from . import conf
from .cache import get_cache, cache_directory, directory_override
from .exceptions import (PreconditionError, NotACharacterError, KRError,
                         QSystemViolationError, IncomparablePartitionsError,
                         SearchTruncatedError)
from .liealg import (Decomposition, decompose,
                     irreducible_character, trivial_character, weyl_dimension,
                     cartan_data)
from .partitions import (Partition, partitions_of, iter_partitions,
                         reverse_dominance_leq, covers, cover_chain, cfs_leq,
                         WeightedPartition)
from .parallel_map import parallel_map
from .qchar import kr_qcharacter, restrict_classical, tsystem_verify
from .verbose_output import print_to_terminal

__all__ = ['KRTensor', 'MultiplicityVector', 'kr_character',
           'kr_tensor_multiplicities', 'verify_main_theorem',
           'MainTheoremReport', 'qsystem_difference', 'kernel_character',
           'is_kr_tensor_factorizable', 'schur_difference',
           'verify_dimension_inequality', 'verify_support_containment',
           'verify_chain_monotone', 'qsystem_grid', 'tsystem_grid',
           'main_theorem_grid']


def kr_character(cd, i, m):
    """
    Returns the classical character of KR(m omega_i), the restriction of the
    KR q-character at spectral base 0

    Parameters
    ----------
    cd : CartanData
    i : int
        Dynkin node
    m : int
        Level, m >= 0

    """
    cd.check_node(i)
    if m < 0:
        raise PreconditionError("level must be nonnegative, got {0}".format(m))
    if m == 0:
        return trivial_character(cd)
    return get_cache().derived(
        ('classical', cd.name, i, m),
        lambda: restrict_classical(kr_qcharacter(cd, i, m, 0)))


class KRTensor(object):

    def __init__(self, algebra, node, partition):
        """
        KR(lambda, i) = KR(m_1 omega_i) (x) ... (x) KR(m_k omega_i)
        """
        algebra.check_node(node)
        if not isinstance(partition, Partition):
            partition = Partition(partition)
        self._algebra = algebra
        self._node = node
        self._partition = partition

    @property
    def algebra(self):
        return self._algebra

    @property
    def node(self):
        return self._node

    @property
    def partition(self):
        return self._partition

    @property
    def m(self):
        return self._partition.m

    @property
    def highest_weight(self):
        """
        Returns m omega_i
        """
        return self._algebra.fundamental_weight(self._node, self.m)

    def character(self):
        result = trivial_character(self._algebra)
        for level in self._partition:
            result = result * kr_character(self._algebra, self._node, level)
        return result

    def dimension(self):
        """
        Returns the product of the KR dimensions
        """
        result = 1
        for level in self._partition:
            result *= kr_character(self._algebra, self._node, level).dimension
        return result

    def multiplicities(self):
        return kr_tensor_multiplicities(self)

    def __eq__(self, other):
        if not isinstance(other, KRTensor):
            return NotImplemented
        return ((self._algebra, self._node, self._partition) ==
                (other._algebra, other._node, other._partition))

    def __hash__(self):
        return hash((self._algebra, self._node, self._partition))

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy KRTensor; {0}; node={1}; partition={2} >>".format(
            self._algebra.name, self._node, self._partition)


class MultiplicityVector(Decomposition):

    def __init__(self, tensor, coefficients):
        """
        tau -> dim Hom(KR(lambda, i), V(tau)) for a KR tensor product
        """
        super(MultiplicityVector, self).__init__(tensor.algebra, coefficients)
        self._tensor = tensor

    @property
    def tensor(self):
        return self._tensor

    def mult(self, tau):
        """
        Returns the multiplicity of V(tau), 0 when absent
        """
        return self.get(tuple(tau), 0)

    def to_dict(self):
        document = super(MultiplicityVector, self).to_dict()
        document['node'] = self._tensor.node
        document['partition'] = str(self._tensor.partition)
        return document


def kr_tensor_multiplicities(tensor):
    """
    Decomposes KR(lambda, i) into simple modules

    Raises
    ------
    NotACharacterError
        If the decomposition has a negative coefficient
    KRError
        If V(m omega_i) does not occur exactly once

    """
    cd = tensor.algebra

    def compute():
        decomposition = decompose(tensor.character())
        if decomposition.virtual:
            raise NotACharacterError(
                "KR tensor {0} has a virtual decomposition".format(tensor))
        return dict(decomposition)

    coefficients = get_cache().derived(
        ('tensor', cd.name, tensor.node, tensor.partition.parts), compute)
    vector = MultiplicityVector(tensor, coefficients)
    if vector.mult(tensor.highest_weight) != 1:
        raise KRError("V({0}) occurs {1} times in {2}".format(
            tensor.highest_weight, vector.mult(tensor.highest_weight), tensor))
    return vector


def _multiplicity_task(args):
    series, rank, node, parts, directory, budget = args
    cd = cartan_data(series, rank)
    with directory_override(directory), conf.set_temp('term_budget', budget):
        vector = kr_tensor_multiplicities(KRTensor(cd, node, parts))
    return dict(vector)


class MainTheoremReport(object):

    def __init__(self, algebra, node, m, mode, pairs_checked, violations):
        """
        Outcome of the multiplicity inequalities on P(m)
        """
        self._algebra = algebra
        self._node = node
        self._m = m
        self._mode = mode
        self._pairs_checked = pairs_checked
        self._violations = violations

    @property
    def pairs_checked(self):
        return self._pairs_checked

    @property
    def violations(self):
        """
        Returns ``(lower, upper, tau, lower_mult, upper_mult)`` tuples with
        lower below upper and lower_mult > upper_mult
        """
        return self._violations

    @property
    def holds(self):
        return not self._violations

    def to_dict(self):
        return {'algebra': self._algebra.name, 'node': self._node,
                'm': self._m, 'mode': self._mode,
                'pairs': self._pairs_checked,
                'violations': [{'lower': str(lam), 'upper': str(mu),
                                'weight': list(tau), 'lower_mult': a,
                                'upper_mult': b}
                               for lam, mu, tau, a, b in self._violations]}

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy MainTheoremReport; {0}; node={1}; m={2}; pairs={3}; " \
               "violations={4} >>".format(self._algebra.name, self._node,
                                         self._m, self._pairs_checked,
                                         len(self._violations))


def _comparable_pairs(m, mode):
    elements = partitions_of(m)
    if mode == 'covers':
        return [(lam, mu) for lam in elements for mu in covers(lam)]
    if mode == 'all':
        return [(lam, mu) for lam in elements for mu in elements
                if lam != mu and reverse_dominance_leq(lam, mu)]
    raise PreconditionError("unknown mode {0!r}".format(mode))


def verify_main_theorem(cd, i, m, mode='covers', njobs=None, verbose=False):
    """
    Checks mult_lambda(tau) <= mult_mu(tau) for comparable lambda below mu in
    P(m) and every tau occurring in either decomposition

    Parameters
    ----------
    cd : CartanData
    i : int
        Dynkin node
    m : int
        Total level, m >= 1
    mode : {'covers', 'all'}
        Check cover pairs only, or every comparable pair
    njobs : int, optional
        Number of processes, defaults to ``conf.njobs``
    verbose : bool
        Print progress to the diagnostic stream

    Returns
    -------
    MainTheoremReport

    """
    cd.check_node(i)
    if m < 1:
        raise PreconditionError("m must be positive, got {0}".format(m))
    if njobs is None:
        njobs = conf.njobs
    t1 = time.time()
    pairs = _comparable_pairs(m, mode)
    elements = partitions_of(m)
    print_to_terminal(stage='positivity', step='start', var='{0}, node {1}, '
                      'm={2}'.format(cd.name, i, m), verbose=verbose)

    tasks = [(cd.series, cd.rank, i, lam.parts, cache_directory(),
              conf.term_budget) for lam in elements]
    vectors = dict(zip(elements, parallel_map(_multiplicity_task, tasks,
                                              numcores=njobs)))

    violations = []
    progress_bar = print_to_terminal(stage='positivity', step='pairs',
                                     length=len(pairs), var=m, verbose=verbose)
    for lam, mu in pairs:
        lower, upper = vectors[lam], vectors[mu]
        for tau in sorted(set(lower) | set(upper)):
            a, b = lower.get(tau, 0), upper.get(tau, 0)
            if a > b:
                violations.append((lam, mu, tau, a, b))
        progress_bar.update()
    violations.sort(key=lambda v: (v[0].parts, v[1].parts, v[2]))
    if violations:
        log.warning("{0} violations for {1}, node {2}, m={3}".format(
            len(violations), cd.name, i, m))
    print_to_terminal(stage='positivity', step='end', t1=t1, t2=time.time(),
                      var=len(violations), verbose=verbose)
    return MainTheoremReport(cd, i, m, mode, len(pairs), violations)


def qsystem_difference(cd, i, m):
    """
    Returns char KR(m w_i)^2 - char KR((m+1) w_i) char KR((m-1) w_i)

    Raises
    ------
    QSystemViolationError
        If the difference has a negative irreducible multiplicity

    """
    cd.check_node(i)
    if m < 1:
        raise PreconditionError("Q-system needs m >= 1, got {0}".format(m))
    current = kr_character(cd, i, m)
    difference = (current * current -
                  kr_character(cd, i, m + 1) * kr_character(cd, i, m - 1))
    decomposition = decompose(difference)
    if decomposition.virtual:
        raise QSystemViolationError(cd.name, i, m, decomposition.negative_part())
    return difference


def kernel_character(cd, i, mu, lam):
    """
    Returns char KR(mu, i) - char KR(lambda, i) for lambda below mu

    A negative irreducible multiplicity in the result is a violation of the
    multiplicity inequalities and is logged.
    """
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if lam.m != mu.m or not reverse_dominance_leq(lam, mu):
        raise IncomparablePartitionsError(str(lam), str(mu))
    kernel = (KRTensor(cd, i, mu).character() -
              KRTensor(cd, i, lam).character())
    decomposition = decompose(kernel)
    if decomposition.virtual:
        log.warning("kernel of {0} -> {1} is virtual: {2}".format(
            mu, lam, decomposition.negative_part()))
    return kernel


def _top_weight(cd, character):
    dominant = character.dominant_part()
    if not dominant:
        raise PreconditionError("character has no dominant weight")
    top = max(dominant, key=lambda w: (cd.height(w), w))
    for weight in dominant:
        if not cd.dominates(top, weight):
            raise PreconditionError(
                "character has no unique maximal weight ({0} vs {1})".format(
                    top, weight))
    return top


def _candidate_factors(cd, top, max_size):
    """
    Lazily yields multisets of (node, level) whose highest weights sum to top,
    with at most max_size factors. The levels at node j form a partition of
    top_j; fewer factors come first.
    """
    needed = [(j, total) for j, total in zip(cd.nodes, top) if total]

    def extend(index, room):
        if index == len(needed):
            yield ()
            return
        j, total = needed[index]
        # every later node takes at least one factor
        later = len(needed) - index - 1
        for k in range(1, min(total, room - later) + 1):
            for p in iter_partitions(total, k):
                head = tuple((j, level) for level in p)
                for tail in extend(index + 1, room - k):
                    yield head + tail

    if len(needed) > max_size:
        return
    for factors in extend(0, max_size):
        yield factors


def is_kr_tensor_factorizable(cd, character, max_size=None, cap=None):
    """
    Searches for KR modules whose tensor product has exactly the given
    character

    Parameters
    ----------
    cd : CartanData
    character : ClassicalCharacter
        Must decompose with nonnegative multiplicities and have a unique
        maximal dominant weight
    max_size : int, optional
        Largest number of factors, defaults to ``conf.factor_max_size``
    cap : int, optional
        Largest number of candidate products, defaults to
        ``conf.factor_search_cap``

    Returns
    -------
    list or None
        ``[(node, level), ...]`` for the first factorization in enumeration
        order, None when no candidate matches

    Raises
    ------
    SearchTruncatedError
        If the candidate cap is reached before the search completes

    """
    if max_size is None:
        max_size = conf.factor_max_size
    if cap is None:
        cap = conf.factor_search_cap
    if decompose(character).virtual:
        raise PreconditionError("character has negative multiplicities")
    top = _top_weight(cd, character)
    target = character.dimension
    tried = 0
    for factors in _candidate_factors(cd, top, max_size):
        tried += 1
        if tried > cap:
            print_to_terminal(stage='factorize', step='truncated', var=cap,
                              verbose=log.getEffectiveLevel() <= 10)
            raise SearchTruncatedError(cap)
        dimension = 1
        for j, level in factors:
            dimension *= kr_character(cd, j, level).dimension
        if dimension != target:
            continue
        product = trivial_character(cd)
        for j, level in factors:
            product = product * kr_character(cd, j, level)
        if product == character:
            log.debug("factorization found after {0} candidates".format(tried))
            return list(factors)
    log.debug("no factorization among {0} candidates".format(tried))
    return None


def _check_pair(cd, pair):
    pair = tuple(tuple(int(c) for c in w) for w in pair)
    if len(pair) != 2:
        raise PreconditionError("expected a pair of weights, got {0}".format(pair))
    return pair


def _pair_product(cd, pair):
    return (irreducible_character(cd, pair[0]) *
            irreducible_character(cd, pair[1]))


def schur_difference(cd, mupair, lampair):
    """
    Decomposes char V(mu_1) char V(mu_2) - char V(lambda_1) char V(lambda_2)

    Returns
    -------
    Decomposition
        Signed coefficients; the caller inspects nonnegativity

    """
    mupair = _check_pair(cd, mupair)
    lampair = _check_pair(cd, lampair)
    if cd.add(*mupair) != cd.add(*lampair):
        raise PreconditionError("{0} and {1} have different sums".format(
            mupair, lampair))
    return decompose(_pair_product(cd, mupair) - _pair_product(cd, lampair))


def verify_dimension_inequality(cd, lamp, mup):
    """
    For lamp below mup in the order on partitions of a dominant weight,
    checks dim V(lambda_1) ... V(lambda_k) <= dim V(mu_1) ... V(mu_k)
    """
    if not isinstance(lamp, WeightedPartition):
        lamp = WeightedPartition(cd, lamp)
    if not isinstance(mup, WeightedPartition):
        mup = WeightedPartition(cd, mup)
    if not cfs_leq(cd, lamp, mup):
        raise IncomparablePartitionsError(lamp, mup)

    def dimension(p):
        result = 1
        for part in p.parts:
            result *= weyl_dimension(cd, part)
        return result

    return dimension(lamp) <= dimension(mup)


def verify_support_containment(cd, mupair, lampair):
    """
    True when every V(tau) occurring in V(lambda_1) (x) V(lambda_2) also
    occurs in V(mu_1) (x) V(mu_2)
    """
    mupair = _check_pair(cd, mupair)
    lampair = _check_pair(cd, lampair)
    upper = decompose(_pair_product(cd, mupair))
    lower = decompose(_pair_product(cd, lampair))
    return all(tau in upper for tau in lower)


def verify_chain_monotone(cd, i, lam, mu):
    """
    True when the multiplicity vectors increase pointwise along the greedy
    cover chain from lambda to mu
    """
    chain = cover_chain(lam, mu)
    vectors = [kr_tensor_multiplicities(KRTensor(cd, i, nu)) for nu in chain]
    for lower, upper in zip(vectors, vectors[1:]):
        if any(upper.mult(tau) < k for tau, k in lower.items()):
            return False
    return True


def qsystem_grid(cd, max_level, nodes=None):
    """
    Runs `qsystem_difference` on every node and level up to max_level

    Returns
    -------
    list
        Rows ``{'node', 'level', 'holds', 'components'}``

    """
    rows = []
    for i in nodes or cd.nodes:
        for m in range(1, max_level + 1):
            try:
                components = dict(decompose(qsystem_difference(cd, i, m)))
                holds = True
            except QSystemViolationError as e:
                components = e.coefficients
                holds = False
            rows.append({'node': i, 'level': m, 'holds': holds,
                         'components': components})
    return rows


def tsystem_grid(cd, max_level, nodes=None, base=0):
    """
    Runs `tsystem_verify` on every node and level up to max_level
    """
    return [tsystem_verify(cd, i, m, base)
            for i in nodes or cd.nodes for m in range(1, max_level + 1)]


def main_theorem_grid(cd, max_m, nodes=None, mode='covers', njobs=None,
                      verbose=False):
    """
    Runs `verify_main_theorem` on every node and every m up to max_m
    """
    return [verify_main_theorem(cd, i, m, mode=mode, njobs=njobs,
                                verbose=verbose)
            for i in nodes or cd.nodes for m in range(1, max_m + 1)]
