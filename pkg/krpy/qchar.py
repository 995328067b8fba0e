# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Y-monomials, A-monomials and q-characters. Spectral parameters are integer
exponents c standing for a = q^c, so that a shift by q_i = q^{r_i} adds r_i.

"""

import heapq
import itertools
from collections import Counter
from collections.abc import Mapping
from functools import lru_cache

from astropy import log

from . import conf
from .cache import get_cache
from .exceptions import (PreconditionError, AlgebraMismatchError,
                         BudgetExceededError, FMInconsistencyError, CacheError,
                         TwoFactorMismatchError)
from .liealg import ClassicalCharacter, _check_bits, parse_algebra
from .verbose_output import print_to_terminal

__all__ = ['YMonomial', 'QCharacter', 'a_monomial', 'kr_highest_monomial',
           'monomial_leq', 'a_exponents', 'fm_qcharacter', 'kr_qcharacter',
           'dominant_monomials', 'qchar_product', 'restrict_classical',
           'string_decomposition', 'kr_factorize_monomial', 'tsystem_verify',
           'TSystemReport', 'two_factor_highest_monomial',
           'two_factor_expected_list', 'two_factor_dominant_list',
           'two_factor_embedding_check', 'trivial_qcharacter']


class YMonomial(object):

    __slots__ = ('_map', '_exps', '_hash')

    def __init__(self, exponents=None):
        """
        A Laurent monomial in the variables Y_{i,c}

        Parameters
        ----------
        exponents : mapping or iterable, optional
            Either ``{(i, c): e}`` or an iterable of ``(i, c, e)`` triples.
            Repeated keys are added up and zero exponents dropped.

        """
        clean = {}
        if exponents:
            if isinstance(exponents, Mapping):
                items = ((k[0], k[1], e) for k, e in exponents.items())
            else:
                items = exponents
            for i, c, e in items:
                key = (int(i), int(c))
                clean[key] = clean.get(key, 0) + int(e)
            clean = {k: e for k, e in clean.items() if e}
        self._set(clean)

    def _set(self, clean):
        self._map = clean
        self._exps = tuple(sorted(clean.items()))
        self._hash = hash(self._exps)

    @classmethod
    def _from_map(cls, clean):
        # clean: no zero exponents, not shared with the caller
        obj = cls.__new__(cls)
        obj._set(clean)
        return obj

    @classmethod
    def from_list(cls, exps):
        """
        Builds a monomial from its wire form ``[[i, c, e], ...]``
        """
        return cls(tuple(e) for e in exps)

    def to_list(self):
        return [[i, c, e] for (i, c), e in self._exps]

    @property
    def exponents(self):
        """
        Returns ``((i, c), e)`` pairs sorted by (i, c)
        """
        return self._exps

    @property
    def is_trivial(self):
        return not self._exps

    def __getitem__(self, key):
        return self._map.get(tuple(key), 0)

    def is_dominant(self):
        return all(e > 0 for e in self._map.values())

    def is_i_dominant(self, i):
        """
        True when every Y_{i, .} exponent is nonnegative
        """
        return all(e > 0 for (j, _), e in self._exps if j == i)

    def node_part(self, i):
        """
        Returns ``{c: e}`` for the variables Y_{i,c}
        """
        return {c: e for (j, c), e in self._exps if j == i}

    def nodes(self):
        return sorted(set(i for (i, _) in self._map))

    def weight(self, cd):
        """
        Returns the classical weight sum of u_{i,c} omega_i
        """
        weight = [0] * cd.rank
        for (i, _), e in self._exps:
            weight[i - 1] += e
        return tuple(weight)

    def shift(self, s):
        """
        Returns the monomial with every spectral exponent shifted by s
        """
        if not s:
            return self
        return YMonomial._from_map({(i, c + s): e for (i, c), e in self._exps})

    def __mul__(self, other):
        if not isinstance(other, YMonomial):
            return NotImplemented
        return YMonomial._from_map(_merge(self._map, other._map))

    def inverse(self):
        return YMonomial._from_map({k: -e for k, e in self._exps})

    def __truediv__(self, other):
        if not isinstance(other, YMonomial):
            return NotImplemented
        return YMonomial._from_map(_merge(self._map, other._map, -1))

    def __pow__(self, k):
        k = int(k)
        if k == 0:
            return YMonomial()
        return YMonomial._from_map({key: k * e for key, e in self._exps})

    def __eq__(self, other):
        if not isinstance(other, YMonomial):
            return NotImplemented
        return self._exps == other._exps

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        return self._exps < other._exps

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (YMonomial, (self._map,))

    def __str__(self):
        if not self._exps:
            return '1'
        factors = []
        for (i, c), e in self._exps:
            factor = 'Y{0},{1}'.format(i, c)
            if e != 1:
                factor += '^{0}'.format(e)
            factors.append(factor)
        return ' '.join(factors)

    def __repr__(self):
        return "YMonomial({0})".format(self.to_list())


def _merge(a, b, sign=1):
    out = dict(a)
    for key, e in b.items():
        value = out.get(key, 0) + sign * e
        if value:
            out[key] = value
        else:
            del out[key]
    return out


class QCharacter(object):

    def __init__(self, algebra, terms, highest=None):
        """
        A finite multiset of Y-monomials with a distinguished highest monomial

        Parameters
        ----------
        algebra : CartanData
        terms : dict
            YMonomial -> positive multiplicity
        highest : YMonomial, optional
            Must occur with multiplicity 1. Defaults to the monomial of
            largest classical height.

        """
        self._algebra = algebra
        clean = {}
        for mono, mult in terms.items():
            mult = int(mult)
            if mult < 0:
                raise PreconditionError(
                    "negative multiplicity {0} at {1}".format(mult, mono))
            if mult:
                clean[mono] = _check_bits(mult)
        self._terms = clean
        if highest is None:
            if not clean:
                raise PreconditionError("empty q-character needs a highest monomial")
            highest = max(clean, key=lambda mono: (
                algebra.height(mono.weight(algebra)), mono))
        if clean.get(highest) != 1:
            raise PreconditionError(
                "highest monomial {0} must occur with multiplicity 1".format(highest))
        self._highest = highest

    @classmethod
    def from_dict(cls, document, highest=None):
        """
        Builds a q-character from its JSON form (``monomials`` list of
        ``{"exps": ..., "mult": ...}``)
        """
        cd = parse_algebra(document['algebra'])
        terms = Counter()
        for entry in document['monomials']:
            terms[YMonomial.from_list(entry['exps'])] += int(entry['mult'])
        if highest is None and 'highest' in document:
            highest = YMonomial.from_list(document['highest'])
        return cls(cd, terms, highest)

    def to_dict(self):
        return {'algebra': self._algebra.name,
                'highest': self._highest.to_list(),
                'monomials': [{'exps': mono.to_list(), 'mult': self._terms[mono]}
                              for mono in sorted(self._terms)]}

    @property
    def algebra(self):
        return self._algebra

    @property
    def terms(self):
        """
        Returns the monomial -> multiplicity mapping (do not modify)
        """
        return self._terms

    @property
    def highest(self):
        return self._highest

    @property
    def dimension(self):
        return sum(self._terms.values())

    def shift(self, s):
        """
        Returns the q-character with every spectral exponent shifted by s
        """
        if not s:
            return self
        return QCharacter(self._algebra,
                          {mono.shift(s): k for mono, k in self._terms.items()},
                          self._highest.shift(s))

    def dominant_monomials(self):
        return dominant_monomials(self)

    def restrict(self):
        return restrict_classical(self)

    def __getitem__(self, mono):
        return self._terms.get(mono, 0)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, QCharacter):
            return NotImplemented
        return (self._algebra == other._algebra and
                self._highest == other._highest and
                self._terms == other._terms)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __mul__(self, other):
        if not isinstance(other, QCharacter):
            return NotImplemented
        return qchar_product(self, other)

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy QCharacter; {0}; highest={1}; terms={2} >>".format(
            self._algebra.name, self._highest, len(self._terms))


def trivial_qcharacter(cd):
    return QCharacter(cd, {YMonomial(): 1}, YMonomial())


@lru_cache(maxsize=None)
def _a_map(cd, i, c):
    r = cd.root_lengths[i - 1]
    exps = {(i, c - r): 1, (i, c + r): 1}
    C = cd.cartan_matrix
    for j in cd.nodes:
        if j == i:
            continue
        cji = int(C[j - 1, i - 1])
        if cji == -1:
            spectral = (c,)
        elif cji == -2:
            spectral = (c - 1, c + 1)
        elif cji == -3:
            spectral = (c - 2, c, c + 2)
        else:
            continue
        for x in spectral:
            exps[(j, x)] = -1
    return exps


@lru_cache(maxsize=None)
def _a_inverse_map(cd, i, c):
    return {k: -e for k, e in _a_map(cd, i, c).items()}


def a_monomial(cd, i, c):
    """
    Returns A_{i,c}: Y_{i,c-r_i} Y_{i,c+r_i} times the inverse neighbour
    factors. A neighbour j with C_{j,i} = -1, -2, -3 contributes
    Y_{j,c}^{-1}, Y_{j,c-1}^{-1} Y_{j,c+1}^{-1} and
    Y_{j,c-2}^{-1} Y_{j,c}^{-1} Y_{j,c+2}^{-1} respectively.
    """
    cd.check_node(i)
    return YMonomial._from_map(dict(_a_map(cd, i, int(c))))


def kr_highest_monomial(cd, i, m, c=0):
    """
    Returns Y_{i,c} Y_{i,c+2r_i} ... Y_{i,c+2r_i(m-1)}

    Parameters
    ----------
    cd : CartanData
    i : int
        Dynkin node
    m : int
        Level, m >= 0. Level 0 gives the trivial monomial.
    c : int
        Spectral exponent of the first factor

    """
    cd.check_node(i)
    if m < 0:
        raise PreconditionError("level must be nonnegative, got {0}".format(m))
    step = 2 * cd.root_lengths[i - 1]
    return YMonomial._from_map({(i, c + step * t): 1 for t in range(m)})


def a_exponents(cd, lower, upper):
    """
    Solves upper = lower * prod A_{i,x}^{v_{i,x}} for nonnegative v

    The quotient is cleared from its smallest spectral exponent upward: the
    smallest variable of A_{i,x} is Y_{i,x-r_i}, so each exponent found at the
    current minimum fixes one v. Any A whose largest variable would exceed the
    largest exponent of the quotient cannot be cancelled.

    Returns
    -------
    dict or None
        ``{(i, x): v}`` with v > 0, or None when no nonnegative solution exists

    """
    quotient = _merge(upper._map, lower._map, -1)
    if not quotient:
        return {}
    cmax = max(c for (_, c) in quotient)
    solution = {}
    while quotient:
        cmin = min(c for (_, c) in quotient)
        for (i, c), e in sorted(quotient.items()):
            if c != cmin:
                continue
            if e < 0:
                return None
            r = cd.root_lengths[i - 1]
            x = c + r
            if x + r > cmax:
                return None
            solution[(i, x)] = solution.get((i, x), 0) + e
            for key, a in _a_map(cd, i, x).items():
                value = quotient.get(key, 0) - e * a
                if value:
                    quotient[key] = value
                else:
                    quotient.pop(key, None)
    return solution


def monomial_leq(cd, m1, m2):
    """
    True when m2 / m1 is a product of A_{i,c} with nonnegative exponents
    """
    return a_exponents(cd, m1, m2) is not None


def _strings(points, step):
    """
    Splits a multiset of spectral exponents ``{c: multiplicity}`` into strings
    c, c+step, ... in general position, greedily from the smallest exponent.
    Returns ``(start, length)`` pairs.
    """
    remaining = {c: k for c, k in points.items() if k > 0}
    strings = []
    while remaining:
        start = min(remaining)
        x = start
        length = 0
        while remaining.get(x, 0) > 0:
            remaining[x] -= 1
            if not remaining[x]:
                del remaining[x]
            length += 1
            x += step
        strings.append((start, length))
    return strings


def _sl2_expansion(cd, mono, i):
    """
    Returns the lowering terms of the simple U_{q_i}(sl2) q-character through
    an i-dominant monomial, as ``{(x_1, ..., x_t): coefficient}`` meaning
    mono * prod A_{i,x_s}^{-1}. The leading term is left out.
    """
    r = cd.root_lengths[i - 1]
    options = []
    for start, length in _strings(mono.node_part(i), 2 * r):
        top = start + 2 * r * (length - 1) + r
        options.append([tuple(top - 2 * r * t for t in range(j))
                        for j in range(length + 1)])
    expansion = Counter()
    for choice in itertools.product(*options):
        params = tuple(sorted(itertools.chain.from_iterable(choice)))
        if params:
            expansion[params] += 1
    return expansion


def _lowered(cd, mono, i, params):
    out = dict(mono._map)
    for x in params:
        for key, e in _a_inverse_map(cd, i, x).items():
            value = out.get(key, 0) + e
            if value:
                out[key] = value
            else:
                del out[key]
    return YMonomial._from_map(out)


def _fm_expand(cd, highest, budget):
    """
    Frenkel-Mukhin completion from a dominant highest monomial

    Monomials are processed by increasing depth (number of A^{-1} factors
    below the highest monomial), so that every contribution to a monomial's
    colouring is known before it is finalized. The colouring s_i(m) counts
    the multiplicity already explained by i-strings; s(m) = max_i s_i(m).
    """
    print_to_terminal(stage='fm', step='expand', var=highest, length=budget,
                      verbose=log.getEffectiveLevel() <= 10)
    nodes = cd.nodes
    colours = {highest: [0] * len(nodes)}
    heap = [(0, highest)]
    mults = {}
    while heap:
        depth, mono = heapq.heappop(heap)
        if mono in mults:
            continue
        colour = colours.pop(mono)
        s = 1 if mono == highest else max(colour)
        mults[mono] = s
        for i in nodes:
            si = colour[i - 1]
            if si >= s:
                continue
            if not mono.is_i_dominant(i):
                raise FMInconsistencyError(mono, i)
            extra = s - si
            for params, coeff in _sl2_expansion(cd, mono, i).items():
                lower = _lowered(cd, mono, i, params)
                if lower in mults:
                    raise FMInconsistencyError(lower, i)
                if lower not in colours:
                    colours[lower] = [0] * len(nodes)
                    heapq.heappush(heap, (depth + len(params), lower))
                    if len(colours) + len(mults) > budget:
                        raise BudgetExceededError(budget, len(colours) + len(mults))
                colours[lower][i - 1] += extra * coeff
    log.debug("FM expansion of {0} on {1}: {2} monomials".format(
        highest, cd.name, len(mults)))
    return QCharacter(cd, mults, highest)


def _document(qc, node, level):
    return {'algebra': qc.algebra.name, 'node': node, 'level': level,
            'monomials': [{'exps': mono.to_list(), 'mult': qc.terms[mono]}
                          for mono in sorted(qc.terms)]}


def kr_qcharacter(cd, i, m, c=0, budget=None):
    """
    Returns the q-character of the KR module W^{(i)}_{m,q^c}

    Only c=0 is computed and cached; other spectral bases are shifts of it.

    Parameters
    ----------
    cd : CartanData
    i : int
        Dynkin node
    m : int
        Level, m >= 0
    c : int
        Spectral exponent
    budget : int, optional
        Term budget of the expansion, defaults to ``conf.term_budget``

    """
    highest = kr_highest_monomial(cd, i, m, 0)
    if m == 0:
        return trivial_qcharacter(cd)
    if budget is None:
        budget = conf.term_budget
    cache = get_cache()

    def load():
        document = cache.get(cd.name, i, m)
        if document is None:
            qc = _fm_expand(cd, highest, budget)
            cache.put(_document(qc, i, m))
            return qc
        try:
            return QCharacter.from_dict(document, highest)
        except (KeyError, TypeError, ValueError) as e:
            raise CacheError("malformed cache document for {0}, node {1}, "
                             "level {2}: {3}".format(cd.name, i, m, e))

    qc = cache.derived(('qchar', cd.name, i, m), load)
    return qc.shift(c)


def fm_qcharacter(cd, highest, budget=None):
    """
    Runs the Frenkel-Mukhin algorithm from a dominant monomial

    KR highest monomials are served from (and stored in) the q-character
    cache. Other monomials are expanded directly; the caller asserts the
    algorithm closes for them.

    Raises
    ------
    BudgetExceededError
        If more than ``budget`` monomials are produced
    FMInconsistencyError
        If a monomial carries more multiplicity than its i-strings explain at a
        node where it is not i-dominant

    """
    if not highest.is_dominant():
        raise PreconditionError("{0} is not dominant".format(highest))
    if budget is None:
        budget = conf.term_budget
    factors = kr_factorize_monomial(cd, highest)
    if not factors:
        return trivial_qcharacter(cd)
    if len(factors) == 1:
        i, m, c = factors[0]
        return kr_qcharacter(cd, i, m, c, budget)
    return _fm_expand(cd, highest, budget)


def dominant_monomials(qc):
    """
    Returns the dominant part of a q-character as ``{monomial: mult}``
    """
    return {mono: k for mono, k in qc.terms.items() if mono.is_dominant()}


def qchar_product(a, b):
    """
    Returns the product of two q-characters (multiset convolution)
    """
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(a.algebra.name, b.algebra.name)
    terms = Counter()
    for x, p in a.terms.items():
        for y, q in b.terms.items():
            terms[YMonomial._from_map(_merge(x._map, y._map))] += p * q
    return QCharacter(a.algebra, terms, a.highest * b.highest)


def restrict_classical(qc):
    """
    Returns the classical character obtained by sending each monomial to its
    weight
    """
    cd = qc.algebra
    terms = Counter()
    for mono, k in qc.terms.items():
        terms[mono.weight(cd)] += k
    return ClassicalCharacter(cd, terms)


def _by_height(cd, monomials):
    return sorted(monomials, key=lambda mono: (
        -cd.height(mono.weight(cd)), mono))


def string_decomposition(cd, qc, i):
    """
    Peels a q-character into simple U_{q_i}(sl2) q-characters at node i

    Monomials are visited from the top; each remaining one must be
    i-dominant and its full i-string is subtracted.

    Returns
    -------
    list or None
        ``[(head, multiplicity), ...]`` when the terms split exactly into
        i-strings, None otherwise

    """
    cd.check_node(i)
    remaining = Counter(qc.terms)
    heads = []
    for mono in _by_height(cd, qc.terms):
        k = remaining.get(mono, 0)
        if k == 0:
            continue
        if k < 0 or not mono.is_i_dominant(i):
            return None
        heads.append((mono, k))
        remaining[mono] = 0
        for params, coeff in _sl2_expansion(cd, mono, i).items():
            remaining[_lowered(cd, mono, i, params)] -= k * coeff
    if any(remaining.values()):
        return None
    return heads


def kr_factorize_monomial(cd, mono):
    """
    Splits a dominant monomial into KR highest monomials

    Returns
    -------
    list
        ``(node, level, start)`` triples, one per string of step 2r_i

    """
    if not mono.is_dominant():
        raise PreconditionError("{0} is not dominant".format(mono))
    factors = []
    for i in mono.nodes():
        for start, length in _strings(mono.node_part(i),
                                      2 * cd.root_lengths[i - 1]):
            factors.append((i, length, start))
    return factors


class TSystemReport(object):

    def __init__(self, algebra, node, level, base, lhs_dominants,
                 rhs_product_highest, s_term, s_factors, balanced,
                 s_term_kr_product):
        """
        Outcome of a T-system check at (node, level, spectral base)
        """
        self._algebra = algebra
        self._node = node
        self._level = level
        self._base = base
        self._lhs_dominants = lhs_dominants
        self._rhs_product_highest = rhs_product_highest
        self._s_term = s_term
        self._s_factors = s_factors
        self._balanced = balanced
        self._s_term_kr_product = s_term_kr_product

    @property
    def lhs_dominants(self):
        """
        Returns the dominant monomials of W_{m,c} W_{m,c+2r_i}
        """
        return self._lhs_dominants

    @property
    def rhs_product_highest(self):
        """
        Returns the highest monomial of W_{m+1,c} W_{m-1,c+2r_i}
        """
        return self._rhs_product_highest

    @property
    def s_term_monomials(self):
        """
        Returns the residual lhs - W_{m+1,c} W_{m-1,c+2r_i} as a signed
        ``{monomial: mult}`` mapping
        """
        return self._s_term

    @property
    def s_term_factors(self):
        """
        Returns the KR factors ``(node, level, start)`` of the residual's
        top dominant monomial
        """
        return self._s_factors

    @property
    def s_term_unique_dominant(self):
        dominants = [k for mono, k in self._s_term.items() if mono.is_dominant()]
        return dominants == [1]

    @property
    def s_term_kr_product(self):
        """
        True when the residual equals the product of the KR q-characters of
        its factors
        """
        return self._s_term_kr_product

    @property
    def balanced(self):
        """
        True when the residual has no negative multiplicity
        """
        return self._balanced

    @property
    def holds(self):
        return self._balanced and (self._s_term_kr_product or
                                   self.s_term_unique_dominant)

    def to_dict(self):
        return {'algebra': self._algebra.name, 'node': self._node,
                'level': self._level, 'base': self._base,
                'lhs_dominants': [{'exps': mono.to_list(), 'mult': k}
                                  for mono, k in sorted(self._lhs_dominants.items())],
                'rhs_product_highest': self._rhs_product_highest.to_list(),
                's_term': [{'exps': mono.to_list(), 'mult': k}
                           for mono, k in sorted(self._s_term.items())],
                's_term_factors': [list(f) for f in self._s_factors],
                's_term_kr_product': self._s_term_kr_product,
                'holds': self.holds}

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy TSystemReport; {0}; node={1}; m={2}; holds={3} >>".format(
            self._algebra.name, self._node, self._level, self.holds)


def _product(cd, qchars):
    result = trivial_qcharacter(cd)
    for qc in qchars:
        result = qchar_product(result, qc)
    return result


def _weight_spaces(qc):
    cd = qc.algebra
    spaces = {}
    for mono, k in qc.terms.items():
        spaces.setdefault(mono.weight(cd), []).append((mono._map, k))
    return spaces


def _product_blocks(cd, products):
    """
    Expands products of pairs of q-characters one classical weight space at
    a time

    Yields ``(weight, blocks)`` where ``blocks[n]`` maps the exponent tuple of
    each monomial of weight ``weight`` in the n-th product to its
    multiplicity. Only one weight space of each product is held at once.
    """
    spaces = [(_weight_spaces(a), _weight_spaces(b)) for a, b in products]
    targets = set()
    for left, right in spaces:
        for wa in left:
            for wb in right:
                targets.add(cd.add(wa, wb))
    for weight in sorted(targets):
        blocks = []
        for left, right in spaces:
            block = Counter()
            for wa, xs in left.items():
                ys = right.get(tuple(w - a for w, a in zip(weight, wa)))
                if not ys:
                    continue
                for x, p in xs:
                    for y, q in ys:
                        block[tuple(sorted(_merge(x, y).items()))] += p * q
            blocks.append(block)
        yield weight, blocks


def tsystem_verify(cd, i, m, c=0):
    """
    Checks [W_{m,c} W_{m,c+2r_i}] = [W_{m+1,c} W_{m-1,c+2r_i}] + [S]

    The residual S is extracted as a signed multiset. It must be nonnegative,
    and it is checked to be a product of KR q-characters by factorizing its
    top dominant monomial into KR strings. Both products are expanded one
    classical weight space at a time; only the residual and the dominant
    monomials of the left side are kept.

    Parameters
    ----------
    cd : CartanData
    i : int
        Dynkin node
    m : int
        Level, m >= 1
    c : int
        Spectral base exponent

    """
    cd.check_node(i)
    if m < 1:
        raise PreconditionError("T-system needs m >= 1, got {0}".format(m))
    shift = 2 * cd.root_lengths[i - 1]
    products = [(kr_qcharacter(cd, i, m, c), kr_qcharacter(cd, i, m, c + shift)),
                (kr_qcharacter(cd, i, m + 1, c),
                 kr_qcharacter(cd, i, m - 1, c + shift))]
    rhs_highest = products[1][0].highest * products[1][1].highest
    residual = {}
    lhs_dominants = {}
    for weight, (lhs, rhs) in _product_blocks(cd, products):
        dominant_weight = all(x >= 0 for x in weight)
        for exps, k in lhs.items():
            if dominant_weight and all(e > 0 for _, e in exps):
                lhs_dominants[YMonomial._from_map(dict(exps))] = _check_bits(k)
            k -= rhs.pop(exps, 0)
            if k:
                residual[YMonomial._from_map(dict(exps))] = k
        for exps, k in rhs.items():
            if k:
                residual[YMonomial._from_map(dict(exps))] = -k
    balanced = all(k > 0 for k in residual.values())

    factors = []
    kr_product = False
    dominants = [mono for mono, k in residual.items()
                 if k > 0 and mono.is_dominant()]
    if balanced and dominants:
        top = _by_height(cd, dominants)[0]
        factors = kr_factorize_monomial(cd, top)
        expected = _product(cd, [kr_qcharacter(cd, j, level, start)
                                 for j, level, start in factors])
        kr_product = expected.terms == residual
    report = TSystemReport(cd, i, m, c, lhs_dominants, rhs_highest,
                           residual, factors, balanced, kr_product)
    if not report.holds:
        log.warning("T-system fails for {0}, node {1}, m={2}".format(
            cd.name, i, m))
    return report


def _check_two_factor(cd, i, m1, m2):
    cd.check_node(i)
    if m2 < 1 or m1 <= m2 + 1:
        raise PreconditionError(
            "two-factor lists need m1 > m2 + 1 >= 2, got m1={0}, m2={1}".format(
                m1, m2))


def _two_factor_module(cd, i, m1, m2):
    r = cd.root_lengths[i - 1]
    return qchar_product(kr_qcharacter(cd, i, m1, -2 * r * (m1 - m2 - 1)),
                         kr_qcharacter(cd, i, m2, 0))


def two_factor_highest_monomial(cd, i, m1, m2):
    """
    Returns M = Y_{i,2r m2} (Y_{i,0} ... Y_{i,2r(m2-1)})^2
    Y_{i,-2r} ... Y_{i,-2r(m1-m2-1)} with r = r_i
    """
    _check_two_factor(cd, i, m1, m2)
    step = 2 * cd.root_lengths[i - 1]
    exps = {(i, step * m2): 1}
    for t in range(m2):
        exps[(i, step * t)] = 2
    for t in range(1, m1 - m2):
        exps[(i, -step * t)] = 1
    return YMonomial(exps)


def two_factor_expected_list(cd, i, m1, m2):
    """
    Returns M, M A^{-1}_{i,r(2m2-1)}, M A^{-1}_{i,r(2m2-1)} A^{-1}_{i,r(2m2-3)},
    ..., ending with the step A^{-1}_{i,r}
    """
    r = cd.root_lengths[i - 1]
    mono = two_factor_highest_monomial(cd, i, m1, m2)
    result = [mono]
    for t in range(m2):
        mono = _lowered(cd, mono, i, (r * (2 * m2 - 1 - 2 * t),))
        result.append(mono)
    return result


def two_factor_dominant_list(cd, i, m1, m2):
    """
    Returns the dominant monomials of
    W^{(i)}_{m1,-2r_i(m1-m2-1)} (x) W^{(i)}_{m2,0}, from the highest down,
    as ``(monomial, multiplicity)`` pairs

    The list must be `two_factor_expected_list`: m2 + 1 monomials, each of
    multiplicity 1, headed by `two_factor_highest_monomial`. Needs
    m1 > m2 + 1 and m2 >= 1; for m2 = 0 the product is a single KR module.

    Raises
    ------
    TwoFactorMismatchError
        If the dominant monomials differ from the expected list

    """
    _check_two_factor(cd, i, m1, m2)
    module = _two_factor_module(cd, i, m1, m2)
    dominants = dominant_monomials(module)
    found = [(mono, dominants[mono]) for mono in _by_height(cd, dominants)]
    expected = two_factor_expected_list(cd, i, m1, m2)
    if (module.highest != expected[0] or
            found != [(mono, 1) for mono in expected]):
        raise TwoFactorMismatchError(cd.name, i, m1, m2,
                                     [str(mono) for mono in expected],
                                     [(str(mono), k) for mono, k in found])
    return found


def two_factor_embedding_check(cd, i, m1, m2):
    """
    True when the q-character of W_{m1,-2r(m1-m2-1)} (x) W_{m2,0} is contained
    as a multiset in that of W_{m1-1,-2r(m1-m2-1)} (x) W_{m2+1,0}, with the
    same highest monomial
    """
    _check_two_factor(cd, i, m1, m2)
    r = cd.root_lengths[i - 1]
    small = _two_factor_module(cd, i, m1, m2)
    big = qchar_product(kr_qcharacter(cd, i, m1 - 1, -2 * r * (m1 - m2 - 1)),
                        kr_qcharacter(cd, i, m2 + 1, 0))
    if small.highest != big.highest:
        return False
    return all(big[mono] >= k for mono, k in small.terms.items())
