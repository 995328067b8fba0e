# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Root-system data and the exact classical character ring.

Weights are tuples of integers in the fundamental-weight basis. The Cartan
matrix is stored with ``C[i][j] = alpha_j(h_i)``, so that the simple root
``alpha_j`` has coordinates ``C[:, j]`` (column ``j``) and the A-monomials of
the q-character ring project onto simple roots. All arithmetic is done with
python integers; the bilinear form is scaled by ``det(C)`` so that it stays
integral.

"""

import itertools
from collections.abc import Mapping
from functools import lru_cache

import numpy as np
import sympy
from astropy import log

from . import conf
from .exceptions import (UnsupportedAlgebraError, PreconditionError,
                         AlgebraMismatchError, NotACharacterError,
                         ArithmeticOverflowError, KRError)

__all__ = ['CartanData', 'cartan_data', 'parse_algebra', 'as_weight',
           'weyl_dimension', 'dominant_character', 'irreducible_character',
           'tensor_character', 'decompose', 'ClassicalCharacter',
           'Decomposition', 'trivial_character', 'weyl_orbit']

# number of positive roots, used as the closure cap and as a sanity check
_NPOSITIVE = {
    'A': lambda n: n * (n + 1) // 2,
    'B': lambda n: n * n,
    'C': lambda n: n * n,
    'D': lambda n: n * (n - 1),
    'E': lambda n: {6: 36, 7: 63, 8: 120}[n],
    'F': lambda n: 24,
    'G': lambda n: 6,
}

_MINRANK = {'A': 1, 'B': 2, 'C': 2, 'D': 4}
_EXCEPTIONAL = {'E': (6, 7, 8), 'F': (4,), 'G': (2,)}


def _is_supported(series, rank):
    if series in _MINRANK:
        return rank >= _MINRANK[series]
    if series in _EXCEPTIONAL:
        return rank in _EXCEPTIONAL[series]
    return False


def _dynkin_edges(series, rank):
    """
    Returns the bonds of the Dynkin diagram (0-indexed) as
    ``{(i, j): a_ij}`` for the off-diagonal non-zero entries.
    """
    n = rank
    edges = {}

    def bond(i, j, aij=-1, aji=-1):
        edges[(i, j)] = aij
        edges[(j, i)] = aji

    if series in 'ABC':
        for k in range(n - 1):
            bond(k, k + 1)
        if series == 'B':
            # alpha_n short
            bond(n - 2, n - 1, -1, -2)
        elif series == 'C':
            # alpha_n long
            bond(n - 2, n - 1, -2, -1)
    elif series == 'D':
        for k in range(n - 2):
            bond(k, k + 1)
        bond(n - 3, n - 1)
    elif series == 'E':
        bond(0, 2)
        bond(1, 3)
        for k in range(2, n - 1):
            bond(k, k + 1)
    elif series == 'F':
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif series == 'G':
        bond(0, 1, -3, -1)
    return edges


def _root_lengths(series, rank):
    if series == 'B':
        return (2,) * (rank - 1) + (1,)
    if series == 'C':
        return (1,) * (rank - 1) + (2,)
    if series == 'F':
        return (2, 2, 1, 1)
    if series == 'G':
        return (1, 3)
    return (1,) * rank


class CartanData(object):

    def __init__(self, series, rank, cartan_matrix, root_lengths):
        """
        Stores the root-system data of a simple Lie algebra
        """
        self._series = series
        self._rank = int(rank)
        matrix = np.array(cartan_matrix, dtype=np.int64)
        matrix.setflags(write=False)
        self._cartan_matrix = matrix
        self._root_lengths = tuple(int(r) for r in root_lengths)
        check_cartan(self)

        smatrix = sympy.Matrix(matrix.tolist())
        self._determinant = int(smatrix.det())
        adjugate = smatrix.adjugate()
        n = self._rank
        self._adjugate = tuple(tuple(int(adjugate[i, j]) for j in range(n))
                               for i in range(n))
        # (omega_i, omega_j) * det(C)
        self._form = tuple(tuple(int(self._root_lengths[i] * adjugate[i, j])
                                 for j in range(n)) for i in range(n))
        # height(omega_i) * det(C)
        self._height = tuple(int(sum(adjugate[k, i] for k in range(n)))
                             for i in range(n))
        self._simple_roots = tuple(tuple(int(matrix[i, j]) for i in range(n))
                                   for j in range(n))
        self._positive_roots = None

    @property
    def series(self):
        """
        Returns the Cartan type letter
        """
        return self._series

    @property
    def rank(self):
        return self._rank

    @property
    def name(self):
        """
        Returns the short name of the algebra, e.g. 'B2'
        """
        return '{0}{1}'.format(self._series, self._rank)

    @property
    def cartan_matrix(self):
        """
        Returns the (read-only) integer Cartan matrix ``C[i, j] = alpha_j(h_i)``
        """
        return self._cartan_matrix

    @property
    def root_lengths(self):
        """
        Returns the symmetrizing integers r_i (1 for short or simply-laced
        nodes)
        """
        return self._root_lengths

    @property
    def determinant(self):
        return self._determinant

    @property
    def nodes(self):
        """
        Returns the Dynkin nodes, numbered from 1
        """
        return tuple(range(1, self._rank + 1))

    @property
    def simple_roots(self):
        return self._simple_roots

    @property
    def positive_roots(self):
        """
        Returns the positive roots as ``(weight_coords, root_coords)`` pairs,
        sorted by height
        """
        if self._positive_roots is None:
            self._positive_roots = enumerate_positive_roots(self)
        return self._positive_roots

    @property
    def rho(self):
        return (1,) * self._rank

    def zero(self):
        return (0,) * self._rank

    def check_node(self, i):
        if not 1 <= i <= self._rank:
            raise PreconditionError(
                "node {0} is not a node of {1}".format(i, self.name))

    def simple_root(self, i):
        """
        Returns alpha_i in the fundamental-weight basis (node numbered from 1)
        """
        self.check_node(i)
        return self._simple_roots[i - 1]

    def fundamental_weight(self, i, m=1):
        """
        Returns m * omega_i
        """
        self.check_node(i)
        return tuple(m if k == i - 1 else 0 for k in range(self._rank))

    def inner(self, a, b):
        """
        Returns det(C) * (a, b)
        """
        form = self._form
        return sum(a[i] * form[i][j] * b[j]
                   for i in range(self._rank) if a[i]
                   for j in range(self._rank) if b[j])

    def height(self, weight):
        """
        Returns det(C) * height of the weight (sum of its simple-root
        coordinates)
        """
        return sum(c * h for c, h in zip(weight, self._height))

    def root_coordinates(self, weight):
        """
        Returns det(C) times the coordinates of the weight in the simple-root
        basis
        """
        n = self._rank
        return tuple(sum(self._adjugate[j][k] * weight[k] for k in range(n))
                     for j in range(n))

    def dominates(self, upper, lower):
        """
        True when upper - lower is a nonnegative integer combination of simple
        roots
        """
        det = self._determinant
        diff = tuple(a - b for a, b in zip(upper, lower))
        return all(x >= 0 and x % det == 0
                   for x in self.root_coordinates(diff))

    def coroot_pairing(self, weight, root):
        """
        Returns weight(h_alpha) for the root alpha
        """
        num = 2 * self.inner(weight, root)
        den = self.inner(root, root)
        if num % den:
            raise KRError("non-integral pairing of {0} with {1}".format(
                weight, root))
        return num // den

    def is_dominant(self, weight):
        return all(c >= 0 for c in weight)

    def reflect(self, weight, i):
        """
        Simple reflection s_i (node numbered from 1)
        """
        k = weight[i - 1]
        if k == 0:
            return tuple(weight)
        root = self._simple_roots[i - 1]
        return tuple(w - k * a for w, a in zip(weight, root))

    def dominant_conjugate(self, weight):
        weight = tuple(weight)
        while True:
            for i, c in enumerate(weight):
                if c < 0:
                    weight = self.reflect(weight, i + 1)
                    break
            else:
                return weight

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def __eq__(self, other):
        return (isinstance(other, CartanData) and
                (self._series, self._rank) == (other._series, other._rank))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._series, self._rank))

    def __reduce__(self):
        return (cartan_data, (self._series, self._rank))

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy CartanData; {0} >>".format(self.name)


def check_cartan(cd):
    """
    Checks the Cartan matrix axioms and the symmetrizability by the root
    lengths
    """
    C = cd.cartan_matrix
    n = cd.rank
    if C.shape != (n, n) or len(cd.root_lengths) != n:
        raise KRError("malformed Cartan data for {0}".format(cd.name))
    if not np.all(np.diag(C) == 2):
        raise KRError("Cartan diagonal must be 2")
    off = C[~np.eye(n, dtype=bool)]
    if not np.all(np.isin(off, (0, -1, -2, -3))):
        raise KRError("Cartan off-diagonal entries must lie in {0,-1,-2,-3}")
    if not np.array_equal(C == 0, (C == 0).T):
        raise KRError("Cartan zero pattern is not symmetric")
    sym = np.diag(cd.root_lengths) @ C
    if not np.array_equal(sym, sym.T):
        raise KRError("root lengths do not symmetrize the Cartan matrix")


@lru_cache(maxsize=None)
def cartan_data(series, rank):
    """
    Returns the Cartan data of the simple Lie algebra of the given type

    Parameters
    ----------
    series : str
        One of 'A', 'B', 'C', 'D', 'E', 'F', 'G'
    rank : int
        Rank of the algebra

    """
    series = str(series).upper()
    rank = int(rank)
    if not _is_supported(series, rank):
        raise UnsupportedAlgebraError(series, rank)
    matrix = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for (i, j), a in _dynkin_edges(series, rank).items():
        matrix[i][j] = a
    return CartanData(series, rank, matrix, _root_lengths(series, rank))


def parse_algebra(name):
    """
    Returns the Cartan data named by a string such as 'A3' or 'g2'
    """
    name = str(name).strip()
    if len(name) < 2 or not name[1:].isdigit():
        raise UnsupportedAlgebraError(name[:1], name[1:])
    return cartan_data(name[0], int(name[1:]))


def as_weight(cd, coords):
    """
    Validates and returns a weight of cd as a tuple of ints
    """
    weight = tuple(int(c) for c in coords)
    if len(weight) != cd.rank:
        raise PreconditionError("weight {0} has the wrong length for {1}".format(
            weight, cd.name))
    return weight


def enumerate_positive_roots(cd):
    """
    Closes the simple roots under simple reflections, keeping the positive
    results. Capped at twice the number of positive roots of the type.
    """
    n = cd.rank
    expected = _NPOSITIVE[cd.series](n)
    roots = {}
    for j in range(n):
        roots[tuple(1 if k == j else 0 for k in range(n))] = cd.simple_roots[j]
    frontier = list(roots)
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > 2 * expected:
            raise KRError("positive root closure did not terminate")
        new = []
        for coeffs in frontier:
            weight = roots[coeffs]
            for j in range(n):
                k = weight[j]
                if k == 0:
                    continue
                image = list(coeffs)
                image[j] -= k
                if min(image) < 0:
                    continue
                image = tuple(image)
                if image not in roots:
                    roots[image] = cd.reflect(weight, j + 1)
                    new.append(image)
        frontier = new
    if len(roots) != expected:
        raise KRError("found {0} positive roots for {1}, expected {2}".format(
            len(roots), cd.name, expected))
    ordered = sorted(roots.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return tuple((weight, coeffs) for coeffs, weight in ordered)


def _check_dominant(cd, hw):
    hw = as_weight(cd, hw)
    if not cd.is_dominant(hw):
        raise PreconditionError("{0} is not a dominant weight".format(hw))
    return hw


def weyl_dimension(cd, hw):
    """
    Returns the dimension of V(hw) from the Weyl dimension formula
    """
    hw = _check_dominant(cd, hw)
    shifted = cd.add(hw, cd.rho)
    num = 1
    den = 1
    for root, _ in cd.positive_roots:
        num *= cd.inner(shifted, root)
        den *= cd.inner(cd.rho, root)
    if num % den:
        raise KRError("Weyl dimension formula is not integral for {0}".format(hw))
    return num // den


def dominant_weights_below(cd, hw):
    """
    Returns the dominant weights of V(hw), obtained by subtracting positive
    roots while staying dominant
    """
    seen = {hw}
    frontier = [hw]
    while frontier:
        new = []
        for mu in frontier:
            for root, _ in cd.positive_roots:
                nu = tuple(a - b for a, b in zip(mu, root))
                if cd.is_dominant(nu) and nu not in seen:
                    seen.add(nu)
                    new.append(nu)
        frontier = new
    return sorted(seen, key=lambda mu: (-cd.height(mu), tuple(-c for c in mu)))


@lru_cache(maxsize=4096)
def _freudenthal(cd, hw):
    order = dominant_weights_below(cd, hw)
    mults = {hw: 1}
    shifted = cd.add(hw, cd.rho)
    norm = cd.inner(shifted, shifted)
    conjugates = {}

    def mult_of(weight):
        if weight not in conjugates:
            conjugates[weight] = cd.dominant_conjugate(weight)
        return mults.get(conjugates[weight], 0)

    for mu in order[1:]:
        total = 0
        for root, _ in cd.positive_roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, root))
                m = mult_of(nu)
                if not m:
                    break
                total += m * cd.inner(nu, root)
                k += 1
        mu_shifted = cd.add(mu, cd.rho)
        den = norm - cd.inner(mu_shifted, mu_shifted)
        if (2 * total) % den:
            raise KRError("Freudenthal recursion is not integral at {0}".format(mu))
        mults[mu] = 2 * total // den
    return tuple((mu, mults[mu]) for mu in order if mults[mu])


def dominant_character(cd, hw):
    """
    Returns the multiplicities of the dominant weights of V(hw), computed by
    the Freudenthal recursion from hw downward

    Parameters
    ----------
    cd : CartanData
    hw : tuple
        Dominant highest weight in the fundamental-weight basis

    """
    hw = _check_dominant(cd, hw)
    return dict(_freudenthal(cd, hw))


def weyl_orbit(cd, weight):
    """
    Returns the orbit of a weight under the group generated by the simple
    reflections
    """
    weight = tuple(weight)
    orbit = {weight}
    frontier = [weight]
    while frontier:
        new = []
        for mu in frontier:
            for i in cd.nodes:
                nu = cd.reflect(mu, i)
                if nu not in orbit:
                    orbit.add(nu)
                    new.append(nu)
        frontier = new
    return orbit


@lru_cache(maxsize=4096)
def _irreducible_terms(cd, hw):
    terms = {}
    for mu, m in _freudenthal(cd, hw):
        for nu in weyl_orbit(cd, mu):
            terms[nu] = m
    return terms


def irreducible_character(cd, hw):
    """
    Returns the full character of the simple module V(hw)
    """
    hw = _check_dominant(cd, hw)
    return ClassicalCharacter(cd, _irreducible_terms(cd, hw))


def trivial_character(cd):
    return ClassicalCharacter(cd, {cd.zero(): 1})


def _check_bits(value):
    bits = conf.max_int_bits
    if bits and abs(value).bit_length() >= bits:
        raise ArithmeticOverflowError(value, bits)
    return value


class ClassicalCharacter(object):

    def __init__(self, algebra, terms=None):
        """
        A finite integer combination of weights (a virtual character of the
        algebra). Values are immutable after construction.
        """
        self._algebra = algebra
        clean = {}
        if terms:
            for weight, mult in terms.items():
                mult = int(mult)
                if mult:
                    weight = tuple(weight)
                    if len(weight) != algebra.rank:
                        raise PreconditionError(
                            "weight {0} has the wrong length for {1}".format(
                                weight, algebra.name))
                    clean[weight] = _check_bits(mult)
        self._terms = clean

    @classmethod
    def from_dict(cls, document):
        """
        Builds a character from its JSON form
        """
        cd = parse_algebra(document['algebra'])
        terms = {}
        for term in document['terms']:
            weight = as_weight(cd, term['weight'])
            terms[weight] = terms.get(weight, 0) + int(term['mult'])
        return cls(cd, terms)

    @property
    def algebra(self):
        return self._algebra

    @property
    def terms(self):
        """
        Returns the weight -> multiplicity mapping (do not modify)
        """
        return self._terms

    @property
    def dimension(self):
        """
        Returns the sum of the multiplicities
        """
        return sum(self._terms.values())

    @property
    def is_zero(self):
        return not self._terms

    def weights(self):
        return sorted(self._terms)

    def is_weyl_symmetric(self):
        """
        Checks invariance of the multiplicities under every simple reflection
        """
        cd = self._algebra
        for weight, mult in self._terms.items():
            for i in cd.nodes:
                if self._terms.get(cd.reflect(weight, i), 0) != mult:
                    return False
        return True

    def dominant_part(self):
        cd = self._algebra
        return {w: m for w, m in self._terms.items() if cd.is_dominant(w)}

    def to_dict(self):
        return {'algebra': self._algebra.name,
                'terms': [{'weight': list(w), 'mult': self._terms[w]}
                          for w in sorted(self._terms)]}

    def _check_algebra(self, other):
        if self._algebra != other._algebra:
            raise AlgebraMismatchError(self._algebra.name, other._algebra.name)

    def __getitem__(self, weight):
        return self._terms.get(tuple(weight), 0)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ClassicalCharacter):
            return NotImplemented
        return self._algebra == other._algebra and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __add__(self, other):
        self._check_algebra(other)
        terms = dict(self._terms)
        for w, m in other._terms.items():
            terms[w] = terms.get(w, 0) + m
        return ClassicalCharacter(self._algebra, terms)

    def __neg__(self):
        return ClassicalCharacter(self._algebra,
                                  {w: -m for w, m in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ClassicalCharacter):
            return tensor_character(self, other)
        if isinstance(other, (int, np.integer)):
            return ClassicalCharacter(self._algebra,
                                      {w: int(other) * m
                                       for w, m in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy ClassicalCharacter; {0}; dim={1}; weights={2} >>".format(
            self._algebra.name, self.dimension, len(self._terms))


def tensor_character(a, b):
    """
    Returns the character of the tensor product (pointwise convolution of the
    weight multiplicities)
    """
    a._check_algebra(b)
    terms = {}
    for mu, x in a.terms.items():
        for nu, y in b.terms.items():
            key = tuple(p + q for p, q in zip(mu, nu))
            terms[key] = terms.get(key, 0) + x * y
    return ClassicalCharacter(a.algebra, terms)


class Decomposition(Mapping):

    def __init__(self, algebra, coefficients):
        """
        Multiplicities of the simple modules V(tau) in a (virtual) character
        """
        self._algebra = algebra
        self._coefficients = {tuple(w): int(c)
                              for w, c in coefficients.items() if c}

    @property
    def algebra(self):
        return self._algebra

    @property
    def virtual(self):
        """
        True when some coefficient is negative
        """
        return any(c < 0 for c in self._coefficients.values())

    @property
    def nonnegative(self):
        return not self.virtual

    def negative_part(self):
        return {w: c for w, c in self._coefficients.items() if c < 0}

    def dimension(self):
        """
        Returns sum of coefficient * dim V(tau)
        """
        return sum(c * weyl_dimension(self._algebra, w)
                   for w, c in self._coefficients.items())

    def reconstruct(self):
        """
        Returns sum of coefficient * char V(tau)
        """
        terms = {}
        for hw, c in self._coefficients.items():
            for w, m in _irreducible_terms(self._algebra, hw).items():
                terms[w] = terms.get(w, 0) + c * m
        return ClassicalCharacter(self._algebra, terms)

    def to_dict(self):
        return {'algebra': self._algebra.name,
                'components': [{'weight': list(w), 'mult': self._coefficients[w]}
                               for w in sorted(self._coefficients)]}

    def __getitem__(self, weight):
        return self._coefficients[tuple(weight)]

    def __iter__(self):
        return iter(sorted(self._coefficients))

    def __len__(self):
        return len(self._coefficients)

    def __repr__(self):
        """
        Return a nice printable format for the object.
        """
        return "<< krpy Decomposition; {0}; {1} >>".format(
            self._algebra.name, dict(sorted(self._coefficients.items())))


def decompose(character, max_iterations=None):
    """
    Decomposes a (virtual) character into irreducible characters

    The maximal dominant weight (largest height, ties broken by the
    lexicographically largest coordinates) is stripped repeatedly.

    Parameters
    ----------
    character : ClassicalCharacter
    max_iterations : int, optional
        Bound on the number of strip steps. Defaults to a bound derived from
        the size of the character.

    """
    cd = character.algebra
    if not character.is_weyl_symmetric():
        raise NotACharacterError("support is not Weyl-symmetric")
    remaining = character.dominant_part()
    if max_iterations is None:
        max_iterations = 10 * len(character) + 100
    coefficients = {}
    steps = 0
    while remaining:
        steps += 1
        if steps > max_iterations:
            raise NotACharacterError(
                "decomposition did not terminate after {0} steps".format(
                    max_iterations))
        top = max(remaining, key=lambda w: (cd.height(w), w))
        k = remaining.pop(top)
        coefficients[top] = k
        for weight, m in _freudenthal(cd, top):
            if weight == top:
                continue
            value = remaining.get(weight, 0) - k * m
            if value:
                remaining[weight] = value
            else:
                remaining.pop(weight, None)
    result = Decomposition(cd, coefficients)
    if result.virtual:
        log.debug("virtual decomposition with negative part {0}".format(
            result.negative_part()))
    return result


def character_from_decomposition(cd, coefficients):
    """
    Returns sum of coefficient * char V(tau) for a weight -> int mapping
    """
    return Decomposition(cd, coefficients).reconstruct()


def random_dominant_weights(cd, height, count, rng):
    """
    Returns ``count`` dominant weights with coordinate sum at most ``height``,
    drawn with the numpy generator ``rng``
    """
    pool = [w for w in itertools.product(range(height + 1), repeat=cd.rank)
            if sum(w) <= height]
    idx = rng.integers(0, len(pool), size=count)
    return [pool[k] for k in idx]
