# Licensed under an MIT open source license - see LICENSE

import numpy as np
import pytest

from .. import conf
from ..exceptions import (UnsupportedAlgebraError, PreconditionError,
                          AlgebraMismatchError, NotACharacterError,
                          ArithmeticOverflowError)
from ..liealg import (cartan_data, parse_algebra, weyl_dimension,
                      irreducible_character, dominant_character,
                      tensor_character, decompose, trivial_character,
                      ClassicalCharacter, character_from_decomposition,
                      random_dominant_weights, weyl_orbit)


def test_cartan_data_rank_one():
    cd = cartan_data('A', 1)
    assert cd.cartan_matrix.tolist() == [[2]]
    assert cd.root_lengths == (1,)


def test_cartan_data_a2():
    cd = cartan_data('A', 2)
    assert cd.cartan_matrix.tolist() == [[2, -1], [-1, 2]]
    assert cd.root_lengths == (1, 1)


def test_cartan_data_g2():
    cd = cartan_data('G', 2)
    C = cd.cartan_matrix
    assert -3 in C
    assert sorted(cd.root_lengths) == [1, 3]
    sym = np.diag(cd.root_lengths) @ C
    assert np.array_equal(sym, sym.T)
    assert cd.determinant > 0


@pytest.mark.parametrize(('series', 'rank'), [('A', 0), ('B', 1), ('D', 3),
                                              ('E', 5), ('G', 3), ('X', 2)])
def test_unsupported(series, rank):
    with pytest.raises(UnsupportedAlgebraError):
        cartan_data(series, rank)


def test_parse_algebra():
    assert parse_algebra('b3') == cartan_data('B', 3)
    assert parse_algebra('G2').name == 'G2'
    with pytest.raises(UnsupportedAlgebraError):
        parse_algebra('A')


@pytest.mark.parametrize(('name', 'count'), [('A1', 1), ('A3', 6), ('B2', 4),
                                             ('C3', 9), ('D4', 12), ('G2', 6),
                                             ('F4', 24), ('E6', 36), ('E8', 120)])
def test_positive_roots(name, count):
    cd = parse_algebra(name)
    roots = cd.positive_roots
    assert len(roots) == count
    # weight and root coordinates describe the same vector
    for weight, coeffs in roots:
        combined = cd.zero()
        for j, k in enumerate(coeffs):
            combined = cd.add(combined, tuple(k * a for a in cd.simple_roots[j]))
        assert combined == weight


def test_simple_roots_are_columns():
    cd = parse_algebra('B2')
    assert cd.simple_root(1) == (2, -2)
    assert cd.simple_root(2) == (-1, 2)


def test_coroot_pairing():
    cd = parse_algebra('A2')
    highest_root = (1, 1)
    assert cd.coroot_pairing((1, 0), highest_root) == 1
    assert cd.coroot_pairing((1, 0), cd.simple_root(2)) == 0


def test_dominates():
    cd = parse_algebra('A2')
    assert cd.dominates((1, 1), (0, 0))
    assert not cd.dominates((1, 0), (0, 1))
    assert not cd.dominates((0, 1), (1, 0))


@pytest.mark.parametrize(('name', 'hw', 'dim'), [
    ('A1', (4,), 5), ('A2', (1, 0), 3), ('A2', (1, 1), 8), ('B2', (1, 0), 5),
    ('B2', (0, 1), 4), ('C2', (1, 0), 4), ('C2', (0, 1), 5), ('G2', (1, 0), 7),
    ('G2', (0, 1), 14), ('F4', (0, 0, 0, 1), 26), ('F4', (1, 0, 0, 0), 52),
    ('E6', (1, 0, 0, 0, 0, 0), 27)])
def test_weyl_dimension(name, hw, dim):
    assert weyl_dimension(parse_algebra(name), hw) == dim


def test_weyl_dimension_not_dominant():
    with pytest.raises(PreconditionError):
        weyl_dimension(parse_algebra('A2'), (1, -1))


def test_irreducible_sl2_string():
    cd = cartan_data('A', 1)
    assert irreducible_character(cd, (2,)).terms == {(2,): 1, (0,): 1, (-2,): 1}


def test_adjoint_a2_zero_weight():
    cd = cartan_data('A', 2)
    character = irreducible_character(cd, (1, 1))
    assert character[(0, 0)] == 2
    assert character.dimension == 8
    assert dominant_character(cd, (1, 1)) == {(1, 1): 1, (0, 0): 2}


def test_trivial_module():
    for name in ('A3', 'B2', 'G2'):
        cd = parse_algebra(name)
        assert irreducible_character(cd, cd.zero()).terms == {cd.zero(): 1}


@pytest.mark.parametrize('name', ['A3', 'B3', 'C3', 'D4', 'G2', 'F4'])
def test_dimension_matches_weyl_formula(name):
    cd = parse_algebra(name)
    weights = [cd.fundamental_weight(i) for i in cd.nodes]
    if name != 'F4':
        weights.append(cd.rho)
    for hw in weights:
        character = irreducible_character(cd, hw)
        assert character.dimension == weyl_dimension(cd, hw)
        assert character.is_weyl_symmetric()


def test_weyl_orbit_a2():
    cd = parse_algebra('A2')
    assert weyl_orbit(cd, (1, 0)) == {(1, 0), (-1, 1), (0, -1)}


def test_tensor_unit_and_sl2():
    cd = cartan_data('A', 1)
    v1 = irreducible_character(cd, (1,))
    assert tensor_character(trivial_character(cd), v1) == v1
    assert (v1 * v1).terms == {(2,): 1, (0,): 2, (-2,): 1}


def test_tensor_mismatch():
    with pytest.raises(AlgebraMismatchError):
        tensor_character(trivial_character(parse_algebra('A1')),
                         trivial_character(parse_algebra('A2')))


@pytest.mark.parametrize('n', range(1, 11))
def test_clebsch_gordan(n):
    cd = cartan_data('A', 1)
    for m in range(1, 11):
        product = irreducible_character(cd, (n,)) * irreducible_character(cd, (m,))
        expected = {(n + m - 2 * k,): 1 for k in range(min(n, m) + 1)}
        assert dict(decompose(product)) == expected


def test_decompose_examples():
    a2 = cartan_data('A', 2)
    assert dict(decompose(irreducible_character(a2, (2, 1)))) == {(2, 1): 1}
    product = irreducible_character(a2, (1, 0)) * irreducible_character(a2, (0, 1))
    assert dict(decompose(product)) == {(1, 1): 1, (0, 0): 1}


def test_decompose_virtual():
    cd = cartan_data('A', 1)
    virtual = trivial_character(cd) - irreducible_character(cd, (2,))
    result = decompose(virtual)
    assert result.virtual
    assert result.negative_part() == {(2,): -1}
    assert result.reconstruct() == virtual


def test_decompose_not_a_character():
    cd = cartan_data('A', 1)
    with pytest.raises(NotACharacterError):
        decompose(ClassicalCharacter(cd, {(1,): 1}))


def test_ring_axioms_random():
    rng = np.random.default_rng(7)
    for name in ('A2', 'B2', 'G2'):
        cd = parse_algebra(name)
        for _ in range(5):
            a, b, c = [irreducible_character(cd, w)
                       for w in random_dominant_weights(cd, 2, 3, rng)]
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)


def test_decompose_inverts_reconstruction():
    rng = np.random.default_rng(3)
    for name in ('A2', 'C2'):
        cd = parse_algebra(name)
        for _ in range(5):
            weights = random_dominant_weights(cd, 3, 4, rng)
            coefficients = {}
            for w, k in zip(weights, rng.integers(1, 4, size=len(weights))):
                coefficients[w] = coefficients.get(w, 0) + int(k)
            character = character_from_decomposition(cd, coefficients)
            assert dict(decompose(character)) == coefficients


def test_character_arithmetic():
    cd = cartan_data('A', 1)
    v1 = irreducible_character(cd, (1,))
    assert (v1 + v1) == 2 * v1
    assert (v1 - v1).is_zero
    assert (-v1)[(1,)] == -1
    assert ClassicalCharacter.from_dict(v1.to_dict()) == v1


def test_character_json_form():
    cd = parse_algebra('B2')
    document = irreducible_character(cd, (0, 1)).to_dict()
    assert document['algebra'] == 'B2'
    weights = [term['weight'] for term in document['terms']]
    assert weights == sorted(weights)


def test_overflow_guard():
    cd = cartan_data('A', 1)
    with conf.set_temp('max_int_bits', 3):
        with pytest.raises(ArithmeticOverflowError):
            ClassicalCharacter(cd, {(0,): 8})
    assert ClassicalCharacter(cd, {(0,): 8})[(0,)] == 8
