# Licensed under an MIT open source license - see LICENSE

import numpy as np
import pytest

from ..exceptions import (PreconditionError, IncomparablePartitionsError,
                          SearchTruncatedError)
from ..liealg import (cartan_data, parse_algebra, irreducible_character,
                      decompose, weyl_dimension, random_dominant_weights)
from ..partitions import partitions_of, cfs_leq
from ..krmodules import (KRTensor, kr_character, kr_tensor_multiplicities,
                         verify_main_theorem, qsystem_difference,
                         kernel_character, is_kr_tensor_factorizable,
                         schur_difference, verify_dimension_inequality,
                         verify_support_containment, verify_chain_monotone,
                         qsystem_grid, tsystem_grid)


def test_kr_character_level_zero():
    cd = parse_algebra('B2')
    assert kr_character(cd, 1, 0).terms == {(0, 0): 1}


@pytest.mark.parametrize(('node', 'level'), [(1, 1), (1, 2), (2, 3)])
def test_kr_character_type_a(node, level):
    cd = cartan_data('A', 3)
    expected = irreducible_character(cd, cd.fundamental_weight(node, level))
    assert kr_character(cd, node, level) == expected


def test_kr_character_a2_level_two():
    assert kr_character(cartan_data('A', 2), 1, 2).dimension == 6


def test_kr_character_non_simple():
    cd = parse_algebra('D4')
    decomposition = decompose(kr_character(cd, 2, 1))
    assert dict(decomposition) == {(0, 1, 0, 0): 1, (0, 0, 0, 0): 1}


def test_tensor_sl2():
    cd = cartan_data('A', 1)
    assert dict(KRTensor(cd, 1, (1, 1)).multiplicities()) == {(2,): 1, (0,): 1}
    vector = kr_tensor_multiplicities(KRTensor(cd, 1, (3, 2)))
    assert dict(vector) == {(5,): 1, (3,): 1, (1,): 1}
    assert vector.mult((7,)) == 0
    assert vector.to_dict()['partition'] == '3,2'


@pytest.mark.parametrize(('name', 'node', 'parts'), [
    ('A2', 1, (2, 1)), ('B2', 1, (2, 1)), ('B2', 2, (1, 1, 1)),
    ('C2', 2, (2, 1)), ('G2', 1, (1, 1))])
def test_dimension_bookkeeping(name, node, parts):
    cd = parse_algebra(name)
    tensor = KRTensor(cd, node, parts)
    vector = tensor.multiplicities()
    assert vector.mult(tensor.highest_weight) == 1
    assert all(k > 0 for k in vector.values())
    assert sum(k * weyl_dimension(cd, tau) for tau, k in vector.items()) == \
        tensor.dimension()


@pytest.mark.parametrize('m', range(1, 7))
def test_main_theorem_sl2(m):
    report = verify_main_theorem(cartan_data('A', 1), 1, m)
    assert report.holds
    assert report.to_dict()['violations'] == []


@pytest.mark.parametrize(('name', 'node', 'm'), [
    ('A2', 1, 4), ('A2', 2, 4), ('A3', 2, 3), ('B2', 1, 3), ('B2', 2, 3),
    ('C2', 1, 3), ('G2', 1, 2)])
def test_main_theorem(name, node, m):
    assert verify_main_theorem(parse_algebra(name), node, m).holds


def test_main_theorem_modes_agree():
    cd = cartan_data('A', 2)
    covers = verify_main_theorem(cd, 1, 5, mode='covers')
    every = verify_main_theorem(cd, 1, 5, mode='all')
    assert covers.violations == every.violations == []
    assert covers.pairs_checked < every.pairs_checked
    with pytest.raises(PreconditionError):
        verify_main_theorem(cd, 1, 5, mode='some')


def test_main_theorem_in_parallel():
    report = verify_main_theorem(cartan_data('A', 1), 1, 4, njobs=2)
    assert report.holds
    assert report.pairs_checked == 4


def test_qsystem_sl2():
    cd = cartan_data('A', 1)
    for m in range(1, 6):
        difference = qsystem_difference(cd, 1, m)
        assert difference.terms == {(0,): 1}


def test_qsystem_a2():
    cd = cartan_data('A', 2)
    assert qsystem_difference(cd, 1, 1) == irreducible_character(cd, (0, 1))


def test_qsystem_grid():
    rows = qsystem_grid(parse_algebra('B2'), 2)
    assert len(rows) == 4
    assert all(row['holds'] for row in rows)


def test_tsystem_grid():
    reports = tsystem_grid(cartan_data('A', 1), 3)
    assert [r.to_dict()['level'] for r in reports] == [1, 2, 3]
    assert all(r.holds for r in reports)


def test_kernel_equal_partitions():
    cd = cartan_data('A', 2)
    assert kernel_character(cd, 1, (2, 1), (2, 1)).is_zero


def test_kernel_of_rectangle_is_qsystem():
    cd = cartan_data('A', 2)
    for m in range(1, 4):
        kernel = kernel_character(cd, 1, (m, m), (m + 1, m - 1) if m > 1 else (2,))
        assert kernel == qsystem_difference(cd, 1, m)


def test_kernel_incomparable():
    with pytest.raises(IncomparablePartitionsError):
        kernel_character(cartan_data('A', 1), 1, (6,), (5, 1))


def test_kernel_not_a_product_a3():
    cd = cartan_data('A', 3)
    kernel = kernel_character(cd, 2, (5, 1), (6,))
    decomposition = decompose(kernel)
    assert dict(decomposition) == {(1, 4, 1): 1, (0, 4, 0): 1}
    assert kernel.dimension == 840
    assert is_kr_tensor_factorizable(cd, kernel) is None


def test_kernel_not_a_product_a4():
    cd = cartan_data('A', 4)
    kernel = kernel_character(cd, 2, (5, 1), (6,))
    assert decompose(kernel).nonnegative
    assert is_kr_tensor_factorizable(cd, kernel) is None


def test_factorize_single_kr():
    cd = cartan_data('A', 2)
    assert is_kr_tensor_factorizable(cd, kr_character(cd, 1, 2)) == [(1, 2)]


def test_factorize_qsystem_term():
    cd = cartan_data('A', 2)
    assert is_kr_tensor_factorizable(cd, qsystem_difference(cd, 1, 1)) == [(2, 1)]


def test_factorize_truncated():
    cd = cartan_data('A', 2)
    with pytest.raises(SearchTruncatedError):
        is_kr_tensor_factorizable(cd, kr_character(cd, 1, 2), cap=0)


def test_factorize_large_level_stops_early():
    cd = cartan_data('A', 1)
    character = irreducible_character(cd, (60,))
    assert is_kr_tensor_factorizable(cd, character, max_size=1, cap=1) == [(1, 60)]


def test_factorize_counts_every_candidate():
    cd = cartan_data('A', 1)
    square = kr_character(cd, 1, 1) * kr_character(cd, 1, 1)
    # (1, 2) is tried first and has the wrong dimension
    with pytest.raises(SearchTruncatedError):
        is_kr_tensor_factorizable(cd, square, cap=1)
    assert is_kr_tensor_factorizable(cd, square, cap=2) == [(1, 1), (1, 1)]
    assert is_kr_tensor_factorizable(cd, square, max_size=1) is None


def test_schur_difference_example():
    cd = cartan_data('A', 2)
    result = schur_difference(cd, ((1, 0), (1, 0)), ((2, 0), (0, 0)))
    assert dict(result) == {(0, 1): 1}
    assert dict(schur_difference(cd, ((1, 1), (0, 1)), ((1, 1), (0, 1)))) == {}
    with pytest.raises(PreconditionError):
        schur_difference(cd, ((1, 0), (1, 0)), ((1, 0), (0, 1)))


def _comparable_pair(cd, rng):
    lam = random_dominant_weights(cd, 3, 2, rng)
    total = cd.add(*lam)
    candidates = []
    for a in range(total[0] + 1):
        for b in range(total[1] + 1):
            mu = [(a, b), (total[0] - a, total[1] - b)]
            if cfs_leq(cd, lam, mu):
                candidates.append(mu)
    return candidates[rng.integers(0, len(candidates))], lam


def test_schur_positivity_random_sl3():
    cd = cartan_data('A', 2)
    rng = np.random.default_rng(11)
    for _ in range(200):
        mu, lam = _comparable_pair(cd, rng)
        assert schur_difference(cd, mu, lam).nonnegative


def test_dimension_inequality():
    cd = cartan_data('A', 2)
    assert verify_dimension_inequality(cd, [(1, 1)], [(1, 0), (0, 1)])
    with pytest.raises(IncomparablePartitionsError):
        verify_dimension_inequality(cd, [(1, 0), (0, 1)], [(1, 1)])


def test_support_containment():
    cd = cartan_data('A', 2)
    assert verify_support_containment(cd, ((1, 0), (0, 1)), ((1, 1), (0, 0)))
    assert not verify_support_containment(cd, ((1, 1), (0, 0)),
                                          ((1, 0), (0, 1)))


def test_chain_monotone():
    cd = cartan_data('A', 2)
    for m in range(2, 6):
        elements = partitions_of(m)
        assert verify_chain_monotone(cd, 1, elements[0], elements[-1])
