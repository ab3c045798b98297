import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from trcalc.algebra import (AbelianGroup, CompositionNotZero, GroupHom, NotInSubgroup, cokernel,
                            determinant, direct_sum_of_cyclics, homology, kernel, matmul,
                            smith_normal_form, subquotient)

small_ints = st.integers(min_value=-12, max_value=12)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def _nonzero_invariants(diag_rows):
    size = min(len(diag_rows), len(diag_rows[0]))
    return [abs(diag_rows[i][i]) for i in range(size) if diag_rows[i][i]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_matches_sympy(m):
    ours = smith_normal_form(m)
    theirs = sympy_snf(Matrix(m), domain=ZZ).tolist()
    assert _nonzero_invariants(ours.diagonal) == _nonzero_invariants(theirs)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_smith_transforms_are_unimodular_and_diagonalize(m):
    snf = smith_normal_form(m)
    assert matmul(matmul(snf.u, m), snf.v) == snf.diagonal
    assert abs(determinant(snf.u)) == 1 and abs(determinant(snf.v)) == 1
    assert matmul(snf.u, snf.u_inv) == [[int(i == j) for j in range(len(m))] for i in range(len(m))]
    invariants = [d for d in snf.invariants() if d]
    assert all(b % a == 0 for a, b in zip(invariants, invariants[1:]))


def test_direct_sum_normal_form():
    g = direct_sum_of_cyclics([4, 6, 0, 1])
    assert g.free_rank == 1 and g.torsion == (2, 12)
    assert g.describe() == "Z + Z/2 + Z/12"
    assert g.elementary_divisors() == [2, 3, 4]


def test_invalid_torsion_chain_rejected():
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))


def test_from_json_roundtrip():
    g = direct_sum_of_cyclics([2, 8], ["a", "b"])
    assert AbelianGroup.from_json(g.to_json()).isomorphic(g)


def test_kernel_and_cokernel_of_multiplication_by_two_on_z4():
    z4 = AbelianGroup.cyclic(4)
    times_two = GroupHom(z4, z4, [[2]])
    assert kernel(times_two).group.torsion == (2,)
    assert cokernel(times_two).group.torsion == (2,)


def test_kernel_of_map_from_free_group():
    z = AbelianGroup.free(2)
    h = GroupHom(z, AbelianGroup.cyclic(6), [[2, 3]])
    result = kernel(h)
    assert result.group.free_rank == 2 and not result.group.torsion
    for col in zip(*result.inclusion.matrix):
        assert h(list(col)) == (0,)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=3), st.data())
def test_first_isomorphism_theorem_orders(orders, data):
    domain = direct_sum_of_cyclics(orders)
    codomain = direct_sum_of_cyclics(data.draw(st.lists(st.integers(1, 9), min_size=1, max_size=3)))
    matrix = [[data.draw(small_ints) for _ in range(domain.dimension)] for _ in range(codomain.dimension)]
    h = GroupHom(domain, codomain, matrix if codomain.dimension else [])
    if not h.respects_torsion():
        return
    # |ker| * |im| = |domain| and |im| * |coker| = |codomain|
    k, c = kernel(h).group.order(), cokernel(h).group.order()
    assert domain.order() * c == codomain.order() * k


def test_homology_of_integral_periodic_complex():
    z = AbelianGroup.free(1)
    times_four = GroupHom(z, z, [[4]])
    zero = GroupHom.zero(z, z)
    assert homology(times_four, zero).group.torsion == (4,)
    assert homology(zero, times_four).group.is_trivial()


def test_homology_requires_complex():
    z = AbelianGroup.free(1)
    one = GroupHom(z, z, [[1]])
    with pytest.raises(CompositionNotZero):
        homology(one, one)


def test_subquotient_coordinates_and_membership():
    sub = subquotient([[1, 0], [0, 2]], [[4, 0], [0, 4]], 2)
    assert sub.group.torsion == (2, 4)
    assert sub.contains([3, 2])
    with pytest.raises(NotInSubgroup):
        sub.coordinates([0, 1])
