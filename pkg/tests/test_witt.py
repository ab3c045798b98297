import pytest
from hypothesis import given, settings, strategies as st

from trcalc.witt import (LengthMismatch, LengthUnderflow, WittVector, from_ghost, frobenius_w, ghost,
                         restrict_w, scale, teichmuller, verify_minus_one, verschiebung_w, zero)

coords = st.lists(st.integers(-20, 20), min_size=1, max_size=4)


def witt_pairs(p):
    return st.integers(1, 4).flatmap(lambda n: st.tuples(
        st.lists(st.integers(-20, 20), min_size=n, max_size=n),
        st.lists(st.integers(-20, 20), min_size=n, max_size=n))).map(
        lambda ab: (WittVector(p, ab[0]), WittVector(p, ab[1])))


def test_ghost_components_for_p_two():
    w = WittVector(2, (3, 1, 2))
    assert ghost(w) == [3, 9 + 2, 81 + 2 + 8]
    assert from_ghost(2, ghost(w)) == w


@pytest.mark.parametrize("n", range(2, 9))
def test_minus_one_identity(n):
    report = verify_minus_one(n)
    assert report.passed
    assert report.left_ghost == report.right_ghost


def test_minus_one_coordinates_for_p_two():
    # [-1] = (-1, 1, 0, 0, ...) in W(Z) for p = 2
    assert teichmuller(-1, 4).coords == (-1, 0, 0, 0)
    assert verify_minus_one(4).right.coords == (-1, 0, 0, 0)
    assert (-teichmuller(1, 3)).coords == (-1, -1, -1)


@settings(max_examples=60, deadline=None)
@given(witt_pairs(2))
def test_ring_axioms(pair):
    a, b = pair
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a
    assert a + zero(2, a.n) == a


@settings(max_examples=60, deadline=None)
@given(witt_pairs(3))
def test_frobenius_is_multiplicative_and_fv_is_p(pair):
    a, b = pair
    if a.n < 2:
        return
    assert frobenius_w(a * b) == frobenius_w(a) * frobenius_w(b)
    lowered = restrict_w(a)
    assert frobenius_w(verschiebung_w(lowered)) == scale(lowered, 3)


def test_length_errors():
    with pytest.raises(LengthUnderflow):
        WittVector(2, ())
    with pytest.raises(LengthUnderflow):
        frobenius_w(WittVector(2, (1,)))
    with pytest.raises(LengthUnderflow):
        verify_minus_one(1)
    with pytest.raises(LengthMismatch):
        WittVector(2, (1, 2)) + WittVector(2, (1,))
