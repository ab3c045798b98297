import pytest

from trcalc.cyclic import (Coefficients, CyclicGroup, closed_form_orders, corestriction,
                           homology_generator, homology_group, oracle_homology_group, table, transfer)
from trcalc.algebra import AbelianGroup

Z = Coefficients.integers()


def describe(g, c, smax):
    return [homology_group(g, c, s).describe() for s in range(smax + 1)]


def test_integral_homology_of_c4():
    assert describe(CyclicGroup(2, 3), Z, 5) == ["Z", "Z/4", "0", "Z/4", "0", "Z/4"]


def test_trivial_group():
    assert describe(CyclicGroup(2, 1), Z, 3) == ["Z", "0", "0", "0"]
    assert describe(CyclicGroup(3, 1), Coefficients.mod_power(2), 2) == ["Z/9", "0", "0"]


def test_mod_coefficients_truncate_at_group_order():
    g = CyclicGroup(2, 3)
    assert describe(g, Coefficients.mod_power(3), 3) == ["Z/8", "Z/4", "Z/4", "Z/4"]
    # even degrees are generated by a multiple of z_s once r exceeds n - 1
    assert str(homology_generator(g, Coefficients.mod_power(3), 2)) == "2z_2"
    assert str(homology_generator(g, Coefficients.mod_power(3), 1)) == "z_1"


def test_odd_prime():
    g = CyclicGroup(3, 3)
    assert describe(g, Z, 3) == ["Z", "Z/9", "0", "Z/9"]
    assert describe(g, Coefficients.mod_power(1), 2) == ["Z/3", "Z/3", "Z/3"]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("coeffs", ["Z", "Zmod:1", "Zmod:3"])
def test_transfer_after_corestriction_is_p(p, n, coeffs):
    c = Coefficients.parse(coeffs)
    g, big = CyclicGroup(p, n), CyclicGroup(p, n + 1)
    for s in range(8):
        V = corestriction(g, c, s)
        F = transfer(big, c, s)
        composite = F.compose(V)
        group = homology_group(g, c, s)
        for j in range(group.dimension):
            e = [int(i == j) for i in range(group.dimension)]
            assert composite(e) == group.reduce([p * x for x in e])


def test_transfer_and_corestriction_in_odd_degree():
    g, big = CyclicGroup(2, 2), CyclicGroup(2, 3)
    # H_1: corestriction is onto the index-two subgroup, transfer sends z_1 to z_1
    assert corestriction(g, Z, 1).matrix == [[2]]
    assert transfer(big, Z, 1).matrix == [[1]]
    # H_0: corestriction is the identity, transfer is multiplication by 2
    assert corestriction(g, Z, 0).matrix == [[1]]
    assert transfer(big, Z, 0).matrix == [[2]]


@pytest.mark.parametrize("p", [2, 3])
def test_closed_forms_and_oracle_agree(p):
    for n in range(1, 5):
        g = CyclicGroup(p, n)
        for c in [Z] + [Coefficients.mod_power(r) for r in range(1, 5)]:
            for s in range(7):
                computed = homology_group(g, c, s)
                assert list(computed.orders) == closed_form_orders(g, c, s)
                assert computed.isomorphic(oracle_homology_group(g, c, s))


def test_table_rows():
    rows = table(2, 2, Z, 2)
    assert [AbelianGroup.from_json(r["group"]).describe() for r in rows] == ["Z", "Z/2", "0"]
    assert rows[0]["F"] == [[2]] and rows[1]["V"] == [[2]]


def test_coefficient_parsing():
    assert Coefficients.parse("Z") == Z
    assert Coefficients.parse("Zmod:2").modulus(3) == 9
    with pytest.raises(ValueError):
        Coefficients.parse("Q")
