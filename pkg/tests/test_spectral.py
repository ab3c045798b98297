import dataclasses

import pytest

from trcalc.algebra import cokernel, kernel
from trcalc.checks import ACCEPTANCE_TABLES, d2_routes_agree
from trcalc.cyclic import Coefficients, CyclicGroup, corestriction
from trcalc.errors import OutOfImplementedRange, UnknownFixture
from trcalc.spectral import compare
from trcalc.spectral.compare import (compare_all, compare_fixture, entry_group, fixture_for,
                                     fixture_ids, load_fixture, parse_entry, parse_label)
from trcalc.spectral.pages import (check_dd_zero, compute_page, corestriction_map, e2_cell, e2_page,
                                   run_d2, run_d3, run_d4, run_d5)
from trcalc.spectral.stems import SPHERE_RING, StemTable, ring


def test_stems():
    stems = StemTable()
    assert [stems[t].group.describe() for t in range(8)] == \
        ["Z", "Z/2", "Z/2", "Z/8", "0", "0", "Z/2", "Z/16"]
    assert stems[2].eta_multiple == {"nu": 4}
    with pytest.raises(OutOfImplementedRange):
        stems[8]


def test_entry_parsing():
    assert parse_entry("0", 3) == []
    assert parse_entry("Z_2", 3) == [0]
    assert parse_entry("Z/8Z", 3) == [8]
    assert parse_entry("4Z/8Z", 3) == [2]
    assert parse_entry("(Z/2Z)^2", 3) == [2, 2]
    assert parse_entry("Z/2^{n-1}Z", 5) == [16]
    assert entry_group("2^{n-2}Z/2^{n-1}Z", 4).torsion == (2,)


def test_label_parsing():
    assert parse_label("4nu z_2", "sphere", 3) == (2, [4])
    assert parse_label("eta eta~ z_3 + lambdabar z_3", "relative", 2) == (3, [1, 1])
    with pytest.raises(ValueError):
        parse_label("sigma z_0", "sphere", 3)


def test_e2_cells_of_the_sphere_at_level_two():
    page = e2_page("sphere", 2)
    assert page.cells[(0, 0)].free_rank == 1
    assert page.cells[(2, 3)].describe() == "Z/2"
    assert page.cells[(2, 0)].is_trivial()
    assert e2_cell("sphere", 2, 2, 3).group.torsion == (2,)


@pytest.mark.parametrize("fixture_id", fixture_ids())
def test_every_shipped_table_matches(fixture_id):
    fx = load_fixture(fixture_id)
    for r in fx.pages:
        page = compute_page(fx.theory, fx.n, r, fx.t_max)
        report = compare_fixture(page, fixture_id)
        assert report.ok, report.summary()


def test_driver_chain_reproduces_tables():
    for fixture_id, r in ACCEPTANCE_TABLES:
        fx = load_fixture(fixture_id)
        target = 6 if r == "inf" else r
        page = e2_page(fx.theory, fx.n, fx.t_max)
        for step in (run_d2, run_d3, run_d4, run_d5):
            if page.r >= target:
                break
            page = step(page)
        if page.r < target:
            page = compute_page(fx.theory, fx.n, target, fx.t_max)
        assert compare_fixture(page, fixture_id).ok, fixture_id


def test_compare_all():
    reports = compare_all()
    assert len(reports) >= 23 and all(r.ok for r in reports)


@pytest.mark.parametrize("theory", ["sphere", "integers", "relative"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_differentials_square_to_zero(theory, n):
    page = e2_page(theory, n)
    while True:
        assert check_dd_zero(page)
        if page.is_terminal():
            break
        page = run_d2(page) if page.r == 2 else compute_page(theory, n, page.r + 1)


def test_sphere_edge_column_is_the_stems():
    for n in (2, 3, 4, 5):
        page = e2_page("sphere", n)
        for t in range(8):
            assert page.cells[(0, t)].isomorphic(SPHERE_RING.group(t))


def test_sphere_d2_follows_eta():
    page = e2_page("sphere", 3)
    # s = 4: d^2 is induced by d + eta, carrying eta z_4 to eta^2 z_2
    assert not page.differentials[(4, 1)].is_zero()
    # s = 2: only d acts, and d vanishes on the stems
    assert page.differentials[(2, 1)].is_zero()


def _order(group):
    return 0 if group.free_rank else group.order()


def test_corestriction_map_matches_cyclic_corestriction():
    # the coefficient action is trivial, so V splits over the cyclic summands of pi_t
    for theory in ("sphere", "integers", "relative"):
        coeffs = ring(theory)
        for n in (2, 3):
            for t in range(coeffs.t_max + 1):
                for s in range(6):
                    hom = corestriction_map(theory, n, s, t)
                    k, c = 1, 1
                    for order in coeffs.orders(t):
                        coeff = Coefficients(None) if order == 0 else Coefficients(order.bit_length() - 1)
                        ref = corestriction(CyclicGroup(2, n), coeff, s)
                        k *= _order(kernel(ref).group)
                        c *= _order(cokernel(ref).group)
                    assert _order(kernel(hom).group) == k
                    assert _order(cokernel(hom).group) == c


def test_d2_routes_agree_on_sample_cells():
    for cell in [("sphere", 3, 4, 1), ("sphere", 4, 5, 1), ("relative", 3, 4, 1), ("integers", 2, 2, 0)]:
        assert d2_routes_agree(*cell)


def test_wrong_label_is_reported(monkeypatch):
    original = load_fixture("sphere_n2_E2")
    labels = dict(original.labels)
    labels[(2, 3)] = ["nu z_2"]           # the cell is generated by 4nu z_2
    broken = dataclasses.replace(original, labels=labels)
    monkeypatch.setattr(compare, "load_fixture", lambda fid: broken)
    report = compare_fixture(e2_page("sphere", 2), "sphere_n2_E2")
    assert not report.ok
    assert report.mismatches[0]["cell"] == [2, 3]


def test_wrong_group_is_reported(monkeypatch):
    original = load_fixture("integers_n3_E2")
    rows = {t: list(r) for t, r in original.rows.items()}
    rows[3][1] = "Z/4Z"
    broken = dataclasses.replace(original, rows=rows, labels={})
    monkeypatch.setattr(compare, "load_fixture", lambda fid: broken)
    report = compare_fixture(e2_page("integers", 3), "integers_n3_E2")
    assert [m["cell"] for m in report.mismatches] == [[1, 3]]


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        load_fixture("sphere_n9_E2")
    with pytest.raises(UnknownFixture):
        fixture_for("relative", 6, 2)


def test_page_range_errors():
    with pytest.raises(OutOfImplementedRange):
        e2_page("relative", 2, t_max=7)
    with pytest.raises(ValueError):
        compute_page("sphere", 2, 9)
    with pytest.raises(ValueError):
        e2_page("rationals", 2)
