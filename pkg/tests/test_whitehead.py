import json

import pytest

from trcalc.errors import TruncationTooSmall
from trcalc.tr.towers import (kernel_one_minus_F, preimage_terms, r_max, spanning_terms,
                              verify_certificate)
from trcalc.whitehead import RunConfig, check_kernel_towers, compute_wh

FORMAL = RunConfig().theory()


def odd(J):
    return [j for j in range(-J, J + 1) if j % 2]


def test_r_max_readable_depths():
    assert [r_max(2, N) for N in range(3, 9)] == [0, 1, 2, 3, 4, 5]
    assert [r_max(3, N) for N in range(4, 9)] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("N,J", [(2, 1), (4, 3), (7, 5)])
def test_low_degrees_vanish(N, J):
    for q in (0, 1):
        result = compute_wh(q, RunConfig(N, J))
        assert result.group.is_trivial()
        assert all(verify_certificate(FORMAL, c) for c in result.certificates)


def test_wh2_small_truncation():
    result = compute_wh(2, RunConfig(5, 3))
    assert result.group.torsion == (2,) * 8
    assert set(result.coordinates) == {("c", r, j) for r in (1, 2) for j in odd(3)}
    for j in odd(3):
        assert set(result.relations[("c", 0, j)]) == {("c", 1, j), ("c", 2, j)}


def test_wh3_has_two_families():
    result = compute_wh(3, RunConfig(6, 3))
    families = {f for f, _, _ in result.coordinates}
    assert families == {"c", "c'"}
    R = r_max(3, 6)
    assert result.group.dimension == (R + 1 + R) * len(odd(3))


def test_coordinates_stable_under_larger_truncation():
    small = set(compute_wh(2, RunConfig(5, 3)).coordinates)
    deeper = set(compute_wh(2, RunConfig(6, 3)).coordinates)
    wider = set(compute_wh(2, RunConfig(5, 5)).coordinates)
    assert small < deeper and small < wider
    for q, families in ((2, {"c"}), (3, {"c", "c'"})):
        for N in (5, 6, 7):
            before = set(compute_wh(q, RunConfig(N, 3)).coordinates)
            after = set(compute_wh(q, RunConfig(N + 1, 3)).coordinates)
            added = after - before
            assert before < after
            # one new r-layer per family, each carrying every odd j
            assert {(f, j) for f, _, j in added} == {(f, j) for f in families for j in odd(3)}
            assert len(added) == len(families) * len(odd(3))


def test_wh2_dimension_at_six_levels():
    result = compute_wh(2, RunConfig(6, 5))
    assert result.group.dimension == 18
    assert result.group.torsion == (2,) * 18


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        compute_wh(3, RunConfig(3, 3))
    with pytest.raises(TruncationTooSmall):
        compute_wh(3, RunConfig(4, 1))
    with pytest.raises(TruncationTooSmall):
        kernel_one_minus_F(FORMAL, 2, 3, 1)


def test_unit_parameter_does_not_change_results():
    for q in (2, 3):
        assert compute_wh(q, RunConfig(6, 3)).to_json() == compute_wh(q, RunConfig(6, 3, u=3)).to_json()


def test_kernel_towers_are_fixed_by_frobenius():
    report = kernel_one_minus_F(FORMAL, 2, 5, 1)
    check_kernel_towers(report)
    assert len(report.towers) == report.group.dimension


def test_every_spanning_term_has_a_verified_preimage():
    terms = spanning_terms(FORMAL, 3, 5, 3)
    assert terms
    for term in terms:
        cert = preimage_terms(FORMAL, [term], 5)
        assert verify_certificate(FORMAL, cert)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(1, 3)
    with pytest.raises(ValueError):
        RunConfig(5, 3, eta2xi11="eta")
    with pytest.raises(ValueError):
        compute_wh(4, RunConfig(5, 3))


def test_renderings():
    result = compute_wh(2, RunConfig(4, 1))
    data = json.loads(result.render("json"))
    assert data["truncation"] == {"N": 4, "J": 1}
    assert data["group"]["torsion"] == [2, 2]
    text = result.render("markdown")
    assert text.startswith("## Wh_2 at N = 4, J = 1")
    assert "c_{0,1} = c_{1,1}" in text
