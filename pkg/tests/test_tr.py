import random

import pytest

from trcalc.checks import TR_RANGES, closed_form_log_order, random_laurent
from trcalc.errors import OutOfImplementedRange, UnknownAction
from trcalc.tr.laurent import (LaurentElement, connes_laurent, decompose, dumps, frobenius_laurent,
                               parse_laurent, recompose, reduce, restriction_laurent,
                               verschiebung_laurent)
from trcalc.tr.operators import apply, apply_chain, inclusion
from trcalc.tr.presentations import (ETA2XI11_CHOICES, Known, TRElement, Theory, Unknown, group_of,
                                     parse_element, unwrap)
from trcalc.tr.relations import RELATIONS, check_relation, relation_suite

SPHERE, INTEGERS, RELATIVE = Theory("sphere"), Theory("integers"), Theory("relative")


def known(op, x):
    outcome = apply(op, x)
    assert isinstance(outcome, Known), outcome
    return outcome.value


# ------------------------------------------------------------------ groups

def test_headline_orders():
    assert group_of(SPHERE, 3, 2).order() == 512
    assert all(group_of(INTEGERS, 2, n).is_trivial() for n in range(1, 7))
    assert [group_of(RELATIVE, 1, n).order() for n in range(1, 7)] == [2 ** n for n in range(1, 7)]


@pytest.mark.parametrize("name", ["sphere", "integers", "relative"])
def test_orders_match_closed_forms(name):
    theory = Theory(name)
    for q in range(TR_RANGES[name] + 1):
        for n in range(1, 7):
            group = group_of(theory, q, n)
            free, log2 = closed_form_log_order(name, q, n)
            assert group.free_rank == free
            assert sum(d.bit_length() - 1 for d in group.torsion) == log2


def test_level_one_groups_are_the_coefficients():
    assert [group_of(SPHERE, q, 1).describe() for q in range(6)] == ["Z", "Z/2", "Z/2", "Z/8", "0", "0"]
    assert [group_of(INTEGERS, q, 1).describe() for q in range(4)] == ["Z", "0", "0", "Z/2"]


def test_degree_outside_tables():
    with pytest.raises(OutOfImplementedRange):
        group_of(SPHERE, 6, 2)
    with pytest.raises(OutOfImplementedRange):
        group_of(RELATIVE, 4, 2)


def test_theory_validation():
    with pytest.raises(ValueError):
        Theory("rationals")
    with pytest.raises(ValueError):
        Theory("integers", u=2)
    assert Theory.parse("rel") == RELATIVE


# ------------------------------------------------------------------ operators

def test_sample_operator_values():
    eta = parse_element(SPHERE, 1, "eta")
    assert str(known("V", eta)) == "V^1(eta)"
    assert known("F", known("V", eta)).is_zero()          # FV = 2 kills eta
    eta2 = parse_element(SPHERE, 2, "eta^2")
    assert str(known("mul_eta", eta2)) == "4 nu"
    assert known("R", parse_element(SPHERE, 2, "xi_{3,1}")) == TRElement.zero(SPHERE, 3, 1)


def test_element_arithmetic_reduces_mod_orders():
    x = parse_element(SPHERE, 2, "5 nu + 9 V^1(nu)")
    assert str(x) == "5 nu + V^1(nu)"
    assert (x + x.scale(3)).as_dict() == {("Vnu", 0): 4, ("Vnu", 1): 4}
    with pytest.raises(ValueError):
        x + parse_element(SPHERE, 1, "nu")


def test_undetermined_action_is_reported():
    outcome = apply("mul_eta", parse_element(SPHERE, 2, "eta xi_{1,1}"))
    assert isinstance(outcome, Unknown)
    with pytest.raises(UnknownAction):
        unwrap(outcome)


@pytest.mark.parametrize("choice", ETA2XI11_CHOICES)
def test_eta2xi11_choice_resolves_the_product(choice):
    theory = Theory("sphere", eta2xi11=choice)
    value = known("mul_eta", parse_element(theory, 2, "eta xi_{1,1}"))
    assert not value.is_zero()


def test_relative_inclusion_into_the_sphere():
    x = parse_element(RELATIVE, 2, "eta~")
    image = inclusion(x)
    assert isinstance(image, Known) and image.value.theory.name == "sphere"


def test_unknown_operator():
    with pytest.raises(ValueError):
        apply("G", parse_element(SPHERE, 1, "eta"))
    with pytest.raises(ValueError):
        apply("S", parse_element(INTEGERS, 1, "1"))


# ------------------------------------------------------------------ relations

@pytest.mark.parametrize("relation", list(RELATIONS))
def test_relation_on_a_sample(relation):
    x = parse_element(SPHERE, 3, "eta")
    assert check_relation(relation, x) in (True, None)


def test_relation_suite_covers_enough_generators():
    report = relation_suite()
    assert report.ok, report.failures[:5]
    assert len(report.generators) >= 40
    assert set(report.checked) == set(RELATIONS)


def test_fdv_is_d_plus_eta():
    x = parse_element(SPHERE, 2, "eta")
    lhs = unwrap(apply_chain(["V", "d", "F"], x))
    rhs = known("d", x) + known("mul_eta", x)
    assert lhs == rhs


# ------------------------------------------------------------------ Laurent elements

def test_parse_and_dump_laurent():
    omega = parse_laurent(RELATIVE, 3, "V^1(eta~[x]^3) + eta~[x]^-1")
    assert omega.q == 1 and omega.n == 3
    again = LaurentElement.from_json({"theory": "relative", "n": 3,
                                      "expr": "V^1(eta~[x]^3) + eta~[x]^-1"})
    assert again == omega
    assert '"q": 1' in dumps(omega)


def test_laurent_operators_respect_relations():
    omega = parse_laurent(SPHERE, 3, "eta[x]^3 + V^1(eta[x]^1)")
    lower = restriction_laurent(omega)
    # R commutes with F
    assert restriction_laurent(frobenius_laurent(omega)) == frobenius_laurent(lower)
    # F V = 2
    assert frobenius_laurent(verschiebung_laurent(lower)) == lower.scale(2)
    assert connes_laurent(omega).q == omega.q + 1


def test_reduce_drops_assembly_slots():
    omega = parse_laurent(SPHERE, 2, "eta[x]^0 + eta[x]^1")
    assert [k for k, _ in reduce(omega).a] == [(0, 1)]


def test_decompose_recompose_roundtrip():
    rng = random.Random(11)
    for _ in range(50):
        omega = random_laurent(rng)
        assert recompose(omega.theory, omega.q, omega.n, decompose(omega)) == omega
