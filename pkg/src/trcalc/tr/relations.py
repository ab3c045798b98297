"""Structural relations checked generator by generator.

A relation is only counted when every operator application on both sides
is Known and stays inside the tabulated range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import OutOfImplementedRange
from .operators import apply_chain
from .presentations import MAX_DEGREE, THEORIES, TRElement, Theory, Unknown, generators

# name -> (left chain, right side as [(coefficient, chain)])
RELATIONS = {
    "FV = 2": (["V", "F"], [(2, [])]),
    "FdV = d + eta": (["V", "d", "F"], [(1, ["d"]), (1, ["mul_eta"])]),
    "dd = eta d": (["d", "d"], [(1, ["d", "mul_eta"])]),
    "Vd = 2dV": (["d", "V"], [(2, ["V", "d"])]),
    "dF = 2Fd": (["F", "d"], [(2, ["d", "F"])]),
    "RF = FR": (["F", "R"], [(1, ["R", "F"])]),
    "RV = VR": (["V", "R"], [(1, ["R", "V"])]),
    "Rd = dR": (["d", "R"], [(1, ["R", "d"])]),
    "R eta = eta R": (["mul_eta", "R"], [(1, ["R", "mul_eta"])]),
}


@dataclass
class RelationReport:
    checked: dict = field(default_factory=dict)       # relation -> count
    failures: list = field(default_factory=list)      # (relation, generator description)
    generators: set = field(default_factory=set)      # generators with at least one check

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total(self) -> int:
        return sum(self.checked.values())


def _evaluate(chain, x: TRElement):
    try:
        outcome = apply_chain(chain, x)
    except OutOfImplementedRange:
        return None
    if isinstance(outcome, Unknown):
        return None
    return outcome.value


def check_relation(name: str, x: TRElement) -> bool | None:
    """True or False when both sides are Known, None otherwise."""
    left_chain, right = RELATIONS[name]
    left = _evaluate(left_chain, x)
    if left is None:
        return None
    total = None
    for coeff, chain in right:
        value = _evaluate(chain, x)
        if value is None:
            return None
        value = value.scale(coeff)
        total = value if total is None else total + value
    return left == total


def relation_suite(n_max: int = 6, theories=THEORIES, u: int = 1) -> RelationReport:
    report = RelationReport()
    for name in theories:
        theory = Theory(name, u)
        for n in range(1, n_max + 1):
            for q in range(MAX_DEGREE[name] + 1):
                for key in generators(theory, q, n):
                    x = TRElement.gen(theory, key[0], key[1], n)
                    for relation in RELATIONS:
                        result = check_relation(relation, x)
                        if result is None:
                            continue
                        report.checked[relation] = report.checked.get(relation, 0) + 1
                        report.generators.add((name, key, n))
                        if not result:
                            report.failures.append((relation, f"{name} {x} at level {n}"))
    return report
