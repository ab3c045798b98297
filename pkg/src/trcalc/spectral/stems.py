"""Coefficient rows TR_t^1 for the skeleton spectral sequences.

Each theory lists, per degree t, its cyclic generators (order 0 means a
copy of the 2-adic integers) together with the actions of Connes' operator
d (degree +1) and of multiplication by eta (+1) and nu (+3).  Actions are
dictionaries label -> {label: coefficient}; a missing label acts as zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra import AbelianGroup, direct_sum_of_cyclics
from ..errors import OutOfImplementedRange

SPHERE, INTEGERS, RELATIVE = "sphere", "integers", "relative"
THEORIES = (SPHERE, INTEGERS, RELATIVE)

OPERATOR_DEGREES = {"d": 1, "eta": 1, "nu": 3}


@dataclass(frozen=True)
class CoefficientRing:
    name: str
    t_max: int
    rows: dict                      # t -> tuple of (label, order)
    actions: dict                   # op -> {label: {label: coeff}}

    def generators(self, t: int) -> tuple:
        if t > self.t_max:
            raise OutOfImplementedRange(f"{self.name} coefficients are tabulated for t <= {self.t_max}")
        return self.rows.get(t, ())

    def labels(self, t: int) -> list[str]:
        return [label for label, _ in self.generators(t)]

    def orders(self, t: int) -> list[int]:
        return [order for _, order in self.generators(t)]

    def group(self, t: int) -> AbelianGroup:
        return direct_sum_of_cyclics(self.orders(t), self.labels(t))

    def act(self, op: str, label: str) -> dict:
        return dict(self.actions[op].get(label, {}))

    def matrix(self, op: str, t: int, factor: int = 1) -> list[list[int]]:
        """Rows indexed by the generators of degree t + |op|, columns by degree t."""
        source = self.labels(t)
        target_t = t + OPERATOR_DEGREES[op]
        target = self.labels(target_t) if target_t <= self.t_max else []
        return [[factor * self.act(op, a).get(b, 0) for a in source] for b in target]


SPHERE_RING = CoefficientRing(
    SPHERE, 7,
    {0: (("iota", 0),), 1: (("eta", 2),), 2: (("eta^2", 2),), 3: (("nu", 8),),
     6: (("nu^2", 2),), 7: (("sigma", 16),)},
    {"d": {},
     "eta": {"iota": {"eta": 1}, "eta": {"eta^2": 1}, "eta^2": {"nu": 4}},
     "nu": {"iota": {"nu": 1}, "nu": {"nu^2": 1}}},
)

INTEGER_RING = CoefficientRing(
    INTEGERS, 7,
    {0: (("iota", 0),), 3: (("lambda", 2),), 7: (("gamma", 4),)},
    {"d": {}, "eta": {}, "nu": {}},
)

RELATIVE_RING = CoefficientRing(
    RELATIVE, 5,
    {1: (("eta~", 2),), 2: (("eta eta~", 2), ("lambdabar", 2)), 3: (("nu~", 8),)},
    {"d": {"eta~": {"lambdabar": 1}},
     "eta": {"eta~": {"eta eta~": 1}, "eta eta~": {"nu~": 4}},
     "nu": {}},
)

RINGS = {SPHERE: SPHERE_RING, INTEGERS: INTEGER_RING, RELATIVE: RELATIVE_RING}


def ring(theory: str) -> CoefficientRing:
    try:
        return RINGS[theory]
    except KeyError:
        raise ValueError(f"theory must be one of {THEORIES}") from None


@dataclass(frozen=True)
class Stem:
    t: int
    group: AbelianGroup
    generator: str | None
    eta_multiple: dict
    nu_multiple: dict


class StemTable:
    """pi_t of the 2-complete sphere spectrum, t <= 7."""

    def __init__(self, coefficients: CoefficientRing = SPHERE_RING):
        self.coefficients = coefficients

    def __getitem__(self, t: int) -> Stem:
        if not 0 <= t <= self.coefficients.t_max:
            raise OutOfImplementedRange(f"stems are tabulated for 0 <= t <= {self.coefficients.t_max}")
        labels = self.coefficients.labels(t)
        generator = labels[0] if labels else None
        return Stem(t, self.coefficients.group(t), generator,
                    self.coefficients.act("eta", generator) if generator else {},
                    self.coefficients.act("nu", generator) if generator else {})

    def __iter__(self):
        return (self[t] for t in range(self.coefficients.t_max + 1))
