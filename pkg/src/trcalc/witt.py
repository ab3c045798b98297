"""p-typical Witt vectors of finite length over the integers.

Ring operations go through ghost coordinates: add or multiply the ghost
vectors and solve back for the Witt coordinates one stage at a time.
Over Z the ghost map is injective, so the back-solve is exact.
"""

from __future__ import annotations

from dataclasses import dataclass


class NonIntegralSolution(ArithmeticError):
    pass


class LengthUnderflow(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class WittVector:
    p: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if not self.coords:
            raise LengthUnderflow("a Witt vector needs length at least 1")

    @property
    def n(self) -> int:
        return len(self.coords)

    def ghost(self) -> list[int]:
        return ghost(self)

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(other))

    def to_json(self) -> dict:
        return {"p": self.p, "coords": list(self.coords)}


def ghost(w: WittVector) -> list[int]:
    p = w.p
    out = []
    for i in range(w.n):
        out.append(sum(p ** k * w.coords[k] ** (p ** (i - k)) for k in range(i + 1)))
    return out


def from_ghost(p: int, ghosts) -> WittVector:
    coords: list[int] = []
    for i, target in enumerate(ghosts):
        partial = sum(p ** k * coords[k] ** (p ** (i - k)) for k in range(i))
        rest = int(target) - partial
        scale = p ** i
        if rest % scale:
            raise NonIntegralSolution(f"ghost component {i} is not integral")
        coords.append(rest // scale)
    return WittVector(p, tuple(coords))


def _check(w1: WittVector, w2: WittVector):
    if w1.p != w2.p or w1.n != w2.n:
        raise LengthMismatch("Witt vectors must share p and length")


def add(w1: WittVector, w2: WittVector) -> WittVector:
    _check(w1, w2)
    return from_ghost(w1.p, [a + b for a, b in zip(ghost(w1), ghost(w2))])


def mul(w1: WittVector, w2: WittVector) -> WittVector:
    _check(w1, w2)
    return from_ghost(w1.p, [a * b for a, b in zip(ghost(w1), ghost(w2))])


def neg(w: WittVector) -> WittVector:
    return from_ghost(w.p, [-a for a in ghost(w)])


def scale(w: WittVector, factor: int) -> WittVector:
    return from_ghost(w.p, [factor * a for a in ghost(w)])


def zero(p: int, n: int) -> WittVector:
    return WittVector(p, (0,) * n)


def teichmuller(a: int, n: int, p: int = 2) -> WittVector:
    return WittVector(p, (a,) + (0,) * (n - 1))


def frobenius_w(w: WittVector) -> WittVector:
    if w.n - 1 < 1:
        raise LengthUnderflow("Frobenius lowers the length below 1")
    return from_ghost(w.p, ghost(w)[1:])


def verschiebung_w(w: WittVector) -> WittVector:
    return WittVector(w.p, (0,) + w.coords)


def restrict_w(w: WittVector) -> WittVector:
    if w.n - 1 < 1:
        raise LengthUnderflow("restriction lowers the length below 1")
    return WittVector(w.p, w.coords[:-1])


@dataclass
class MinusOneReport:
    n: int
    passed: bool
    left: WittVector
    right: WittVector
    left_ghost: list
    right_ghost: list

    def to_json(self) -> dict:
        return {"n": self.n, "passed": self.passed,
                "lhs": self.left.to_json(), "rhs": self.right.to_json(),
                "lhs_ghost": self.left_ghost, "rhs_ghost": self.right_ghost}


def verify_minus_one(n: int, p: int = 2) -> MinusOneReport:
    """Check [-1]_n = -[1]_n + V([1]_{n-1}) coordinatewise."""
    if n < 2:
        raise LengthUnderflow("the identity needs n >= 2")
    left = teichmuller(-1, n, p)
    right = add(neg(teichmuller(1, n, p)), verschiebung_w(teichmuller(1, n - 1, p)))
    return MinusOneReport(n, left.coords == right.coords, left, right, ghost(left), ghost(right))
