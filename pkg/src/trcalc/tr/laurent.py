"""Canonical forms in TR_q^n(A[x^{+-1}]; 2) and the operators R, F, V, d on them.

An element is a finite sum of a_{0,j}[x]^j, b_{0,j}[x]^j dlog[x] over all
j, and V^s(a_{s,j}[x]^j), dV^s(b_{s,j}[x]^j) over 1 <= s < n and odd j.
The a-coefficient at depth s is a degree-q class at level n-s, the
b-coefficient a degree q-1 class at level n-s.

Signs follow d(xy) = d(x)y + (-1)^{|x|} x d(y) with d([x]^j) = j[x]^j dlog[x].
Since F(dlog[x]) = dlog[x] and dF = 2Fd, d(dlog[x]) is 2-divisible, and we
take d(dlog[x]) = 0; then dd = eta d on [x] forces dlog[x]^2 = eta dlog[x].
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import UnknownAction
from .operators import apply
from .presentations import (TRElement, Theory, label_of, order_of, parse_element, split_coefficient,
                            split_terms, unwrap)


@lru_cache(maxsize=200000)
def coeff_op(op: str, x: TRElement) -> TRElement:
    """A coefficient operator that must be Known; raises UnknownAction otherwise."""
    return unwrap(apply(op, x))


def divide_by_unit(x: TRElement, j: int) -> TRElement:
    """x / j for odd j, exact on torsion generators."""
    terms = {}
    for key, c in x.terms:
        order = order_of(x.theory, key, x.n)
        if order == 0:
            if c % j:
                raise UnknownAction(f"1/{j} times a free class is not an integer multiple")
            terms[key] = c // j
        else:
            terms[key] = c * pow(j, -1, order)
    return TRElement.make(x.theory, x.q, x.n, terms)


def _zero_coeff(theory: Theory, q: int, n: int) -> TRElement:
    return TRElement(theory, q, n, ())


@dataclass(frozen=True)
class LaurentElement:
    theory: Theory
    q: int
    n: int
    a: tuple = ()      # sorted ((s, j), TRElement) pairs, zeros dropped
    b: tuple = ()

    # ------------------------------------------------------------- building

    @classmethod
    def build(cls, theory: Theory, q: int, n: int, a=None, b=None) -> "LaurentElement":
        a = _clean(a or {})
        b = _clean(b or {})
        for slots, degree in ((a, q), (b, q - 1)):
            for (s, j), c in slots.items():
                if not 0 <= s < n:
                    raise ValueError(f"depth {s} out of range at level {n}")
                if s >= 1 and j % 2 == 0:
                    raise ValueError("depth s >= 1 needs an odd exponent j")
                if (c.theory, c.q, c.n) != (theory, degree, n - s):
                    raise ValueError(f"coefficient at {(s, j)} lives in the wrong cell")
        return cls(theory, q, n, _freeze(a), _freeze(b))

    @classmethod
    def zero(cls, theory: Theory, q: int, n: int) -> "LaurentElement":
        return cls(theory, q, n)

    def a_dict(self) -> dict:
        return dict(self.a)

    def b_dict(self) -> dict:
        return dict(self.b)

    def coefficient(self, kind: str, s: int, j: int) -> TRElement:
        slots = self.a_dict() if kind == "a" else self.b_dict()
        degree = self.q if kind == "a" else self.q - 1
        return slots.get((s, j), _zero_coeff(self.theory, degree, self.n - s))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def _same(self, other):
        if (self.theory, self.q, self.n) != (other.theory, other.q, other.n):
            raise ValueError("Laurent elements live in different groups")

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        self._same(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = self.a_dict(), self.b_dict()
        _accumulate(a, other.a_dict())
        _accumulate(b, other.b_dict())
        return LaurentElement(self.theory, self.q, self.n, _freeze(a), _freeze(b))

    def scale(self, factor: int) -> "LaurentElement":
        if factor == 1:
            return self
        a = tuple((k, c) for k, c in ((k, v.scale(factor)) for k, v in self.a) if c.terms)
        b = tuple((k, c) for k, c in ((k, v.scale(factor)) for k, v in self.b) if c.terms)
        return LaurentElement(self.theory, self.q, self.n, a, b)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        self._same(other)
        if other.is_zero():
            return self
        return self + (-other)

    # ------------------------------------------------------------- serialization

    def to_json(self) -> dict:
        def slots(items):
            out = []
            for (s, j), c in items:
                out.append({"s": s, "j": j, "terms": c.to_json()})
            return out
        return {"theory": self.theory.name, "q": self.q, "n": self.n,
                "a": slots(self.a), "b": slots(self.b)}

    @classmethod
    def from_json(cls, data: dict, theory: Theory | None = None) -> "LaurentElement":
        theory = theory or Theory.parse(data["theory"])
        if "expr" in data:
            return parse_laurent(theory, data["n"], data["expr"], q=data.get("q"))
        q, n = data["q"], data["n"]
        slots = {"a": {}, "b": {}}
        for kind, degree in (("a", q), ("b", q - 1)):
            for entry in data.get(kind, []):
                s, j = entry["s"], entry["j"]
                text = " + ".join(f"{t['coeff']} {t['label']}" for t in entry["terms"]) or "0"
                slots[kind][(s, j)] = parse_element(theory, n - s, text, q=degree)
        return cls.build(theory, q, n, slots["a"], slots["b"])

    def __str__(self) -> str:
        parts = []
        for (s, j), c in self.a:
            parts.append(f"({c})[x]^{j}" if s == 0 else f"V^{s}(({c})[x]^{j})")
        for (s, j), c in self.b:
            parts.append(f"({c})[x]^{j} dlog[x]" if s == 0 else f"dV^{s}(({c})[x]^{j})")
        return " + ".join(parts) if parts else "0"


def _clean(slots: dict) -> dict:
    return {k: v for k, v in slots.items() if not v.is_zero()}


def _freeze(slots: dict) -> tuple:
    """Sorted (slot, coefficient) pairs with zero coefficients dropped."""
    return tuple(sorted(kv for kv in slots.items() if kv[1].terms))


def _accumulate(target: dict, extra: dict):
    for k, v in extra.items():
        target[k] = target[k] + v if k in target else v


class _Builder:
    """Accumulates slot contributions for an output element."""

    def __init__(self, theory: Theory, q: int, n: int):
        self.theory, self.q, self.n = theory, q, n
        self.a: dict = {}
        self.b: dict = {}

    def add(self, kind: str, s: int, j: int, value: TRElement):
        if not value.terms:
            return
        slots = self.a if kind == "a" else self.b
        prev = slots.get((s, j))
        slots[(s, j)] = value if prev is None else prev + value

    def done(self) -> LaurentElement:
        return LaurentElement(self.theory, self.q, self.n, _freeze(self.a), _freeze(self.b))


# ------------------------------------------------------------------ assembly

def assembly(a: TRElement, b: TRElement) -> LaurentElement:
    if a.theory != b.theory or a.n != b.n or b.q != a.q - 1:
        raise ValueError("assembly needs a in degree q and b in degree q-1 at one level")
    out = _Builder(a.theory, a.q, a.n)
    out.add("a", 0, 0, a)
    out.add("b", 0, 0, b)
    return out.done()


def reduce(omega: LaurentElement) -> LaurentElement:
    """Image in the cokernel of the assembly map: drop the (0, 0) slots."""
    a = tuple(kv for kv in omega.a if kv[0] != (0, 0))
    b = tuple(kv for kv in omega.b if kv[0] != (0, 0))
    if len(a) == len(omega.a) and len(b) == len(omega.b):
        return omega
    return LaurentElement(omega.theory, omega.q, omega.n, a, b)


# ------------------------------------------------------------------ operators

def restriction_laurent(omega: LaurentElement) -> LaurentElement:
    n = omega.n
    if n < 2:
        raise ValueError("restriction needs n >= 2")
    out = _Builder(omega.theory, omega.q, n - 1)
    for kind, slots in (("a", omega.a), ("b", omega.b)):
        for (s, j), c in slots:
            if s < n - 1:
                out.add(kind, s, j, coeff_op("R", c))
    return out.done()


def frobenius_laurent(omega: LaurentElement) -> LaurentElement:
    n, q = omega.n, omega.q
    if n < 2:
        raise ValueError("Frobenius needs n >= 2")
    out = _Builder(omega.theory, q, n - 1)
    sign = -1 if (q - 1) % 2 else 1
    for (s, j), c in omega.a:
        if s == 0:
            out.add("a", 0, 2 * j, coeff_op("F", c))
        elif s == 1:
            out.add("a", 0, j, c.scale(2))
        else:
            out.add("a", s - 1, j, c.scale(2))
    for (s, j), c in omega.b:
        if s == 0:
            out.add("b", 0, 2 * j, coeff_op("F", c))
        elif s == 1:
            out.add("a", 0, j, coeff_op("d", c) + coeff_op("mul_eta", c))
            out.add("b", 0, j, c.scale(sign * j))
        else:
            out.add("a", s - 1, j, coeff_op("mul_eta", c))
            out.add("b", s - 1, j, c)
    return out.done()


def verschiebung_laurent(omega: LaurentElement) -> LaurentElement:
    n, q = omega.n, omega.q
    out = _Builder(omega.theory, q, n + 1)
    sign = -1 if (q - 1) % 2 else 1
    for (s, j), c in omega.a:
        if s == 0 and j % 2 == 0:
            out.add("a", 0, j // 2, coeff_op("V", c))
        else:
            out.add("a", s + 1, j, c)
    for (s, j), c in omega.b:
        if s == 0 and j % 2 == 0:
            out.add("b", 0, j // 2, coeff_op("V", c))
        elif s == 0:
            # b[x]^j dlog = (-1)^{|b|} j^{-1} (d(b[x]^j) - (db)[x]^j), then Vd = 2dV
            unit = divide_by_unit(c, j).scale(sign)
            out.add("b", 1, j, unit.scale(2))
            out.add("a", 1, j, -coeff_op("d", unit))
        else:
            out.add("b", s + 1, j, c.scale(2))
    return out.done()


def connes_laurent(omega: LaurentElement) -> LaurentElement:
    n, q = omega.n, omega.q
    out = _Builder(omega.theory, q + 1, n)
    sign_a = -1 if q % 2 else 1
    sign_b = -1 if (q - 1) % 2 else 1
    for (s, j), c in omega.a:
        if s == 0:
            out.add("a", 0, j, coeff_op("d", c))
            out.add("b", 0, j, c.scale(sign_a * j))
        else:
            out.add("b", s, j, c)
    for (s, j), c in omega.b:
        if s == 0:
            # d(b[x]^j) dlog[x] with dlog[x]^2 = eta dlog[x]
            out.add("b", 0, j, coeff_op("d", c) + coeff_op("mul_eta", c).scale(sign_b * j))
        else:
            out.add("b", s, j, coeff_op("mul_eta", c))
    return out.done()


def mul_eta_laurent(omega: LaurentElement) -> LaurentElement:
    out = _Builder(omega.theory, omega.q + 1, omega.n)
    for kind, slots in (("a", omega.a), ("b", omega.b)):
        for (s, j), c in slots:
            out.add(kind, s, j, coeff_op("mul_eta", c))
    return out.done()


LAURENT_OPERATORS = {"restr": restriction_laurent, "frob": frobenius_laurent,
                     "versch": verschiebung_laurent, "connes": connes_laurent,
                     "R": restriction_laurent, "F": frobenius_laurent,
                     "V": verschiebung_laurent, "d": connes_laurent}


# ------------------------------------------------------------------ monomials

def monomial(kind: str, s: int, j: int, c: TRElement, n: int) -> LaurentElement:
    """V^s(c[x]^j) for kind 'V', dV^s(c[x]^j) for 'dV', and the same with a dlog[x]
    factor inside for 'Vdlog' and 'dVdlog'.  Any j is allowed; c lives at level n-s."""
    if c.n != n - s:
        raise ValueError("coefficient level must be n - s")
    dlog = kind.endswith("dlog")
    q = c.q + 1 if dlog else c.q
    base = _Builder(c.theory, q, c.n)
    base.add("b" if dlog else "a", 0, j, c)
    omega = base.done()
    for _ in range(s):
        omega = verschiebung_laurent(omega)
    if kind.startswith("d"):
        omega = connes_laurent(omega)
    return omega


def decompose(omega: LaurentElement) -> list[tuple[str, int, int, TRElement]]:
    """The canonical terms as (kind, s, j, coefficient), kind in {'V', 'dV', 'dlog'}."""
    out = []
    for (s, j), c in omega.a:
        out.append(("V", s, j, c))
    for (s, j), c in omega.b:
        out.append(("dlog" if s == 0 else "dV", s, j, c))
    return out


def recompose(theory: Theory, q: int, n: int, terms) -> LaurentElement:
    out = LaurentElement.zero(theory, q, n)
    for kind, s, j, c in terms:
        if kind == "V":
            piece = monomial("V", s, j, c, n)
        elif kind == "dV":
            piece = monomial("dV", s, j, c, n)
        else:
            piece = monomial("Vdlog", 0, j, c, n)
        out = out + piece
    return out


# ------------------------------------------------------------------ parsing

_WRAPPED = re.compile(r"^(d?)V\^(\d+)\((.*)\[x\]\^\{?(-?\d+)\}?(\s*dlog\[x\])?\)$")
_SUFFIX_POWER = re.compile(r"\[x\]\^\{?(-?\d+)\}?$")


def parse_laurent(theory: Theory, n: int, text: str, q: int | None = None) -> LaurentElement:
    """Parse sums like '2 V^1(nu~[x]^3) + d(eta~)[x]^2 dlog[x] - dV^2(eta~[x]^-1)'."""
    pieces = []
    for sign, term in split_terms(text):
        coeff, body = split_coefficient(term)
        body = body.strip()
        wrapped = _WRAPPED.match(body.replace(" ", "")) if "[x]" in body else None
        if wrapped and body.replace(" ", "").startswith(("V^", "dV^")):
            d, s, inner, j, dlog = wrapped.groups()
            s, j = int(s), int(j)
            kind = ("dV" if d else "V") + ("dlog" if dlog else "")
            label = _unparen(inner)
            c = parse_element(theory, n - s, label)
            pieces.append(monomial(kind, s, j, c.scale(sign * coeff), n))
            continue
        dlog = False
        if body.endswith("dlog[x]"):
            dlog, body = True, body[: -len("dlog[x]")].strip()
        j = 0
        m = _SUFFIX_POWER.search(body)
        if m:
            j = int(m.group(1))
            body = body[: m.start()].strip()
        c = parse_element(theory, n, _unparen(body))
        pieces.append(monomial("Vdlog" if dlog else "V", 0, j, c.scale(sign * coeff), n))
    if not pieces:
        if q is None:
            raise ValueError("empty expression needs an explicit degree")
        return LaurentElement.zero(theory, q, n)
    total = pieces[0]
    for piece in pieces[1:]:
        total = total + piece
    if q is not None and total.q != q:
        raise ValueError(f"expression has degree {total.q}, expected {q}")
    return total


def _unparen(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    return text


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def dumps(omega: LaurentElement) -> str:
    return json.dumps(omega.to_json(), indent=2)
