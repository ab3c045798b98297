"""Presented groups TR_q^n(A; 2) for the sphere, the integers and the relative theory.

Each theory is a list of generator families.  A family is a named class
such as V^s(eta) or xi_{1,s}; a generator is a key (family, s) at a given
level n, and its order depends on (s, n).  Elements are finitely supported
integer combinations of keys with coefficients reduced modulo the orders.

Formal mode (relative theory only) adjoins symbols for the products
V^k(eta^2 eta~), V^k(eta nu~) and dV^k(eta^2 eta~), whose values are not
pinned down.  They are treated as independent Z/2 classes, except at the
top depth k = n-1 where the level-one relations rewrite them.
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Union

from ..algebra import AbelianGroup, direct_sum_of_cyclics
from ..errors import OutOfImplementedRange, UnknownAction

SPHERE = "sphere"
INTEGERS = "integers"
RELATIVE = "relative"
THEORIES = (SPHERE, INTEGERS, RELATIVE)

# the two readings of eta^2 xi_{1,1} that are consistent with the tables
ETA2XI11_CHOICES = ("4xi31", "4xi31+4Vnu")

MAX_DEGREE = {SPHERE: 5, INTEGERS: 6, RELATIVE: 4}


@dataclass(frozen=True)
class Theory:
    name: str
    u: int = 1
    eta2xi11: str | None = None
    formal: bool = False
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.name not in THEORIES:
            raise ValueError(f"unknown theory {self.name!r}")
        if self.u % 2 == 0:
            raise ValueError("u must be a 2-adic unit (odd)")
        if self.eta2xi11 is not None and self.eta2xi11 not in ETA2XI11_CHOICES:
            raise ValueError(f"eta2xi11 must be one of {ETA2XI11_CHOICES}")
        if self.formal and self.name != RELATIVE:
            raise ValueError("formal symbols exist only in the relative theory")
        object.__setattr__(self, "_hash", hash((self.name, self.u, self.eta2xi11, self.formal)))

    def __hash__(self):
        # theories key every cache, so the hash is computed once
        return self._hash

    @classmethod
    def parse(cls, text: str, **kwargs) -> "Theory":
        aliases = {"S": SPHERE, "sphere": SPHERE, "Z": INTEGERS, "integers": INTEGERS,
                   "rel": RELATIVE, "relative": RELATIVE}
        if text not in aliases:
            raise ValueError(f"theory must be one of sphere, integers, relative; got {text!r}")
        return cls(aliases[text], **kwargs)


def _const(k):
    return lambda s, n: k


def _pow2(f):
    return lambda s, n: 2 ** f(s, n)


@dataclass(frozen=True)
class Family:
    name: str
    degree: int
    lo: int                       # smallest s
    top_gap: int                  # valid when lo <= s < n - top_gap
    order: Callable[[int, int], int] = field(compare=False)   # 0 means free
    label: Callable[[int], str] = field(compare=False)
    single: bool = False          # only s = lo occurs
    formal: bool = False
    min_level: int = 1

    def valid(self, s: int, n: int) -> bool:
        if n < self.min_level:
            return False
        if self.single:
            return s == self.lo and s < n - self.top_gap
        return self.lo <= s < n - self.top_gap

    def indices(self, n: int) -> list[int]:
        return [s for s in range(self.lo, max(self.lo, n)) if self.valid(s, n)]


def _vlabel(body: str) -> Callable[[int], str]:
    return lambda s: body if s == 0 else f"V^{s}({body})"


def _dvlabel(body: str) -> Callable[[int], str]:
    return lambda s: f"d({body})" if s == 0 else f"dV^{s}({body})"


def _xilabel(q: int, prefix: str = "", letter: str = "xi") -> Callable[[int], str]:
    return lambda s: f"{prefix}{letter}_{{{q},{s}}}"


_SPHERE_FAMILIES = [
    Family("V1", 0, 0, 0, _const(0), lambda s: "1" if s == 0 else f"V^{s}(1)"),
    Family("Veta", 1, 0, 0, _const(2), _vlabel("eta")),
    Family("xi1", 1, 1, 0, _pow2(lambda s, n: s), _xilabel(1)),
    Family("Veta2", 2, 0, 0, _const(2), _vlabel("eta^2")),
    Family("etaxi1", 2, 1, 0, _const(2), _xilabel(1, "eta ")),
    Family("Vnu", 3, 0, 0, _const(8), _vlabel("nu")),
    Family("xi3", 3, 1, 0, _pow2(lambda s, n: max(3, s + 1)), _xilabel(3)),
    Family("eta2xi1", 3, 2, 0, _const(2), _xilabel(1, "eta^2 ")),
    Family("nuxi1", 4, 1, 0, _pow2(lambda s, n: min(3, s)), _xilabel(1, "nu ")),
    Family("xi5", 5, 2, 0, _pow2(lambda s, n: s), _xilabel(5)),
    Family("Vrho", 5, 0, 3, _const(2), _vlabel("rho"), min_level=4),
]

_INTEGER_FAMILIES = [
    Family("V1", 0, 0, 0, _const(0), lambda s: "1" if s == 0 else f"V^{s}(1)"),
    Family("xi1", 1, 1, 0, _pow2(lambda s, n: s), _xilabel(1)),
    Family("lambda", 3, 0, 0, lambda s, n: 2 if n == 1 else 8, lambda s: "lambda", single=True),
    Family("xi3", 3, 2, 0, _pow2(lambda s, n: s + 1), _xilabel(3)),
    Family("kappa", 5, 0, 1, _pow2(lambda s, n: n - 1), lambda s: "kappa", single=True,
           min_level=2),
    Family("zeta5", 5, 2, 0, _pow2(lambda s, n: s - 1), _xilabel(5, letter="zeta")),
]

_RELATIVE_FAMILIES = [
    Family("Veta~", 1, 0, 0, _const(2), _vlabel("eta~")),
    Family("Vetaeta~", 2, 0, 0, _const(2), _vlabel("eta eta~")),
    Family("dVeta~", 2, 0, 0, _const(2), _dvlabel("eta~")),
    Family("Vnu~", 3, 0, 0, _const(8), _vlabel("nu~")),
    Family("dVetaeta~", 3, 1, 0, _const(2), _dvlabel("eta eta~")),
    Family("Veta2eta~", 3, 0, 1, _const(2), _vlabel("eta^2 eta~"), formal=True),
    Family("dVnu~", 4, 0, 0, lambda s, n: 8 if s < n - 1 else 2 ** min(3, s), _dvlabel("nu~"),
           min_level=2),
    Family("Vetanu~", 4, 0, 1, _const(2), _vlabel("eta nu~"), formal=True),
    Family("dVeta2eta~", 4, 1, 1, _const(2), _dvlabel("eta^2 eta~"), formal=True),
]

FAMILIES = {
    SPHERE: {f.name: f for f in _SPHERE_FAMILIES},
    INTEGERS: {f.name: f for f in _INTEGER_FAMILIES},
    RELATIVE: {f.name: f for f in _RELATIVE_FAMILIES},
}

_FAMILY_RANK = {name: {f: i for i, f in enumerate(fams)} for name, fams in FAMILIES.items()}

# the degree-4 relative cell is only a generating set (8-torsion bound)
COVER_CELLS = {(RELATIVE, 4)}

LABEL_ALIASES = {"lambda~": "d(eta~)", "lambdabar": "d(eta~)"}


def family(theory: Theory, name: str) -> Family:
    return FAMILIES[theory.name][name]


def check_range(theory: Theory, q: int, n: int):
    if n < 1:
        raise OutOfImplementedRange(f"level must be >= 1, got {n}")
    if q > MAX_DEGREE[theory.name]:
        raise OutOfImplementedRange(f"{theory.name} theory is tabulated only for q <= "
                                    f"{MAX_DEGREE[theory.name]}")


def generators(theory: Theory, q: int, n: int) -> list[tuple[str, int]]:
    """Keys (family, s) of a cell in presentation order."""
    check_range(theory, q, n)
    keys = []
    for fam in FAMILIES[theory.name].values():
        if fam.degree != q or (fam.formal and not theory.formal):
            continue
        keys.extend((fam.name, s) for s in fam.indices(n))
    return keys


@lru_cache(maxsize=None)
def order_of(theory: Theory, key: tuple[str, int], n: int) -> int:
    fam = family(theory, key[0])
    return fam.order(key[1], n)


def label_of(theory: Theory, key: tuple[str, int]) -> str:
    return family(theory, key[0]).label(key[1])


@lru_cache(maxsize=None)
def cell_group(theory: Theory, q: int, n: int) -> AbelianGroup:
    """The presented group, or the covering group for the degree-4 relative cell."""
    keys = generators(theory, q, n)
    orders = [order_of(theory, k, n) for k in keys]
    return direct_sum_of_cyclics(orders, [label_of(theory, k) for k in keys])


def group_of(theory: Theory, q: int, n: int) -> AbelianGroup:
    if isinstance(theory, str):
        theory = Theory.parse(theory)
    if (theory.name, q) in COVER_CELLS:
        raise OutOfImplementedRange("only a generating set dV^s(nu~) is known in degree 4")
    return cell_group(Theory(theory.name, theory.u, theory.eta2xi11), q, n)


# ------------------------------------------------------------------ elements

def _normalize(theory: Theory, n: int, terms: dict) -> tuple:
    out = {}
    for key, c in terms.items():
        c = int(c)
        order = order_of(theory, key, n)
        if order:
            c %= order
        if c:
            out[key] = c
    rank = _FAMILY_RANK[theory.name]
    return tuple(sorted(out.items(), key=lambda kv: (rank[kv[0][0]], kv[0][1])))


@dataclass(frozen=True)
class TRElement:
    theory: Theory
    q: int
    n: int
    terms: tuple = ()

    @classmethod
    def make(cls, theory: Theory, q: int, n: int, terms=None) -> "TRElement":
        check_range(theory, q, n)
        terms = dict(terms or {})
        for key in terms:
            fam = family(theory, key[0])
            if fam.degree != q:
                raise ValueError(f"{key} does not live in degree {q}")
            if fam.formal and not theory.formal:
                raise ValueError(f"{key} is a formal symbol; use a formal theory")
            if not fam.valid(key[1], n):
                raise ValueError(f"{key} is not a generator at level {n}")
        return cls(theory, q, n, _normalize(theory, n, terms))

    @classmethod
    def zero(cls, theory: Theory, q: int, n: int) -> "TRElement":
        check_range(theory, q, n)
        return cls(theory, q, n, ())

    @classmethod
    def gen(cls, theory: Theory, name: str, s: int, n: int, coeff: int = 1) -> "TRElement":
        return cls.make(theory, family(theory, name).degree, n, {(name, s): coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _same_cell(self, other: "TRElement"):
        if self.q != other.q or self.n != other.n or (
                self.theory is not other.theory and self.theory != other.theory):
            raise ValueError("elements live in different cells")

    def __add__(self, other: "TRElement") -> "TRElement":
        self._same_cell(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = self.as_dict()
        for k, c in other.terms:
            terms[k] = terms.get(k, 0) + c
        return TRElement(self.theory, self.q, self.n, _normalize(self.theory, self.n, terms))

    def __neg__(self) -> "TRElement":
        return self.scale(-1)

    def __sub__(self, other: "TRElement") -> "TRElement":
        return self + (-other)

    def scale(self, factor: int) -> "TRElement":
        if factor == 1 or not self.terms:
            return self
        # scaling keeps the canonical key order, so no re-sort is needed
        out = []
        for key, c in self.terms:
            c *= factor
            order = order_of(self.theory, key, self.n)
            if order:
                c %= order
            if c:
                out.append((key, c))
        return TRElement(self.theory, self.q, self.n, tuple(out))

    def __rmul__(self, factor: int) -> "TRElement":
        return self.scale(factor)

    def coordinates(self) -> list[int]:
        d = self.as_dict()
        return [d.get(k, 0) for k in generators(self.theory, self.q, self.n)]

    def to_json(self) -> list:
        return [{"label": label_of(self.theory, k), "coeff": c} for k, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            label = label_of(self.theory, k)
            parts.append(label if c == 1 else f"{c} {label}")
        return " + ".join(parts)


# ------------------------------------------------------------------ outcomes

@dataclass(frozen=True)
class Known:
    value: TRElement


@dataclass(frozen=True)
class Unknown:
    reason: str


OperatorOutcome = Union[Known, Unknown]


def unwrap(outcome: OperatorOutcome) -> TRElement:
    if isinstance(outcome, Unknown):
        raise UnknownAction(outcome.reason)
    return outcome.value


# ------------------------------------------------------------------ parsing

def _canon(label: str) -> str:
    text = re.sub(r"\s+", "", label)
    text = re.sub(r"(^|[^A-Za-z])V\(", r"\1V^1(", text)
    text = re.sub(r"dV\(", "dV^1(", text)
    text = re.sub(r"dV\^0\(", "d(", text)
    text = re.sub(r"(^|[^A-Za-z])V\^0\(([^()]*)\)$", r"\1\2", text)
    return text


def label_index(theory: Theory, q: int | None, n: int) -> dict[str, tuple[int, tuple[str, int]]]:
    """Canonical label text -> (degree, key) for every generator at level n."""
    index = {}
    for fam in FAMILIES[theory.name].values():
        if q is not None and fam.degree != q:
            continue
        if fam.formal and not theory.formal:
            continue
        for s in fam.indices(n):
            index[_canon(fam.label(s))] = (fam.degree, (fam.name, s))
    return index


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level + and - signs; returns (sign, term) pairs."""
    out, depth, start, sign = [], 0, 0, 1
    text = text.strip()
    for i, ch in enumerate(text):
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and text[:i].strip():
            prev = text[:i].rstrip()[-1]
            if prev in "^_":
                continue
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
    head = text[start:]
    if not out and head.startswith("-"):
        sign, head = -1, head[1:]
    out.append((sign, head))
    return [(s, t.strip()) for s, t in out if t.strip()]


def split_coefficient(term: str) -> tuple[int, str]:
    m = re.match(r"^(\d+)\s*\*?\s*(.*)$", term)
    if not m:
        return 1, term
    digits, rest = m.group(1), m.group(2)
    if not rest:
        return int(digits), "1"
    return int(digits), rest


def parse_element(theory: Theory, n: int, text: str, q: int | None = None) -> TRElement:
    """Parse an integer combination of generator labels such as '3 V^2(eta~) - xi_{1,2}'."""
    index = label_index(theory, q, n)
    terms: dict = {}
    degree = q
    if text.strip() == "0":
        if q is None:
            raise ValueError("the zero element needs an explicit degree")
        return TRElement.zero(theory, q, n)
    for sign, term in split_terms(text):
        coeff, label = split_coefficient(term)
        label = LABEL_ALIASES.get(label.strip(), label)
        canon = _canon(label)
        if canon not in index:
            raise ValueError(f"no generator {label!r} in the {theory.name} theory at level {n}")
        deg, key = index[canon]
        if degree is not None and deg != degree:
            raise ValueError("all terms must have the same degree")
        degree = deg
        terms[key] = terms.get(key, 0) + sign * coeff
    return TRElement.make(theory, degree, n, terms)
