"""The operators R, F, V, d, eta, nu and S on presented TR groups.

Each operator is tabulated on generators and extended linearly.  A
generator-level entry is either a dict {key: coefficient} in the target
cell or an Unknown.  An Unknown contribution is dropped when its
coefficient is annihilated anyway (zero coefficient, trivial target, or a
coefficient divisible by the target exponent); otherwise the whole
application is Unknown.

The relations built into the tables: FV = 2, FdV = d + eta, dd = eta d,
Vd = 2dV, dF = 2Fd, the projection formula and d(eta) = 0.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import OutOfImplementedRange
from .presentations import (INTEGERS, MAX_DEGREE, RELATIVE, SPHERE, Known, OperatorOutcome,
                            TRElement, Theory, Unknown, cell_group, family, generators,
                            order_of, unwrap)

OPERATORS = ("R", "F", "V", "d", "mul_eta", "mul_nu", "S")

_SHIFT = {"R": (0, -1), "F": (0, -1), "V": (0, 1), "d": (1, 0), "mul_eta": (1, 0),
          "mul_nu": (3, 0), "S": (0, 1)}


def target_cell(op: str, q: int, n: int) -> tuple[int, int]:
    dq, dn = _SHIFT[op]
    return q + dq, n + dn


def _one(name, s, c=1):
    return {(name, s): c}


def _plus(*parts) -> dict | Unknown:
    out: dict = {}
    for part in parts:
        if isinstance(part, Unknown):
            return part
        for k, c in part.items():
            out[k] = out.get(k, 0) + c
    return out


def _scaled(part, c):
    if isinstance(part, Unknown):
        return part
    return {k: c * v for k, v in part.items()}


def _keep(theory: Theory, name: str, s: int, n: int) -> dict:
    """The generator at level n if it exists there, else zero."""
    return _one(name, s) if family(theory, name).valid(s, n) else {}


# ------------------------------------------------------------------ sphere

def _eta2xi11(theory: Theory) -> dict | Unknown:
    if theory.eta2xi11 == "4xi31":
        return _one("xi3", 1, 4)
    if theory.eta2xi11 == "4xi31+4Vnu":
        return _plus(_one("xi3", 1, 4), _one("Vnu", 1, 4))
    return Unknown("eta^2 xi_{1,1}")


def _sphere(op: str, theory: Theory, name: str, s: int, n: int):
    if op in ("R", "S"):
        return _keep(theory, name, s, n - 1 if op == "R" else n + 1)
    if op == "F":
        if name == "V1":
            return _one("V1", 0) if s == 0 else _one("V1", s - 1, 2)
        if name in ("Veta", "Veta2"):
            return _one(name, 0) if s == 0 else {}
        if name == "Vnu":
            return _one("Vnu", 0) if s == 0 else _one("Vnu", s - 1, 2)
        if name == "xi1":
            return _one("Veta", 0) if s == 1 else _one("xi1", s - 1)
        if name == "etaxi1":
            return _one("Veta2", 0) if s == 1 else _one("etaxi1", s - 1)
        if name == "xi3":
            return _one("Vnu", 0) if s == 1 else _one("xi3", s - 1)
        if name == "eta2xi1":
            return _eta2xi11(theory) if s == 2 else _one("eta2xi1", s - 1)
        if name == "nuxi1":
            return {} if s == 1 else _one("nuxi1", s - 1)
        if name == "xi5":
            return {} if s == 2 else _one("xi5", s - 1)
        if name == "Vrho":
            return {}
    if op == "V":
        if name in ("V1", "Veta", "Veta2", "Vnu", "Vrho"):
            return _one(name, s + 1)
        if name == "xi1":
            return _plus(_one("xi1", s + 1, 2), _one("Veta", s + 1))
        if name == "etaxi1":
            return _one("Veta2", s + 1)
        if name == "eta2xi1":
            return _one("Vnu", s + 1, 4)
        if name == "nuxi1":
            return _one("nuxi1", s + 1, 2)
        return Unknown(f"V({name}_{s})")
    if op == "d":
        if name == "V1":
            return {} if s == 0 else _plus(_one("xi1", s), _one("Veta", s))
        if name == "Veta":
            return {} if s == 0 else _plus(_one("etaxi1", s), _one("Veta2", s))
        if name == "Veta2":
            if s == 0:
                return {}
            eta2xi = _eta2xi11(theory) if s == 1 else _one("eta2xi1", s)
            return _plus(eta2xi, _one("Vnu", s, 4))
        if name == "Vnu":
            return {} if s == 0 else _one("nuxi1", s)
        if name in ("xi1", "etaxi1", "eta2xi1", "nuxi1"):
            return {}
        return Unknown(f"d({name}_{s})")
    if op == "mul_eta":
        if name == "V1":
            return _one("Veta", s)
        if name == "Veta":
            return _one("Veta2", s)
        if name == "xi1":
            return _one("etaxi1", s)
        if name == "Veta2":
            return _one("Vnu", s, 4)
        if name == "etaxi1":
            return _eta2xi11(theory) if s == 1 else _one("eta2xi1", s)
        if name == "eta2xi1":
            return _one("nuxi1", s, 4)
        if name in ("Vnu", "nuxi1"):
            return {}
        return Unknown(f"eta * {name}_{s}")
    if op == "mul_nu":
        if name == "V1":
            return _one("Vnu", s)
        if name == "xi1":
            return _one("nuxi1", s)
        if name == "Veta":
            return {}
        return Unknown(f"nu * {name}_{s}")
    raise ValueError(op)


# ------------------------------------------------------------------ integers

def _x(s: int, n: int) -> dict:
    """The image of V^s(eta) under the Hurewicz map, at level n."""
    if s == 0:
        return _one("xi1", 1) if n >= 2 else {}
    return {("xi1", t): 2 ** (t - 1) for t in range(s + 1, n)}


def _ell_xi5(theory: Theory, t: int, m: int) -> dict:
    """Hurewicz image of xi_{5,t} at level m, in the zeta basis."""
    if t <= 1:
        return {}
    if t < m - 1:
        return _plus(_one("zeta5", t), _one("zeta5", t + 1, -1))
    return _plus(_one("zeta5", t), _one("kappa", 0, -4 * theory.u))


def _integers(op: str, theory: Theory, name: str, s: int, n: int):
    if op == "S":
        raise ValueError("S is defined only for the sphere theory")
    if op == "R":
        if name == "zeta5" and s == n - 1:
            return _scaled(_keep(theory, "kappa", 0, n - 1), 4 * theory.u)
        return _keep(theory, name, s, n - 1)
    if op == "F":
        if name == "V1":
            return _one("V1", 0) if s == 0 else _one("V1", s - 1, 2)
        if name == "xi1":
            return _x(0, n - 1) if s == 1 else _one("xi1", s - 1)
        if name == "lambda":
            return _one("lambda", 0)
        if name == "xi3":
            return Unknown("F(xi_{3,2})") if s == 2 else _one("xi3", s - 1)
        if name == "kappa":
            return _keep(theory, "kappa", 0, n - 1)
        if name == "zeta5":
            # zeta_s = xi_{5,s} + ... + xi_{5,n-1} + 4u kappa
            parts = [_ell_xi5(theory, t - 1, n - 1) for t in range(s, n)]
            parts.append(_scaled(_keep(theory, "kappa", 0, n - 1), 4 * theory.u))
            return _plus(*parts)
    if op == "V":
        if name == "V1":
            return _one("V1", s + 1)
        if name == "xi1":
            return _plus(_one("xi1", s + 1, 2), _x(s + 1, n + 1))
        return Unknown(f"V({name}_{s})")
    if op == "d":
        if name == "V1":
            return {} if s == 0 else _plus(_one("xi1", s), _x(s, n))
        return {}
    if op == "mul_eta":
        if name == "V1":
            return _x(s, n)
        return {}
    if op == "mul_nu":
        if name == "V1":
            return {} if s == n - 1 else Unknown(f"Hurewicz image of V^{s}(nu)")
        return {}
    raise ValueError(op)


# ------------------------------------------------------------------ relative

def _symbol(theory: Theory, name: str, k: int, n: int):
    """A formal product, with its rewriting at the top depth k = n-1."""
    if name == "Veta2eta~":
        if k == n - 1:
            return _one("Vnu~", k, 4)
    elif name == "Vetanu~":
        if k == n - 1:
            return {}
    elif name == "dVeta2eta~":
        if k == 0:
            return {}
        if k == n - 1:
            return _one("dVnu~", k, 4)
    if theory.formal:
        return _one(name, k)
    return Unknown({"Veta2eta~": "V^k(eta^2 eta~)", "Vetanu~": "V^k(eta nu~)",
                    "dVeta2eta~": "dV^k(eta^2 eta~)"}[name].replace("k", str(k)))


_FORMAL = ("Veta2eta~", "Vetanu~", "dVeta2eta~")


def _relative(op: str, theory: Theory, name: str, s: int, n: int):
    if op == "S":
        raise ValueError("S is defined only for the sphere theory")
    if op == "R":
        if name in _FORMAL:
            return _symbol(theory, name, s, n - 1)
        return _keep(theory, name, s, n - 1)
    if op == "F":
        if name in ("Veta~", "Vetaeta~", "Veta2eta~", "Vetanu~"):
            return {}
        if name == "dVeta~":
            return _one("dVeta~", 0) if s == 0 else _plus(_one("dVeta~", s - 1),
                                                          _one("Vetaeta~", s - 1))
        if name == "Vnu~":
            return {} if s == 0 else _one("Vnu~", s - 1, 2)
        if name == "dVetaeta~":
            first = {} if s == 1 else _one("dVetaeta~", s - 1)
            return _plus(first, _symbol(theory, "Veta2eta~", s - 1, n - 1))
        if name == "dVnu~":
            if s == 0:
                return Unknown("F(d(nu~))")
            return _plus(_one("dVnu~", s - 1), _symbol(theory, "Vetanu~", s - 1, n - 1))
        if name == "dVeta2eta~":
            return _symbol(theory, "dVeta2eta~", s - 1, n - 1)
    if op == "V":
        if name in _FORMAL[:2]:
            return _symbol(theory, name, s + 1, n + 1)
        if name in ("Veta~", "Vetaeta~", "Vnu~"):
            return _one(name, s + 1)
        if name == "dVnu~":
            return _one("dVnu~", s + 1, 2)
        return {}   # 2 dV^{s+1}(b) with 2b = 0
    if op == "d":
        if name == "Veta~":
            return _one("dVeta~", s)
        if name in ("Vetaeta~", "dVeta~"):
            return {} if s == 0 else _one("dVetaeta~", s)
        if name == "Vnu~":
            return _one("dVnu~", s)
        if name in ("dVetaeta~", "Veta2eta~"):
            return _symbol(theory, "dVeta2eta~", s, n)
    if op == "mul_eta":
        if name == "Veta~":
            return _one("Vetaeta~", s)
        if name == "Vetaeta~":
            return _symbol(theory, "Veta2eta~", s, n)
        if name == "dVeta~":
            return {} if s == 0 else _one("dVetaeta~", s)
        if name == "Vnu~":
            return _symbol(theory, "Vetanu~", s, n)
        if name == "dVetaeta~":
            return _symbol(theory, "dVeta2eta~", s, n)
        if name == "Veta2eta~":
            return {}
    if op == "mul_nu":
        return Unknown(f"nu * {name}_{s}")
    raise ValueError(f"{op} on {name}")


_TABLES = {SPHERE: _sphere, INTEGERS: _integers, RELATIVE: _relative}


# ------------------------------------------------------------------ apply

def _exponent(orders) -> int:
    exp = 1
    for o in orders:
        if o == 0:
            return 0
        exp = max(exp, o)
    return exp


@lru_cache(maxsize=None)
def _cell_orders(theory: Theory, q: int, n: int) -> tuple:
    return tuple(order_of(theory, k, n) for k in generators(theory, q, n))


def apply(op: str, x: TRElement) -> OperatorOutcome:
    if op not in OPERATORS:
        raise ValueError(f"unknown operator {op!r}")
    if op == "S" and x.theory.name != SPHERE:
        raise ValueError("S is defined only for the sphere theory")
    q2, n2 = target_cell(op, x.q, x.n)
    if n2 < 1:
        raise OutOfImplementedRange(f"{op} needs level n >= 2")
    if q2 > MAX_DEGREE[x.theory.name]:
        raise OutOfImplementedRange(f"{op} leaves the tabulated degrees")
    orders = _cell_orders(x.theory, q2, n2) if q2 >= 0 else ()
    if all(o == 1 for o in orders):
        return Known(TRElement.zero(x.theory, q2, n2))
    exponent = _exponent(orders)
    table = _TABLES[x.theory.name]
    total: dict = {}
    for (name, s), c in x.terms:
        entry = table(op, x.theory, name, s, x.n)
        if isinstance(entry, Unknown):
            if exponent and c % exponent == 0:
                continue
            return entry
        for k, v in entry.items():
            total[k] = total.get(k, 0) + c * v
    return Known(TRElement.make(x.theory, q2, n2, total))


def apply_chain(ops, x: TRElement) -> OperatorOutcome:
    """Apply ops left to right (first element applied first)."""
    for op in ops:
        outcome = apply(op, x)
        if isinstance(outcome, Unknown):
            return outcome
        x = outcome.value
    return Known(x)


def known(op: str, x: TRElement) -> TRElement:
    return unwrap(apply(op, x))


# ------------------------------------------------------------------ Hurewicz

def hurewicz(x: TRElement) -> OperatorOutcome:
    """The unit map from the sphere theory to the integers."""
    if x.theory.name != SPHERE:
        raise ValueError("the Hurewicz map starts from the sphere theory")
    target_theory = Theory(INTEGERS, x.theory.u)
    n = x.n
    target = cell_group(target_theory, x.q, n)
    if target.is_trivial():
        return Known(TRElement.zero(target_theory, x.q, n))
    exponent = _exponent(target.orders)
    total: dict = {}
    for (name, s), c in x.terms:
        entry = _hurewicz_entry(target_theory, name, s, n)
        if isinstance(entry, Unknown):
            if exponent and c % exponent == 0:
                continue
            return entry
        for k, v in entry.items():
            total[k] = total.get(k, 0) + c * v
    return Known(TRElement.make(target_theory, x.q, n, total))


def _hurewicz_entry(theory: Theory, name: str, s: int, n: int):
    if name == "V1":
        return _one("V1", s)
    if name == "Veta":
        return _x(s, n)
    if name == "xi1":
        return _one("xi1", s)
    if name in ("Veta2", "etaxi1", "eta2xi1", "nuxi1", "Vrho"):
        return {}
    if name == "Vnu":
        return {} if s == n - 1 else Unknown(f"Hurewicz image of V^{s}(nu)")
    if name == "xi3":
        return Unknown("Hurewicz image of xi_{3,1}") if s == 1 else _one("xi3", s)
    if name == "xi5":
        return _ell_xi5(theory, s, n)
    raise ValueError(name)


# ------------------------------------------------------------------ inclusion

def inclusion(x: TRElement, eta2xi11: str | None = None) -> OperatorOutcome:
    """The map from the relative theory to the sphere, from i(eta~) = eta - xi_{1,1}.

    V^k(nu~) and its relatives have no determined image and give Unknown.
    """
    if x.theory.name != RELATIVE:
        raise ValueError("inclusion starts from the relative theory")
    sphere = Theory(SPHERE, x.theory.u, eta2xi11)
    q, n = x.q, x.n
    total = TRElement.zero(sphere, q, n)
    # (number of eta factors, trailing d); V^k(eta^e y) = eta^e V^k(y)
    recipes = {"Veta~": (0, ()), "Vetaeta~": (1, ()), "dVeta~": (0, ("d",)),
               "dVetaeta~": (1, ("d",)), "Veta2eta~": (2, ()), "dVeta2eta~": (2, ("d",))}
    for (name, k), c in x.terms:
        if name not in recipes:
            return Unknown(f"inclusion of {name}_{k}")
        etas, post = recipes[name]
        base_level = n - k
        y = TRElement.gen(sphere, "Veta", 0, base_level)
        if base_level >= 2:
            y = y - TRElement.gen(sphere, "xi1", 1, base_level)
        outcome = apply_chain(["V"] * k + ["mul_eta"] * etas + list(post), y)
        if isinstance(outcome, Unknown):
            return outcome
        total = total + outcome.value.scale(c)
    return Known(total)
