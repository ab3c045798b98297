"""Homology of cyclic p-groups with trivial coefficients.

G = C_{p^{n-1}} generated by g, resolved by the periodic complex
P_s = Z[G] x_s with dx_s = (g - 1) x_{s-1} for s odd and N x_{s-1} for s
even.  On a trivial module M the invariant complex (P (x) M)^G is M in
every degree, generated by z_s = [N x_s (x) 1], with differential
multiplication by |G| (s even) or 0 (s odd).  That scalar complex is the
main route; the oracle below redoes everything with the full permutation
matrices.

Transfer (level n -> n-1, restriction to the index-p subgroup) and
corestriction (n-1 -> n) are computed from explicit chain maps between
the resolutions on the group-ring basis.  In the coset decomposition
g^{dp + r}, 0 <= r < p, the index d runs over 0 <= d < p^{n-2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (AbelianGroup, GroupHom, HomologyResult, direct_sum_of_cyclics,
                      homology, identity, matvec, zeros, _cycle_lattice, subquotient)


@dataclass(frozen=True)
class CyclicGroup:
    p: int
    n: int

    def __post_init__(self):
        if self.p < 2 or self.n < 1:
            raise ValueError("need a prime p and level n >= 1")

    @property
    def order(self) -> int:
        return self.p ** (self.n - 1)

    def subgroup(self) -> "CyclicGroup":
        return CyclicGroup(self.p, self.n - 1)


@dataclass(frozen=True)
class Coefficients:
    """Z (r is None) or Z/p^r."""
    r: int | None = None

    def __post_init__(self):
        if self.r is not None and self.r < 1:
            raise ValueError("Z/p^r needs r >= 1")

    @classmethod
    def integers(cls) -> "Coefficients":
        return cls(None)

    @classmethod
    def mod_power(cls, r: int) -> "Coefficients":
        return cls(r)

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        if text in ("Z", "integers"):
            return cls(None)
        if text.startswith("Zmod:"):
            return cls(int(text.split(":", 1)[1]))
        raise ValueError(f"coefficients must be Z or Zmod:R, got {text!r}")

    def modulus(self, p: int) -> int:
        return 0 if self.r is None else p ** self.r

    def module(self, p: int, label: str) -> AbelianGroup:
        if self.r is None:
            return AbelianGroup.free(1, (label,))
        return AbelianGroup.cyclic(p ** self.r, label)

    def describe(self) -> str:
        return "Z" if self.r is None else f"Z/p^{self.r}"


@dataclass(frozen=True)
class HomologyClass:
    degree: int
    multiple: int
    base: str

    def __str__(self):
        if self.multiple == 0:
            return "0"
        return self.base if self.multiple == 1 else f"{self.multiple}{self.base}"


def z_label(s: int) -> str:
    return f"z_{s}"


# ------------------------------------------------------------ resolution

def _shift(order: int, power: int = 1) -> list[list[int]]:
    """Matrix of multiplication by g^power on the basis g^0, ..., g^{order-1}."""
    out = zeros(order, order)
    for j in range(order):
        out[(j + power) % order][j] = 1
    return out


def resolution_differential(g: CyclicGroup, s: int) -> list[list[int]]:
    if s < 1:
        raise ValueError("the resolution differential starts at s = 1")
    m = g.order
    if s % 2 == 0:
        return [[1] * m for _ in range(m)]
    shift = _shift(m)
    return [[shift[i][j] - (1 if i == j else 0) for j in range(m)] for i in range(m)]


def chain_map_h(g: CyclicGroup, s: int) -> list[list[int]]:
    """Transfer chain map P_s(C_{p^{n-1}}) -> P_s(C_{p^{n-2}}), linear over the subgroup.

    h(g^{dp+r} x_s) = g'^d x'_s for s even, and the same only for r = p-1
    when s is odd.
    """
    p, big = g.p, g.order
    small = big // p
    out = zeros(small, big)
    for d in range(small):
        for r in range(p):
            if s % 2 == 0 or r == p - 1:
                out[d][d * p + r] = 1
    return out


def chain_map_k(g: CyclicGroup, s: int) -> list[list[int]]:
    """Corestriction chain map P_s(C_{p^{n-2}}) -> P_s(C_{p^{n-1}}) for g at level n.

    k(x'_s) = x_s for s even and (1 + g + ... + g^{p-1}) x_s for s odd,
    extended along g' = g^p.
    """
    p, big = g.p, g.order
    small = big // p
    out = zeros(big, small)
    for d in range(small):
        if s % 2 == 0:
            out[d * p][d] = 1
        else:
            for r in range(p):
                out[d * p + r][d] = 1
    return out


def norm_quotient(g: CyclicGroup) -> list[list[int]]:
    """Multiplication by 1 + g + ... + g^{p-1} on Z[C_{p^{n-1}}]."""
    m = g.order
    out = zeros(m, m)
    for r in range(g.p):
        shift = _shift(m, r)
        for i in range(m):
            for j in range(m):
                out[i][j] += shift[i][j]
    return out


def _invariant_scalar(vector) -> int:
    """The c with vector = c * (1, ..., 1); raises if vector is not constant."""
    if len(set(vector)) != 1:
        raise ValueError("chain map image is not an invariant vector")
    return vector[0]


# ------------------------------------------------------------ scalar route

def _scalar_differential(g: CyclicGroup, s: int) -> int:
    if s < 1:
        return 0
    return g.order if s % 2 == 0 else 0


@lru_cache(maxsize=None)
def _scalar_homology(g: CyclicGroup, c: Coefficients, s: int) -> HomologyResult:
    module = c.module(g.p, z_label(s))
    below = c.module(g.p, z_label(s - 1)) if s >= 1 else AbelianGroup.trivial()
    above = c.module(g.p, z_label(s + 1))
    d_out = GroupHom(module, below, [[_scalar_differential(g, s)]] if s >= 1 else [])
    d_in = GroupHom(above, module, [[_scalar_differential(g, s + 1)]])
    return homology(d_in, d_out)


def homology_group(g: CyclicGroup, c: Coefficients, s: int) -> AbelianGroup:
    if s < 0:
        raise ValueError("degree must be nonnegative")
    return _scalar_homology(g, c, s).group


def homology_generator(g: CyclicGroup, c: Coefficients, s: int) -> HomologyClass | None:
    """The labeled generator, as a multiple of z_s; None when the group is zero."""
    result = _scalar_homology(g, c, s)
    if result.group.is_trivial():
        return None
    rep = result.representatives()[0][0]
    return HomologyClass(s, rep, z_label(s))


def _induced_scalar(source: HomologyResult, target: HomologyResult, factor: int) -> GroupHom:
    columns = [target.coordinates([factor * rep[0]]) for rep in source.representatives()]
    dim = target.group.dimension
    matrix = [[columns[j][i] for j in range(len(columns))] for i in range(dim)]
    return GroupHom(source.group, target.group, matrix)


@lru_cache(maxsize=None)
def transfer_factor(g: CyclicGroup, s: int) -> int:
    """Image of z_s under the transfer, read off the chain map h."""
    image = matvec(chain_map_h(g, s), [1] * g.order)
    return _invariant_scalar(image)


@lru_cache(maxsize=None)
def corestriction_factor(g: CyclicGroup, s: int) -> int:
    """Image of z'_s under the corestriction: k, then the norm quotient."""
    small = g.order // g.p
    image = matvec(norm_quotient(g), matvec(chain_map_k(g, s), [1] * small))
    return _invariant_scalar(image)


def transfer(g: CyclicGroup, c: Coefficients, s: int) -> GroupHom:
    """F: H_s(C_{p^{n-1}}; M) -> H_s(C_{p^{n-2}}; M)."""
    if g.n < 2:
        raise ValueError("transfer needs n >= 2")
    return _induced_scalar(_scalar_homology(g, c, s), _scalar_homology(g.subgroup(), c, s),
                           transfer_factor(g, s))


def corestriction(g: CyclicGroup, c: Coefficients, s: int) -> GroupHom:
    """V: H_s(C_{p^{n-1}}; M) -> H_s(C_{p^n}; M), for g at level n."""
    big = CyclicGroup(g.p, g.n + 1)
    return _induced_scalar(_scalar_homology(g, c, s), _scalar_homology(big, c, s),
                           corestriction_factor(big, s))


# ------------------------------------------------------------ closed forms

def closed_form_orders(g: CyclicGroup, c: Coefficients, s: int) -> list[int]:
    """Invariant factors predicted by the standard case analysis (0 means Z)."""
    p, n = g.p, g.n
    if c.r is None:
        if s == 0:
            return [0]
        if s % 2 == 1:
            return [p ** (n - 1)] if n > 1 else []
        return []
    r = c.r
    if s == 0:
        return [p ** r]
    k = min(r, n - 1)
    return [p ** k] if k > 0 else []


def closed_form_generator(g: CyclicGroup, c: Coefficients, s: int) -> HomologyClass | None:
    if not closed_form_orders(g, c, s):
        return None
    if c.r is not None and s > 0 and s % 2 == 0 and c.r > g.n - 1:
        return HomologyClass(s, g.p ** (c.r - (g.n - 1)), z_label(s))
    return HomologyClass(s, 1, z_label(s))


def closed_form_transfer(p: int, s: int) -> int:
    return 1 if s % 2 == 1 else p


def closed_form_corestriction(p: int, s: int) -> int:
    return p if s % 2 == 1 else 1


# ------------------------------------------------------------ matrix oracle

def _oracle_key(s: int) -> int:
    # the complex is 2-periodic above degree 0
    if s == 0:
        return 0
    return 1 if s % 2 else 2


@lru_cache(maxsize=None)
def _oracle(p: int, n: int, r: int | None, key: int) -> AbelianGroup:
    g = CyclicGroup(p, n)
    c = Coefficients(r)
    s = key
    m = g.order
    mod = c.modulus(p)
    torsion = (mod,) * m if mod else ()
    free = 0 if mod else m
    ambient_group = AbelianGroup(free, torsion, tuple(f"g^{i}" for i in range(m)))
    shift = _shift(m)
    fix = [[shift[i][j] - (1 if i == j else 0) for j in range(m)] for i in range(m)]
    doubled = AbelianGroup(0 if mod else 2 * m, (mod,) * (2 * m) if mod else ())

    def invariant_cycles(degree):
        d = resolution_differential(g, degree) if degree >= 1 else zeros(m, m)
        return _cycle_lattice(GroupHom(ambient_group, doubled, fix + d))

    cycles = invariant_cycles(s)
    invariants_above = _cycle_lattice(GroupHom(ambient_group, ambient_group, fix))
    d_above = resolution_differential(g, s + 1)
    width = len(invariants_above[0]) if invariants_above and invariants_above[0] else 0
    boundaries = [[sum(d_above[i][k] * invariants_above[k][j] for k in range(m)) for j in range(width)]
                  for i in range(m)]
    if mod:
        for i in range(m):
            boundaries[i].extend(mod if i == j else 0 for j in range(m))
    return subquotient(cycles, boundaries, m).group


def oracle_homology_group(g: CyclicGroup, c: Coefficients, s: int) -> AbelianGroup:
    """Same groups from the permutation action on (Z[G] (x) M) directly."""
    return _oracle(g.p, g.n, c.r, _oracle_key(s))


def table(p: int, n: int, c: Coefficients, smax: int) -> list[dict]:
    g = CyclicGroup(p, n)
    rows = []
    for s in range(smax + 1):
        gen = homology_generator(g, c, s)
        row = {"s": s, "group": homology_group(g, c, s).to_json(),
               "generator": str(gen) if gen else "0"}
        if n >= 2:
            row["F"] = transfer(g, c, s).matrix
        row["V"] = corestriction(g, c, s).matrix
        rows.append(row)
    return rows
