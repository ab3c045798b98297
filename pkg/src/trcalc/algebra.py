"""
Exact integer linear algebra for finitely generated abelian groups.

Matrices are plain lists of lists of Python ints (row-major), so every
entry is an arbitrary-precision integer and nothing ever overflows.
A group is stored in normal form Z^f + Z/d_1 + ... + Z/d_k with
d_1 | d_2 | ... | d_k; an element is an integer coordinate vector whose
torsion coordinates are reduced modulo the matching invariant factor.

>>> snf = smith_normal_form([[2, 4], [6, 8]])
>>> [snf.diagonal[i][i] for i in range(2)]
[2, 4]
>>> cokernel(GroupHom(AbelianGroup.free(1), AbelianGroup.free(1), [[2]])).group
AbelianGroup(Z/2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


class CompositionNotZero(ValueError):
    """Raised when the two maps handed to homology do not compose to zero."""


class NotInSubgroup(ValueError):
    pass


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        flat = tuple(int(x) for r in rows for x in r)
        return cls(len(rows), width, flat)

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]


def identity(size: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def matmul(left, right, inner: int | None = None) -> list[list[int]]:
    if not left:
        return []
    inner = len(right) if inner is None else inner
    width = len(right[0]) if right else 0
    out = []
    for row in left:
        acc = [0] * width
        for k, coeff in enumerate(row):
            if coeff:
                for j, y in enumerate(right[k]):
                    if y:
                        acc[j] += coeff * y
        out.append(acc)
    return out


def matvec(matrix, vector) -> list[int]:
    return [sum(c * v for c, v in zip(row, vector) if c and v) for row in matrix]


def transpose(matrix, rows: int | None = None, cols: int | None = None) -> list[list[int]]:
    if rows is None:
        rows = len(matrix)
    if cols is None:
        cols = len(matrix[0]) if matrix else 0
    return [[matrix[i][j] for i in range(rows)] for j in range(cols)]


def determinant(matrix) -> int:
    """Bareiss fraction-free determinant."""
    size = len(matrix)
    if size == 0:
        return 1
    work = [list(r) for r in matrix]
    sign, prev = 1, 1
    for k in range(size - 1):
        if work[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if work[i][k] != 0), None)
            if swap is None:
                return 0
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
        prev = work[k][k]
    return sign * work[-1][-1]


# ---------------------------------------------------------- Smith form

@dataclass
class SmithForm:
    """u * m * v = diagonal, with u and v unimodular.

    The inverses are tracked alongside so that changes of basis can be
    undone without a second elimination.
    """
    diagonal: list
    u: list
    v: list
    u_inv: list
    v_inv: list
    rank: int

    def invariants(self) -> list[int]:
        size = min(len(self.diagonal), len(self.diagonal[0]) if self.diagonal else 0)
        return [self.diagonal[i][i] for i in range(size)]


def smith_normal_form(matrix, track=("u", "v", "u_inv", "v_inv")) -> SmithForm:
    """Diagonalize; only the transforms named in `track` are maintained."""
    if isinstance(matrix, IntMatrix):
        rows, cols, work = matrix.rows, matrix.cols, matrix.to_rows()
    else:
        work = [list(map(int, r)) for r in matrix]
        rows = len(work)
        cols = len(work[0]) if rows else 0
    u = identity(rows) if "u" in track else None
    u_inv = identity(rows) if "u_inv" in track else None
    v = identity(cols) if "v" in track else None
    v_inv = identity(cols) if "v_inv" in track else None

    def swap_rows(i, j):
        work[i], work[j] = work[j], work[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]
        if u_inv is not None:
            for r in u_inv:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in work:
            r[i], r[j] = r[j], r[i]
        if v is not None:
            for r in v:
                r[i], r[j] = r[j], r[i]
        if v_inv is not None:
            v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(target, source, factor):
        # row_target += factor * row_source
        if factor == 0:
            return
        src_row = work[source]
        tgt_row = work[target]
        for k in range(cols):
            if src_row[k]:
                tgt_row[k] += factor * src_row[k]
        if u is not None:
            u[target] = [a + factor * b for a, b in zip(u[target], u[source])]
        if u_inv is not None:
            for r in u_inv:
                if r[target]:
                    r[source] -= factor * r[target]

    def add_col(target, source, factor):
        if factor == 0:
            return
        for r in work:
            if r[source]:
                r[target] += factor * r[source]
        if v is not None:
            for r in v:
                if r[source]:
                    r[target] += factor * r[source]
        if v_inv is not None:
            v_inv[source] = [a - factor * b for a, b in zip(v_inv[source], v_inv[target])]

    def negate_row(i):
        work[i] = [-a for a in work[i]]
        if u is not None:
            u[i] = [-a for a in u[i]]
        if u_inv is not None:
            for r in u_inv:
                r[i] = -r[i]

    def smallest_entry(start):
        best, best_abs = None, 0
        for i in range(start, rows):
            row = work[i]
            for j in range(start, cols):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if best is None or ax < best_abs:
                        best, best_abs = (i, j), ax
                        if ax == 1:
                            return best
        return best

    pivot = 0
    while pivot < min(rows, cols):
        best = smallest_entry(pivot)
        if best is None:
            break
        swap_rows(pivot, best[0])
        swap_cols(pivot, best[1])
        while True:
            lead = work[pivot][pivot]
            dirty = False
            for i in range(pivot + 1, rows):
                if work[i][pivot]:
                    add_row(i, pivot, -(work[i][pivot] // lead))
                    if work[i][pivot]:
                        dirty = True
            for j in range(pivot + 1, cols):
                if work[pivot][j]:
                    add_col(j, pivot, -(work[pivot][j] // lead))
                    if work[pivot][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(pivot, rows):
                    if work[i][pivot] and (best is None or abs(work[i][pivot]) < abs(work[best][pivot])):
                        best = i
                if best != pivot:
                    swap_rows(pivot, best)
                best = None
                for j in range(pivot, cols):
                    if work[pivot][j] and (best is None or abs(work[pivot][j]) < abs(work[pivot][best])):
                        best = j
                if best != pivot:
                    swap_cols(pivot, best)
                continue
            # divisibility: the pivot must divide the remaining block
            offender = None
            if lead not in (1, -1):
                for i in range(pivot + 1, rows):
                    row = work[i]
                    for j in range(pivot + 1, cols):
                        if row[j] % lead:
                            offender = i
                            break
                    if offender is not None:
                        break
            if offender is None:
                break
            add_row(pivot, offender, 1)
        if work[pivot][pivot] < 0:
            negate_row(pivot)
        pivot += 1
    return SmithForm(work, u, v, u_inv, v_inv, pivot)


# ---------------------------------------------------------- lattices

def lattice_kernel(matrix, cols: int) -> list[list[int]]:
    """Basis (as columns of a cols x k matrix) of {x in Z^cols : matrix x = 0}."""
    if not matrix:
        return identity(cols)
    snf = smith_normal_form(matrix, track=("v",))
    return [[snf.v[i][j] for j in range(snf.rank, cols)] for i in range(cols)]


def lattice_basis(generators, ambient: int) -> list[list[int]]:
    """Basis columns for the span of the generator columns."""
    gen_count = len(generators[0]) if generators and generators[0] else 0
    if gen_count == 0:
        return [[] for _ in range(ambient)]
    snf = smith_normal_form(generators, track=("u_inv",))
    return [[snf.u_inv[i][k] * snf.diagonal[k][k] for k in range(snf.rank)] for i in range(ambient)]


class LatticeSolver:
    """Solves basis * x = target repeatedly against one Smith factorization."""

    def __init__(self, basis, ambient: int):
        self.ambient = ambient
        self.width = len(basis[0]) if basis and basis[0] else 0
        self.snf = smith_normal_form(basis, track=("u", "v")) if self.width else None

    def solve_column(self, target) -> list | None:
        target = [int(x) for x in target]
        if self.width == 0:
            return None if any(target) else []
        snf = self.snf
        moved = matvec(snf.u, target)
        if any(moved[k] for k in range(snf.rank, self.ambient)):
            return None
        y = []
        for k in range(self.width):
            if k < snf.rank:
                d = snf.diagonal[k][k]
                if moved[k] % d:
                    return None
                y.append(moved[k] // d)
            else:
                y.append(0)
        return matvec(snf.v, y)


def solve_integral(basis, targets, ambient: int):
    """Integer X with basis * X = targets, or None if some column is not in the span."""
    tcount = len(targets[0]) if targets and targets[0] else 0
    solver = LatticeSolver(basis, ambient)
    columns = []
    for j in range(tcount):
        x = solver.solve_column([targets[i][j] for i in range(ambient)])
        if x is None:
            return None
        columns.append(x)
    return [[columns[j][k] for j in range(tcount)] for k in range(solver.width)]


# ---------------------------------------------------------- groups

def _normalize_torsion(torsion) -> tuple:
    return tuple(int(d) for d in torsion)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/torsion[0] + ..., torsion smallest first.

    generators[i] labels coordinate i: the free generators come first,
    then the torsion generators in the order of `torsion`.
    """
    free_rank: int = 0
    torsion: tuple = ()
    generators: tuple = field(default=(), compare=False)

    def __post_init__(self):
        torsion = _normalize_torsion(self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if any(d < 2 for d in torsion):
            raise ValueError("torsion factors must be at least 2")
        if any(torsion[i + 1] % torsion[i] for i in range(len(torsion) - 1)):
            raise ValueError("torsion factors must form a divisibility chain")
        labels = tuple(self.generators)
        if not labels:
            labels = tuple(f"g{i}" for i in range(self.dimension))
        if len(labels) != self.dimension:
            raise ValueError("one label per cyclic summand required")
        object.__setattr__(self, "generators", labels)

    @classmethod
    def free(cls, rank: int, labels=()) -> "AbelianGroup":
        return cls(rank, (), tuple(labels))

    @classmethod
    def cyclic(cls, order: int, label: str = "g0") -> "AbelianGroup":
        if order == 0:
            return cls(1, (), (label,))
        if order == 1:
            return cls(0, (), ())
        return cls(0, (order,), (label,))

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(0, (), ())

    @classmethod
    def from_orders(cls, orders: Sequence[int], labels: Sequence[str] | None = None) -> "AbelianGroup":
        """Isomorphism type of a direct sum of cyclic groups (0 = infinite)."""
        return direct_sum_of_cyclics(orders, labels)

    @property
    def dimension(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple:
        return (0,) * self.free_rank + self.torsion

    def is_trivial(self) -> bool:
        return self.dimension == 0

    def order(self):
        if self.free_rank:
            return "infinite"
        total = 1
        for d in self.torsion:
            total *= d
        return total

    def reduce(self, vector) -> tuple:
        return tuple(v % d if d else v for v, d in zip(vector, self.orders))

    def elementary_divisors(self) -> list[int]:
        out = []
        for d in self.torsion:
            n, p = d, 2
            while n > 1:
                if n % p == 0:
                    q = 1
                    while n % p == 0:
                        n //= p
                        q *= p
                    out.append(q)
                p += 1
        return sorted(out)

    def isomorphic(self, other: "AbelianGroup") -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def relabel(self, labels) -> "AbelianGroup":
        return AbelianGroup(self.free_rank, self.torsion, tuple(labels))

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion),
                "generators": list(self.generators)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(data["free_rank"], tuple(data["torsion"]), tuple(data["generators"]))

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AbelianGroup({self.describe()})"


def direct_sum_of_cyclics(orders, labels=None) -> AbelianGroup:
    """Normal form of Z/o_1 + Z/o_2 + ... where an order of 0 means Z."""
    orders = list(orders)
    labels = list(labels) if labels is not None else [f"g{i}" for i in range(len(orders))]
    kept = [(o, l) for o, l in zip(orders, labels) if o != 1]
    free = [l for o, l in kept if o == 0]
    tors = [o for o, _ in kept if o]
    if len(free) == sum(1 for o, _ in kept[:len(free)] if o == 0) and \
            all(tors[i + 1] % tors[i] == 0 for i in range(len(tors) - 1)):
        # already in normal form
        return AbelianGroup(len(free), tuple(tors), tuple(l for _, l in kept))
    diagonal = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
    return subquotient(identity(len(orders)), diagonal, len(orders), labels).group


# ---------------------------------------------------------- subquotients

@dataclass
class Subquotient:
    """L / K for lattices K <= L <= Z^ambient, in normal form.

    `generators` holds ambient vectors representing the cyclic summands,
    `coordinates` maps an ambient vector of L to its normal-form
    coordinates.
    """
    group: AbelianGroup
    ambient: int
    generator_vectors: list
    _basis: list
    _change: list
    _keep: list

    _solver: LatticeSolver | None = None

    def _solve(self, vector):
        if self._solver is None:
            self._solver = LatticeSolver(self._basis, self.ambient)
        return self._solver.solve_column(vector)

    def coordinates(self, vector) -> tuple:
        y = self._solve(vector)
        if y is None:
            raise NotInSubgroup("vector is not a cycle")
        if not self._keep:
            return ()
        z = matvec(self._change, y)
        return self.group.reduce([z[k] for k in self._keep])

    def contains(self, vector) -> bool:
        return self._solve(vector) is not None


def _label_for(vector, labels) -> str:
    terms = []
    for coeff, label in zip(vector, labels):
        if coeff == 0:
            continue
        if coeff == 1:
            terms.append(label)
        elif coeff == -1:
            terms.append(f"-{label}")
        else:
            terms.append(f"{coeff}{label}" if not label[:1].isdigit() else f"{coeff}*{label}")
    if not terms:
        return "0"
    text = terms[0]
    for t in terms[1:]:
        text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return text


def subquotient(numerator, denominator, ambient: int, labels=None) -> Subquotient:
    """Normal form of span(numerator columns) / span(denominator columns).

    The denominator must lie inside the numerator span.
    """
    labels = list(labels) if labels is not None else [f"e{i}" for i in range(ambient)]
    basis = lattice_basis(numerator, ambient) if numerator and numerator[0] else [[] for _ in range(ambient)]
    width = len(basis[0]) if basis and basis[0] else 0
    den_count = len(denominator[0]) if denominator and denominator[0] else 0
    solver = LatticeSolver(basis, ambient)
    if den_count:
        rel = []
        for j in range(den_count):
            x = solver.solve_column([denominator[i][j] for i in range(ambient)])
            if x is None:
                raise NotInSubgroup("denominator not contained in numerator")
            rel.append(x)
        rel = [[rel[j][k] for j in range(den_count)] for k in range(width)]
    else:
        rel = [[] for _ in range(width)]
    if width == 0:
        return Subquotient(AbelianGroup.trivial(), ambient, [], basis, [], [])
    if den_count:
        snf = smith_normal_form(rel, track=("u", "u_inv"))
        change, change_inv = snf.u, snf.u_inv
        diag = [snf.diagonal[k][k] if k < min(width, den_count) else 0 for k in range(width)]
    else:
        change, change_inv = identity(width), identity(width)
        diag = [0] * width
    keep = [k for k in range(width) if diag[k] != 1]
    # free summands first, then torsion smallest first (the Smith chain is
    # already increasing, zeros trail it)
    free_idx = [k for k in keep if diag[k] == 0]
    tors_idx = [k for k in keep if diag[k] != 0]
    order = free_idx + tors_idx
    gens = []
    for k in order:
        column = [change_inv[i][k] for i in range(width)]
        gens.append(matvec(basis, column))
    # sign-normalize so that the first nonzero entry is positive
    for idx, g in enumerate(gens):
        lead = next((x for x in g if x), 0)
        if lead < 0:
            gens[idx] = [-x for x in g]
            k = order[idx]
            change = [list(r) for r in change]
            change[k] = [-x for x in change[k]]
    group_labels = []
    unit_hits = {}
    for i in range(ambient):
        e = [0] * ambient
        e[i] = 1
        y = solver.solve_column(e)
        if y is None:
            continue
        z = matvec(change, y)
        coords = [z[k] for k in order]
        unit_hits[i] = coords
    draft = AbelianGroup(len(free_idx), tuple(diag[k] for k in tors_idx), ())
    for pos, g in enumerate(gens):
        candidates = []
        for i, coords in unit_hits.items():
            reduced = draft.reduce(coords)
            target = tuple(1 if p == pos else 0 for p in range(len(order)))
            if reduced == draft.reduce(target):
                candidates.append(labels[i])
        group_labels.append(min(candidates) if candidates else _label_for(g, labels))
    group = AbelianGroup(draft.free_rank, draft.torsion, tuple(group_labels))
    return Subquotient(group, ambient, gens, basis, change, order, solver)


# ---------------------------------------------------------- homomorphisms

@dataclass
class GroupHom:
    """matrix[i][j]: coordinate i of the image of domain generator j."""
    domain: AbelianGroup
    codomain: AbelianGroup
    matrix: list

    def __post_init__(self):
        rows, cols = self.codomain.dimension, self.domain.dimension
        if isinstance(self.matrix, IntMatrix):
            self.matrix = self.matrix.to_rows()
        if rows == 0:
            self.matrix = []
        elif len(self.matrix) != rows or any(len(r) != cols for r in self.matrix):
            raise ValueError(f"matrix must be {rows}x{cols}")
        self.matrix = [[int(x) for x in r] for r in self.matrix]

    def respects_torsion(self) -> bool:
        for j, order in enumerate(self.domain.orders):
            if order == 0:
                continue
            image = [order * self.matrix[i][j] for i in range(self.codomain.dimension)]
            if any(self.codomain.reduce(image)):
                return False
        return True

    def __call__(self, vector) -> tuple:
        if self.codomain.dimension == 0:
            return ()
        return self.codomain.reduce(matvec(self.matrix, vector))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self after inner."""
        if self.codomain.dimension == 0 or inner.codomain.dimension == 0:
            return GroupHom(inner.domain, self.codomain, zeros(self.codomain.dimension, inner.domain.dimension))
        return GroupHom(inner.domain, self.codomain,
                        matmul(self.matrix, inner.matrix) if inner.domain.dimension else
                        [[] for _ in range(self.codomain.dimension)])

    def is_zero(self) -> bool:
        for j in range(self.domain.dimension):
            column = [self.matrix[i][j] for i in range(self.codomain.dimension)]
            if any(self.codomain.reduce(column)):
                return False
        return True

    @classmethod
    def zero(cls, domain: AbelianGroup, codomain: AbelianGroup) -> "GroupHom":
        return cls(domain, codomain, zeros(codomain.dimension, domain.dimension))

    @classmethod
    def scalar(cls, domain: AbelianGroup, codomain: AbelianGroup, factor: int) -> "GroupHom":
        return cls(domain, codomain, [[factor if i == j else 0 for j in range(domain.dimension)]
                                      for i in range(codomain.dimension)])


def _relations(group: AbelianGroup) -> list:
    """Columns d_i e_i for the torsion summands, as an ambient matrix."""
    dim = group.dimension
    cols = [(k, d) for k, d in enumerate(group.orders) if d]
    return [[d if i == k else 0 for (k, d) in cols] for i in range(dim)]


def _hstack(*blocks, rows: int):
    out = [[] for _ in range(rows)]
    for b in blocks:
        for i in range(rows):
            out[i].extend(b[i] if b else [])
    return out


def _cycle_lattice(h: GroupHom) -> list:
    """Basis columns of {x in Z^dim(domain) : h(x) = 0 in the codomain}."""
    a, b = h.domain.dimension, h.codomain.dimension
    if b == 0:
        return identity(a)
    rel = _relations(h.codomain)
    rel_count = len(rel[0]) if rel and rel[0] else 0
    big = _hstack(h.matrix, [[-x for x in r] for r in rel], rows=b)
    kernel = lattice_kernel(big, a + rel_count)
    projected = [kernel[i] for i in range(a)]
    return lattice_basis(projected, a) if projected and projected[0] else [[] for _ in range(a)]


@dataclass
class KernelResult:
    group: AbelianGroup
    inclusion: GroupHom
    sub: Subquotient


@dataclass
class CokernelResult:
    group: AbelianGroup
    projection: GroupHom
    lift: list
    sub: Subquotient


@dataclass
class HomologyResult:
    group: AbelianGroup
    sub: Subquotient
    cycles: GroupHom

    def coordinates(self, cycle) -> tuple:
        return self.sub.coordinates(cycle)

    def representatives(self) -> list:
        return self.sub.generator_vectors


def kernel(h: GroupHom) -> KernelResult:
    a = h.domain.dimension
    cycles = _cycle_lattice(h)
    relations = _relations(h.domain)
    sub = subquotient(cycles, relations, a, h.domain.generators)
    reps = sub.generator_vectors
    matrix = [[reps[k][i] for k in range(len(reps))] for i in range(a)]
    inclusion = GroupHom(sub.group, h.domain, matrix if a else [])
    return KernelResult(sub.group, inclusion, sub)


def cokernel(h: GroupHom) -> CokernelResult:
    b = h.codomain.dimension
    image = _hstack(h.matrix, _relations(h.codomain), rows=b) if b else []
    sub = subquotient(identity(b), image, b, h.codomain.generators)
    proj_cols = []
    for j in range(b):
        e = [1 if i == j else 0 for i in range(b)]
        proj_cols.append(sub.coordinates(e))
    matrix = [[proj_cols[j][k] for j in range(b)] for k in range(sub.group.dimension)]
    projection = GroupHom(h.codomain, sub.group, matrix)
    return CokernelResult(sub.group, projection, sub.generator_vectors, sub)


def homology(d_in: GroupHom, d_out: GroupHom) -> HomologyResult:
    """ker(d_out) / im(d_in) at the middle group of A -> B -> C."""
    if not d_out.compose(d_in).is_zero():
        raise CompositionNotZero("d_out composed with d_in is nonzero")
    middle = d_in.codomain
    b = middle.dimension
    cycles = _cycle_lattice(d_out)
    boundaries = _hstack(d_in.matrix if d_in.domain.dimension else [[] for _ in range(b)],
                         _relations(middle), rows=b) if b else []
    sub = subquotient(cycles, boundaries, b, middle.generators)
    reps = sub.generator_vectors
    inclusion = GroupHom(sub.group, middle, [[reps[k][i] for k in range(len(reps))] for i in range(b)] if b else [])
    return HomologyResult(sub.group, sub, inclusion)


def induced_map(source: HomologyResult, target: HomologyResult, chain_map: list) -> GroupHom:
    """Map on homology induced by an ambient chain map (list of rows)."""
    columns = []
    for rep in source.representatives():
        image = matvec(chain_map, rep) if chain_map else []
        columns.append(target.coordinates(image))
    dim = target.group.dimension
    matrix = [[columns[j][i] for j in range(len(columns))] for i in range(dim)]
    return GroupHom(source.group, target.group, matrix)
