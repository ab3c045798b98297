"""Pages of the skeleton spectral sequence E^2_{s,t} = H_s(C_{2^{n-1}}; TR_t^1).

The coefficient action of the cyclic group is trivial, so the E^2 cell at
(s, t) is the homology of the scalar complex with the module pi_t in every
degree.  Later pages are kept as pairs of lattices (cycles, boundaries)
inside E^2 coordinates; a differential is stored as an E^2-level matrix
that is only evaluated on cycles.

Cells are computed over s + t <= t_max + 1: the extra band supplies the
incoming differentials of the top displayed degree and is never shown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..algebra import (AbelianGroup, GroupHom, HomologyResult, Subquotient, _hstack, _label_for,
                       _relations, homology, identity, induced_map, lattice_basis, lattice_kernel,
                       matmul, matvec, subquotient, zeros)
from ..cyclic import CyclicGroup, corestriction_factor
from ..errors import OutOfImplementedRange
from .stems import INTEGERS, RELATIVE, SPHERE, CoefficientRing, ring

DEFAULT_MAX_PAGE = 6

# d^4 multipliers by s mod 16 in the sphere theory
_NU_PATTERN = {**{k: 1 for k in (0, 1, 2, 3, 8, 9, 10, 11)},
               **{k: 2 for k in (6, 7, 12, 13)},
               **{k: 0 for k in (4, 5, 14, 15)}}

# differentials fixed by external input rather than by a coefficient formula:
# (theory, r, s, t) -> {source coefficient: {target coefficient: coeff}}
LISTED_DIFFERENTIALS = {
    (INTEGERS, 4, 5, 0): {"iota": {"lambda": 1}},
    (INTEGERS, 4, 7, 0): {},
}


def _cols(matrix, rows: int) -> list[list[int]]:
    count = len(matrix[0]) if rows and matrix and matrix[0] else 0
    return [[matrix[i][j] for i in range(rows)] for j in range(count)]


def _rows(columns, rows: int) -> list[list[int]]:
    return [[c[i] for c in columns] for i in range(rows)]


# ------------------------------------------------------------------ E^2 cells

@dataclass(frozen=True)
class E2Cell:
    theory: str
    n: int
    s: int
    t: int
    homology: HomologyResult
    module_labels: tuple

    @property
    def group(self) -> AbelianGroup:
        return self.homology.group

    @property
    def dimension(self) -> int:
        return self.group.dimension

    def module_vector(self, coords) -> list[int]:
        """pi_t vector represented by E^2 coordinates."""
        reps = self.homology.representatives()
        out = [0] * len(self.module_labels)
        for c, rep in zip(coords, reps):
            for i, x in enumerate(rep):
                out[i] += c * x
        return out

    def label(self, coords) -> str:
        vector = self.module_vector(coords)
        orders = ring(self.theory).orders(self.t)
        vector = [v % o if o else v for v, o in zip(vector, orders)]
        return _label_for(vector, self.module_labels)


def _scalar(module: AbelianGroup, factor: int, target: AbelianGroup | None = None) -> GroupHom:
    target = module if target is None else target
    return GroupHom(module, target, [[factor if i == j else 0 for j in range(module.dimension)]
                                     for i in range(target.dimension)])


def _differential_factor(order: int, s: int) -> int:
    return order if s >= 2 and s % 2 == 0 else 0


@lru_cache(maxsize=None)
def e2_cell(theory: str, n: int, s: int, t: int) -> E2Cell:
    coeffs = ring(theory)
    g = CyclicGroup(2, n)
    labels = tuple(f"{label} z_{s}" for label in coeffs.labels(t))
    module = coeffs.group(t)
    if module.generators != tuple(coeffs.labels(t)):
        raise ValueError(f"coefficient row {t} of {theory} is not listed in normal form")
    module = module.relabel(labels)
    below = module if s >= 1 else AbelianGroup.trivial()
    d_out = _scalar(module, _differential_factor(g.order, s), below)
    d_in = _scalar(module, _differential_factor(g.order, s + 1))
    return E2Cell(theory, n, s, t, homology(d_in, d_out), labels)


# ------------------------------------------------------------------ differentials

def coefficient_map(theory: str, r: int, s: int, t: int) -> tuple[list, str] | None:
    """Chain-level coefficient matrix pi_t -> pi_{t+r-1} for d^r out of (s, t)."""
    coeffs = ring(theory)
    target_t = t + r - 1
    if s - r < 0 or target_t > coeffs.t_max:
        return None
    key = (theory, r, s, t)
    if key in LISTED_DIFFERENTIALS:
        action = LISTED_DIFFERENTIALS[key]
        source, target = coeffs.labels(t), coeffs.labels(target_t)
        return [[action.get(a, {}).get(b, 0) for a in source] for b in target], "listed"
    if r == 2:
        if s % 4 in (0, 1):
            d, eta = coeffs.matrix("d", t), coeffs.matrix("eta", t)
            return [[x + y for x, y in zip(rd, re)] for rd, re in zip(d, eta)], "d + eta"
        return coeffs.matrix("d", t), "d"
    if r == 4 and theory == SPHERE:
        factor = _NU_PATTERN[s % 16]
        return coeffs.matrix("nu", t, factor), {0: "0", 1: "nu", 2: "2nu"}[factor]
    return None


def rule_description(theory: str, r: int) -> str:
    if r == 2:
        return "d^2 induced by d + eta for s = 0, 1 mod 4 and by d for s = 2, 3 mod 4"
    if r == 3:
        return "d^3 = 0 (Verschiebung comparison)"
    if r == 4 and theory == SPHERE:
        return "d^4 induced by nu, 2nu or 0 according to s mod 16"
    if r == 4 and theory == INTEGERS:
        return "d^4(iota z_5) = lambda z_1, d^4(iota z_7) = 0, zero otherwise"
    if r == 4:
        return "d^4 = 0 (degree reasons)"
    return f"d^{r} = 0 in the displayed range"


def e2_lift(theory: str, n: int, r: int, s: int, t: int) -> list | None:
    """E^2-coordinate matrix of d^r out of (s, t), or None when it is zero."""
    found = coefficient_map(theory, r, s, t)
    if found is None:
        return None
    chain, _ = found
    source = e2_cell(theory, n, s, t)
    target = e2_cell(theory, n, s - r, t + r - 1)
    if source.dimension == 0 or target.dimension == 0:
        return None
    hom = induced_map(source.homology, target.homology, chain)
    return None if hom.is_zero() else hom.matrix


# ------------------------------------------------------------------ pages

@dataclass(frozen=True)
class PageCell:
    e2: E2Cell
    cycles: tuple          # column vectors in E^2 coordinates
    boundaries: tuple      # column vectors, relations of E^2 included
    sub: Subquotient

    @property
    def group(self) -> AbelianGroup:
        return self.sub.group


def _make_cell(e2: E2Cell, cycles, boundaries) -> PageCell:
    dim = e2.dimension
    cycles = tuple(tuple(c) for c in _cols(lattice_basis(_rows(cycles, dim), dim), dim)) if cycles else ()
    sub = subquotient(_rows(cycles, dim) if cycles else [[] for _ in range(dim)],
                      _rows(boundaries, dim) if boundaries else [[] for _ in range(dim)], dim)
    labels = [e2.label(v) for v in sub.generator_vectors]
    sub.group = sub.group.relabel(labels)
    return PageCell(e2, cycles, tuple(tuple(b) for b in boundaries), sub)


def _initial_cell(e2: E2Cell) -> PageCell:
    dim = e2.dimension
    relations = _cols(_relations(e2.group), dim)
    return _make_cell(e2, _cols(identity(dim), dim), relations)


@dataclass(frozen=True)
class Page:
    theory: str
    n: int
    r: int
    t_max: int
    cells: dict                    # (s, t) -> AbelianGroup, s + t <= t_max
    differentials: dict            # (s, t) -> GroupHom into (s - r, t + r - 1)
    max_page: int = DEFAULT_MAX_PAGE
    rule: str = ""
    state: dict = field(default_factory=dict, repr=False, compare=False)
    lifts: dict = field(default_factory=dict, repr=False, compare=False)

    def group(self, s: int, t: int) -> AbelianGroup:
        return self.cells[(s, t)]

    def target(self, s: int, t: int) -> tuple:
        return (s - self.r, t + self.r - 1)

    def is_terminal(self) -> bool:
        return self.r >= self.max_page


def _window(coeffs: CoefficientRing, t_max: int) -> list[tuple]:
    return [(s, t) for t in range(min(coeffs.t_max, t_max + 1) + 1)
            for s in range(t_max + 2 - t)]


def _page_differential(source: PageCell, target: PageCell, lift) -> GroupHom:
    columns = []
    for v in source.sub.generator_vectors:
        columns.append(target.sub.coordinates(matvec(lift, v)))
    dim = target.group.dimension
    return GroupHom(source.group, target.group, _rows(columns, dim) if dim else [])


def _assemble(theory, n, r, t_max, state, max_page) -> Page:
    lifts = {}
    for (s, t) in state:
        if r <= max_page:
            lift = e2_lift(theory, n, r, s, t)
            if lift is not None and (s - r, t + r - 1) in state:
                lifts[(s, t)] = lift
    cells = {key: cell.group for key, cell in state.items() if sum(key) <= t_max}
    differentials = {}
    for key in cells:
        target = (key[0] - r, key[1] + r - 1)
        if target not in state or target[0] < 0:
            continue
        source_cell, target_cell = state[key], state[target]
        if key in lifts:
            differentials[key] = _page_differential(source_cell, target_cell, lifts[key])
        else:
            differentials[key] = GroupHom.zero(source_cell.group, target_cell.group)
    return Page(theory, n, r, t_max, cells, differentials, max_page, rule_description(theory, r),
                state, lifts)


def e2_page(theory: str, n: int, t_max: int | None = None, max_page: int = DEFAULT_MAX_PAGE) -> Page:
    coeffs = ring(theory)
    if n < 1:
        raise ValueError("n must be at least 1")
    t_max = coeffs.t_max if t_max is None else t_max
    if t_max > coeffs.t_max:
        raise OutOfImplementedRange(f"{theory} pages are available for s + t <= {coeffs.t_max}")
    state = {key: _initial_cell(e2_cell(theory, n, *key)) for key in _window(coeffs, t_max)}
    return _assemble(theory, n, 2, t_max, state, max_page)


def _restrict_cycles(cell: PageCell, lift, target: PageCell) -> list:
    """Cycles x of `cell` with lift(x) in the boundaries of `target`."""
    dim = cell.e2.dimension
    tdim = target.e2.dimension
    cycles = list(cell.cycles)
    if not cycles:
        return []
    images = [matvec(lift, c) for c in cycles]
    bounds = list(target.boundaries)
    big = _hstack(_rows(images, tdim), _rows([[-x for x in b] for b in bounds], tdim) if bounds else [],
                  rows=tdim)
    kernel = lattice_kernel(big, len(cycles) + len(bounds))
    kept = []
    for column in _cols(kernel, len(cycles) + len(bounds)):
        coeffs = column[:len(cycles)]
        kept.append([sum(c * v[i] for c, v in zip(coeffs, cycles)) for i in range(dim)])
    return [v for v in kept if any(v)]


def turn(page: Page) -> Page:
    """The next page: homology of the current differentials."""
    if page.is_terminal():
        raise ValueError(f"page {page.r} is the last page (max_page = {page.max_page})")
    r = page.r
    new_state = {}
    for key, cell in page.state.items():
        cycles = list(cell.cycles)
        lift = page.lifts.get(key)
        if lift is not None:
            cycles = _restrict_cycles(cell, lift, page.state[page.target(*key)])
        boundaries = list(cell.boundaries)
        source = (key[0] + r, key[1] - r + 1)
        if source in page.lifts:
            incoming = page.state[source]
            boundaries += [matvec(page.lifts[source], c) for c in incoming.cycles]
        new_state[key] = _make_cell(cell.e2, cycles, boundaries)
    return _assemble(page.theory, page.n, r + 1, page.t_max, new_state, page.max_page)


def _run(page: Page, expected: int) -> Page:
    if page.r != expected:
        raise ValueError(f"expected an E^{expected} page, got E^{page.r}")
    return turn(page)


def run_d2(page: Page) -> Page:
    return _run(page, 2)


def run_d3(page: Page) -> Page:
    return _run(page, 3)


def run_d4(page: Page) -> Page:
    return _run(page, 4)


def run_d5(page: Page) -> Page:
    return _run(page, 5)


def compute_page(theory: str, n: int, r, t_max: int | None = None,
                 max_page: int = DEFAULT_MAX_PAGE) -> Page:
    """E^r for r >= 2, or r = "inf" for the last page."""
    target = max_page if r in ("inf", "infinity", None) else int(r)
    if not 2 <= target <= max_page:
        raise ValueError(f"page must lie between 2 and {max_page}")
    page = e2_page(theory, n, t_max, max_page)
    while page.r < target:
        page = turn(page)
    return page


def check_dd_zero(page: Page) -> bool:
    for key, d in page.differentials.items():
        onward = page.differentials.get(page.target(*key))
        if onward is not None and not onward.compose(d).is_zero():
            return False
    return True


# ------------------------------------------------------------------ comparisons

def corestriction_map(theory: str, n: int, s: int, t: int) -> GroupHom:
    """V: E^2_{s,t} at level n -> E^2_{s,t} at level n + 1."""
    source = e2_cell(theory, n, s, t)
    target = e2_cell(theory, n + 1, s, t)
    factor = corestriction_factor(CyclicGroup(2, n + 1), s)
    size = len(source.module_labels)
    chain = [[factor if i == j else 0 for j in range(size)] for i in range(size)]
    return induced_map(source.homology, target.homology, chain)


def d2_by_labels(theory: str, n: int, s: int, t: int) -> dict:
    """d^2 of each summand generator, computed from the label action tables.

    Returns {source label: pi_{t+1} vector}, with the generator of summand i
    taken as m_i * a_i z_s for the closed-form multiple m_i."""
    from ..cyclic import Coefficients, closed_form_generator

    coeffs = ring(theory)
    g = CyclicGroup(2, n)
    ops = ("d", "eta") if s % 4 in (0, 1) else ("d",)
    target_labels = coeffs.labels(t + 1) if t + 1 <= coeffs.t_max else []
    out = {}
    for label, order in coeffs.generators(t):
        c = Coefficients(None) if order == 0 else Coefficients(order.bit_length() - 1)
        cls = closed_form_generator(g, c, s)
        if cls is None:
            continue
        image = {}
        for op in ops:
            for b, k in coeffs.act(op, label).items():
                image[b] = image.get(b, 0) + cls.multiple * k
        out[f"{cls.multiple}{label} z_{s}" if cls.multiple != 1 else f"{label} z_{s}"] = \
            [image.get(b, 0) for b in target_labels]
    return out
