"""The acceptance checks behind `verify-all`, each timed against its budget."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .algebra import GroupHom
from .cyclic import (Coefficients, CyclicGroup, closed_form_corestriction, closed_form_generator,
                     closed_form_orders, closed_form_transfer, corestriction, homology_generator,
                     homology_group, oracle_homology_group, transfer)
from .spectral.compare import compare_fixture, parse_label
from .spectral.pages import compute_page, d2_by_labels, e2_cell, e2_lift, e2_page, run_d2, run_d3, run_d4, run_d5
from .spectral.stems import ring
from .tr.laurent import LaurentElement, decompose, recompose
from .tr.presentations import MAX_DEGREE, RELATIVE, Theory, TRElement, generators, group_of
from .tr.relations import relation_suite
from .tr.towers import r_max, verify_certificate
from .whitehead import RunConfig, compute_wh
from .witt import verify_minus_one


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float | None
    detail: str = ""
    timed: dict = field(default_factory=dict)

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds < self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (budget {self.budget:g} s)" if self.budget is not None else ""
        return f"[{status}] {self.number}. {self.name}: {self.seconds:.3f} s{budget}; {self.detail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "within_budget": self.within_budget, "seconds": round(self.seconds, 4),
                "budget": self.budget, "detail": self.detail,
                "timed": {k: round(v, 4) for k, v in self.timed.items()}}


# ------------------------------------------------------------------ 1. cyclic homology

def _coefficient_choices():
    return [Coefficients(None)] + [Coefficients(r) for r in range(1, 6)]


def _closed_form_image(source_gen, target_gen, factor: int, target_order: int) -> int | None:
    """Coordinate of the image of the source generator, or None for a trivial end."""
    if source_gen is None or target_gen is None:
        return None
    value = factor * source_gen.multiple
    if value % target_gen.multiple:
        raise ArithmeticError("closed-form image is not a multiple of the target generator")
    value //= target_gen.multiple
    return value % target_order if target_order else value


def _matches(hom: GroupHom, expected: int | None) -> bool:
    if expected is None:
        return hom.domain.dimension == 0 or hom.codomain.dimension == 0
    return hom.codomain.reduce([hom.matrix[0][0]]) == (expected,)


def _same_generator(g: CyclicGroup, c: Coefficients, s: int) -> bool:
    computed, closed = homology_generator(g, c, s), closed_form_generator(g, c, s)
    if computed is None or closed is None:
        return computed is None and closed is None
    return computed.multiple == closed.multiple


def check_cyclic_tables(smax: int = 10) -> tuple[bool, str]:
    cells = bad = 0
    for p in (2, 3):
        for n in range(1, 6):
            g = CyclicGroup(p, n)
            big = CyclicGroup(p, n + 1)
            for c in _coefficient_choices():
                for s in range(smax + 1):
                    cells += 1
                    group = homology_group(g, c, s)
                    if list(group.orders) != closed_form_orders(g, c, s) or not _same_generator(g, c, s):
                        bad += 1
                        continue
                    V = corestriction(g, c, s)
                    F = transfer(big, c, s)
                    big_order = V.codomain.orders[0] if V.codomain.dimension else 1
                    order = group.orders[0] if group.dimension else 1
                    here, there = closed_form_generator(g, c, s), closed_form_generator(big, c, s)
                    if not _matches(V, _closed_form_image(here, there, closed_form_corestriction(p, s),
                                                          big_order)):
                        bad += 1
                    if not _matches(F, _closed_form_image(there, here, closed_form_transfer(p, s), order)):
                        bad += 1
                    if group.dimension and not _matches(F.compose(V), p % order if order else p):
                        bad += 1
    return bad == 0, f"{cells} cells, {bad} disagreements"


# ------------------------------------------------------------------ 2. Witt vectors

def check_witt() -> tuple[bool, str]:
    failed = [n for n in range(2, 9) if not verify_minus_one(n).passed]
    return not failed, "n = 2..8 " + ("all pass" if not failed else f"fail at {failed}")


# ------------------------------------------------------------------ 3. spectral sequences

ACCEPTANCE_TABLES = (
    [("sphere_n2_E2", 2), ("sphere_n2_E3", 3), ("sphere_n3_E2", 2), ("sphere_n3_E5", 5)]
    + [(f"sphere_n{k}_E{r}", r) for k in (4, 5) for r in (2, 3, 5)]
    + [(f"integers_n{k}_E{r}", r) for k in (2, 3, 4, 5) for r in (2, 5)]
    + [("relative_n2_E3", 3), ("relative_n2_E3", "inf"), ("relative_n3_Einf", "inf")]
    + [(f"relative_n{k}_Einf", "inf") for k in (4, 5)]
)


def _drive(theory: str, n: int, r, t_max: int | None):
    """The page through the named turns: E^2, run_d2, run_d3, run_d4, run_d5."""
    target = 6 if r == "inf" else r
    page = e2_page(theory, n, t_max)
    for step in (run_d2, run_d3, run_d4, run_d5, None):
        if page.r >= target or step is None:
            break
        page = step(page)
    if page.r < target:
        page = compute_page(theory, n, target, t_max)
    return page


def check_spectral_tables() -> tuple[bool, str]:
    from .spectral.compare import load_fixture
    bad = []
    for fid, r in ACCEPTANCE_TABLES:
        fx = load_fixture(fid)
        report = compare_fixture(_drive(fx.theory, fx.n, r, fx.t_max), fid)
        if not report.ok:
            bad.append(f"{fid}@E{r}")
    return not bad, f"{len(ACCEPTANCE_TABLES)} page comparisons" + (f", mismatches {bad}" if bad else ", all match")


# ------------------------------------------------------------------ 4. TR orders

def _tri(a: int, b: int, f) -> int:
    return sum(f(s) for s in range(a, b))


def closed_form_log_order(theory: str, q: int, n: int) -> tuple[int, int]:
    """(free rank, log_2 of the torsion order) from the closed-form order formulas."""
    if theory == "sphere":
        return {0: (n, 0),
                1: (0, n + _tri(1, n, lambda s: s)),
                2: (0, n + max(0, n - 1)),
                3: (0, 3 * n + _tri(1, n, lambda s: max(3, s + 1)) + max(0, n - 2)),
                4: (0, _tri(1, n, lambda s: min(3, s))),
                5: (0, _tri(2, n, lambda s: s) + max(0, n - 3))}[q]
    if theory == "integers":
        return {0: (n, 0),
                1: (0, _tri(1, n, lambda s: s)),
                2: (0, 0),
                3: (0, 1 if n == 1 else 3 + _tri(2, n, lambda s: s + 1)),
                4: (0, 0),
                5: (0, n - 1 + _tri(2, n, lambda s: s - 1)),
                6: (0, 0)}[q]
    return {0: (0, 0), 1: (0, n), 2: (0, 2 * n), 3: (0, 3 * n + n - 1)}[q]


TR_RANGES = {"sphere": 5, "integers": 6, "relative": 3}


def check_tr_orders() -> tuple[bool, str]:
    bad = []
    cells = 0
    for name, qmax in TR_RANGES.items():
        theory = Theory(name)
        for q in range(qmax + 1):
            for n in range(1, 7):
                cells += 1
                group = group_of(theory, q, n)
                log = sum(d.bit_length() - 1 for d in group.torsion)
                if (group.free_rank, log) != closed_form_log_order(name, q, n):
                    bad.append((name, q, n))
    return not bad, f"{cells} groups" + (f", mismatches {bad}" if bad else ", all orders agree")


# ------------------------------------------------------------------ 5. relations and d^2

def d2_routes_agree(theory: str, n: int, s: int, t: int) -> bool:
    """The coefficient-level rule on labels against the induced map on group homology."""
    source = e2_cell(theory, n, s, t)
    target = e2_cell(theory, n, s - 2, t + 1)
    lift = e2_lift(theory, n, 2, s, t)
    by_labels = d2_by_labels(theory, n, s, t)
    if len(by_labels) != source.dimension:
        return False
    for label, image in by_labels.items():
        _, vector = parse_label(label, theory, t)
        coords = source.homology.coordinates(vector)
        functor = [0] * target.dimension
        if lift is not None:
            functor = [sum(row[k] * coords[k] for k in range(len(coords))) for row in lift]
        expected = target.homology.coordinates(image) if target.dimension else ()
        if tuple(target.group.reduce(functor)) != tuple(expected):
            return False
    return True


def random_d2_cells(count: int = 20, seed: int = 2024) -> list[tuple]:
    rng = random.Random(seed)
    cells = []
    while len(cells) < count:
        theory = rng.choice(["sphere", "integers", "relative"])
        coeffs = ring(theory)
        t = rng.randrange(0, coeffs.t_max)
        n = rng.randrange(1, 7)
        s = rng.randrange(2, 12)
        cells.append((theory, n, s, t))
    return cells


def check_relations() -> tuple[bool, str]:
    report = relation_suite()
    cells = random_d2_cells()
    agree = sum(d2_routes_agree(*c) for c in cells)
    ok = report.ok and len(report.generators) >= 40 and agree == len(cells)
    return ok, (f"{report.total} relation checks on {len(report.generators)} generators, "
                f"{len(report.failures)} failures; d^2 routes agree on {agree}/{len(cells)} cells")


# ------------------------------------------------------------------ 6. Whitehead

def odd_indices(J: int) -> list[int]:
    return [j for j in range(-J, J + 1) if j % 2]


def _wh_shape_ok(result, q: int, N: int, J: int) -> bool:
    js = odd_indices(J)
    coords = result.coordinates
    if set(result.group.torsion) - {2} or result.group.free_rank:
        return False
    if q == 2:
        R = r_max(2, N)
        expected = {("c", r, j) for r in range(1, R + 1) for j in js}
        relations = {("c", 0, j) for j in js}
        return set(coords) == expected and set(result.relations) == relations and all(
            set(result.relations[("c", 0, j)]) == {("c", r, j) for r in range(1, R + 1)} for j in js)
    R = r_max(3, N)
    expected = {("c", r, j) for r in range(0, R + 1) for j in js}
    expected |= {("c'", r, j) for r in range(1, R + 1) for j in js}
    return set(coords) == expected


def check_whitehead(quick: bool = False) -> tuple[bool, str, dict]:
    timed = {}
    problems = []
    top = (6, 5) if quick else (8, 9)
    results = {}
    for q in (0, 1, 2, 3):
        start = time.perf_counter()
        results[q] = compute_wh(q, RunConfig(*top))
        timed[f"wh{q}@{top}"] = time.perf_counter() - start
    for q in (0, 1):
        if not results[q].group.is_trivial():
            problems.append(f"Wh_{q} nonzero at {top}")
    for q in (2, 3):
        if not _wh_shape_ok(results[q], q, *top):
            problems.append(f"Wh_{q} shape at {top}")
    theory = RunConfig(*top).theory()
    for q, result in results.items():
        if not all(verify_certificate(theory, cert) for cert in result.certificates):
            problems.append(f"certificate re-verification for q = {q}")
    sweep = [(N, J) for N in range(2, top[0] + 1) for J in range(1, top[1] + 1)]
    for N, J in sweep:
        for q in (0, 1):
            if not compute_wh(q, RunConfig(N, J)).group.is_trivial():
                problems.append(f"Wh_{q} nonzero at {(N, J)}")
    # q = 3 first has coordinates at N = 5
    for q, N, J in [(q, N, J) for q in (2, 3) for N in range(q + 2, top[0]) for J in (1, 3, 5)]:
        if not _wh_shape_ok(compute_wh(q, RunConfig(N, J)), q, N, J):
            problems.append(f"Wh_{q} shape at {(N, J)}")
    for q in (2, 3):
        other = compute_wh(q, RunConfig(*top, u=3))
        if other.to_json() != results[q].to_json():
            problems.append(f"Wh_{q} depends on u")
    ranks = {q: results[q].group.dimension for q in results}
    detail = (f"ranks at {top}: {ranks}; Wh_0 = Wh_1 = 0 on {len(sweep)} truncations; "
              f"Wh_0..Wh_3 at {top} in {sum(timed.values()):.2f} s")
    if problems:
        detail += "; problems: " + ", ".join(problems)
    return not problems, detail, timed


# ------------------------------------------------------------------ 7. oracles

def check_homology_oracle(smax: int = 10) -> tuple[bool, int]:
    bad = cells = 0
    for p in (2, 3):
        for n in range(1, 6):
            g = CyclicGroup(p, n)
            for c in _coefficient_choices():
                for s in range(smax + 1):
                    cells += 1
                    if not homology_group(g, c, s).isomorphic(oracle_homology_group(g, c, s)):
                        bad += 1
    return bad == 0, cells


def random_coefficient(rng: random.Random, theory: Theory, q: int, n: int) -> TRElement:
    keys = generators(theory, q, n) if q >= 0 else []
    terms = {k: rng.randrange(-3, 8) for k in keys if rng.random() < 0.6}
    return TRElement.make(theory, q, n, terms)


def random_laurent(rng: random.Random, theory: Theory | None = None) -> LaurentElement:
    name = theory.name if theory else rng.choice(["sphere", "integers", "relative"])
    theory = theory or Theory(name)
    q = rng.randrange(1, MAX_DEGREE[name] + 1)
    n = rng.randrange(1, 5)
    a, b = {}, {}
    for _ in range(rng.randrange(1, 5)):
        s = rng.randrange(0, n)
        j = rng.randrange(-5, 6)
        if s >= 1 and j % 2 == 0:
            j += 1
        if rng.random() < 0.5:
            a[(s, j)] = random_coefficient(rng, theory, q, n - s)
        else:
            b[(s, j)] = random_coefficient(rng, theory, q - 1, n - s)
    return LaurentElement.build(theory, q, n, a, b)


def check_laurent_roundtrip(count: int = 200, seed: int = 7) -> tuple[bool, int]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        omega = random_laurent(rng)
        if recompose(omega.theory, omega.q, omega.n, decompose(omega)) != omega:
            bad += 1
    return bad == 0, bad


def check_oracles() -> tuple[bool, str]:
    ok_h, cells = check_homology_oracle()
    ok_l, bad = check_laurent_roundtrip()
    return ok_h and ok_l, (f"scalar and permutation routes agree on {cells} cells: {ok_h}; "
                           f"decompose/recompose failures on 200 elements: {bad}")


# ------------------------------------------------------------------ driver

CRITERIA = [
    (1, "cyclic homology tables", 2.0),
    (2, "Witt identity [-1]", 0.1),
    (3, "spectral-sequence tables", 2.0),
    (4, "TR group orders", 0.5),
    (5, "operator relations and d^2 routes", None),
    (6, "Whitehead groups", 5.0),
    (7, "oracle cross-checks", None),
]


def run_check(number: int, quick: bool = False) -> CheckResult:
    name, budget = next((n, b) for k, n, b in CRITERIA if k == number)
    start = time.perf_counter()
    timed = {}
    if number == 1:
        passed, detail = check_cyclic_tables()
    elif number == 2:
        passed, detail = check_witt()
    elif number == 3:
        passed, detail = check_spectral_tables()
    elif number == 4:
        passed, detail = check_tr_orders()
    elif number == 5:
        passed, detail = check_relations()
    elif number == 6:
        passed, detail, timed = check_whitehead(quick)
    else:
        passed, detail = check_oracles()
    seconds = time.perf_counter() - start
    if number == 6:
        # the budget covers Wh_0..Wh_3 at the top truncation; the sweeps are extra
        at_top = sum(timed.values())
        result = CheckResult(number, name, passed, at_top, budget, detail, timed)
        result.timed["total"] = seconds
        return result
    return CheckResult(number, name, passed, seconds, budget, detail, timed)


def verify_all(quick: bool = False) -> list[CheckResult]:
    return [run_check(number, quick) for number, _, _ in CRITERIA]
