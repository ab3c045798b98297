"""Shipped spectral-sequence tables and cell-by-cell comparison.

A fixture stores the displayed grid as text ("Z_2", "Z/8Z", "4Z/8Z",
"(Z/2Z)^2", "Z/2^{n-1}Z", ...) with n left symbolic, plus optional
generator labels.  A label is checked as a class: it must be a cycle on
the page and the listed labels must generate the cell.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

from ..algebra import AbelianGroup, GroupHom, NotInSubgroup, cokernel, direct_sum_of_cyclics
from ..errors import UnknownFixture
from .pages import Page, compute_page, e2_cell
from .stems import ring

_ENTRY = re.compile(r"^(?:(?P<k>[0-9n^{}()+\-*]+)?Z/(?P<m>[0-9n^{}()+\-*]+)Z)$")
_LABEL = re.compile(r"^(?P<c>-?\d*)(?P<coef>.+?) z_(?P<s>\d+)$")


def _fixture_dir():
    return resources.files("trcalc.spectral") / "fixtures" / "ss"


def _eval(expr: str, n: int) -> int:
    text = expr.replace("{", "(").replace("}", ")").replace("^", "**")
    if not re.fullmatch(r"[0-9n()+\-* ]+", text):
        raise ValueError(f"unsupported order expression {expr!r}")
    return int(eval(text, {"__builtins__": {}}, {"n": n}))


def parse_entry(text: str, n: int) -> list[int]:
    """Cyclic orders (0 = Z_2) of a displayed table entry."""
    text = text.replace(" ", "")
    if text == "0":
        return []
    if text == "Z_2":
        return [0]
    power = re.fullmatch(r"\((.+)\)\^(\d+)", text)
    if power:
        return parse_entry(power.group(1), n) * int(power.group(2))
    m = _ENTRY.match(text)
    if not m:
        raise ValueError(f"cannot parse table entry {text!r}")
    order = _eval(m.group("m"), n)
    k = _eval(m.group("k"), n) if m.group("k") else 1
    if order % k:
        raise ValueError(f"{text!r} is not a subgroup of a cyclic group")
    return [order // k] if order // k > 1 else []


def entry_group(text: str, n: int) -> AbelianGroup:
    return direct_sum_of_cyclics(parse_entry(text, n))


@dataclass(frozen=True)
class Fixture:
    id: str
    theory: str
    n: int
    pages: tuple
    t_max: int
    rows: dict                      # t -> list of entries indexed by s
    labels: dict                    # (s, t) -> list of labels
    valid_for: str = ""

    def entry(self, s: int, t: int) -> str:
        return self.rows[t][s]

    def cells(self):
        for t, entries in self.rows.items():
            for s, text in enumerate(entries):
                yield (s, t), text


def _load(data: dict) -> Fixture:
    rows = {int(t): list(v) for t, v in data["rows"].items()}
    labels = {tuple(int(x) for x in k.split(",")): list(v) for k, v in data.get("labels", {}).items()}
    return Fixture(data["id"], data["theory"], data["n"], tuple(data["pages"]), data["t_max"], rows,
                   labels, data.get("valid_for", ""))


def fixture_ids() -> list[str]:
    root = _fixture_dir()
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(fixture_id: str) -> Fixture:
    path = _fixture_dir() / f"{fixture_id}.json"
    if not path.is_file():
        raise UnknownFixture(fixture_id)
    return _load(json.loads(path.read_text()))


def fixture_for(theory: str, n: int, r) -> str:
    page = "inf" if r in ("inf", "infinity") else int(r)
    for fid in fixture_ids():
        fx = load_fixture(fid)
        if fx.theory == theory and fx.n == n and page in fx.pages:
            return fid
    raise UnknownFixture(f"no table for {theory}, n = {n}, page {r}")


def parse_label(label: str, theory: str, t: int) -> tuple[int, list[int]]:
    """(s, pi_t vector) of a label such as "4nu z_2" or "eta eta~ z_3 + lambdabar z_3"."""
    names = ring(theory).labels(t)
    vector = [0] * len(names)
    degree = None
    for term in label.split(" + "):
        m = _LABEL.match(term.strip())
        if not m or m.group("coef") not in names:
            raise ValueError(f"cannot read label {label!r} in degree t = {t}")
        coeff = m.group("c")
        coeff = int(coeff) if coeff not in ("", "-") else (-1 if coeff == "-" else 1)
        s = int(m.group("s"))
        if degree is not None and s != degree:
            raise ValueError(f"label {label!r} mixes skeleta")
        degree = s
        vector[names.index(m.group("coef"))] += coeff
    return degree, vector


@dataclass
class ComparisonReport:
    fixture_id: str
    page: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        head = f"{self.fixture_id} (E^{self.page}): {self.checked} cells"
        if self.ok:
            return head + ", all match"
        return head + f", {len(self.mismatches)} mismatches\n" + "\n".join(
            f"  {m['cell']}: {m['reason']}" for m in self.mismatches)

    def to_json(self) -> dict:
        return {"fixture": self.fixture_id, "page": self.page, "checked": self.checked,
                "ok": self.ok, "mismatches": self.mismatches}


def _label_problem(page: Page, key, labels) -> str | None:
    s, t = key
    cell = page.state[key]
    e2 = e2_cell(page.theory, page.n, s, t)
    columns = []
    for label in labels:
        degree, vector = parse_label(label, page.theory, t)
        if degree != s:
            return f"label {label!r} sits in the wrong column"
        try:
            e2_coords = e2.homology.coordinates(vector)
            columns.append(cell.sub.coordinates(list(e2_coords)))
        except NotInSubgroup:
            return f"label {label!r} is not a cycle on this page"
    group = cell.group
    span = direct_sum_of_cyclics([0] * len(columns))
    hom = GroupHom(span, group, [[c[i] for c in columns] for i in range(group.dimension)]
                   if group.dimension else [])
    if not cokernel(hom).group.is_trivial():
        return f"labels {labels} do not generate {group.describe()}"
    return None


def compare_fixture(page: Page, fixture_id: str) -> ComparisonReport:
    fx = load_fixture(fixture_id)
    report = ComparisonReport(fixture_id, page.r)
    if fx.theory != page.theory or fx.n != page.n:
        report.mismatches.append({"cell": None, "reason": f"fixture is for {fx.theory}, n = {fx.n}"})
        return report
    for key, text in fx.cells():
        report.checked += 1
        if key not in page.cells:
            report.mismatches.append({"cell": list(key), "reason": "cell outside the computed range"})
            continue
        expected = entry_group(text, fx.n)
        actual = page.cells[key]
        if not actual.isomorphic(expected):
            report.mismatches.append({"cell": list(key), "reason":
                                      f"expected {text} ({expected.describe()}), got {actual.describe()}"})
            continue
        if key in fx.labels:
            problem = _label_problem(page, key, fx.labels[key])
            if problem:
                report.mismatches.append({"cell": list(key), "reason": problem})
    extra = [key for key in page.cells if key[1] not in fx.rows or key[0] >= len(fx.rows[key[1]])]
    for key in extra:
        if sum(key) <= fx.t_max and not page.cells[key].is_trivial():
            report.mismatches.append({"cell": list(key), "reason": "nonzero cell missing from the table"})
    return report


def compare_all() -> list[ComparisonReport]:
    reports = []
    for fid in fixture_ids():
        fx = load_fixture(fid)
        for r in fx.pages:
            page = compute_page(fx.theory, fx.n, r, fx.t_max)
            reports.append(compare_fixture(page, fid))
    return reports
