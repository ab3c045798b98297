"""Whitehead groups of the circle in degrees q <= 3 at finite truncation.

Wh_q is read off as the kernel of 1 - F on reduced degree-q towers of the
relative theory, after the cokernel of 1 - F in degree q + 1 has been shown
to vanish by writing down a preimage for every spanning term.
"""

from __future__ import annotations

import gc
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .algebra import AbelianGroup, GroupHom, direct_sum_of_cyclics, kernel
from .errors import CertificateFailure, TruncationTooSmall
from .tr.laurent import frobenius_laurent, reduce, restriction_laurent
from .tr.operators import inclusion
from .tr.presentations import (ETA2XI11_CHOICES, RELATIVE, SPHERE, TRElement, Theory, Unknown,
                               generators, order_of)
from .tr.towers import (Certificate, kernel_one_minus_F, preimage_terms, spanning_terms,
                        verify_certificate)


@dataclass(frozen=True)
class RunConfig:
    N: int = 8
    J: int = 9
    u: int = 1
    format: str = "json"
    eta2xi11: str = ETA2XI11_CHOICES[0]

    def __post_init__(self):
        if self.N < 2:
            raise TruncationTooSmall("towers need at least two levels")
        if self.J < 1:
            raise ValueError("J must be at least 1")
        if self.u % 2 == 0:
            raise ValueError("u must be odd")
        if self.format not in ("json", "markdown"):
            raise ValueError("format is json or markdown")
        if self.eta2xi11 not in ETA2XI11_CHOICES:
            raise ValueError(f"eta2xi11 must be one of {ETA2XI11_CHOICES}")

    def theory(self) -> Theory:
        return Theory(RELATIVE, u=self.u, eta2xi11=self.eta2xi11, formal=True)


@dataclass
class WhResult:
    q: int
    truncation: tuple
    group: AbelianGroup
    coordinates: list                 # (family, r, j)
    certificates: list                # Certificate per spanning term of degree q + 1
    r_max: int = 0
    relations: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        N, J = self.truncation
        return {"q": self.q, "truncation": {"N": N, "J": J}, "group": self.group.to_json(),
                "coordinates": [{"family": f, "r": r, "j": j} for f, r, j in self.coordinates],
                "certificates": len(self.certificates)}

    def to_markdown(self) -> str:
        N, J = self.truncation
        lines = [f"## Wh_{self.q} at N = {N}, J = {J}", "",
                 f"group: {self.group.describe()}", f"certificates: {len(self.certificates)}"]
        if self.coordinates:
            lines += ["", "| family | r | j |", "|---|---|---|"]
            lines += [f"| {f} | {r} | {j} |" for f, r, j in self.coordinates]
        for dep, combo in self.relations.items():
            rhs = " + ".join(f"{f}_{{{r},{j}}}" for f, r, j in combo) or "0"
            lines.append(f"\n{dep[0]}_{{{dep[1]},{dep[2]}}} = {rhs}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return json.dumps(self.to_json(), indent=2) if fmt == "json" else self.to_markdown()


def coordinate_order(coord) -> tuple:
    family, r, j = coord
    return (r, abs(j), j < 0, family)


def check_kernel_towers(report) -> None:
    """Each reported tower is nonzero, R-compatible and fixed by F below level N."""
    N = report.N
    for coord, tower in zip(report.coordinates, report.towers):
        if tower.at(N).is_zero():
            raise CertificateFailure(f"kernel tower {coord} vanishes at the top level")
        for n in range(1, N):
            top = tower.at(n + 1)
            below = reduce(tower.at(n))
            if reduce(frobenius_laurent(top)) != below or reduce(restriction_laurent(top)) != below:
                raise CertificateFailure(f"kernel tower {coord} fails at level {n}")


def check_formal_independence(theory: Theory, N: int) -> None:
    """dV^k(eta eta~) and V^k(eta^2 eta~), k >= 1, stay independent after inclusion.

    The degree-3 coordinates treat V^k(eta^2 eta~) as independent symbols;
    their images in the sphere theory have to be independent as well."""
    sphere = Theory(SPHERE, theory.u, theory.eta2xi11)
    for level in range(3, N + 1):
        elements = [TRElement.gen(theory, "dVetaeta~", k, level) for k in range(1, level)]
        elements += [TRElement.gen(theory, "Veta2eta~", k, level) for k in range(1, level - 1)]
        images = [inclusion(x, theory.eta2xi11) for x in elements]
        if any(isinstance(img, Unknown) for img in images):
            raise CertificateFailure("inclusion image is undetermined")
        keys = generators(sphere, 3, level)
        orders = [order_of(sphere, k, level) for k in keys]
        rows = [[img.value.as_dict().get(key, 0) for img in images] for key in keys]
        order = sorted(range(len(keys)), key=lambda i: orders[i])
        hom = GroupHom(direct_sum_of_cyclics([2] * len(elements)),
                       direct_sum_of_cyclics([orders[i] for i in order]),
                       [rows[i] for i in order])
        if not kernel(hom).group.is_trivial():
            raise CertificateFailure(f"formal degree-3 symbols are dependent at level {level}")


def certify_surjective(theory: Theory, degree: int, N: int, J: int) -> list[Certificate]:
    certificates = []
    for term in spanning_terms(theory, degree, N, J):
        cert = preimage_terms(theory, [term], N)
        if not verify_certificate(theory, cert):
            raise CertificateFailure(f"preimage of {term.describe(theory)} does not verify")
        certificates.append(cert)
    return certificates


@contextmanager
def _fewer_collections(threshold: int = 50000):
    """The tower computations allocate many short-lived acyclic objects;
    frequent young-generation collections only rescan them."""
    old = gc.get_threshold()
    gc.set_threshold(max(threshold, old[0]), *old[1:])
    try:
        yield
    finally:
        gc.set_threshold(*old)


def compute_wh(q: int, cfg: RunConfig | None = None) -> WhResult:
    with _fewer_collections():
        return _compute_wh(q, cfg)


def _compute_wh(q: int, cfg: RunConfig | None = None) -> WhResult:
    cfg = cfg or RunConfig()
    if q not in (0, 1, 2, 3):
        raise ValueError("Wh_q is computed for q in {0, 1, 2, 3}")
    theory = cfg.theory()
    timings = {}
    start = time.perf_counter()
    report = kernel_one_minus_F(theory, q, cfg.N, cfg.J)
    check_kernel_towers(report)
    if q == 3:
        check_formal_independence(theory, cfg.N)
    timings["kernel"] = time.perf_counter() - start
    start = time.perf_counter()
    certificates = certify_surjective(theory, q + 1, cfg.N, cfg.J)
    timings["cokernel"] = time.perf_counter() - start
    coords = sorted(report.coordinates, key=coordinate_order)
    group = direct_sum_of_cyclics([2] * len(coords), [f"{f}_{{{r},{j}}}" for f, r, j in coords])
    return WhResult(q, (cfg.N, cfg.J), group, coords, certificates, report.r_max,
                    report.dependent, timings)
