"""The exact decision procedure for essential normality."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .decompose import (
    PrimaryComponent,
    embedded_defect,
    isolated_primary_components,
    line_prime,
    origin_embedded_dimension,
    radical_from_lines,
)
from .idealops import HilbertSeries, Ideal, hilbert_series, ideal_sum, krull_dimension
from .polyalg import Polynomial
from .variety import ConditionAResult, Line, condition_A, extract_lines_report

QUASI_PRIME = "QuasiPrime"
ESSENTIALLY_QUASI_PRIME = "EssentiallyQuasiPrime"
NOT_ESSENTIALLY_QUASI_PRIME = "NotEssentiallyQuasiPrime"

ESSENTIALLY_NORMAL = "EssentiallyNormal"
NOT_ESSENTIALLY_NORMAL = "NotEssentiallyNormal"
FINITE_DIMENSIONAL = "FiniteDimensional"
UNSUPPORTED = "Unsupported"

LINE_SERIES = HilbertSeries((1,), 1)


def j_ideal(u: Line) -> Ideal:
    """Generated by conj(u_i) z_i - conj(u_j) z_j for i < j in Λ."""
    if not u.exact:
        raise ValueError("J_u needs an exact line")
    d = u.dim
    gens = []
    for i, j in combinations(u.lambda_set, 2):
        gens.append(
            Polynomial.variable(i, d).scale(u.direction[i].conjugate())
            - Polynomial.variable(j, d).scale(u.direction[j].conjugate())
        )
    return Ideal(gens, d)


@dataclass(frozen=True)
class QuasiPrimeClass:
    kind: str
    dim: int | None  # dim √I/I'; None when infinite
    iprime: Ideal
    radical: Ideal
    series: HilbertSeries

    def label(self) -> str:
        if self.kind == ESSENTIALLY_QUASI_PRIME:
            return f"{self.kind}({self.dim})"
        return self.kind


def quasi_prime_classification(c: PrimaryComponent) -> QuasiPrimeClass:
    """Compare the Hilbert series of ring/I' with that of the line, 1/(1-t)."""
    iprime = ideal_sum(c.component_ideal, j_ideal(c.line))
    hs = hilbert_series(iprime)
    diff = hs - LINE_SERIES
    if diff.is_polynomial():
        k = diff.value_at_one()
        kind = QUASI_PRIME if k == 0 else ESSENTIALLY_QUASI_PRIME
        return QuasiPrimeClass(kind, k, iprime, c.prime, hs)
    return QuasiPrimeClass(NOT_ESSENTIALLY_QUASI_PRIME, None, iprime, c.prime, hs)


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: str = ""

    def __str__(self):
        return f"{self.kind}({self.reason})" if self.reason else self.kind


@dataclass
class AnalysisReport:
    ideal: Ideal
    verdict: Verdict
    dimension: int
    hilbert_series: HilbertSeries
    lines: list[Line] = field(default_factory=list)
    lines_exact: bool = True
    lines_certified: bool = False
    condition_a: ConditionAResult | None = None
    components: list[tuple[PrimaryComponent, QuasiPrimeClass]] = field(default_factory=list)
    embedded_defect: int = 0
    origin_embedded_dimension: int = 0
    radical: Ideal | None = None
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)


def derive_verdict(dimension: int, condition_a: ConditionAResult | None,
                   classes: list[QuasiPrimeClass], lines_exact: bool = True) -> Verdict:
    """The verdict as a pure function of the report fields."""
    if dimension == 0:
        return Verdict(FINITE_DIMENSIONAL)
    if dimension >= 2:
        return Verdict(NOT_ESSENTIALLY_NORMAL, "dimension>=2")
    if not lines_exact:
        return Verdict(UNSUPPORTED, "numeric-lines")
    if condition_a is not None and not condition_a.holds:
        return Verdict(NOT_ESSENTIALLY_NORMAL, "condition-A-violated")
    if any(c.kind == NOT_ESSENTIALLY_QUASI_PRIME for c in classes):
        return Verdict(NOT_ESSENTIALLY_NORMAL, "component-not-essentially-quasi-prime")
    return Verdict(ESSENTIALLY_NORMAL)


def essential_normality_verdict(a: Ideal) -> AnalysisReport:
    if not a.homogeneous:
        raise ValueError("ideal is not homogeneous")
    timings = {}
    t0 = time.perf_counter()
    dim = krull_dimension(a)
    hs = hilbert_series(a)
    timings["dimension"] = time.perf_counter() - t0
    report = AnalysisReport(a, Verdict(FINITE_DIMENSIONAL), dim, hs, timings=timings)
    if dim != 1:
        report.verdict = derive_verdict(dim, None, [])
        timings["total"] = time.perf_counter() - t0
        return report

    t = time.perf_counter()
    ext = extract_lines_report(a)
    report.lines = ext.lines
    report.lines_exact = ext.exact
    report.lines_certified = ext.certified
    report.notes.extend(ext.notes)
    timings["lines"] = time.perf_counter() - t

    t = time.perf_counter()
    report.condition_a = condition_A(ext.lines)
    timings["condition_a"] = time.perf_counter() - t
    if not report.condition_a.holds or not ext.exact:
        report.verdict = derive_verdict(dim, report.condition_a, [], ext.exact)
        timings["total"] = time.perf_counter() - t0
        return report

    t = time.perf_counter()
    comps = isolated_primary_components(a, ext.lines)
    report.embedded_defect = embedded_defect(a, comps)
    report.origin_embedded_dimension = origin_embedded_dimension(a, ext.lines)
    report.radical = radical_from_lines(a, ext.lines)
    timings["components"] = time.perf_counter() - t

    t = time.perf_counter()
    classes = [quasi_prime_classification(c) for c in comps]
    report.components = list(zip(comps, classes))
    timings["classification"] = time.perf_counter() - t

    if report.embedded_defect > 0:
        report.notes.append(f"embedded defect {report.embedded_defect}: verdict uses the isolated components")
    report.verdict = derive_verdict(dim, report.condition_a, classes, True)
    timings["total"] = time.perf_counter() - t0
    return report


__all__ = [
    "j_ideal", "line_prime", "QuasiPrimeClass", "quasi_prime_classification", "Verdict",
    "AnalysisReport", "derive_verdict", "essential_normality_verdict",
]
