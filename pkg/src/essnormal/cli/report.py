"""JSON reports and CSV tables."""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources
from typing import Iterable

from ..criterion import AnalysisReport
from ..idealops import HilbertSeries, Ideal
from ..variety import Line

SCHEMA_VERSION = "1.0"
CSV_HEADER = ("experiment", "ideal", "parameter", "value")


def _ideal_json(a: Ideal | None):
    if a is None:
        return None
    return {"generators": [str(g) for g in a.gens], "groebner_basis": [str(g) for g in a.groebner()]}


def _series_json(hs: HilbertSeries) -> dict:
    return {"numerator": list(hs.numerator), "exponent": hs.exponent, "text": str(hs)}


def _line_json(u: Line) -> dict:
    z = u.complex_direction()
    return {
        "direction": u.format_direction(),
        "direction_complex": [[float(x.real), float(x.imag)] for x in z],
        "lambda_set": [k + 1 for k in u.lambda_set],
        "exact": u.exact,
        "error": float(u.error),
    }


def report_to_json(report: AnalysisReport, name: str, weight: str) -> dict:
    """Mirror of :class:`AnalysisReport`; indices of variables and lines are 1-based."""
    ca = report.condition_a
    comps = []
    for k, (c, cls) in enumerate(report.components):
        comps.append({
            "line": report.lines.index(c.line) + 1,
            "ideal": _ideal_json(c.component_ideal),
            "prime": _ideal_json(c.prime),
            "separator": str(c.separator) if c.separator is not None else None,
            "class": cls.label(),
            "class_kind": cls.kind,
            "dim_radical_over_iprime": cls.dim,
            "iprime": _ideal_json(cls.iprime),
            "iprime_hilbert_series": _series_json(cls.series),
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "weight": weight,
        "nvars": report.ideal.nvars,
        "ideal": _ideal_json(report.ideal),
        "verdict": {"kind": report.verdict.kind, "reason": report.verdict.reason, "text": str(report.verdict)},
        "dimension": report.dimension,
        "hilbert_series": _series_json(report.hilbert_series),
        "lines": [_line_json(u) for u in report.lines],
        "lines_exact": report.lines_exact,
        "lines_certified": report.lines_certified,
        "condition_a": None if ca is None else {
            "holds": ca.holds,
            "witness": None if ca.witness is None else [k + 1 for k in ca.witness],
            "subvectors": None if ca.subvectors is None else [[str(x) for x in v] for v in ca.subvectors],
        },
        "components": comps,
        "embedded_defect": report.embedded_defect,
        "origin_embedded_dimension": report.origin_embedded_dimension,
        "radical": _ideal_json(report.radical),
        "notes": list(report.notes),
        "timings": {k: float(v) for k, v in sorted(report.timings.items())},
    }


def load_schema() -> dict:
    text = resources.files("essnormal.schema").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema())


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def normalize_floats(doc, digits: int = 12):
    """Round every float to ``digits`` significant digits and zero the timings."""
    if isinstance(doc, dict):
        return {k: ({t: 0.0 for t in v} if k == "timings" else normalize_floats(v, digits)) for k, v in doc.items()}
    if isinstance(doc, list):
        return [normalize_floats(v, digits) for v in doc]
    if isinstance(doc, float):
        return float(f"{doc:.{digits - 1}e}") if math.isfinite(doc) and doc else doc
    return doc


def _param_key(p):
    try:
        return (0, float(p), "")
    except ValueError:
        return (1, 0.0, p)


def format_value(v) -> str:
    if isinstance(v, (int, str)):
        return str(v)
    return repr(float(v))


def csv_text(rows: Iterable[tuple]) -> str:
    """Rows (experiment, ideal, parameter, value) sorted by experiment then parameter."""
    rows = [(str(e), str(i), str(p), format_value(v)) for e, i, p, v in rows]
    rows.sort(key=lambda r: (r[0], _param_key(r[2]), r[1]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    return buf.getvalue()


__all__ = [
    "SCHEMA_VERSION", "report_to_json", "load_schema", "validate_report", "dumps", "normalize_floats",
    "csv_text", "CSV_HEADER",
]
