"""Command line entry point: ``essnormal analyze`` and ``essnormal lab ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..criterion import UNSUPPORTED, essential_normality_verdict
from ..decompose import isolated_primary_components
from ..idealops import EmptyVarietyError, krull_dimension
from ..oplab import (
    LabError,
    asymptotic_orthogonality_norms,
    berezin_commutator_curve,
    essential_spectrum_probe,
    fredholm_index_estimate,
    lab,
)
from ..oplab.compress import DEFAULT_WIDTH
from ..polyalg import GaussianRational, ParseError, parse_polynomial
from ..variety import extract_lines_report
from .idealfile import IdealFileError, format_weight, read_ideal_file
from .report import csv_text, dumps, report_to_json

EXIT_OK = 0
EXIT_UNSUPPORTED = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _load(path):
    try:
        f = read_ideal_file(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    except IdealFileError as e:
        raise InputError(f"{path}: {e}") from None
    a = f.ideal()
    if not a.homogeneous:
        raise InputError(f"{path}: ideal is not homogeneous")
    if a.is_unit():
        raise InputError(f"{path}: the unit ideal has an empty variety")
    return f, a


def _ints(text: str, count: int | None = None) -> list[int]:
    try:
        out = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None
    if count is not None and len(out) != count:
        raise InputError(f"expected {count} integers, got {text!r}")
    return out


def _point(text: str, nvars: int) -> list[complex]:
    try:
        out = [complex(GaussianRational.parse(x)) for x in text.split(",")]
    except (ParseError, ValueError) as e:
        raise InputError(f"bad point {text!r}: {e}") from None
    if len(out) != nvars:
        raise InputError(f"point {text!r} needs {nvars} coordinates")
    return out


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    f, a = _load(args.file)
    report = essential_normality_verdict(a)
    doc = report_to_json(report, f.name, format_weight(f.weight))
    if args.json:
        Path(args.json).write_text(dumps(doc), encoding="utf-8", newline="\n")
    print(f"ideal {f.name}: {a}")
    print(f"dimension: {report.dimension}")
    print(f"hilbert series: {report.hilbert_series}")
    for k, u in enumerate(report.lines, start=1):
        lam = ",".join(str(i + 1) for i in u.lambda_set)
        print(f"line {k}: {u}  Lambda = {{{lam}}}" + ("" if u.exact else f"  (numeric, error {u.error:.2e})"))
    if report.condition_a is not None:
        ca = report.condition_a
        held = "holds" if ca.holds else f"fails for lines {ca.witness[0] + 1} and {ca.witness[1] + 1}"
        print(f"condition A: {held}")
    for k, (c, cls) in enumerate(report.components, start=1):
        print(f"component {k}: {c.component_ideal}  class {cls.label()}")
    for note in report.notes:
        print(f"note: {note}")
    print(f"verdict: {report.verdict}")
    return EXIT_UNSUPPORTED if report.verdict.kind == UNSUPPORTED else EXIT_OK


def cmd_commutators(args) -> int:
    f, a = _load(args.file)
    i, j = _ints(args.pair, 2)
    if not (1 <= i <= a.nvars and 1 <= j <= a.nvars):
        raise InputError(f"pair {args.pair} out of range 1..{a.nvars}")
    width = args.width
    if args.max_degree - 1 - width < 0:
        raise InputError("max degree too small for one window")
    cm = lab(a, args.max_degree, f.weight)
    windows = [(n, width) for n in range(args.max_degree - width)]
    norms = cm.commutator_tail_norms(i - 1, j - 1, windows)
    rows = [(f"commutator_{i}_{j}", f.name, n, v) for (n, _), v in zip(windows, norms)]
    _emit(csv_text(rows), args.csv)
    return EXIT_OK


def cmd_berezin(args) -> int:
    f, a = _load(args.file)
    try:
        poly = parse_polynomial(args.f, a.nvars)
    except ParseError as e:
        raise InputError(f"--f: {e}") from None
    ray = _point(args.ray, a.nvars)
    try:
        radii = [float(r) for r in args.radii.split(",")]
    except ValueError:
        raise InputError(f"bad radii {args.radii!r}") from None
    try:
        curve = berezin_commutator_curve(a, poly, ray, radii, f.weight)
    except ValueError as e:
        raise InputError(str(e)) from None
    rows = [("berezin", f.name, r, v) for r, v in zip(curve.radii, curve.values)]
    _emit(csv_text(rows), args.csv)
    return EXIT_OK


def cmd_index(args) -> int:
    f, a = _load(args.file)
    if krull_dimension(a) != 1:
        raise InputError("the index experiment needs a one-dimensional variety")
    ext = extract_lines_report(a)
    if not ext.exact:
        print("lines are numeric; index experiment unsupported", file=sys.stderr)
        return EXIT_UNSUPPORTED
    comps = isolated_primary_components(a, ext.lines)
    if not 1 <= args.component <= len(comps):
        raise InputError(f"component {args.component} out of range 1..{len(comps)}")
    c = comps[args.component - 1]
    est = fredholm_index_estimate(c.component_ideal, c.line, args.max_degree, f.weight)
    rows = [("fredholm_index", f.name, top, k - co) for top, k, co in est.history]
    _emit(csv_text(rows), args.csv)
    status = "stable" if est.stable else "inconclusive"
    print(f"index {est.index} ({status})", file=sys.stderr)
    return EXIT_OK


def _read_grid(path: str, nvars: int) -> list[list[complex]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    pts = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            pts.append(_point(line, nvars))
    if not pts:
        raise InputError(f"{path}: no grid points")
    return pts


def cmd_spectrum(args) -> int:
    f, a = _load(args.file)
    grid = _read_grid(args.grid_file, a.nvars)
    n, width = _ints(args.window, 2)
    if n < 0 or width < 0:
        raise InputError("window start and width must be non-negative")
    cm = lab(a, n + width + 1, f.weight)
    try:
        values = essential_spectrum_probe(cm, grid, (n, width))
    except ValueError as e:
        raise InputError(str(e)) from None
    rows = [("spectrum", f.name, k, v) for k, v in enumerate(values)]
    _emit(csv_text(rows), args.csv)
    return EXIT_OK


def cmd_ao(args) -> int:
    fa, a = _load(args.file_a)
    fb, b = _load(args.file_b)
    if a.nvars != b.nvars:
        raise InputError("the two ideals live in different rings")
    if fa.weight != fb.weight:
        raise InputError("the two files declare different weights")
    if args.max_degree < args.width:
        raise InputError("max degree smaller than the window width")
    norms = asymptotic_orthogonality_norms(a, b, args.max_degree, fa.weight, args.width)
    rows = [("asymptotic_orthogonality", f"{fa.name}|{fb.name}", n, v) for n, v in enumerate(norms)]
    _emit(csv_text(rows), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="essnormal", description="Essential normality of homogeneous quotient modules.")
    sub = p.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="exact verdict for an ideal file")
    an.add_argument("file")
    an.add_argument("--json", metavar="PATH", help="write the full report as JSON")
    an.set_defaults(func=cmd_analyze)

    lb = sub.add_parser("lab", help="numerical experiments")
    lsub = lb.add_subparsers(dest="experiment", required=True)

    c = lsub.add_parser("commutators", help="windowed norms of [S_i*, S_j]")
    c.add_argument("file")
    c.add_argument("--pair", required=True, metavar="I,J")
    c.add_argument("--max-degree", type=int, required=True)
    c.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    c.add_argument("--csv", metavar="PATH")
    c.set_defaults(func=cmd_commutators)

    b = lsub.add_parser("berezin", help="Berezin transform of [S_f*, S_f] along a ray")
    b.add_argument("file")
    b.add_argument("--f", required=True, metavar="POLY")
    b.add_argument("--ray", required=True, metavar="POINT")
    b.add_argument("--radii", required=True, metavar="R1,R2,...")
    b.add_argument("--csv", metavar="PATH")
    b.set_defaults(func=cmd_berezin)

    ix = lsub.add_parser("index", help="Fredholm index of S_h on one component")
    ix.add_argument("file")
    ix.add_argument("--component", type=int, required=True, help="1-based component number")
    ix.add_argument("--max-degree", type=int, required=True)
    ix.add_argument("--csv", metavar="PATH")
    ix.set_defaults(func=cmd_index)

    sp = lsub.add_parser("spectrum", help="essential spectrum probe on a grid")
    sp.add_argument("file")
    sp.add_argument("--grid-file", required=True, metavar="PATH")
    sp.add_argument("--window", default="0,30", metavar="N,WIDTH")
    sp.add_argument("--csv", metavar="PATH")
    sp.set_defaults(func=cmd_spectrum)

    ao = lsub.add_parser("ao", help="asymptotic orthogonality of two quotient modules")
    ao.add_argument("file_a")
    ao.add_argument("file_b")
    ao.add_argument("--max-degree", type=int, required=True)
    ao.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    ao.add_argument("--csv", metavar="PATH")
    ao.set_defaults(func=cmd_ao)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, EmptyVarietyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LabError as e:
        print(f"lab: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
