"""Reading and writing ideal description files.

A file looks like::

    # Example ideal
    name = ex47
    ring vars = z1 z2 z3
    weight = hardy
    gen = (z1 - z2)^2
    gen = z3*(z1 + z2)
    gen = z3^2

``name`` is optional and defaults to the file stem.  Errors carry 1-based
line and column numbers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..idealops import Ideal
from ..oplab.weights import WeightScheme
from ..polyalg import ParseError, Polynomial, parse_polynomial

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")
_KEY = re.compile(r"\s*(ring\s+vars|weight|gen|name)\s*=\s*")


class IdealFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class IdealFile:
    num_vars: int
    weight: WeightScheme
    generators: tuple[str, ...]  # canonical polynomial text
    name: str = "ideal"

    def polynomials(self) -> list[Polynomial]:
        return [parse_polynomial(g, self.num_vars) for g in self.generators]

    def ideal(self) -> Ideal:
        return Ideal(self.polynomials(), self.num_vars)

    def format(self) -> str:
        lines = [
            f"name = {self.name}",
            "ring vars = " + " ".join(f"z{k}" for k in range(1, self.num_vars + 1)),
            f"weight = {format_weight(self.weight)}",
        ]
        lines += [f"gen = {g}" for g in self.generators]
        return "\n".join(lines) + "\n"


def format_weight(w: WeightScheme) -> str:
    return "hardy" if w.is_hardy else f"bergman s = {w.s}"


def parse_weight(text: str) -> WeightScheme:
    """``hardy`` or ``bergman s = <rational>``."""
    t = text.strip()
    if t == "hardy":
        return WeightScheme.hardy()
    m = re.fullmatch(r"bergman\s+s\s*=\s*(\S+)", t)
    if not m:
        raise ValueError(f"unknown weight {t!r}; expected 'hardy' or 'bergman s = <rational>'")
    try:
        s = Fraction(m.group(1))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad bergman exponent {m.group(1)!r}") from None
    if s < 0:
        raise ValueError("bergman exponent must be non-negative")
    return WeightScheme.bergman(s)


def parse_ideal_file(text: str, default_name: str = "ideal") -> IdealFile:
    nvars = None
    weight = None
    name = None
    gens: list[str] = []
    pending: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _KEY.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise IdealFileError("expected 'ring vars =', 'weight =', 'gen =' or 'name ='", lineno, col)
        key = " ".join(m.group(1).split())
        value = body[m.end():]
        col = m.end() + 1
        if key == "ring vars":
            if nvars is not None:
                raise IdealFileError("duplicate ring line", lineno)
            names = value.split()
            if not names:
                raise IdealFileError("ring declares no variables", lineno, col)
            expected = [f"z{k}" for k in range(1, len(names) + 1)]
            if names != expected:
                raise IdealFileError(f"variables must be {' '.join(expected)}", lineno, col)
            nvars = len(names)
        elif key == "weight":
            if weight is not None:
                raise IdealFileError("duplicate weight line", lineno)
            try:
                weight = parse_weight(value)
            except ValueError as e:
                raise IdealFileError(str(e), lineno, col) from None
        elif key == "name":
            if name is not None:
                raise IdealFileError("duplicate name line", lineno)
            name = value.strip()
            if not _NAME.match(name):
                raise IdealFileError(f"bad name {name!r}", lineno, col)
        else:
            pending.append((lineno, col, value))
    if nvars is None:
        raise IdealFileError("missing 'ring vars =' line", 1)
    for lineno, col, value in pending:
        try:
            p = parse_polynomial(value, nvars)
        except ParseError as e:
            raise IdealFileError(e.message, lineno, col + e.position) from None
        if p.is_zero():
            raise IdealFileError("zero generator", lineno, col)
        gens.append(str(p))
    return IdealFile(nvars, weight or WeightScheme.hardy(), tuple(gens), name or default_name)


def read_ideal_file(path: str | Path) -> IdealFile:
    path = Path(path)
    stem = re.sub(r"[^A-Za-z0-9_.-]", "_", path.stem) or "ideal"
    if not stem[0].isalpha() and stem[0] != "_":
        stem = "_" + stem
    return parse_ideal_file(path.read_text(encoding="utf-8"), stem)


__all__ = ["IdealFile", "IdealFileError", "parse_ideal_file", "read_ideal_file", "parse_weight", "format_weight"]
