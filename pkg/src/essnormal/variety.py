"""Lines (discs) making up a one-dimensional homogeneous variety."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .idealops import Ideal, ideal_intersect, krull_dimension, radical_membership
from .polyalg import LEX, ZERO, GaussianRational, Polynomial, buchberger

NUMERIC_TOL = 1e-9
RESIDUAL_TOL = 1e-12
MAX_DENOMINATOR = 10**6


@dataclass(frozen=True)
class Line:
    """The disc {λu : |λ| < 1} for a boundary direction u.

    ``lambda_set`` holds zero-based indices.  Exact lines carry
    :class:`GaussianRational` coordinates; numeric ones carry complex floats
    and an error estimate.
    """

    direction: tuple
    lambda_set: tuple[int, ...]
    exact: bool = True
    error: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.direction)

    def complex_direction(self) -> np.ndarray:
        return np.array([complex(x) for x in self.direction], dtype=complex)

    def sort_key(self):
        if self.exact:
            return (0, tuple((x.re, x.im) for x in self.direction))
        return (1, tuple((round(x.real, 9), round(x.imag, 9)) for x in self.direction))

    def format_direction(self) -> list[str]:
        if self.exact:
            return [str(x) for x in self.direction]
        return [f"{x.real:.12g}{x.imag:+.12g}j" for x in self.direction]

    def __str__(self):
        return "(" + ", ".join(self.format_direction()) + ")"


class NumericLinesWarning(RuntimeWarning):
    pass


def normalize_direction(v: Sequence) -> Line:
    """Scale ``v`` so that its largest coordinate modulus is 1 and the first
    coordinate of maximal modulus equals 1."""
    if not len(v):
        raise ValueError("empty vector")
    if all(isinstance(x, (GaussianRational, int)) for x in v) or all(
        not isinstance(x, (complex, float, np.complexfloating, np.floating)) for x in v
    ):
        w = [GaussianRational.coerce(x) for x in v]
        mods = [x.abs2() for x in w]
        top = max(mods)
        if not top:
            raise ValueError("zero vector")
        lam = tuple(i for i, m in enumerate(mods) if m == top)
        inv = w[lam[0]].inverse()
        return Line(tuple(x * inv for x in w), lam, True, 0.0)
    w = np.array([complex(x) for x in v], dtype=complex)
    mods = np.abs(w)
    top = mods.max()
    if top == 0:
        raise ValueError("zero vector")
    lam = tuple(int(i) for i in np.nonzero(np.abs(mods - top) <= NUMERIC_TOL * top)[0])
    u = w / w[lam[0]]
    return Line(tuple(complex(x) for x in u), lam, False, 0.0)


# ---------------------------------------------------------------------------
# univariate helpers over Q(i); coefficient lists are indexed by degree

def _uni_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _uni_rem(a, b):
    a = list(a)
    lb = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * lb
        shift = len(a) - len(b)
        for k, bc in enumerate(b):
            a[shift + k] = a[shift + k] - c * bc
        a.pop()
        _uni_trim(a)
    return a


def _uni_div(a, b):
    a = list(a)
    lb = b[-1].inverse()
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * lb
        shift = len(a) - len(b)
        q[shift] = c
        for k, bc in enumerate(b):
            a[shift + k] = a[shift + k] - c * bc
        a.pop()
        _uni_trim(a)
    return q


def _uni_gcd(a, b):
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_rem(a, b)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _uni_eval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p: list) -> list:
    if len(p) <= 2:
        return p
    dp = [c * k for k, c in enumerate(p)][1:]
    g = _uni_gcd(p, dp)
    return _uni_div(p, g) if len(g) > 1 else p


def _roots(p: list) -> list[complex]:
    """Numerical roots of a squarefree univariate polynomial, Newton-polished."""
    coeffs = np.array([complex(c) for c in reversed(p)], dtype=complex)
    if len(coeffs) <= 1:
        return []
    roots = np.roots(coeffs)
    dcoeffs = np.polyder(coeffs)
    scale = np.abs(coeffs).max()
    out = []
    for r in roots:
        for _ in range(60):
            f = np.polyval(coeffs, r)
            if abs(f) < RESIDUAL_TOL * scale:
                break
            df = np.polyval(dcoeffs, r)
            if df == 0:
                break
            r = r - f / df
        out.append(complex(r))
    return out


def _univariate_coeffs(g: Polynomial, var: int) -> list:
    p = [ZERO] * (max(m[var] for m in g.terms) + 1)
    for m, c in g.terms.items():
        p[m[var]] = c
    return p


# ---------------------------------------------------------------------------
# solving a zero-dimensional system chart by chart


class _Inexact(Exception):
    pass


def _solve_exact(polys: list[Polynomial], free: list[int], point: dict):
    """All exact solutions of ``polys`` in the variables ``free``.

    Raises :class:`_Inexact` when a root has no small-height certificate.
    """
    gb = buchberger(polys, LEX)
    if len(gb) == 1 and gb[0].is_constant():
        return []
    if not free:
        if gb:
            raise ArithmeticError("inconsistent substitution")
        return [dict(point)]
    x = free[-1]
    uni = [g for g in gb if g.variables() == {x}]
    if not uni:
        raise ArithmeticError("system is not zero-dimensional in this chart")
    p = squarefree_part(_univariate_coeffs(min(uni, key=lambda g: g.degree()), x))
    sols = []
    for r in _roots(p):
        q = GaussianRational.rationalize(r, MAX_DENOMINATOR)
        if _uni_eval(p, q):
            raise _Inexact(r)
        sub = [g.substitute(x, q) for g in gb]
        sub = [g for g in sub if g.terms]
        pt = dict(point)
        pt[x] = q
        sols.extend(_solve_exact(sub, free[:-1], pt))
    return sols


def _solve_numeric(polys: list[Polynomial], free: list[int], nvars: int) -> list[dict]:
    """Numeric back-substitution through a lex basis."""
    gb = buchberger(polys, LEX)
    if len(gb) == 1 and gb[0].is_constant():
        return []
    branches = [dict()]
    for x in reversed(free):
        new_branches = []
        for pt in branches:
            known = set(pt)
            cands = []
            for g in gb:
                vs = g.variables()
                if x in vs and vs <= known | {x}:
                    coeffs = {}
                    for m, c in g.terms.items():
                        v = complex(c)
                        for j, e in enumerate(m):
                            if e and j != x:
                                v *= pt[j] ** e
                        coeffs[m[x]] = coeffs.get(m[x], 0) + v
                    top = max(coeffs)
                    arr = np.array([coeffs.get(k, 0) for k in range(top, -1, -1)], dtype=complex)
                    scale = np.abs(arr).max()
                    while len(arr) > 1 and abs(arr[0]) <= 1e-9 * scale:
                        arr = arr[1:]
                    if len(arr) > 1:
                        cands.append(arr)
            if not cands:
                raise ArithmeticError("no univariate element for back-substitution")
            cands.sort(key=len)
            for r in np.roots(cands[0]):
                if all(abs(np.polyval(c, r)) <= 1e-7 * max(1.0, np.abs(c).max()) for c in cands[1:]):
                    q = dict(pt)
                    q[x] = complex(r)
                    new_branches.append(q)
        branches = new_branches
    return branches


@dataclass
class LineExtraction:
    lines: list[Line]
    exact: bool
    certified: bool
    notes: list[str] = field(default_factory=list)


def line_prime_generators(u: Line) -> list[Polynomial]:
    """u_j·z_i − u_i·z_j for i < j, made monic, zeros and repeats dropped."""
    if not u.exact:
        raise ValueError("line prime needs an exact line")
    d = u.dim
    z = [Polynomial.variable(i, d) for i in range(d)]
    gens = []
    for i, j in combinations(range(d), 2):
        g = z[i].scale(u.direction[j]) - z[j].scale(u.direction[i])
        if g.terms:
            g = g.monic()
            if g not in gens:
                gens.append(g)
    return gens


def _dedupe(lines: list[Line]) -> list[Line]:
    exact = {}
    for ln in lines:
        if ln.exact:
            exact.setdefault(ln.direction, ln)
    out = list(exact.values())
    for ln in lines:
        if ln.exact:
            continue
        v = ln.complex_direction()
        if any(np.abs(o.complex_direction() - v).max() < 1e-6 for o in out):
            continue
        out.append(ln)
    out.sort(key=Line.sort_key)
    return out


def extract_lines_report(a: Ideal, chart_order: Sequence[int] | None = None) -> LineExtraction:
    """Lines of Z(a), one chart z_k = 1 at a time, certified when exact.

    ``chart_order`` permutes the charts; the result does not depend on it.
    """
    dim = krull_dimension(a)
    if dim != 1:
        raise ValueError(f"line extraction needs a one-dimensional cone, got dimension {dim}")
    d = a.nvars
    gens = list(a.groebner())
    found: list[Line] = []
    notes = []
    exact = True
    charts = list(range(d)) if chart_order is None else list(chart_order)
    if sorted(charts) != list(range(d)):
        raise ValueError("chart_order must be a permutation of the variables")
    for k in charts:
        chart = [g.substitute(k, 1) for g in gens]
        chart = [g for g in chart if g.terms]
        free = [i for i in range(d) if i != k]
        try:
            sols = _solve_exact(chart, free, {k: GaussianRational(1)})
            for pt in sols:
                found.append(normalize_direction([pt[i] for i in range(d)]))
        except _Inexact:
            exact = False
            notes.append(f"chart z{k + 1}=1: roots are not Gaussian rationals")
            for pt in _solve_numeric(chart, free, d):
                pt[k] = 1.0
                ln = normalize_direction([complex(pt[i]) for i in range(d)])
                err = max(abs(g.evaluate_complex(ln.complex_direction())) for g in gens)
                found.append(Line(ln.direction, ln.lambda_set, False, float(err)))
    lines = _dedupe(found)
    if not lines:
        raise ArithmeticError("no lines found on a one-dimensional cone")
    certified = False
    if exact and all(ln.exact for ln in lines):
        for ln in lines:
            for g in a.gens:
                if g.evaluate(ln.direction):
                    raise ArithmeticError(f"generator {g} does not vanish on line {ln}")
        inter = Ideal(line_prime_generators(lines[0]), d)
        for ln in lines[1:]:
            inter = ideal_intersect(inter, Ideal(line_prime_generators(ln), d))
        for g in inter.gens:
            if not radical_membership(g, a):
                raise ArithmeticError("line set is incomplete: intersection of line primes not in the radical")
        certified = True
    return LineExtraction(lines, exact and all(ln.exact for ln in lines), certified, notes)


def extract_lines(a: Ideal, chart_order: Sequence[int] | None = None) -> list[Line]:
    return extract_lines_report(a, chart_order).lines


@dataclass(frozen=True)
class ConditionAResult:
    holds: bool
    witness: tuple[int, int] | None = None
    subvectors: tuple[tuple, tuple] | None = None

    def check_witness(self, lines: Sequence[Line]) -> bool:
        if self.witness is None:
            return self.holds
        i, j = self.witness
        return lines[i].lambda_set == lines[j].lambda_set and not _independent(lines[i], lines[j])


def _independent(u: Line, v: Line) -> bool:
    lam = u.lambda_set
    a = [u.direction[i] for i in lam]
    b = [v.direction[i] for i in lam]
    for p, q in combinations(range(len(lam)), 2):
        minor = a[p] * b[q] - a[q] * b[p]
        if u.exact and v.exact:
            if minor:
                return True
        elif abs(complex(minor)) > NUMERIC_TOL:
            return True
    return False


def condition_A(lines: Sequence[Line]) -> ConditionAResult:
    """Pairs of lines with equal Λ sets must have independent Λ-subvectors."""
    for i, j in combinations(range(len(lines)), 2):
        u, v = lines[i], lines[j]
        if u.lambda_set != v.lambda_set:
            continue
        if not _independent(u, v):
            sub = (tuple(u.direction[k] for k in u.lambda_set), tuple(v.direction[k] for k in v.lambda_set))
            return ConditionAResult(False, (i, j), sub)
    return ConditionAResult(True)
