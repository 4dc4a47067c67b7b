"""Ideal-level algebra built on Gröbner bases."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .polyalg import GREVLEX, MonomialOrder, Polynomial, block, buchberger, divide, normal_form
from .polyalg.order import divides

SATURATION_MAX_STEPS = 20


class EmptyVarietyError(ValueError):
    """Raised where a proper ideal is required but the unit ideal was given."""


class Ideal:
    """A polynomial ideal with lazily computed, cached reduced Gröbner bases.

    The cache is filled under a lock, so one ``Ideal`` may be shared between
    threads.
    """

    def __init__(self, gens: Iterable[Polynomial], nvars: int | None = None):
        gens = list(gens)
        if nvars is None:
            if not gens:
                raise ValueError("nvars is required for an ideal without generators")
            nvars = gens[0].nvars
        for g in gens:
            if g.nvars != nvars:
                raise ValueError(f"generator {g} lives in {g.nvars} variables, expected {nvars}")
        self.gens: tuple[Polynomial, ...] = tuple(g for g in gens if g.terms)
        self.nvars = nvars
        self._cache: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    @classmethod
    def zero(cls, nvars: int) -> Ideal:
        return cls([], nvars)

    def groebner(self, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
        with self._lock:
            gb = self._cache.get(order)
            if gb is None:
                gb = tuple(buchberger(self.gens, order))
                self._cache[order] = gb
            return gb

    def _seed(self, order: MonomialOrder, gb: Sequence[Polynomial]) -> None:
        with self._lock:
            self._cache.setdefault(order, tuple(gb))

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.groebner())

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def reduce(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(GREVLEX) for g in self.groebner()]

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.nvars == other.nvars and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.nvars, self.groebner()))

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal({str(self)}, nvars={self.nvars})"


def _check_ring(a: Ideal, b: Ideal):
    if a.nvars != b.nvars:
        raise ValueError(f"ring mismatch: {a.nvars} vs {b.nvars} variables")


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _check_ring(a, b)
    return Ideal(a.gens + b.gens, a.nvars)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _check_ring(a, b)
    return Ideal([f * g for f in a.gens for g in b.gens], a.nvars)


def eliminate(a: Ideal, k: int) -> Ideal:
    """a ∩ C[z_{k+1}, ..., z_d], returned in the ring of the last d - k variables."""
    if not 0 < k < a.nvars:
        raise ValueError("need 0 < k < nvars")
    gb = a.groebner(block(k))
    keep = [g.restrict(k, a.nvars - k) for g in gb if not any(any(m[:k]) for m in g.terms)]
    return Ideal(keep, a.nvars - k)


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    """a ∩ b by eliminating t from t·a + (1 - t)·b."""
    _check_ring(a, b)
    n = a.nvars
    if a.is_zero() or b.is_zero():
        return Ideal.zero(n)
    t = Polynomial.variable(0, n + 1)
    one_minus_t = Polynomial.one(n + 1) - t
    gens = [t * g.embed(n + 1, 1) for g in a.gens]
    gens += [one_minus_t * g.embed(n + 1, 1) for g in b.gens]
    return eliminate(Ideal(gens, n + 1), 1)


def ideal_quotient(a: Ideal, f: Polynomial) -> Ideal:
    """(a : f) = {g : g·f ∈ a}."""
    if not f.terms:
        raise ValueError("quotient by the zero polynomial")
    if f.nvars != a.nvars:
        raise ValueError("ring mismatch")
    if f.is_constant():
        return a
    inter = ideal_intersect(a, Ideal([f], a.nvars))
    gens = []
    for g in inter.gens:
        (q,), r = divide(g, [f])
        if r.terms:
            raise ArithmeticError("intersection generator not divisible by f")
        gens.append(q)
    return Ideal(gens, a.nvars)


def saturate(a: Ideal, f: Polynomial, max_steps: int = SATURATION_MAX_STEPS) -> Ideal:
    """(a : f^∞), by iterating the quotient until the chain stabilizes."""
    if not f.terms:
        raise ValueError("saturation by the zero polynomial")
    current = a
    for _ in range(max_steps):
        nxt = ideal_quotient(current, f)
        if nxt.groebner() == current.groebner():
            return current
        current = nxt
    raise RuntimeError(f"saturation did not stabilize within {max_steps} steps")


def radical_membership(f: Polynomial, a: Ideal) -> bool:
    """f ∈ √a, by checking that a + (1 - y·f) is the unit ideal."""
    if f.nvars != a.nvars:
        raise ValueError("ring mismatch")
    if not f.terms:
        return True
    if a.contains(f):
        return True
    n = a.nvars
    y = Polynomial.variable(0, n + 1)
    gens = [g.embed(n + 1, 1) for g in a.gens]
    gens.append(Polynomial.one(n + 1) - y * f.embed(n + 1, 1))
    gb = buchberger(gens, GREVLEX)
    return len(gb) == 1 and gb[0].is_constant()


# ---------------------------------------------------------------------------
# Hilbert series of a monomial ideal by pivot splitting

def _poly_add(p, q):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _minimalize(gens) -> frozenset:
    gens = sorted(set(gens), key=sum)
    keep = []
    for m in gens:
        if not any(divides(k, m) for k in keep):
            keep.append(m)
    return frozenset(keep)


@lru_cache(maxsize=65536)
def _numerator(gens: frozenset) -> tuple[int, ...]:
    """K-polynomial numerator N(t) with HS = N(t)/(1-t)^d, for a minimal monomial ideal."""
    if not gens:
        return (1,)
    gl = list(gens)
    counts: dict[int, int] = {}
    for m in gl:
        for i, e in enumerate(m):
            if e:
                counts[i] = counts.get(i, 0) + 1
    shared = [i for i, c in counts.items() if c >= 2]
    if not shared:
        out = [1]
        for m in gl:
            out = _poly_mul(out, [1] + [0] * (sum(m) - 1) + [-1])
        return tuple(out)
    x = max(shared, key=lambda i: (counts[i], -i))
    e = min(m[x] for m in gl if m[x])
    p = tuple(e if i == x else 0 for i in range(len(gl[0])))
    plus = _minimalize(gl + [p])
    colon = _minimalize(tuple(v - min(v, w) for v, w in zip(m, p)) for m in gl)
    left = list(_numerator(plus))
    right = [0] * e + list(_numerator(colon))
    return tuple(_poly_add(left, right))


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)^exponent, with all (1 - t) factors cancelled."""

    numerator: tuple[int, ...]
    exponent: int

    @classmethod
    def make(cls, numerator: Sequence[int], exponent: int) -> HilbertSeries:
        num = _trim(list(numerator))
        if not num:
            return cls((), 0)
        while exponent > 0 and sum(num) == 0:
            # synthetic division by (1 - t)
            q = []
            acc = 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = _trim(q)
            exponent -= 1
        return cls(tuple(num), exponent)

    def coefficient(self, n: int) -> int:
        if n < 0:
            return 0
        e = self.exponent
        if e == 0:
            return self.numerator[n] if n < len(self.numerator) else 0
        return sum(c * comb(n - k + e - 1, e - 1) for k, c in enumerate(self.numerator) if k <= n)

    def is_polynomial(self) -> bool:
        return self.exponent == 0

    def value_at_one(self) -> int:
        """Sum of all coefficients; only defined for a polynomial series."""
        if not self.is_polynomial():
            raise ValueError("series is not a polynomial")
        return sum(self.numerator)

    def __sub__(self, other: HilbertSeries) -> HilbertSeries:
        e = max(self.exponent, other.exponent)
        a = list(self.numerator)
        b = list(other.numerator)
        for _ in range(e - self.exponent):
            a = _poly_mul(a, [1, -1])
        for _ in range(e - other.exponent):
            b = _poly_mul(b, [1, -1])
        return HilbertSeries.make(_poly_add(a, [-c for c in b]), e)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            num = "0"
        else:
            num = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for s, body in terms[1:]:
                num += f" {s} {body}"
        if self.exponent == 0:
            return num
        if len(terms) > 1:
            num = f"({num})"
        den = "(1 - t)" if self.exponent == 1 else f"(1 - t)^{self.exponent}"
        return f"{num}/{den}"


def _require_homogeneous(a: Ideal):
    if not a.homogeneous:
        raise ValueError("ideal is not homogeneous")


def hilbert_series(a: Ideal) -> HilbertSeries:
    """Hilbert series of ring/a from the leading-term ideal of a grevlex basis."""
    _require_homogeneous(a)
    lms = _minimalize(a.leading_monomials())
    return HilbertSeries.make(_numerator(lms), a.nvars)


def hilbert_function(a: Ideal, n: int) -> int:
    return hilbert_series(a).coefficient(n)


def krull_dimension(a: Ideal) -> int:
    """Dimension of the affine cone Z(a); 0 when only the origin remains."""
    _require_homogeneous(a)
    if a.is_unit():
        raise EmptyVarietyError("the unit ideal has an empty variety")
    return hilbert_series(a).exponent


def principal(f: Polynomial) -> Ideal:
    return Ideal([f], f.nvars)
