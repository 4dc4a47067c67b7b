"""Sparse multivariate polynomials over the Gaussian rationals."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .coeff import ONE, ZERO, GaussianRational
from .order import GREVLEX, Monomial, MonomialOrder, mono_mul


class Polynomial:
    """A polynomial in ``nvars`` variables ``z1..zd``.

    ``terms`` maps exponent tuples to nonzero :class:`GaussianRational`
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    clean[tuple(m)] = c
        if nvars is None:
            if not clean:
                raise ValueError("nvars is required for an empty polynomial")
            nvars = len(next(iter(clean)))
        for m in clean:
            if len(m) != nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {nvars} variables")
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> Polynomial:
        obj = object.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> Polynomial:
        c = GaussianRational.coerce(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(ONE, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> Polynomial:
        """The coordinate ``z_{i+1}`` (``i`` is zero-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls._raw({tuple(m): ONE}, nvars)

    @classmethod
    def monomial(cls, m: Sequence[int], c=ONE) -> Polynomial:
        return cls({tuple(m): c}, len(m))

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> Polynomial:
        """sum_i coeffs[i] * z_{i+1}."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            m = [0] * n
            m[i] = 1
            terms[tuple(m)] = c
        return cls(terms, n)

    # basic queries ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self) -> GaussianRational:
        return self.terms.get((0,) * self.nvars, ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables(self) -> set[int]:
        """Zero-based indices of variables that occur."""
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> GaussianRational:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        lc = self.leading_coefficient(order)
        if lc == ONE:
            return self
        inv = lc.inverse()
        return Polynomial._raw({m: c * inv for m, c in self.terms.items()}, self.nvars)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Monomial, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def homogeneous_component(self, n: int) -> Polynomial:
        return Polynomial._raw({m: c for m, c in self.terms.items() if sum(m) == n}, self.nvars)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: Polynomial):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return Polynomial.constant(other, self.nvars)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> Polynomial:
        c = GaussianRational.coerce(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def mul_term(self, mono: Monomial, c: GaussianRational) -> Polynomial:
        return Polynomial._raw({mono_mul(m, mono): v * c for m, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            terms: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    s = terms.get(m)
                    terms[m] = c1 * c2 if s is None else s + c1 * c2
            return Polynomial._raw({m: c for m, c in terms.items() if c}, self.nvars)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, GaussianRational)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # substitution and evaluation -------------------------------------------

    def evaluate(self, point: Sequence) -> GaussianRational:
        """Exact value at a point with Gaussian-rational coordinates."""
        pt = [GaussianRational.coerce(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError("point has the wrong dimension")
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(c)
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, i: int, value) -> Polynomial:
        """Replace ``z_{i+1}`` by an exact constant; the variable count is kept."""
        value = GaussianRational.coerce(value)
        terms: dict = {}
        powers: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                p = powers.get(e)
                if p is None:
                    p = powers[e] = value ** e
                c = c * p
                if not c:
                    continue
                m = m[:i] + (0,) + m[i + 1:]
            s = terms.get(m)
            terms[m] = c if s is None else s + c
        return Polynomial._raw({m: c for m, c in terms.items() if c}, self.nvars)

    def embed(self, nvars: int, offset: int = 0) -> Polynomial:
        """View in a ring with ``nvars`` variables, shifting ours by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring too small")
        pre = (0,) * offset
        post = (0,) * (nvars - offset - self.nvars)
        return Polynomial._raw({pre + m + post: c for m, c in self.terms.items()}, nvars)

    def restrict(self, offset: int, nvars: int) -> Polynomial:
        """Inverse of :meth:`embed`; variables outside the window must not occur."""
        terms = {}
        for m, c in self.terms.items():
            if any(m[:offset]) or any(m[offset + nvars:]):
                raise ValueError("polynomial involves variables outside the window")
            terms[m[offset:offset + nvars]] = c
        return Polynomial._raw(terms, nvars)

    def conjugate_coefficients(self) -> Polynomial:
        return Polynomial._raw({m: c.conjugate() for m, c in self.terms.items()}, self.nvars)

    # text ---------------------------------------------------------------------

    def format(self, names: Sequence[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            negative = False
            if c.im and c.re:
                cs = f"({c})"
            elif c.im:
                negative = c.im < 0
                cs = str(-c if negative else c)
            else:
                negative = c.re < 0
                cs = str(-c if negative else c)
            if mono:
                if cs == "1":
                    body = mono
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if negative else "+", body))
        sign, body = parts[0]
        text = ("-" + body) if sign == "-" else body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r}, nvars={self.nvars})"


def variables(nvars: int) -> list[Polynomial]:
    """The coordinate functions ``z1..zd``."""
    return [Polynomial.variable(i, nvars) for i in range(nvars)]


def linear_combination(polys: Iterable[Polynomial], coeffs: Iterable) -> Polynomial:
    polys = list(polys)
    total = Polynomial.zero(polys[0].nvars)
    for p, c in zip(polys, coeffs):
        total = total + p.scale(c)
    return total
