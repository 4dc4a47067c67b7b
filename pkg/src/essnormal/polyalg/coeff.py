"""Exact Gaussian-rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_ZERO = mpq(0)
_ONE = mpq(1)


def _to_mpq(x) -> mpq:
    if isinstance(x, type(_ZERO)):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """An element re + im*i of Q(i) with arbitrary-precision parts.

    Both parts are ``gmpy2.mpq`` values, which are always kept in lowest
    terms with a positive denominator.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, complex):
            raise TypeError("floating complex values are not exact; use rationalize()")
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> GaussianRational:
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        return cls(x)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, _ZERO)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> GaussianRational:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero")
            return GaussianRational._make(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational._make(self.re, -self.im)

    def abs2(self) -> mpq:
        """Squared modulus, exactly."""
        return self.re * self.re + self.im * self.im

    # predicates and conversions -------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)) or isinstance(other, type(_ZERO)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def height(self) -> int:
        """Largest absolute numerator or denominator among both parts."""
        return max(abs(int(self.re.numerator)), int(self.re.denominator),
                   abs(int(self.im.numerator)), int(self.im.denominator))

    @classmethod
    def rationalize(cls, z: complex, max_denominator: int = 10**6) -> GaussianRational:
        """Closest small-height Gaussian rational to ``z`` (continued fractions)."""
        re = Fraction(z.real).limit_denominator(max_denominator)
        im = Fraction(z.imag).limit_denominator(max_denominator)
        return cls(re, im)

    # text -----------------------------------------------------------------

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}*i"
        if not re:
            return ims
        if ims.startswith("-"):
            return f"{re} - {ims[1:]}"
        return f"{re} + {ims}"

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse the output of ``str`` (or any constant polynomial expression)."""
        from .parse import parse_polynomial

        p = parse_polynomial(text, 1)
        if not p.is_constant():
            raise ValueError(f"not a constant: {text!r}")
        return p.constant_coefficient()


ZERO = GaussianRational._make(_ZERO, _ZERO)
ONE = GaussianRational._make(_ONE, _ZERO)
I = GaussianRational._make(_ZERO, _ONE)
