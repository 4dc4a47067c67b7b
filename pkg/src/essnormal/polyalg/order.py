"""Monomial orders.

Monomials are plain tuples of non-negative exponents.  An order is
represented by a sort key: ``m1 > m2`` in the order iff
``order.key(m1) > order.key(m2)`` as Python tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

Monomial = tuple  # tuple[int, ...]


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lex, lex, or a block elimination order.

    ``block`` orders the first ``k`` variables by grevlex and breaks ties
    with grevlex on the remaining ones, so any monomial involving one of
    the first ``k`` variables beats every monomial free of them.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.k < 1:
            raise ValueError("block order needs k >= 1")

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        k = self.k
        return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, n: int):
    """All exponent tuples of total degree ``n``, in lex-descending order."""
    if nvars == 0:
        if n == 0:
            yield ()
        return
    if nvars == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in monomials_of_degree(nvars - 1, n - first):
            yield (first,) + rest
