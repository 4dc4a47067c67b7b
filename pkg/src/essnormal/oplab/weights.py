"""Hardy and weighted Bergman monomial weights on the polydisc."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, lgamma, sqrt
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class WeightScheme:
    """``kind`` is "hardy" or "bergman"; ``s`` is the Bergman exponent."""

    kind: str = "hardy"
    s: Fraction | None = None

    def __post_init__(self):
        if self.kind == "hardy":
            if self.s is not None:
                raise ValueError("hardy weight takes no parameter")
        elif self.kind == "bergman":
            if self.s is None or self.s < 0:
                raise ValueError("bergman weight needs s >= 0")
            object.__setattr__(self, "s", Fraction(self.s))
        else:
            raise ValueError(f"unknown weight {self.kind!r}")

    @classmethod
    def hardy(cls) -> WeightScheme:
        return cls("hardy")

    @classmethod
    def bergman(cls, s) -> WeightScheme:
        return cls("bergman", Fraction(s))

    @property
    def is_hardy(self) -> bool:
        return self.kind == "hardy"

    def log_w(self, n: int) -> float:
        """log of the one-variable weight ||z^n||^2."""
        if self.is_hardy:
            return 0.0
        s = float(self.s)
        return lgamma(n + 1) + lgamma(s + 1) - lgamma(n + s + 2)

    def w(self, n: int) -> float:
        return exp(self.log_w(n))

    def inverse_weights(self, n_max: int) -> np.ndarray:
        """1 / w(a) for a = 0..n_max."""
        return np.exp(-np.array([self.log_w(a) for a in range(n_max + 1)]))

    def kernel_factor(self, x: float) -> float:
        """sum_n x^n / w(n) for 0 <= x < 1, in closed form."""
        if not 0 <= x < 1:
            raise ValueError("kernel factor needs 0 <= x < 1")
        if self.is_hardy:
            return 1.0 / (1.0 - x)
        s = float(self.s)
        return (s + 1.0) * (1.0 - x) ** (-(s + 2.0))

    def __str__(self):
        return "hardy" if self.is_hardy else f"bergman s = {self.s}"


def monomial_norm(alpha: Sequence[int], w: WeightScheme) -> float:
    """||z^alpha|| = sqrt(prod_i w(alpha_i))."""
    return sqrt(exp(sum(w.log_w(a) for a in alpha)))


def log_monomial_norm2(alpha: Sequence[int], w: WeightScheme) -> float:
    return sum(w.log_w(a) for a in alpha)


__all__ = ["WeightScheme", "monomial_norm", "log_monomial_norm2"]
