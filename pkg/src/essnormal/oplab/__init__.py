"""Numerical operator laboratory for truncated quotient modules."""

from .basis import GradedBasis, LabError, dense_quotient_basis, graded_quotient_basis
from .compress import CompressionMatrices, compression_matrices
from .experiments import *  # noqa: F401,F403
from .experiments import __all__ as _exp_all
from .weights import WeightScheme, log_monomial_norm2, monomial_norm

__all__ = [
    "GradedBasis", "LabError", "dense_quotient_basis", "graded_quotient_basis", "CompressionMatrices",
    "compression_matrices", "WeightScheme", "log_monomial_norm2", "monomial_norm",
] + [n for n in _exp_all if n != "monomial_norm"]
