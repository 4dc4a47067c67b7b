"""Compressed shifts S_{z_i} = P_N M_{z_i} |_N as graded matrix blocks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import GradedBasis, LabError
from .weights import WeightScheme

DEFAULT_WIDTH = 3


@dataclass(frozen=True)
class CompressionMatrices:
    """``blocks[i][n]`` is the matrix of S_{z_i}: N_n -> N_{n+1} in orthonormal bases.

    Entry (l, k) of ``blocks[i][n]`` is <z_i e_{n,k}, e_{n+1,l}>.  Blocks
    exist for n < n_max; S maps the top degree out of the truncation.
    """

    basis: GradedBasis
    blocks: tuple[tuple[np.ndarray, ...], ...]

    @property
    def nvars(self) -> int:
        return self.basis.nvars

    @property
    def n_max(self) -> int:
        return self.basis.n_max

    @property
    def dims(self) -> list[int]:
        return self.basis.dims

    def block(self, i: int, n_from: int, n_to: int) -> np.ndarray:
        """The (n_to, n_from) block of S_{z_i}; zero unless n_to = n_from + 1."""
        if n_to == n_from + 1 and n_from < self.n_max:
            return self.blocks[i][n_from]
        return np.zeros((self.basis.dim(n_to), self.basis.dim(n_from)), dtype=complex)

    def apply(self, i: int, y: Sequence[np.ndarray]) -> list[np.ndarray]:
        """S_{z_i} on a graded vector; the part leaving the truncation is dropped."""
        out = [np.zeros(self.basis.dim(0), dtype=complex)]
        for n in range(self.n_max):
            out.append(self.blocks[i][n] @ y[n])
        return out

    def apply_adjoint(self, i: int, y: Sequence[np.ndarray]) -> list[np.ndarray]:
        out = [self.blocks[i][n].conj().T @ y[n + 1] for n in range(self.n_max)]
        out.append(np.zeros(self.basis.dim(self.n_max), dtype=complex))
        return out

    def commutator_block(self, i: int, j: int, n: int) -> np.ndarray:
        """[S_i*, S_j] restricted to N_n: S_i^H S_j - S_j S_i^H (lower degree)."""
        if not 0 <= n < self.n_max:
            raise LabError(f"commutator at degree {n} needs degree {n + 1} <= {self.n_max}")
        out = self.blocks[i][n].conj().T @ self.blocks[j][n]
        if n > 0:
            out = out - self.blocks[j][n - 1] @ self.blocks[i][n - 1].conj().T
        return out

    def check_window(self, n: int, width: int) -> None:
        if n < 0 or width < 0:
            raise LabError("window start and width must be non-negative")
        if n + width > self.n_max - 1:
            raise LabError(
                f"window [{n}, {n + width}] exceeds truncation degree {self.n_max} minus 1"
            )

    def commutator_tail_norms(self, i: int, j: int, windows: Sequence[tuple[int, int]]) -> list[float]:
        """Spectral norm of [S_i*, S_j] on degrees n..n+width for each window.

        The commutator is graded, so the window norm is the largest block norm.
        """
        out = []
        for n, width in windows:
            self.check_window(n, width)
            norms = [np.linalg.norm(self.commutator_block(i, j, m), 2) for m in range(n, n + width + 1)]
            out.append(float(max(norms)))
        return out

    def windowed_norm(self, blocks: Sequence[np.ndarray], n: int, width: int) -> float:
        """Norm of a degree-raising graded operator on degrees n..n+width."""
        self.check_window(n, width)
        return float(max(np.linalg.norm(blocks[m], 2) for m in range(n, n + width + 1)))

    def offsets(self) -> list[int]:
        return [0] + list(np.cumsum(self.dims))

    def dense(self, i: int) -> np.ndarray:
        """The full truncated matrix of S_{z_i} on N_0 + ... + N_{n_max}."""
        off = self.offsets()
        A = np.zeros((off[-1], off[-1]), dtype=complex)
        for n in range(self.n_max):
            A[off[n + 1]:off[n + 2], off[n]:off[n + 1]] = self.blocks[i][n]
        return A


def compression_matrices(basis: GradedBasis, w: WeightScheme | None = None) -> CompressionMatrices:
    if w is not None and w != basis.weight:
        raise ValueError(f"basis built for weight {basis.weight}, not {w}")
    blocks = tuple(
        tuple(basis.gram_inv_half[n + 1] @ basis.X[i][n] @ basis.gram_half[n] for n in range(basis.n_max))
        for i in range(basis.nvars)
    )
    return CompressionMatrices(basis, blocks)


__all__ = ["CompressionMatrices", "compression_matrices", "DEFAULT_WIDTH"]
