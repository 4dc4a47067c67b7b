"""Numerical experiments on truncated quotient modules.

Everything here is double precision and diagnostic: the exact decision is
made in :mod:`essnormal.criterion`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from ..idealops import Ideal
from ..polyalg import Polynomial
from ..variety import Line
from .basis import GradedBasis, GradedSum, LabError, graded_quotient_basis, weight_sequences
from .compress import DEFAULT_WIDTH, CompressionMatrices, compression_matrices
from .weights import WeightScheme, monomial_norm

SVD_THRESHOLD = 1e-8
KERNEL_TAIL = 1e-8
TRUNCATION_BUDGET = 6000
DECAY_RATIO = 0.75


def lab(a: Ideal, n_max: int, w: WeightScheme | None = None) -> CompressionMatrices:
    """Basis plus compressed shifts, the usual starting point."""
    w = w or WeightScheme.hardy()
    return compression_matrices(graded_quotient_basis(a, n_max, w))


# ---------------------------------------------------------------------------
# Berezin transform of self-commutators

def kernel_degree_masses(point: Sequence[complex], w: WeightScheme, n: int) -> np.ndarray:
    """||degree-m part of k_point||^2 for m = 0..n."""
    inv = w.inverse_weights(n)
    out = np.zeros(n + 1)
    out[0] = 1.0
    for x in point:
        seq = inv * np.power(abs(complex(x)) ** 2, np.arange(n + 1))
        out = np.convolve(out, seq)[: n + 1]
    return out


def kernel_norm2(point: Sequence[complex], w: WeightScheme) -> float:
    return float(np.prod([w.kernel_factor(abs(complex(x)) ** 2) for x in point]))


def kernel_truncation(point: Sequence[complex], w: WeightScheme, rel_tail: float = KERNEL_TAIL,
                      budget: int = TRUNCATION_BUDGET) -> int:
    """Smallest degree N whose kernel tail beyond N is below rel_tail * ||k||^2."""
    total = kernel_norm2(point, w)
    n = 64
    while True:
        cap = min(n, budget)
        masses = kernel_degree_masses(point, w, cap)
        tails = total - np.cumsum(masses)
        ok = np.nonzero(tails <= rel_tail * total)[0]
        if ok.size:
            return int(ok[0])
        if cap == budget:
            raise LabError(
                f"kernel tail at {list(point)} needs truncation beyond {budget}; radius too close to 1"
            )
        n *= 2


def kernel_value(a: Sequence[complex], b: Sequence[complex], w: WeightScheme) -> complex:
    """k_b(a) = <k_b, k_a> = prod_i K(a_i conj(b_i)) with K(x) = sum x^n / w(n)."""
    out = 1.0 + 0j
    for x, y in zip(a, b):
        t = complex(x) * np.conj(complex(y))
        if w.is_hardy:
            out *= 1.0 / (1.0 - t)
        else:
            s = float(w.s)
            out *= (s + 1.0) * (1.0 - t) ** (-(s + 2.0))
    return out


def berezin_lower_bound(f: Polynomial, u: Sequence[complex], v: Sequence[complex], r: float,
                        w: WeightScheme | None = None) -> float:
    """|f(rv)|^2 |<k_ru, k_rv>|^2 / (||k_ru||^2 ||k_rv||^2).

    When f(u) = 0 and both lines lie in Z(I), this bounds the Berezin value
    of [S_f*, S_f] at ru from below: project S_f k_ru onto k_rv.
    """
    w = w or WeightScheme.hardy()
    a = [r * complex(x) for x in u]
    b = [r * complex(x) for x in v]
    fv = f.evaluate_complex(b)
    kab = kernel_value(a, b, w)
    return float(abs(fv) ** 2 * abs(kab) ** 2 / (kernel_value(a, a, w).real * kernel_value(b, b, w).real))


def _monomial_apply(cm: CompressionMatrices, alpha: Sequence[int], y, adjoint: bool):
    for i, e in enumerate(alpha):
        for _ in range(e):
            y = cm.apply_adjoint(i, y) if adjoint else cm.apply(i, y)
    return y


def apply_polynomial(cm: CompressionMatrices, f: Polynomial, y, adjoint: bool = False) -> list[np.ndarray]:
    """S_f y, or S_f* y with ``adjoint``; f(S) is a sum of monomials in commuting S_i."""
    out = [np.zeros_like(v) for v in y]
    for alpha, c in f.terms.items():
        c = complex(c)
        part = _monomial_apply(cm, alpha, y, adjoint)
        s = np.conj(c) if adjoint else c
        out = [o + s * p for o, p in zip(out, part)]
    return out


def _norm2(y) -> float:
    return float(sum(np.vdot(v, v).real for v in y))


@dataclass
class BerezinCurve:
    radii: list[float]
    values: list[float]
    truncation: int


def berezin_commutator_curve(a: Ideal, f: Polynomial, ray_direction: Sequence[complex], radii: Sequence[float],
                             w: WeightScheme | None = None, basis: GradedBasis | None = None,
                             budget: int = TRUNCATION_BUDGET) -> BerezinCurve:
    """<[S_f*, S_f] P k, P k> / ||P k||^2 at k = k_{r * ray_direction}."""
    w = w or (basis.weight if basis is not None else WeightScheme.hardy())
    radii = [float(r) for r in radii]
    if any(not 0 < r < 1 for r in radii):
        raise ValueError("radii must lie in (0, 1)")
    if radii != sorted(radii):
        raise ValueError("radii must be increasing")
    direction = [complex(x) for x in ray_direction]
    if max(abs(x) for x in direction) > 1 + 1e-12:
        raise ValueError("ray direction must lie in the closed polydisc")
    if f.is_constant():
        return BerezinCurve(radii, [0.0] * len(radii), 0)
    N = kernel_truncation([radii[-1] * x for x in direction], w, budget=budget)
    need = N + f.degree()
    if basis is None or basis.n_max < need:
        basis = graded_quotient_basis(a, need, w)
    cm = compression_matrices(basis)
    values = []
    for r in radii:
        y = basis.kernel_coordinates([r * x for x in direction])
        y = [v if n <= N else np.zeros_like(v) for n, v in enumerate(y)]
        norm = _norm2(y)
        if norm == 0:
            raise LabError(f"projected kernel vanishes at radius {r}")
        fy = apply_polynomial(cm, f, y)
        fsy = apply_polynomial(cm, f, y, adjoint=True)
        values.append((_norm2(fy) - _norm2(fsy)) / norm)
    return BerezinCurve(radii, values, N)


# ---------------------------------------------------------------------------
# Fredholm index of S_h

def h_blocks(cm: CompressionMatrices, u: Line) -> list[np.ndarray]:
    """Blocks of S_h with h = |Λ|^{-1} sum_{i in Λ} conj(u_i) z_i."""
    lam = u.lambda_set
    z = u.complex_direction()
    out = []
    for n in range(cm.n_max):
        out.append(sum(np.conj(z[i]) * cm.blocks[i][n] for i in lam) / len(lam))
    return out


@dataclass
class IndexEstimate:
    index: int
    stable: bool
    history: list[tuple[int, int, int]] = field(default_factory=list)  # (n_max, ker, coker)

    @property
    def inconclusive(self) -> bool:
        return not self.stable


def _truncated_index(H: Sequence[np.ndarray], dims: Sequence[int], top: int, tol: float) -> tuple[int, int]:
    """dim ker, dim coker of S_h: N_0+...+N_{top-1} -> N_0+...+N_top."""
    ker = 0
    ranks = []
    for n in range(top):
        sv = np.linalg.svd(H[n], compute_uv=False) if H[n].size else np.zeros(0)
        r = int(np.sum(sv > tol))
        ranks.append(r)
        ker += dims[n] - r
    coker = dims[0] + sum(dims[n + 1] - ranks[n] for n in range(top))
    return ker, coker


def fredholm_index_estimate(a_component: Ideal, u: Line, n_max: int, w: WeightScheme | None = None,
                            tol: float = SVD_THRESHOLD) -> IndexEstimate:
    """Index of S_h from three consecutive truncations ending at n_max."""
    if n_max < 3:
        raise ValueError("need n_max >= 3 for a stability check")
    if not u.exact:
        raise ValueError("the index estimate needs an exact line")
    cm = lab(a_component, n_max, w)
    H = h_blocks(cm, u)
    history = []
    for top in (n_max - 2, n_max - 1, n_max):
        k, c = _truncated_index(H, cm.dims, top, tol)
        history.append((top, k, c))
    indices = {k - c for _, k, c in history}
    return IndexEstimate(history[-1][1] - history[-1][2], len(indices) == 1, history)


# ---------------------------------------------------------------------------
# Asymptotic orthogonality

def asymptotic_orthogonality_norms(a: Ideal, b: Ideal, n_max: int, w: WeightScheme | None = None,
                                   width: int = DEFAULT_WIDTH) -> list[float]:
    """Windowed norms of P_{N_a} P_{N_b} for windows [n, n + width], n = 0..n_max - width."""
    if a.nvars != b.nvars:
        raise ValueError("ideals live in different rings")
    w = w or WeightScheme.hardy()
    ba = graded_quotient_basis(a, n_max, w)
    bb = graded_quotient_basis(b, n_max, w)
    d = a.nvars
    s0 = np.exp(ba.log_scales[0][0] + bb.log_scales[0][0])
    eng = GradedSum(weight_sequences(w, n_max, d=d), np.array([[s0]], dtype=complex))
    per_degree = []
    for n in range(n_max + 1):
        if n == 0:
            C = eng.step()
        else:
            C = eng.step([ba.X[k][n - 1] for k in range(d)], [bb.X[k][n - 1] for k in range(d)])
        P = ba.gram_inv_half[n] @ C @ bb.gram_inv_half[n]
        per_degree.append(float(np.linalg.norm(P, 2)) if P.size else 0.0)
    return [max(per_degree[n:n + width + 1]) for n in range(n_max - width + 1)]


def asymptotic_orthogonality_norm(a: Ideal, b: Ideal, n: int, w: WeightScheme | None = None,
                                  width: int = DEFAULT_WIDTH) -> float:
    return asymptotic_orthogonality_norms(a, b, n + width, w, width)[n]


# ---------------------------------------------------------------------------
# Essential spectrum probe

def probe_matrix(cm: CompressionMatrices, lam: Sequence[complex], window: tuple[int, int]) -> np.ndarray:
    """sum_i (lam_i - S_i)(lam_i - S_i)^* restricted to degrees n..n+width."""
    n, width = window
    cm.check_window(n, width)
    degs = list(range(n, n + width + 1))
    sizes = [cm.basis.dim(m) for m in degs]
    off = [0] + list(np.cumsum(sizes))
    T = np.zeros((off[-1], off[-1]), dtype=complex)
    for i, li in enumerate(lam):
        li = complex(li)
        for k, m in enumerate(degs):
            sl = slice(off[k], off[k + 1])
            D = abs(li) ** 2 * np.eye(sizes[k])
            if m > 0:
                S = cm.blocks[i][m - 1]
                D = D + S @ S.conj().T
            T[sl, sl] += D
            if k + 1 < len(degs):
                nx = slice(off[k + 1], off[k + 2])
                S = cm.blocks[i][m]
                T[nx, sl] += -np.conj(li) * S
                T[sl, nx] += -li * S.conj().T
    return T


def essential_spectrum_probe(cm: CompressionMatrices, grid: Sequence[Sequence[complex]],
                             window: tuple[int, int]) -> list[float]:
    out = []
    for lam in grid:
        if len(lam) != cm.nvars:
            raise ValueError(f"grid point {lam} has the wrong number of coordinates")
        if max(abs(complex(x)) for x in lam) > 1 + 1e-12:
            raise ValueError(f"grid point {lam} lies outside the closed polydisc")
        T = probe_matrix(cm, lam, window)
        out.append(float(np.linalg.eigvalsh(T)[0]) if T.size else 0.0)
    return out


# ---------------------------------------------------------------------------
# Decay classification of commutator tails

@dataclass
class DecayProfile:
    truncation: int
    width: int
    mid: dict[tuple[int, int], float]
    last: dict[tuple[int, int], float]
    decaying: bool


def classify_decay(mid: float, last: float, ratio: float = DECAY_RATIO, floor: float = 1e-9) -> bool:
    """A tail decays when the last window is at most ``ratio`` times the middle one."""
    return last <= floor or last <= ratio * mid


def decay_profile(cm: CompressionMatrices, width: int = DEFAULT_WIDTH, ratio: float = DECAY_RATIO) -> DecayProfile:
    """Compare each commutator's window at mid truncation with the last window."""
    last_start = cm.n_max - 1 - width
    if last_start < 2:
        raise LabError("truncation too small for a decay profile")
    mid_start = last_start // 2
    mid, last = {}, {}
    for i, j in combinations_with_replacement(range(cm.nvars), 2):
        m, l = cm.commutator_tail_norms(i, j, [(mid_start, width), (last_start, width)])
        mid[(i, j)], last[(i, j)] = m, l
    decaying = all(classify_decay(mid[p], last[p], ratio) for p in mid)
    return DecayProfile(cm.n_max, width, mid, last, decaying)


# ---------------------------------------------------------------------------
# Structure checks on essentially quasi-prime components

def structure_norms(cm: CompressionMatrices, u: Line, windows: Sequence[tuple[int, int]]) -> dict[int, list[float]]:
    """Windowed norms of S_{z_i} - u_i S_h (i in Λ) and of S_{z_i} (i outside Λ)."""
    H = h_blocks(cm, u)
    z = u.complex_direction()
    out = {}
    for i in range(cm.nvars):
        if i in u.lambda_set:
            blocks = [cm.blocks[i][n] - z[i] * H[n] for n in range(cm.n_max)]
        else:
            blocks = list(cm.blocks[i])
        out[i] = [cm.windowed_norm(blocks, n, width) for n, width in windows]
    return out


def leakage_norms(cm: CompressionMatrices, i: int, windows: Sequence[tuple[int, int]]) -> list[float]:
    """Windowed norms of (1 - P_N) M_{z_i} P_N.

    Per degree, ||(1 - P) z_i f||^2 = ||z_i f||^2 - ||S_{z_i} f||^2, and the
    first term is a Gram matrix with the weight ratio w(a+1)/w(a)^2 in
    variable i.
    """
    basis = cm.basis
    w = basis.weight
    n_max = basis.n_max
    inv = w.inverse_weights(n_max)
    ratio = np.exp(np.array([w.log_w(x + 1) - 2 * w.log_w(x) for x in range(n_max + 1)]))
    seqs = [ratio if k == i else inv for k in range(basis.nvars)]
    W = basis.weighted_gram(seqs)
    per_degree = []
    for n in range(n_max):
        T = basis.gram_inv_half[n] @ W[n] @ basis.gram_inv_half[n]
        S = cm.blocks[i][n]
        D = T - S.conj().T @ S
        D = 0.5 * (D + D.conj().T)
        per_degree.append(float(np.sqrt(max(np.linalg.eigvalsh(D)[-1], 0.0))) if D.size else 0.0)
    out = []
    for n, width in windows:
        cm.check_window(n, width)
        out.append(max(per_degree[n:n + width + 1]))
    return out


__all__ = [
    "monomial_norm", "lab", "kernel_degree_masses", "kernel_norm2", "kernel_truncation", "apply_polynomial",
    "kernel_value", "berezin_lower_bound", "BerezinCurve", "berezin_commutator_curve", "h_blocks", "IndexEstimate", "fredholm_index_estimate",
    "asymptotic_orthogonality_norms", "asymptotic_orthogonality_norm", "probe_matrix",
    "essential_spectrum_probe", "DecayProfile", "classify_decay", "decay_profile", "structure_norms",
    "leakage_norms",
]
