"""Degree-by-degree models of the quotient module N = [I]^⊥.

The degree-n piece N_n is identified with A_n, the degree-n part of the
quotient ring, whose basis B_n is the set of standard monomials of a grevlex
Gröbner basis.  Writing phi_alpha for the normal-form coordinates of z^alpha,
the quotient norm on A_n has Gram matrix G_n^{-1}, where

    G_n = sum_{|alpha| = n} phi_alpha phi_alpha^H / w(alpha).

Multiplication by z_i is an exact map X_i: A_n -> A_{n+1}, and in orthonormal
coordinates y = G^{-1/2} x the compressed shift block is
G_{n+1}^{-1/2} X_i G_n^{1/2}.  Sums over alpha are accumulated one variable
at a time, so no step ever enumerates all monomials of a degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..idealops import Ideal
from ..polyalg import GREVLEX, ONE, ZERO, Polynomial, monomials_of_degree, normal_form
from ..polyalg.order import divides
from .weights import WeightScheme

COND_LIMIT = 1e13


class LabError(RuntimeError):
    """A numerical experiment could not be carried out reliably."""


def _apply(L, A, R):
    """L A R^H on a stack of matrices, or L a on a stack of vectors (R is None)."""
    if R is None:
        return A @ L.T
    return L @ A @ R.conj().T


class GradedSum:
    """Running sums over exponent vectors, one variable at a time.

    For variable k with coefficient sequence c_k,

        H^{(k)}_n = sum_a c_k(a) L_k^a H^{(k-1)}_{n-a} (R_k^a)^H,

    where L_k^a is the a-fold product of degree maps of variable k.  A
    sequence is either ``("geom", c0, q)`` meaning c(a) = c0 q^a, which allows
    an O(1) update per degree, or an explicit array.
    """

    def __init__(self, seqs: Sequence, init: np.ndarray, vector: bool = False):
        self.seqs = list(seqs)
        self.init = init
        self.vector = vector
        self.n = -1
        self.prev: list | None = None
        self.stacks: list = [None] * len(self.seqs)

    def step(self, L=None, R=None) -> np.ndarray:
        n = self.n + 1
        cur = self.init if n == 0 else np.zeros(self._shape(L, R), dtype=complex)
        values = []
        for k, seq in enumerate(self.seqs):
            Lk = None if L is None else L[k]
            Rk = None if (R is None or self.vector) else R[k]
            if isinstance(seq, tuple):
                _, c0, q = seq
                val = c0 * cur
                if n > 0:
                    val = val + q * _apply(Lk, self.prev[k], Rk)
            else:
                st = self.stacks[k]
                if n > 0:
                    st = _apply(Lk, st, Rk)
                    st = np.concatenate([st, cur[None]], axis=0)
                else:
                    st = cur[None].copy()
                self.stacks[k] = st
                coeffs = np.asarray(seq[n::-1][: st.shape[0]], dtype=complex)
                val = np.tensordot(coeffs, st, axes=(0, 0))
            values.append(val)
            cur = val
        self.prev = values
        self.n = n
        return cur

    def _shape(self, L, R):
        rows = L[0].shape[0]
        if self.vector:
            return (rows,)
        return (rows, R[0].shape[0])

    def rescale(self, left: np.ndarray, right: np.ndarray | None = None) -> None:
        """Multiply every stored degree-n quantity by diag(left) (and diag(right)^H)."""
        def sc(A):
            if self.vector:
                return A * left
            return (left[:, None] * A) * (right if right is not None else left)[None, :]

        self.prev = [sc(A) for A in self.prev]
        for k, st in enumerate(self.stacks):
            if st is not None:
                if self.vector:
                    self.stacks[k] = st * left[None, :]
                else:
                    r = right if right is not None else left
                    self.stacks[k] = st * left[None, :, None] * r[None, None, :]


def weight_sequences(w: WeightScheme, n_max: int, factors: Sequence[complex] | None = None,
                     d: int | None = None) -> list:
    """Per-variable sequences (1/w(a)) * factor_k^a."""
    d = d if d is not None else len(factors)
    factors = factors if factors is not None else [1.0] * d
    if w.is_hardy:
        return [("geom", 1.0, complex(f)) for f in factors]
    inv = w.inverse_weights(n_max)
    return [inv * np.power(complex(f), np.arange(n_max + 1)) for f in factors]


@dataclass
class GradedBasis:
    """Normal-form model of N_0, ..., N_{n_max} for one ideal and weight."""

    ideal: Ideal
    weight: WeightScheme
    n_max: int
    nvars: int
    monomials: list[list[tuple]]
    X: list[list[np.ndarray]]  # X[i][n]: A_n -> A_{n+1}, scaled coordinates
    gram: list[np.ndarray]  # scaled G_n
    gram_half: list[np.ndarray]
    gram_inv_half: list[np.ndarray]
    log_scales: list[np.ndarray]  # scaled coords = exp(log_scales[n]) * normal-form coords
    condition: list[float] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.monomials]

    def dim(self, n: int) -> int:
        return len(self.monomials[n])

    def _init_value(self):
        return np.array([np.exp(self.log_scales[0][0])], dtype=complex)

    def kernel_coordinates(self, point: Sequence[complex]) -> list[np.ndarray]:
        """Orthonormal coordinates of the degree pieces of P k_point."""
        lam = [complex(x) for x in point]
        seqs = weight_sequences(self.weight, self.n_max, [np.conj(x) for x in lam])
        eng = GradedSum(seqs, self._init_value(), vector=True)
        out = []
        for n in range(self.n_max + 1):
            L = None if n == 0 else [self.X[k][n - 1] for k in range(self.nvars)]
            kappa = eng.step(L)
            out.append(self.gram_inv_half[n] @ kappa)
        return out

    def weighted_gram(self, seqs: Sequence) -> list[np.ndarray]:
        """sum_alpha prod_k c_k(alpha_k) phi_alpha phi_alpha^H per degree, scaled coordinates."""
        s0 = np.exp(self.log_scales[0][0])
        eng = GradedSum(seqs, np.array([[s0 * s0]], dtype=complex))
        out = []
        for n in range(self.n_max + 1):
            L = None if n == 0 else [self.X[k][n - 1] for k in range(self.nvars)]
            out.append(eng.step(L, L))
        return out

    def phi(self, alpha: Sequence[int]) -> np.ndarray:
        """Scaled normal-form coordinates of z^alpha (exact reduction)."""
        n = sum(alpha)
        f = normal_form(Polynomial.monomial(alpha), self.ideal.groebner(), GREVLEX)
        idx = {m: j for j, m in enumerate(self.monomials[n])}
        v = np.zeros(self.dim(n), dtype=complex)
        for m, c in f.terms.items():
            mant, lg = split_exact(c)
            j = idx[m]
            v[j] = mant * np.exp(lg + self.log_scales[n][j])
        return v

    def vectors(self, n: int) -> tuple[list[tuple], np.ndarray]:
        """Orthonormal basis of N_n as coefficients on the monomials z^alpha.

        Enumerates every monomial of degree n, so only meant for small n.
        Column j holds the coefficients of the j-th basis vector.
        """
        mons = list(monomials_of_degree(self.nvars, n))
        inv_norm = np.array([np.exp(-0.5 * sum(self.weight.log_w(a) for a in m)) for m in mons])
        M = np.array([self.phi(m) for m in mons]).T * inv_norm[None, :]  # c x m
        E = M.conj().T @ self.gram_inv_half[n]  # orthonormal-monomial coordinates
        return mons, E * inv_norm[:, None]


def split_exact(c) -> tuple[complex, float]:
    """Write a Gaussian rational as mantissa * exp(logmag) with |mantissa| <= 1."""
    big = max(abs(c.re), abs(c.im))
    if not big:
        return 0j, 0.0
    logmag = math.log(int(big.numerator)) - math.log(int(big.denominator))
    return complex(float(c.re / big), float(c.im / big)), logmag


def _standard(m, lms) -> bool:
    return not any(divides(l, m) for l in lms)


class BorderReducer:
    """Exact normal forms of monomials, built degree by degree.

    A non-standard monomial t is reduced through a lower-degree neighbour:
    if t/z_l is non-standard, NF(t) = sum_q NF(t/z_l)_q NF(z_l q), where every
    z_l q is smaller than t.  Only the leading monomials of the basis
    themselves are reduced by the basis element.  This avoids the long
    reduction chains that plain division produces in high degree.
    """

    def __init__(self, gb: Sequence[Polynomial]):
        self.gb = list(gb)
        self.lms = [g.leading_monomial(GREVLEX) for g in self.gb]
        self.lm_index = {lm: i for i, lm in enumerate(self.lms)}
        self.memo: dict[tuple, dict] = {}
        self.std_cache: dict[tuple, bool] = {}

    def standard(self, m) -> bool:
        r = self.std_cache.get(m)
        if r is None:
            r = self.std_cache[m] = _standard(m, self.lms)
        return r

    def nf(self, t: tuple) -> dict:
        if self.standard(t):
            return {t: ONE}
        r = self.memo.get(t)
        if r is not None:
            return r
        choices = [l for l, e in enumerate(t) if e and not self.standard(t[:l] + (e - 1,) + t[l + 1:])]
        if not choices:
            g = self.gb[self.lm_index[t]]
            out: dict = {}
            for m, c in g.terms.items():
                if m == t:
                    continue
                for q, v in self.nf(m).items():
                    out[q] = out.get(q, ZERO) - c * v
        else:
            known = [l for l in choices if t[:l] + (t[l] - 1,) + t[l + 1:] in self.memo]
            l = (known or choices)[0]
            lower = self.nf(t[:l] + (t[l] - 1,) + t[l + 1:])
            out = {}
            for q, v in lower.items():
                for qq, vv in self.nf(q[:l] + (q[l] + 1,) + q[l + 1:]).items():
                    out[qq] = out.get(qq, ZERO) + v * vv
        out = {q: v for q, v in out.items() if v}
        self.memo[t] = out
        return out


def _sqrt_pair(G: np.ndarray, n: int):
    if G.shape[0] == 0:
        return G.copy(), G.copy(), 1.0
    G = 0.5 * (G + G.conj().T)
    e, V = np.linalg.eigh(G)
    if e[0] <= 0 or e[-1] / e[0] > COND_LIMIT:
        raise LabError(f"Gram matrix at degree {n} is too ill-conditioned (eigenvalues {e[0]:.3g}..{e[-1]:.3g})")
    half = (V * np.sqrt(e)) @ V.conj().T
    inv_half = (V / np.sqrt(e)) @ V.conj().T
    return half, inv_half, float(e[-1] / e[0])


def graded_quotient_basis(a: Ideal, n_max: int, w: WeightScheme) -> GradedBasis:
    """Build N_0..N_{n_max} for a homogeneous ideal."""
    if not a.homogeneous:
        raise ValueError("ideal is not homogeneous")
    if a.is_unit():
        raise ValueError("the unit ideal has a zero quotient module")
    d = a.nvars
    gb = a.groebner()
    key = GREVLEX.key

    reducer = BorderReducer(gb)
    B = [[(0,) * d]]
    # raw maps as mantissa and log-magnitude arrays, X = M * exp(E)
    Xraw: list[list[tuple[np.ndarray, np.ndarray]]] = [[] for _ in range(d)]
    for n in range(n_max):
        cur = B[-1]
        cand = set()
        for b in cur:
            for i in range(d):
                m = b[:i] + (b[i] + 1,) + b[i + 1:]
                if reducer.standard(m):
                    cand.add(m)
        nxt = sorted(cand, key=key, reverse=True)
        idx = {m: j for j, m in enumerate(nxt)}
        for i in range(d):
            M = np.zeros((len(nxt), len(cur)), dtype=complex)
            E = np.zeros((len(nxt), len(cur)))
            for col, b in enumerate(cur):
                m = b[:i] + (b[i] + 1,) + b[i + 1:]
                j = idx.get(m)
                if j is not None:
                    M[j, col] = 1.0
                    continue
                for mm, c in reducer.nf(m).items():
                    M[idx[mm], col], E[idx[mm], col] = split_exact(c)
            Xraw[i].append((M, E))
        B.append(nxt)

    def scaled(k, n, left, right):
        """exp(left) X exp(-right) for the map of variable k out of degree n."""
        M, E = Xraw[k][n]
        expo = left[:, None] + E - right[None, :]
        return np.where(M != 0, M * np.exp(np.where(M != 0, expo, 0.0)), 0)

    seqs = weight_sequences(w, n_max, d=d)
    eng = GradedSum(seqs, np.array([[1.0]], dtype=complex))
    log_scales, grams, halves, inv_halves, conds = [], [], [], [], []
    Xs: list[list[np.ndarray]] = [[] for _ in range(d)]
    for n in range(n_max + 1):
        if n == 0:
            pre = np.zeros(1)
            Gp = eng.step()
        else:
            # provisional scale: largest entry of each row becomes 1
            prev = log_scales[n - 1]
            rows = np.full(len(B[n]), -np.inf)
            for k in range(d):
                M, E = Xraw[k][n - 1]
                cand = np.where(M != 0, E - prev[None, :], -np.inf)
                if cand.size:
                    rows = np.maximum(rows, cand.max(axis=1))
            pre = -rows
            L = [scaled(k, n - 1, pre, prev) for k in range(d)]
            Gp = eng.step(L, L)
        diag = np.real(np.diag(Gp))
        if np.any(diag <= 0) or not np.all(np.isfinite(diag)):
            raise LabError(f"degenerate Gram matrix at degree {n}")
        s = 1.0 / np.sqrt(diag)
        eng.rescale(s)
        G = (s[:, None] * Gp) * s[None, :]
        ls = pre + np.log(s)
        if n > 0:
            for k in range(d):
                Xs[k].append(scaled(k, n - 1, ls, log_scales[n - 1]))
        log_scales.append(ls)
        grams.append(G)
        h, ih, c = _sqrt_pair(G, n)
        halves.append(h)
        inv_halves.append(ih)
        conds.append(c)
    return GradedBasis(a, w, n_max, d, B, Xs, grams, halves, inv_halves, log_scales, conds)


def dense_quotient_basis(a: Ideal, n: int, w: WeightScheme, tol: float = 1e-10) -> tuple[list[tuple], np.ndarray]:
    """Reference construction of N_n: span I_n by monomial multiples of the
    generators, then take the weighted orthogonal complement by SVD.

    Returns monomials and a coefficient matrix (columns = orthonormal basis)
    like :meth:`GradedBasis.vectors`.
    """
    d = a.nvars
    mons = list(monomials_of_degree(d, n))
    idx = {m: j for j, m in enumerate(mons)}
    norms = np.array([np.exp(0.5 * sum(w.log_w(x) for x in m)) for m in mons])
    rows = []
    for g in a.gens:
        k = n - g.degree()
        if k < 0:
            continue
        for mult in monomials_of_degree(d, k):
            v = np.zeros(len(mons), dtype=complex)
            for m, c in g.terms.items():
                v[idx[tuple(x + y for x, y in zip(m, mult))]] = complex(c)
            rows.append(v * norms)  # orthonormal-monomial coordinates
    if rows:
        A = np.array(rows)
        u, sv, vh = np.linalg.svd(A)
        rank = int(np.sum(sv > tol * max(1.0, sv[0])))
        comp = vh[rank:].conj().T
    else:
        comp = np.eye(len(mons), dtype=complex)
    return mons, comp / norms[:, None]
