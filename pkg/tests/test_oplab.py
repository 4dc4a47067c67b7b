import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from essnormal.idealops import Ideal, hilbert_function
from essnormal.oplab import (
    LabError,
    WeightScheme,
    asymptotic_orthogonality_norm,
    asymptotic_orthogonality_norms,
    berezin_commutator_curve,
    berezin_lower_bound,
    compression_matrices,
    decay_profile,
    dense_quotient_basis,
    essential_spectrum_probe,
    fredholm_index_estimate,
    graded_quotient_basis,
    kernel_truncation,
    lab,
    leakage_norms,
    monomial_norm,
    structure_norms,
)
from essnormal.decompose import line_prime
from essnormal.variety import extract_lines, normalize_direction

from conftest import COND_A, DIAGONAL, DOUBLE_LINE, EX47, EX48, ideal, poly
from oracles import bergman_norm2_quadrature

HARDY = WeightScheme.hardy()
B1 = WeightScheme.bergman(1)
B2 = WeightScheme.bergman(2)


# weights

def test_monomial_norms():
    assert monomial_norm((3, 5, 1), HARDY) == 1.0
    assert monomial_norm((0,), WeightScheme.bergman(0)) == pytest.approx(1.0)
    assert monomial_norm((2,), B1) == pytest.approx(math.sqrt(1 / 12), rel=1e-12)
    assert monomial_norm((2,), B1) ** 2 == pytest.approx(bergman_norm2_quadrature(2, 1.0), rel=1e-10)


@pytest.mark.parametrize("s", [0.5, 1, 2])
def test_bergman_weights_decrease_and_match_quadrature(s):
    w = WeightScheme.bergman(s)
    vals = [w.w(n) for n in range(8)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))
    for n in range(4):
        assert vals[n] == pytest.approx(bergman_norm2_quadrature(n, float(s)), rel=1e-9)


def test_kernel_factor_matches_series():
    for w in (HARDY, B1, B2):
        x = 0.3
        series = sum(x ** n / w.w(n) for n in range(200))
        assert w.kernel_factor(x) == pytest.approx(series, rel=1e-12)


def test_weight_validation():
    with pytest.raises(ValueError):
        WeightScheme("bergman", -1)
    with pytest.raises(ValueError):
        WeightScheme("dirichlet")


# bases

def test_zero_ideal_basis():
    b = graded_quotient_basis(Ideal.zero(1), 10, HARDY)
    assert b.dims == [1] * 11
    cm = compression_matrices(b)
    for n in range(10):
        assert abs(cm.blocks[0][n][0, 0]) == pytest.approx(1.0, abs=1e-12)


def test_double_line_basis_dims():
    b = graded_quotient_basis(ideal(*DOUBLE_LINE), 8, HARDY)
    assert b.dims == [1] + [2] * 8
    assert b.monomials[3] == [(1, 2), (0, 3)]


def test_diagonal_basis_vectors():
    b = graded_quotient_basis(ideal(*DIAGONAL), 6, HARDY)
    for n in range(7):
        mons, V = b.vectors(n)
        v = V[:, 0] * np.exp(-1j * np.angle(V[0, 0]))
        assert np.allclose(v, np.ones(n + 1) / math.sqrt(n + 1), atol=1e-12)


CORPUS = [EX47, EX48, DOUBLE_LINE, COND_A, DIAGONAL, (["z1^2 - z2^2"], 2), (["z1*z2", "z3^2"], 3)]


@pytest.mark.parametrize("case", CORPUS)
@pytest.mark.parametrize("w", [HARDY, B1])
def test_basis_matches_dense_construction(case, w):
    a = ideal(*case)
    b = graded_quotient_basis(a, 7, w)
    for n in range(8):
        assert b.dim(n) == hilbert_function(a, n)
        mons, V = b.vectors(n)
        mons2, C = dense_quotient_basis(a, n, w)
        assert mons == mons2
        norms = np.array([monomial_norm(m, w) for m in mons])
        A, B = V * norms[:, None], C * norms[:, None]
        # orthonormal in the weighted inner product, same subspace as the oracle
        assert np.allclose(A.conj().T @ A, np.eye(A.shape[1]), atol=1e-10)
        assert np.allclose(A @ A.conj().T, B @ B.conj().T, atol=1e-10)


def test_large_degree_build_is_well_conditioned():
    b = graded_quotient_basis(ideal(*COND_A), 400, HARDY)
    assert max(b.condition) < 1e6
    assert b.dims[-1] == 2


# compressions

def test_diagonal_compression_closed_form():
    cm = lab(ideal(*DIAGONAL), 45)
    for n in range(41):
        assert abs(cm.blocks[0][n][0, 0]) == pytest.approx(math.sqrt((n + 1) / (n + 2)), abs=1e-10)
        (norm,) = cm.commutator_tail_norms(0, 0, [(n, 0)])
        assert norm == pytest.approx(1 / ((n + 1) * (n + 2)), abs=1e-10)


def test_gradedness():
    cm = lab(ideal(*EX47), 6)
    assert not cm.block(0, 2, 2).any() and not cm.block(0, 3, 1).any()
    D = cm.dense(1)
    off = cm.offsets()
    for n in range(6):
        for m in range(7):
            blk = D[off[m]:off[m + 1], off[n]:off[n + 1]]
            if m != n + 1:
                assert not blk.any()


def test_block_entries_are_inner_products():
    a = ideal(*EX47)
    cm = lab(a, 5, B1)
    b = cm.basis
    for n in range(4):
        mons, V = b.vectors(n)
        mons1, V1 = b.vectors(n + 1)
        idx = {m: j for j, m in enumerate(mons1)}
        norms2 = np.array([monomial_norm(m, B1) ** 2 for m in mons1])
        for i in range(3):
            # z_i e_{n,k} in monomial coefficients of degree n+1
            Z = np.zeros((len(mons1), V.shape[1]), dtype=complex)
            for r, m in enumerate(mons):
                up = tuple(x + (k == i) for k, x in enumerate(m))
                Z[idx[up]] += V[r]
            gram = V1.conj().T @ (norms2[:, None] * Z)
            assert np.allclose(gram, cm.blocks[i][n], atol=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adjoint_consistency(seed):
    cm = _adjoint_lab()
    rng = np.random.default_rng(seed)
    x = [rng.normal(size=d) + 1j * rng.normal(size=d) for d in cm.dims]
    y = [rng.normal(size=d) + 1j * rng.normal(size=d) for d in cm.dims]
    for i in range(cm.nvars):
        lhs = sum(np.vdot(b, a) for a, b in zip(cm.apply(i, x), y))
        rhs = sum(np.vdot(b, a) for a, b in zip(x, cm.apply_adjoint(i, y)))
        assert abs(lhs - rhs) < 1e-10


_CACHE = {}


def _adjoint_lab():
    if "cm" not in _CACHE:
        _CACHE["cm"] = lab(ideal(*EX47), 12, B2)
    return _CACHE["cm"]


def test_commutator_tails_examples():
    cm = lab(ideal(*DOUBLE_LINE), 31)
    norms = cm.commutator_tail_norms(0, 0, [(n, 3) for n in range(1, 27)])
    assert np.allclose(norms, 1.0, atol=1e-9)
    cm = lab(Ideal.zero(1), 20)
    assert np.allclose(cm.commutator_tail_norms(0, 0, [(n, 2) for n in range(1, 17)]), 0.0, atol=1e-12)
    with pytest.raises(LabError):
        cm.commutator_tail_norms(0, 0, [(18, 2)])


# Berezin transform

def test_kernel_truncation_tail():
    N = kernel_truncation([0.9, 0.9], HARDY)
    total = 1 / (1 - 0.81) ** 2
    partial = sum((n + 1) * 0.81 ** n for n in range(N + 1))
    assert total - partial <= 1e-8 * total
    assert total - (partial - (N + 1) * 0.81 ** N) > 1e-8 * total
    with pytest.raises(LabError):
        kernel_truncation([0.9999, 0.9999], HARDY, budget=500)


def test_berezin_constant_is_zero():
    curve = berezin_commutator_curve(ideal(*EX47), poly("3", 3), [1, 1, 0], [0.5, 0.9])
    assert curve.values == [0.0, 0.0]


def test_berezin_decays_on_compact_commutator():
    curve = berezin_commutator_curve(ideal(*EX47), poly("z3", 3), [1, 1, 0], [0.5, 0.9, 0.99])
    v = curve.values
    assert v[0] > v[1] > v[2] and v[2] < 1e-3


def test_berezin_bounded_below_when_condition_a_fails():
    f = poly("z3", 3)
    curve = berezin_commutator_curve(ideal(*COND_A), f, [1, 1, 0], [0.9, 0.99])
    for r, value in zip(curve.radii, curve.values):
        assert value >= berezin_lower_bound(f, [1, 1, 0], [1, 1, 0.5], r) - 1e-9
    assert berezin_lower_bound(f, [1, 1, 0], [1, 1, 0.5], 0.9999) == pytest.approx(3 / 16, rel=1e-3)


def test_berezin_input_checks():
    with pytest.raises(ValueError):
        berezin_commutator_curve(ideal(*EX47), poly("z3", 3), [1, 1, 0], [0.9, 0.5])
    with pytest.raises(ValueError):
        berezin_commutator_curve(ideal(*EX47), poly("z3", 3), [2, 1, 0], [0.5])


# Fredholm index

def test_index_of_shift_and_diagonal():
    est = fredholm_index_estimate(Ideal.zero(1), normalize_direction([1]), 12)
    assert est.index == -1 and est.stable
    est = fredholm_index_estimate(ideal(*DIAGONAL), normalize_direction([1, 1]), 15)
    assert est.index == -1 and est.stable and not est.inconclusive


def test_index_nonzero_on_essentially_quasi_prime_component():
    a = ideal(*EX47)
    (u,) = extract_lines(a)
    est = fredholm_index_estimate(a, u, 20)
    assert est.stable and est.index <= -1
    # h*z3 lies in the ideal, so z3 spans part of a finite kernel
    kernels = {k for _, k, _ in est.history}
    assert len(kernels) == 1 and kernels.pop() > 0


def test_index_inconclusive_flag():
    # the Hilbert function still changes between degrees 1 and 3
    est = fredholm_index_estimate(ideal(["z1^3", "z2^3"], 3), normalize_direction([0, 0, 1]), 3)
    assert est.inconclusive


# asymptotic orthogonality

def test_orthogonality_of_opposite_diagonals():
    norms = asymptotic_orthogonality_norms(ideal(["z1 - z2"], 2), ideal(["z1 + z2"], 2), 43)
    for n, v in enumerate(norms[:41]):
        expected = max(abs(sum((-1) ** i for i in range(m + 1))) / (m + 1) for m in range(n, n + 4))
        assert v == pytest.approx(expected, abs=1e-10)


def test_orthogonality_self_is_one():
    a = ideal(*EX47)
    assert asymptotic_orthogonality_norm(a, a, 5) == pytest.approx(1.0, abs=1e-10)


def test_orthogonality_fails_for_parallel_subvectors():
    p = ideal(["z1 - z2", "z3"], 3)
    q = ideal(["z1 - z2", "z3 - 1/2*z2"], 3)
    assert min(asymptotic_orthogonality_norms(p, q, 30)) > 0.2


# spectrum probe

def test_probe_on_diagonal():
    cm = lab(ideal(*DIAGONAL), 31)
    on, off, interior = essential_spectrum_probe(cm, [(1, 1), (1, -1), (0, 0)], (0, 30))
    assert on <= 0.05 and off >= 0.5
    assert interior == pytest.approx(0.0, abs=1e-12)
    values = [essential_spectrum_probe(cm, [(1, 1)], (0, w))[0] for w in (5, 10, 20, 30)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_probe_rejects_points_outside():
    cm = lab(ideal(*DIAGONAL), 5)
    with pytest.raises(ValueError):
        essential_spectrum_probe(cm, [(2, 0)], (0, 3))


# qualitative decay under several weights

@pytest.mark.parametrize(
    "case,decays",
    [(DIAGONAL, True), (EX47, True), (DOUBLE_LINE, False), (COND_A, False), (EX48, False)],
)
def test_decay_concordance(case, decays):
    outcomes = {w: decay_profile(lab(ideal(*case), 25, w)).decaying for w in (HARDY, B1, B2)}
    assert set(outcomes.values()) == {decays}


def test_structure_on_essentially_quasi_prime_component():
    a = ideal(*EX47)
    (u,) = extract_lines(a)
    cm = lab(a, 60)
    windows = [(n, 3) for n in (5, 15, 30, 55)]
    norms = structure_norms(cm, u, windows)
    for i in range(3):
        assert norms[i][-1] <= norms[i][0] + 1e-12
        assert norms[i][-1] < 0.05
    assert norms[0][-1] < norms[0][0]
    for i in u.lambda_set:
        leak = leakage_norms(cm, i, windows)
        assert all(x > y for x, y in zip(leak, leak[1:]))
        # decay like n^(-1/2), as for the line itself
        assert leak[-1] * math.sqrt(windows[-1][0] + 3) < 1.05 * leak[1] * math.sqrt(windows[1][0] + 3)


def test_leakage_vanishes_on_line_prime():
    u = normalize_direction([1, 1])
    cm = lab(line_prime(u), 30, B1)
    leak = leakage_norms(cm, 0, [(n, 3) for n in (2, 10, 26)])
    assert leak[0] > leak[1] > leak[2]
