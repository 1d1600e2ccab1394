"""Spectral kernel contracts against eigendecomposition oracles."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramsey_toolkit import (PowerIterationError, dilation_spectrum,
                            eig_general, log_trace_exp, mat_exp, spectral_norm)


def random_diagonalizable(rng, d: int, complex_valued: bool = False):
    """Well-conditioned eigenbasis with known eigenvalues: the oracle pair."""
    if complex_valued:
        basis = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        eigenvalues = rng.normal(size=d) + 1j * rng.normal(size=d)
    else:
        basis = rng.normal(size=(d, d))
        eigenvalues = rng.normal(size=d)
    q = np.linalg.qr(basis)[0]
    # A mild non-orthogonal mixing keeps the test honest without blowing up
    # the conditioning.
    mix = np.eye(d) + 0.3 * rng.normal(size=(d, d)) / np.sqrt(d)
    vecs = q @ mix
    matrix = vecs @ np.diag(eigenvalues) @ np.linalg.inv(vecs)
    return matrix, vecs, eigenvalues


class TestMatExp:
    def test_nilpotent_exact(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert np.allclose(mat_exp(m), [[1.0, 1.0], [0.0, 1.0]], atol=1e-14)

    def test_against_eigen_oracle(self):
        rng = np.random.default_rng(7)
        for d in (2, 5, 9):
            for complex_valued in (False, True):
                matrix, vecs, eigenvalues = random_diagonalizable(
                    rng, d, complex_valued)
                oracle = vecs @ np.diag(np.exp(eigenvalues)) @ np.linalg.inv(vecs)
                got = mat_exp(matrix)
                assert np.abs(got - oracle).max() <= 1e-9 * max(
                    1.0, np.abs(oracle).max())

    def test_against_series_oracle_small_norm(self):
        rng = np.random.default_rng(3)
        a = 0.05 * rng.normal(size=(6, 6))
        term = np.eye(6)
        series = np.eye(6)
        for k in range(1, 30):
            term = term @ a / k
            series = series + term
        assert np.abs(mat_exp(a) - series).max() < 1e-14

    def test_large_norm_scaling(self):
        rng = np.random.default_rng(11)
        matrix, vecs, eigenvalues = random_diagonalizable(rng, 5)
        scaled = 40.0 * matrix
        oracle = vecs @ np.diag(np.exp(40.0 * eigenvalues)) @ np.linalg.inv(vecs)
        rel = np.abs(mat_exp(scaled) - oracle).max() / np.abs(oracle).max()
        assert rel < 1e-8

    def test_zero_matrix_trace_is_dimension(self):
        for d in (1, 3, 8):
            assert np.trace(mat_exp(np.zeros((d, d)))) == pytest.approx(d)

    def test_tol_validation(self):
        m = np.eye(2)
        with pytest.raises(ValueError):
            mat_exp(m, tol=0.0)
        with pytest.raises(ValueError):
            mat_exp(m, tol=1e-5)

    def test_tol_below_floor_warns(self):
        with pytest.warns(RuntimeWarning, match="capped"):
            mat_exp(np.eye(3), tol=1e-15)

    def test_rejects_non_square_and_non_finite(self):
        with pytest.raises(ValueError):
            mat_exp(np.ones((2, 3)))
        with pytest.raises(ValueError):
            mat_exp(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    @given(st.integers(min_value=1, max_value=6), st.integers(0, 2**32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_commuting_product_identity(self, d, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(d, d)) * 0.5
        b = 0.3 * a @ a + 0.7 * a
        lhs = mat_exp(a) @ mat_exp(b)
        rhs = mat_exp(a + b)
        assert np.abs(lhs - rhs).max() <= 1e-8 * max(1.0, np.abs(rhs).max())


class TestEigGeneral:
    def test_trace_and_determinant_consistency(self):
        rng = np.random.default_rng(2)
        for d in (2, 4, 7, 12):
            a = rng.normal(size=(d, d))
            spectrum = eig_general(a)
            norm = np.linalg.norm(a)
            assert abs(spectrum.eigenvalues.sum() - np.trace(a)) <= 1e-9 * max(
                1.0, norm)
            det = np.prod(spectrum.eigenvalues)
            assert abs(det - np.linalg.det(a)) <= 1e-6 * max(
                1.0, abs(np.linalg.det(a)))

    def test_hermitian_input_real_spectrum(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        h = (a + a.conj().T) / 2
        spectrum = eig_general(h)
        bound = 1e-10 * np.linalg.norm(h)
        assert np.abs(spectrum.eigenvalues.imag).max() <= bound

    def test_condition_estimate(self):
        a = np.diag([4.0, 2.0, 1.0])
        spectrum = eig_general(a)
        assert spectrum.condition == pytest.approx(4.0)
        singular = eig_general(np.diag([1.0, 0.0]))
        assert singular.condition == np.inf

    def test_eigenvalue_ordering_is_stable(self):
        a = np.array([[0.0, -2.0], [2.0, 0.0]])
        spectrum = eig_general(a)
        assert spectrum.eigenvalues[0].imag < spectrum.eigenvalues[1].imag


class TestDilation:
    def test_hermitian_and_paired_spectrum(self):
        rng = np.random.default_rng(9)
        a = rng.normal(size=(4, 6)) + 1j * rng.normal(size=(4, 6))
        h, spectrum = dilation_spectrum(a)
        assert np.abs(h - h.conj().T).max() <= 1e-12
        sv = np.linalg.svd(a, compute_uv=False)
        expected = np.sort(np.concatenate([sv, -sv, np.zeros(2)]))
        assert np.allclose(np.sort(spectrum.eigenvalues.real), expected,
                           atol=1e-9)

    @given(st.integers(min_value=1, max_value=5),
           st.integers(min_value=1, max_value=5),
           st.integers(0, 2**32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_sign_symmetry(self, r, c, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(r, c))
        _, spectrum = dilation_spectrum(a)
        lam = np.sort(spectrum.eigenvalues.real)
        assert np.allclose(lam, -lam[::-1], atol=1e-9 * max(1.0, abs(lam).max()))


class TestSpectralNorm:
    def test_matches_svd(self):
        rng = np.random.default_rng(13)
        for shape in ((5, 5), (3, 7), (8, 2)):
            a = rng.normal(size=shape)
            top = np.linalg.svd(a, compute_uv=False)[0]
            assert spectral_norm(a, tol=1e-12, max_iter=5000) == pytest.approx(
                top, rel=1e-8)

    def test_zero_matrix(self):
        assert spectral_norm(np.zeros((3, 4))) == 0.0

    def test_non_convergence_reports_last_estimate(self):
        rng = np.random.default_rng(17)
        a = rng.normal(size=(6, 6))
        with pytest.raises(PowerIterationError) as excinfo:
            spectral_norm(a, tol=1e-14, max_iter=1)
        assert excinfo.value.last_estimate > 0.0

    def test_sign_symmetric_spectrum_converges(self):
        # The dilation's +/- pairs defeat a single-step iteration; the
        # double step must still converge here.
        a = np.diag([3.0, 1.0])
        assert spectral_norm(a) == pytest.approx(3.0, rel=1e-6)


class TestLogTraceExp:
    def test_matches_direct_sum_in_float_range(self):
        lam = np.array([0.5, 1.0, 2.5])
        for alpha in (0.0, 1.0, 10.0):
            direct = np.log10(np.exp(-alpha * lam).sum())
            assert log_trace_exp(lam, alpha) == pytest.approx(direct, abs=1e-12)

    def test_deep_underflow_domain(self):
        lam = np.array([100.0, 120.0, 150.0])
        alpha = 100.0
        # Dominated by the smallest eigenvalue: log10(e^-10000 (1 + ...)).
        expected = -alpha * 100.0 / np.log(10.0)
        got = log_trace_exp(lam, alpha)
        assert got == pytest.approx(expected, abs=1e-6)
        assert got < -4000.0

    def test_validation(self):
        with pytest.raises(ValueError):
            log_trace_exp([], 1.0)
        with pytest.raises(ValueError):
            log_trace_exp([1.0], -0.5)
