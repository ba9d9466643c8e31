"""Eigendecomposition, functional calculus and quadratic forms.

Ground truth for the Jacobi solver: hand-derived 2x2 eigenpairs,
reconstruction/orthonormality residuals, and numpy.linalg.eigh as an
independent oracle on random matrices.
"""
import math

import numpy as np
import pytest

from kaudit import (
    DimensionError,
    DomainError,
    HermitianMatrix,
    InvalidMatrix,
    Log,
    NotPositive,
    Power,
    SpectralDecomposition,
    SpectralWindow,
    UnitVector,
    apply_function,
    eigh,
    quad_form,
    summarize,
)

BAL2 = UnitVector.balanced(2)


class TestHermitianMatrix:
    def test_symmetrizes(self):
        a = HermitianMatrix([[1.0, 2.0], [0.0, 3.0]])
        np.testing.assert_array_equal(a.entries, [[1.0, 1.0], [1.0, 3.0]])

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidMatrix):
            HermitianMatrix([[1.0, np.nan], [np.nan, 1.0]])
        with pytest.raises(InvalidMatrix):
            HermitianMatrix([[np.inf]])

    def test_rejects_nonsquare(self):
        with pytest.raises(InvalidMatrix):
            HermitianMatrix([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])

    def test_entries_immutable(self):
        a = HermitianMatrix.diagonal([1.0, 2.0])
        with pytest.raises(ValueError):
            a.entries[0, 0] = 5.0


class TestUnitVector:
    def test_norm_enforced(self):
        with pytest.raises(DomainError):
            UnitVector([1.0, 1.0])
        UnitVector([1.0, 0.0])

    def test_balanced(self):
        x = UnitVector.balanced(5)
        assert abs(np.linalg.norm(x.components) - 1.0) <= 1e-12


class TestSpectralWindow:
    def test_ordering_enforced(self):
        with pytest.raises(DomainError):
            SpectralWindow(2.0, 1.0)
        with pytest.raises(DomainError):
            SpectralWindow(0.0, 1.0)
        with pytest.raises(DomainError):
            SpectralWindow(1.0, math.inf)


class TestEigh:
    def test_already_diagonal(self):
        dec = eigh(HermitianMatrix.diagonal([1.0, 2.0]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 2.0], atol=1e-14)
        np.testing.assert_allclose(np.abs(dec.eigenvectors), np.eye(2), atol=1e-12)

    def test_two_by_two_by_hand(self):
        # det([[2-l, 1], [1, 2-l]]) = (2-l)^2 - 1 -> l in {1, 3} with
        # eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2)
        dec = eigh(HermitianMatrix([[2.0, 1.0], [1.0, 2.0]]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 3.0], atol=1e-14)
        v0, v1 = dec.eigenvectors[:, 0], dec.eigenvectors[:, 1]
        r = 2.0**-0.5
        np.testing.assert_allclose(np.abs(v0), [r, r], atol=1e-12)
        assert np.sign(v0[0]) != np.sign(v0[1])
        np.testing.assert_allclose(v1, np.sign(v1[0]) * np.array([r, r]), atol=1e-12)

    def test_identity_five(self):
        dec = eigh(HermitianMatrix.identity(5))
        np.testing.assert_array_equal(dec.eigenvalues, np.ones(5))
        np.testing.assert_allclose(dec.eigenvectors.T @ dec.eigenvectors, np.eye(5), atol=1e-12)

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((12, 12))
        h = HermitianMatrix(a)
        d1, d2 = eigh(h), eigh(h)
        np.testing.assert_array_equal(d1.eigenvalues, d2.eigenvalues)
        np.testing.assert_array_equal(d1.eigenvectors, d2.eigenvectors)

    def test_reconstruction_invariants_random(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            n = int(rng.integers(1, 33))
            a = HermitianMatrix(rng.standard_normal((n, n)) * rng.uniform(0.1, 50))
            dec = eigh(a)
            scale = max(1.0, np.max(np.abs(a.entries)))
            assert np.max(np.abs(dec.matrix().entries - a.entries)) <= 1e-10 * scale
            assert np.max(np.abs(dec.eigenvectors.T @ dec.eigenvectors - np.eye(n))) <= 1e-10
            assert np.all(np.diff(dec.eigenvalues) >= 0)

    def test_against_lapack_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n = int(rng.integers(2, 25))
            a = HermitianMatrix(rng.standard_normal((n, n)))
            ours = eigh(a).eigenvalues
            theirs = np.linalg.eigh(a.entries)[0]
            np.testing.assert_allclose(ours, theirs, atol=1e-11 * max(1.0, np.abs(theirs).max()))

    def test_nonfinite_rejected_at_construction(self):
        with pytest.raises(InvalidMatrix):
            eigh(HermitianMatrix([[1.0, np.inf], [np.inf, 1.0]]))


class TestApplyFunction:
    def test_power_one_is_identity(self):
        rng = np.random.default_rng(5)
        a = HermitianMatrix(np.diag([0.5, 1.5, 4.0]) + 0.1 * rng.standard_normal((3, 3)))
        dec = eigh(a)
        np.testing.assert_allclose(apply_function(dec, Power(1)).entries, a.entries, atol=1e-12)

    def test_diagonal_powers(self):
        dec = eigh(HermitianMatrix.diagonal([1.0, 2.0]))
        np.testing.assert_allclose(
            apply_function(dec, Power(2)).entries, np.diag([1.0, 4.0]), atol=1e-12
        )
        np.testing.assert_allclose(
            apply_function(dec, Power(-1)).entries, np.diag([1.0, 0.5]), atol=1e-12
        )

    def test_log_domain_error(self):
        dec = eigh(HermitianMatrix.diagonal([-1.0, 2.0]))
        with pytest.raises(DomainError):
            apply_function(dec, Log(10.0))
        with pytest.raises(DomainError):
            apply_function(dec, Power(0.5))

    def test_power_homomorphism(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            n = int(rng.integers(2, 10))
            dec = eigh(HermitianMatrix(np.diag(rng.uniform(0.5, 3.0, n)) + _small_sym(rng, n)))
            a = rng.uniform(-1.5, 1.5)
            b = rng.uniform(-1.5, 1.5)
            lhs = apply_function(dec, Power(a)).entries @ apply_function(dec, Power(b)).entries
            rhs = apply_function(dec, Power(a + b)).entries
            np.testing.assert_allclose(lhs, rhs, atol=1e-9)


def _small_sym(rng, n):
    z = 0.05 * rng.standard_normal((n, n))
    return (z + z.T) / 2


class TestQuadForm:
    def test_remark_value_exact(self):
        assert quad_form(HermitianMatrix.diagonal([1.0, 1.1]), BAL2) == 1.05

    def test_identity(self):
        rng = np.random.default_rng(13)
        for n in (1, 3, 8):
            z = rng.standard_normal(n)
            x = UnitVector(z / np.linalg.norm(z))
            assert quad_form(HermitianMatrix.identity(n), x) == pytest.approx(1.0, abs=1e-14)

    def test_hand_value(self):
        assert quad_form(HermitianMatrix.diagonal([1.0, 2.0]), BAL2) == 1.5

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            quad_form(HermitianMatrix.identity(3), BAL2)

    def test_rayleigh_bounds(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(2, 12))
            a = HermitianMatrix(np.diag(rng.uniform(0.2, 5.0, n)) + _small_sym(rng, n))
            dec = eigh(a)
            z = rng.standard_normal(n)
            x = UnitVector(z / np.linalg.norm(z))
            v = quad_form(a, x)
            assert dec.eigenvalues[0] - 1e-10 <= v <= dec.eigenvalues[-1] + 1e-10


class TestSummarize:
    def test_diag_1_2(self):
        s = summarize(HermitianMatrix.diagonal([1.0, 2.0]))
        assert s.norm == 2.0 and s.numerical_radius == 2.0
        assert (s.window.m, s.window.M) == (1.0, 2.0)

    def test_remark_matrix(self):
        s = summarize(HermitianMatrix.diagonal([1.0, 1.1]))
        assert s.norm == pytest.approx(1.1, abs=1e-14)
        assert (s.window.m, s.window.M) == (1.0, 1.1)

    def test_offdiagonal(self):
        s = summarize(HermitianMatrix([[2.0, 1.0], [1.0, 2.0]]))
        assert s.norm == pytest.approx(3.0, abs=1e-13)
        assert s.window.m == pytest.approx(1.0, abs=1e-13)

    def test_norm_equals_radius_for_positive(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            n = int(rng.integers(2, 10))
            a = HermitianMatrix(np.diag(rng.uniform(0.2, 5.0, n)) + _small_sym(rng, n))
            s = summarize(a)
            assert s.norm == s.numerical_radius

    def test_not_positive(self):
        with pytest.raises(NotPositive):
            summarize(HermitianMatrix.diagonal([-1.0, 2.0]))

    def test_degenerate_spectrum_padded(self):
        s = summarize(HermitianMatrix.identity(4))
        assert s.window.m < 1.0 < s.window.M
        assert s.window.M - s.window.m < 1e-11


class TestSpectralDecompositionInvariants:
    def test_rejects_nonorthonormal(self):
        with pytest.raises(InvalidMatrix):
            SpectralDecomposition([1.0, 2.0], [[1.0, 1.0], [0.0, 1.0]])

    def test_rejects_descending(self):
        with pytest.raises(InvalidMatrix):
            SpectralDecomposition([2.0, 1.0], np.eye(2))
