"""Tests for the dense linear algebra helpers."""
import logging

import numpy as np
import pytest

from src.core.errors import InvalidArgumentError, NotPSDError
from src.core.linalg import (
    adjoint,
    as_matrix,
    clean_spectrum,
    eig_hermitian,
    is_hermitian,
    mat_mul,
    sqrt_psd,
)


def _random_hermitian(rng, n=4):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + adjoint(a))


def test_as_matrix_rejects_unsupported_shape():
    """Only 2x2, 4x4 and mixed 2/4 shapes are accepted."""
    with pytest.raises(InvalidArgumentError):
        as_matrix(np.eye(3))
    with pytest.raises(InvalidArgumentError):
        as_matrix(np.ones(4))


def test_mat_mul_dimension_mismatch():
    """Inner dimensions must agree."""
    with pytest.raises(InvalidArgumentError):
        mat_mul(np.eye(2), np.eye(4))
    assert np.allclose(mat_mul(np.eye(4), np.eye(4)), np.eye(4))


def test_eig_diagonal_sorted_descending():
    """Eigenvalues of a diagonal matrix come back sorted high to low."""
    values, vectors = eig_hermitian(np.diag([0.1, 0.7, 0.0, 0.2]))
    assert values == pytest.approx([0.7, 0.2, 0.1, 0.0])
    assert np.allclose(np.abs(vectors), np.abs(vectors) ** 2)


def test_eig_matches_numpy_and_reconstructs(rng):
    """Jacobi eigenpairs agree with LAPACK and rebuild the input."""
    for _ in range(20):
        h = _random_hermitian(rng)
        values, vectors = eig_hermitian(h)
        assert values == pytest.approx(np.sort(np.linalg.eigvalsh(h))[::-1], abs=1e-10)
        assert np.allclose(adjoint(vectors) @ vectors, np.eye(4), atol=1e-12)
        assert np.allclose(vectors @ np.diag(values) @ adjoint(vectors), h, atol=1e-10)


def test_eig_rejects_non_hermitian():
    """A non-Hermitian matrix is an argument error."""
    with pytest.raises(InvalidArgumentError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_rejects_non_square():
    """Test that non-square input raises."""
    with pytest.raises(InvalidArgumentError):
        eig_hermitian(np.zeros((2, 4)))


def test_sqrt_psd_squares_back(rng):
    """sqrt(M) @ sqrt(M) == M for random positive matrices."""
    for _ in range(10):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = a @ adjoint(a)
        root = sqrt_psd(m)
        assert is_hermitian(root)
        assert np.allclose(root @ root, m, atol=1e-9)


def test_sqrt_of_projector_is_exact():
    """Rank-deficient inputs root exactly thanks to the noise floor."""
    v = np.array([0, 1, -1, 0]) / np.sqrt(2)
    projector = np.outer(v, v.conj())
    assert np.allclose(sqrt_psd(projector), projector, atol=1e-12)


def test_sqrt_psd_rejects_negative_eigenvalue():
    """An eigenvalue below -tol raises NotPSDError carrying the value."""
    with pytest.raises(NotPSDError) as excinfo:
        sqrt_psd(np.diag([1.0, -0.5, 0.0, 0.0]))
    assert excinfo.value.min_eigenvalue == pytest.approx(-0.5)


def test_clean_spectrum_zeroes_rounding_noise():
    """Tiny eigenvalues are snapped to zero."""
    cleaned = clean_spectrum(np.array([0.5, 1e-17, -1e-15, 0.25]))
    assert list(cleaned) == [0.5, 0.0, 0.0, 0.25]


def test_eig_hermitian_logs_sweep_count(caplog):
    """Convergence is reported at DEBUG with the number of sweeps."""
    h = np.array([[2, 1j, 0, 0], [-1j, 2, 0, 0], [0, 0, 1, 0.5], [0, 0, 0.5, 1]], dtype=np.complex128)
    with caplog.at_level(logging.DEBUG, logger="src.core.linalg"):
        eig_hermitian(h)
    assert "Jacobi converged in" in caplog.text
