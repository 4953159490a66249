"""Dense complex linear algebra for the 2x2 and 4x4 matrices of two-qubit states.

Matrices are numpy ``complex128`` arrays. The Hermitian eigensolver is a
cyclic Jacobi method: at these sizes it converges in a handful of sweeps and
gives eigenvectors that are unitary to machine precision.
"""
import logging
import math
from typing import Tuple

import numpy as np

from src.core.errors import InvalidArgumentError, NotPSDError, NumericFailureError

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100

_SUPPORTED_DIMS = (2, 4)
# Eigenvalues below this many ulps of the spectral scale are rounding noise.
_NOISE_ULPS = 64.0


def as_matrix(a) -> ComplexMatrix:
    """
    Coerce input to a complex128 matrix of a supported size.

    Args:
        a: Array-like with two dimensions, each 2 or 4

    Returns:
        A new complex128 numpy array
    """
    mat = np.array(a, dtype=np.complex128)
    if mat.ndim != 2:
        raise InvalidArgumentError(f"Expected a matrix, got array with {mat.ndim} dimensions")
    rows, cols = mat.shape
    if rows not in _SUPPORTED_DIMS or cols not in _SUPPORTED_DIMS:
        raise InvalidArgumentError(f"Unsupported matrix shape {mat.shape}; rows and cols must be 2 or 4")
    return mat


def mat_mul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product with an explicit dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise InvalidArgumentError(f"Dimension mismatch: {a.shape} x {b.shape}")
    return a @ b


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T


def hermitian_defect(h: ComplexMatrix) -> float:
    """Largest entry of |h - h†|."""
    h = np.asarray(h)
    return float(np.max(np.abs(h - adjoint(h))))


def is_hermitian(h: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(h) <= tol


def clean_spectrum(values: np.ndarray) -> np.ndarray:
    """
    Zero out eigenvalues that are indistinguishable from rounding noise.

    Negative values (already checked against the PSD tolerance by callers)
    and positive values below the noise floor both map to exactly 0.
    """
    values = np.asarray(values, dtype=float)
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    floor = _NOISE_ULPS * np.finfo(float).eps * scale
    return np.where(values < floor, 0.0, values)


def _off_diagonal_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """Apply one complex Jacobi rotation annihilating a[p, q]."""
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag

    # Real Jacobi angle for the phase-rotated block [[app, mag], [mag, aqq]]
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
    if tau < 0.0:
        t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    j = np.eye(a.shape[0], dtype=np.complex128)
    j[p, p] = c
    j[p, q] = s
    j[q, p] = -s * np.conj(phase)
    j[q, q] = c * np.conj(phase)

    a = adjoint(j) @ a @ j
    a[p, q] = 0.0
    a[q, p] = 0.0
    return a, v @ j


def eig_hermitian(h: ComplexMatrix, tol: float = HERMITIAN_TOL) -> Tuple[np.ndarray, ComplexMatrix]:
    """
    Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Args:
        h: Square Hermitian matrix (2x2 or 4x4)
        tol: Allowed Hermiticity defect

    Returns:
        (eigenvalues sorted descending, unitary matrix whose columns are the
        matching eigenvectors)

    Raises:
        InvalidArgumentError: h is not square or not Hermitian within tol
        NumericFailureError: no convergence within MAX_SWEEPS sweeps
    """
    a = as_matrix(h)
    n, cols = a.shape
    if n != cols:
        raise InvalidArgumentError(f"Eigendecomposition needs a square matrix, got {a.shape}")
    defect = hermitian_defect(a)
    if defect > tol:
        raise InvalidArgumentError(f"Matrix is not Hermitian: defect {defect:.3e} > {tol:.1e}")

    a = 0.5 * (a + adjoint(a))
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(a)))
    threshold = OFFDIAG_TOL * scale
    skip_below = 1e-18 * scale

    sweeps = 0
    while _off_diagonal_norm(a) >= threshold:
        if sweeps == MAX_SWEEPS:
            residual = _off_diagonal_norm(a)
            logger.error(f"Jacobi eigensolver stalled after {sweeps} sweeps (off-diagonal norm {residual:.3e})")
            raise NumericFailureError(
                f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {residual:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip_below:
                    a, v = _rotate(a, v, p, q)
        sweeps += 1
    logger.debug(f"Jacobi converged in {sweeps} sweeps ({n}x{n})")

    values = np.real(np.diag(a))
    order = np.argsort(values)[::-1]
    return values[order], v[:, order]


def sqrt_psd(m: ComplexMatrix, tol: float = PSD_TOL) -> ComplexMatrix:
    """
    Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in [-tol, 0) are clamped to zero before rooting.

    Raises:
        NotPSDError: an eigenvalue lies below -tol
    """
    values, vectors = eig_hermitian(m)
    if values[-1] < -tol:
        raise NotPSDError(float(values[-1]), tol)
    roots = np.sqrt(clean_spectrum(values))
    return (vectors * roots) @ adjoint(vectors)
