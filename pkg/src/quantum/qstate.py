"""Two-qubit states: Werner family, X-state parameters and Bloch decomposition.

Basis order is |00>, |01>, |10>, |11> with qubit A as the left factor.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.core.errors import InvalidArgumentError, NotXStateError
from src.core.linalg import adjoint, as_matrix, eig_hermitian, hermitian_defect

STATE_TOL = 1e-10
X_PATTERN_TOL = 1e-8

# (row, col) positions allowed to be nonzero in an X-state
_X_PATTERN = frozenset(
    [(i, i) for i in range(4)] + [(i, 3 - i) for i in range(4)]
)


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Joint state of qubits A and B as a read-only 4x4 complex matrix."""

    mat: np.ndarray

    def __post_init__(self):
        mat = as_matrix(self.mat)
        if mat.shape != (4, 4):
            raise InvalidArgumentError(f"Two-qubit state needs a 4x4 matrix, got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    def __repr__(self):
        diag = ", ".join(f"{v.real:.4f}" for v in np.diag(self.mat))
        return f"DensityMatrix4(diag=[{diag}])"


@dataclass(frozen=True)
class XStateParams:
    """The seven real entries of an X-state (populations and two coherences)."""

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: float
    rho23: float

    @property
    def populations(self) -> Tuple[float, float, float, float]:
        return (self.rho11, self.rho22, self.rho33, self.rho44)

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.rho11, self.rho22, self.rho33, self.rho44, self.rho14, self.rho23)

    def is_valid(self, tol: float = STATE_TOL) -> bool:
        """Check populations, normalization and positivity of both 2x2 blocks."""
        pops = self.populations
        if min(pops) < -tol or abs(sum(pops) - 1.0) > tol:
            return False
        outer = np.sqrt(max(self.rho11, 0.0) * max(self.rho44, 0.0))
        inner = np.sqrt(max(self.rho22, 0.0) * max(self.rho33, 0.0))
        return abs(self.rho14) <= outer + tol and abs(self.rho23) <= inner + tol


@dataclass(frozen=True)
class BlochXParams:
    """Correlations c1, c2, c3 and local z-polarizations r (qubit A), s (qubit B)."""

    c1: float
    c2: float
    c3: float
    r: float
    s: float

    def diagonal_terms(self) -> Tuple[float, float, float, float]:
        """The four diagonal entries of the Bloch matrix, each scaled by 4."""
        c3, r, s = self.c3, self.r, self.s
        return (1 + c3 + r + s, 1 - c3 + r - s, 1 - c3 - r + s, 1 + c3 - r - s)

    def is_valid(self, tol: float = 1e-9) -> bool:
        if min(self.diagonal_terms()) < -tol:
            return False
        return all(abs(v) <= 1.0 + 1e-10 for v in (self.c1, self.c2, self.c3, self.r, self.s))


@dataclass(frozen=True)
class ValidationReport:
    """Defects of a candidate density matrix (a report, never an exception)."""

    hermitian_defect: float
    trace_defect: float
    min_eigenvalue: float

    def ok(self, tol: float = STATE_TOL) -> bool:
        return (
            self.hermitian_defect <= tol
            and self.trace_defect <= tol
            and self.min_eigenvalue >= -tol
        )


def x_matrix(x: XStateParams) -> DensityMatrix4:
    """Build the X-shaped matrix from its seven real entries."""
    mat = np.zeros((4, 4), dtype=np.complex128)
    mat[0, 0], mat[1, 1], mat[2, 2], mat[3, 3] = x.populations
    mat[0, 3] = mat[3, 0] = x.rho14
    mat[1, 2] = mat[2, 1] = x.rho23
    return DensityMatrix4(mat)


def x_from_bloch(b: BlochXParams) -> XStateParams:
    """Invert the Bloch parameterization back to matrix entries."""
    d11, d22, d33, d44 = b.diagonal_terms()
    return XStateParams(
        rho11=d11 / 4.0,
        rho22=d22 / 4.0,
        rho33=d33 / 4.0,
        rho44=d44 / 4.0,
        rho14=(b.c1 - b.c2) / 4.0,
        rho23=(b.c1 + b.c2) / 4.0,
    )


def bloch_matrix(b: BlochXParams) -> DensityMatrix4:
    return x_matrix(x_from_bloch(b))


def werner(p: float) -> DensityMatrix4:
    """
    Werner state p|phi-><phi-| + (1-p) I/4 with |phi-> = (|01> - |10>)/sqrt(2).

    Raises:
        InvalidArgumentError: p outside [0, 1]
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"Werner parameter must be in [0, 1], got {p}")
    mixed = (1.0 - p) / 4.0
    singlet = (1.0 + p) / 4.0
    return x_matrix(XStateParams(mixed, singlet, singlet, mixed, 0.0, -p / 2.0))


def maximally_mixed() -> DensityMatrix4:
    return DensityMatrix4(np.eye(4, dtype=np.complex128) / 4.0)


def basis_state(label: str) -> DensityMatrix4:
    """Computational basis projector, e.g. basis_state("01") is |01><01|."""
    if len(label) != 2 or any(ch not in "01" for ch in label):
        raise InvalidArgumentError(f"Basis label must be two bits like '01', got {label!r}")
    index = int(label, 2)
    mat = np.zeros((4, 4), dtype=np.complex128)
    mat[index, index] = 1.0
    return DensityMatrix4(mat)


def to_x_params(rho: DensityMatrix4, tol: float = X_PATTERN_TOL) -> XStateParams:
    """
    Extract the seven real X-state entries.

    Raises:
        NotXStateError: an entry outside the X pattern (or an imaginary part of
            a pattern entry) exceeds tol; the error names the 1-based index
    """
    mat = rho.mat
    worst_index, worst = None, 0.0
    for i in range(4):
        for j in range(4):
            if (i, j) in _X_PATTERN:
                magnitude = abs(mat[i, j].imag)
            else:
                magnitude = abs(mat[i, j])
            if magnitude > worst:
                worst_index, worst = (i + 1, j + 1), magnitude
    if worst > tol:
        raise NotXStateError(worst_index, worst, tol)

    return XStateParams(
        rho11=float(mat[0, 0].real),
        rho22=float(mat[1, 1].real),
        rho33=float(mat[2, 2].real),
        rho44=float(mat[3, 3].real),
        rho14=float(mat[0, 3].real),
        rho23=float(mat[1, 2].real),
    )


def bloch_from_x(x: XStateParams) -> BlochXParams:
    return BlochXParams(
        c1=2.0 * (x.rho23 + x.rho14),
        c2=2.0 * (x.rho23 - x.rho14),
        c3=x.rho11 - x.rho22 - x.rho33 + x.rho44,
        r=x.rho11 + x.rho22 - x.rho33 - x.rho44,
        s=x.rho11 - x.rho22 + x.rho33 - x.rho44,
    )


def validate(rho) -> ValidationReport:
    """
    Measure how far a matrix is from being a density matrix.

    Accepts a DensityMatrix4 or any 4x4 array-like.
    """
    mat = rho.mat if isinstance(rho, DensityMatrix4) else as_matrix(rho)
    herm = 0.5 * (mat + adjoint(mat))
    values, _ = eig_hermitian(herm)
    return ValidationReport(
        hermitian_defect=hermitian_defect(mat),
        trace_defect=abs(complex(np.trace(mat)) - 1.0),
        min_eigenvalue=float(values[-1]),
    )


def ensure_valid(rho: DensityMatrix4, tol: float = STATE_TOL) -> DensityMatrix4:
    """Return rho unchanged, or raise if it violates the density-matrix invariants."""
    report = validate(rho)
    if not report.ok(tol):
        raise InvalidArgumentError(f"Invalid density matrix: {report}")
    return rho
