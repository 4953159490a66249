"""Entanglement, steering and fidelity measures for two-qubit states."""
import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import bisect
from scipy.stats import entropy

from src.core.errors import InvalidStateError
from src.core.linalg import adjoint, clean_spectrum, eig_hermitian, sqrt_psd
from src.quantum.qstate import (
    BlochXParams,
    DensityMatrix4,
    XStateParams,
    bloch_from_x,
    to_x_params,
    werner,
)

logger = logging.getLogger(__name__)

SI_BOUND = 2.0
SI_MAX = 6.0
ARG_TOL = 1e-9

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)
_I2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True)
class SteeringReport:
    """Steering functional SI, its normalization s, and the steerable flag."""

    si: float
    s: float
    steerable: bool


def concurrence(rho: DensityMatrix4) -> float:
    """
    Wootters concurrence.

    The eigenvalues of R = rho (Y(x)Y) rho* (Y(x)Y) are read off the Hermitian,
    isospectral matrix sqrt(rho) (Y(x)Y) rho* (Y(x)Y) sqrt(rho).
    """
    root = sqrt_psd(rho.mat)
    flipped = _SPIN_FLIP @ np.conj(rho.mat) @ _SPIN_FLIP
    h = root @ flipped @ root
    values, _ = eig_hermitian(0.5 * (h + adjoint(h)))
    roots = np.sqrt(clean_spectrum(values))
    value = roots[0] - roots[1] - roots[2] - roots[3]
    return float(min(1.0, max(0.0, value)))


def _x_concurrence_margin(x: XStateParams) -> float:
    outer = abs(x.rho14) - math.sqrt(max(x.rho22 * x.rho33, 0.0))
    inner = abs(x.rho23) - math.sqrt(max(x.rho11 * x.rho44, 0.0))
    return 2.0 * max(outer, inner)


def concurrence_x(x: XStateParams) -> float:
    """Reduced concurrence formula for X-states."""
    return max(0.0, _x_concurrence_margin(x))


def _xlog2x(value: float) -> float:
    return 0.0 if value == 0.0 else value * math.log2(value)


def _checked(args: Iterable[float]) -> list:
    cleaned = []
    for value in args:
        if value < -ARG_TOL:
            raise InvalidStateError(f"Bloch parameters give a negative probability weight {value:.3e}")
        cleaned.append(max(value, 0.0))
    return cleaned


def steering_si(b: BlochXParams) -> float:
    """
    Entropic steering functional of an X-state (base-2 logs, 0 log 0 = 0).

    Ranges over [0, 6]; values above 2 violate the three-Pauli steering
    inequality.
    """
    correlations = _checked([1 + b.c1, 1 - b.c1, 1 + b.c2, 1 - b.c2])
    local = _checked([1 + b.r, 1 - b.r])
    diagonal = _checked(b.diagonal_terms())

    si = (
        sum(_xlog2x(v) for v in correlations)
        - sum(_xlog2x(v) for v in local)
        + 0.5 * sum(_xlog2x(v) for v in diagonal)
    )
    return min(SI_MAX, max(0.0, si))


def steering_s(b: BlochXParams) -> SteeringReport:
    si = steering_si(b)
    s = max(0.0, (si - SI_BOUND) / (SI_MAX - SI_BOUND))
    return SteeringReport(si=si, s=s, steerable=si > SI_BOUND)


def _projectors(pauli: np.ndarray):
    return [(_I2 + pauli) / 2.0, (_I2 - pauli) / 2.0]


def conditional_entropy_sum(rho: DensityMatrix4) -> float:
    """
    Sum over W in {x, y, z} of H(W^B | W^A) for Pauli outcome statistics.

    Each term is the Shannon entropy of the joint outcome distribution minus
    that of qubit A's marginal.
    """
    total = 0.0
    for pauli in (_SIGMA_X, _SIGMA_Y, _SIGMA_Z):
        projectors = _projectors(pauli)
        joint = np.array([
            [max(float(np.trace(np.kron(pa, pb) @ rho.mat).real), 0.0) for pb in projectors]
            for pa in projectors
        ])
        total += entropy(joint.ravel(), base=2) - entropy(joint.sum(axis=1), base=2)
    return float(total)


def bures_fidelity(rho0: DensityMatrix4, xi: DensityMatrix4) -> float:
    """Bures fidelity (tr sqrt(sqrt(rho0) xi sqrt(rho0)))^2, clamped to [0, 1]."""
    root0 = sqrt_psd(rho0.mat)
    inner = root0 @ xi.mat @ root0
    value = float(np.trace(sqrt_psd(0.5 * (inner + adjoint(inner)))).real) ** 2
    if value > 1.0:
        logger.debug(f"Bures fidelity clamped: raw value exceeds 1 by {value - 1.0:.3e}")
    return min(1.0, max(0.0, value))


def _block_overlap(a: np.ndarray, b: np.ndarray) -> float:
    """tr sqrt(sqrt(a) b sqrt(a)) for 2x2 PSD blocks, via tr sqrt M = sqrt(tr M + 2 sqrt(det M))."""
    det_a = max(float(np.linalg.det(a)), 0.0)
    det_b = max(float(np.linalg.det(b)), 0.0)
    trace_ab = max(float(np.trace(a @ b)), 0.0)
    return math.sqrt(trace_ab + 2.0 * math.sqrt(det_a * det_b))


def bures_fidelity_x(x0: XStateParams, x1: XStateParams) -> float:
    """Bures fidelity between two X-states, computed block by block."""
    total = 0.0
    for first, second in (
        (np.array([[x0.rho11, x0.rho14], [x0.rho14, x0.rho44]]),
         np.array([[x1.rho11, x1.rho14], [x1.rho14, x1.rho44]])),
        (np.array([[x0.rho22, x0.rho23], [x0.rho23, x0.rho33]]),
         np.array([[x1.rho22, x1.rho23], [x1.rho23, x1.rho33]])),
    ):
        total += _block_overlap(first, second)
    return min(1.0, max(0.0, total * total))


def _werner_si(p: float) -> float:
    return steering_si(bloch_from_x(to_x_params(werner(p))))


def werner_steering_threshold(xtol: float = 1e-12) -> float:
    """Werner parameter at which SI crosses 2 (about 0.6521)."""
    return float(bisect(lambda p: _werner_si(p) - SI_BOUND, 0.5, 0.9, xtol=xtol))


def werner_entanglement_threshold(xtol: float = 1e-12) -> float:
    """Werner parameter at which the concurrence becomes positive (1/3)."""
    return float(bisect(lambda p: _x_concurrence_margin(to_x_params(werner(p))), 0.0, 1.0, xtol=xtol))
