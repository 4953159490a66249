"""Non-Markovian amplitude damping and the weak-measurement / reversal operations."""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import bisect

from src.core.errors import DegenerateOutcomeError, InvalidArgumentError, RegimeError
from src.core.linalg import adjoint
from src.quantum.qstate import DensityMatrix4

logger = logging.getLogger(__name__)

SUCCESS_FLOOR = 1e-15

_I2 = np.eye(2, dtype=np.complex128)


class Qubit(str, Enum):
    """Which subsystem a local operation acts on."""

    A = "A"
    B = "B"
    BOTH = "both"


class Regime(str, Enum):
    NON_MARKOVIAN = "non-Markovian"
    MARKOVIAN = "Markovian"
    CRITICAL = "critical"


class ReservoirParams(BaseModel):
    """Lorentzian reservoir: decay rate gamma0 and spectral width lambda."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    gamma0: float = Field(default=1.0, gt=0, description="Excited-state decay rate")
    lam: float = Field(default=0.1, gt=0, alias="lambda", description="Spectral width")

    @property
    def regime(self) -> Regime:
        return classify_regime(self)


@dataclass(frozen=True)
class LocalOpResult:
    """Renormalized state after a post-selected local operation."""

    state: DensityMatrix4
    success_prob: float


def classify_regime(res: ReservoirParams) -> Regime:
    boundary = 2.0 * res.gamma0
    if res.lam < boundary:
        return Regime.NON_MARKOVIAN
    if res.lam > boundary:
        return Regime.MARKOVIAN
    return Regime.CRITICAL


def _oscillating_amplitude(res: ReservoirParams, t: float) -> float:
    """e^{-lambda t/2} [cos(dt/2) + (lambda/d) sin(dt/2)]; its square is G_t."""
    d = math.sqrt(2.0 * res.gamma0 * res.lam - res.lam ** 2)
    half = d * t / 2.0
    return math.exp(-res.lam * t / 2.0) * (math.cos(half) + (res.lam / d) * math.sin(half))


def _hyperbolic_amplitude(res: ReservoirParams, t: float) -> float:
    """Analytic continuation d -> i d' written with exponentials to avoid overflow."""
    d = math.sqrt(res.lam ** 2 - 2.0 * res.gamma0 * res.lam)
    half = d * t / 2.0
    shift = res.lam * t / 2.0
    grow = math.exp(half - shift)
    decay = math.exp(-half - shift)
    return 0.5 * (grow + decay) + (res.lam / d) * 0.5 * (grow - decay)


def decay_factor(res: ReservoirParams, t: float, allow_markovian: bool = False) -> float:
    """
    Excited-state survival G_t of a qubit in the Lorentzian reservoir.

    Args:
        res: Reservoir parameters
        t: Time (>= 0)
        allow_markovian: Permit lambda > 2 gamma0 via the hyperbolic continuation

    Returns:
        G_t in [0, 1]

    Raises:
        InvalidArgumentError: t < 0
        RegimeError: lambda = 2 gamma0, or lambda > 2 gamma0 without the flag
    """
    if t < 0:
        raise InvalidArgumentError(f"Time must be non-negative, got {t}")
    regime = classify_regime(res)
    if regime is Regime.CRITICAL:
        raise RegimeError("lambda = 2*gamma0 is the critical point; the decay factor is not implemented there")
    if regime is Regime.MARKOVIAN:
        if not allow_markovian:
            raise RegimeError(
                f"lambda={res.lam} > 2*gamma0={2 * res.gamma0}: Markovian regime requires allow_markovian"
            )
        amplitude = _hyperbolic_amplitude(res, t)
    else:
        amplitude = _oscillating_amplitude(res, t)
    return min(1.0, max(0.0, amplitude * amplitude))


def first_zero_time(res: ReservoirParams, xtol: float = 1e-12) -> float:
    """
    First time at which G_t vanishes (non-Markovian regime only).

    The bracket of G_t is positive at t = 0 and equals -e^{...} at dt/2 = pi,
    so bisection on [0, 2 pi / d] finds the smallest positive root.
    """
    if classify_regime(res) is not Regime.NON_MARKOVIAN:
        raise RegimeError("G_t has no zeros outside the non-Markovian regime")
    d = math.sqrt(2.0 * res.gamma0 * res.lam - res.lam ** 2)
    return float(bisect(lambda t: _oscillating_amplitude(res, t), 0.0, 2.0 * math.pi / d, xtol=xtol))


def damping_kraus(g: float) -> List[np.ndarray]:
    """Single-qubit Kraus pair: K0 = |0><0| + sqrt(g)|1><1|, K1 = sqrt(1-g)|0><1|."""
    if not 0.0 <= g <= 1.0:
        raise InvalidArgumentError(f"Decay factor must be in [0, 1], got {g}")
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(g)]], dtype=np.complex128)
    k1 = np.array([[0.0, math.sqrt(1.0 - g)], [0.0, 0.0]], dtype=np.complex128)
    return [k0, k1]


def weak_measurement_operator(m: float) -> np.ndarray:
    """M_wk = |0><0| + sqrt(1-m)|1><1|."""
    _check_strength(m, "WM")
    return np.diag([1.0, math.sqrt(1.0 - m)]).astype(np.complex128)


def reversal_operator(mr: float) -> np.ndarray:
    """M_rev = sqrt(1-mr)|0><0| + |1><1|."""
    _check_strength(mr, "WMR")
    return np.diag([math.sqrt(1.0 - mr), 1.0]).astype(np.complex128)


def _check_strength(value: float, label: str) -> None:
    if not 0.0 <= value < 1.0:
        raise InvalidArgumentError(f"{label} strength must be in [0, 1), got {value}")


def _lift(op: np.ndarray, target: Qubit) -> np.ndarray:
    target = Qubit(target)
    if target is Qubit.A:
        return np.kron(op, _I2)
    if target is Qubit.B:
        return np.kron(_I2, op)
    return np.kron(op, op)


def _single_targets(target: Qubit) -> Tuple[Qubit, ...]:
    target = Qubit(target)
    return (Qubit.A, Qubit.B) if target is Qubit.BOTH else (target,)


def amplitude_damp(rho: DensityMatrix4, target: Qubit, g: float) -> DensityMatrix4:
    """
    Apply the amplitude-damping map with survival g to the selected qubit(s).

    For Qubit.BOTH the map acts on A and then B; the two commute.
    """
    kraus = damping_kraus(g)
    mat = rho.mat
    for qubit in _single_targets(target):
        lifted = [_lift(k, qubit) for k in kraus]
        mat = sum(k @ mat @ adjoint(k) for k in lifted)
    return DensityMatrix4(mat)


def _post_select(rho: DensityMatrix4, op: np.ndarray) -> LocalOpResult:
    unnormalized = op @ rho.mat @ adjoint(op)
    prob = float(np.trace(unnormalized).real)
    if prob < SUCCESS_FLOOR:
        raise DegenerateOutcomeError(prob, SUCCESS_FLOOR)
    state = unnormalized / prob
    return LocalOpResult(state=DensityMatrix4(0.5 * (state + adjoint(state))), success_prob=prob)


def weak_measure(rho: DensityMatrix4, target: Qubit, m: float) -> LocalOpResult:
    """
    Post-selected weak measurement of strength m.

    Qubit.BOTH applies M_wk (x) M_wk once with a single renormalization.
    """
    return _post_select(rho, _lift(weak_measurement_operator(m), target))


def measure_reverse(rho: DensityMatrix4, target: Qubit, mr: float) -> LocalOpResult:
    """Post-selected measurement reversal of strength mr (same contract as weak_measure)."""
    return _post_select(rho, _lift(reversal_operator(mr), target))
