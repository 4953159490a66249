"""
Weak measurement -> damping -> reversal scenarios on a Werner pair.

Case A damps qubit A only and applies WM/WMR to A; case B damps both qubits
and applies WM/WMR to both. Each case exists twice: as a composition of the
channel operations (the reference) and as closed-form matrix elements.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.errors import InvalidArgumentError, NumericFailureError, SingularConfigurationError
from src.quantum.channel import (
    Qubit,
    ReservoirParams,
    amplitude_damp,
    measure_reverse,
    weak_measure,
)
from src.quantum.qstate import DensityMatrix4, XStateParams, to_x_params, werner

logger = logging.getLogger(__name__)

MR_CAP = 1.0 - 1e-9
DENOMINATOR_FLOOR = 1e-12
EQUIVALENCE_TOL = 1e-10


def parse_mr(v) -> Union[float, str]:
    """Accept 'analytic', 'numeric' or an explicit strength in [0, 1)."""
    if isinstance(v, str) and v.strip().lower() in ("analytic", "numeric"):
        return v.strip().lower()
    try:
        value = float(v)
    except (TypeError, ValueError) as e:
        raise ValueError(f"mr must be a number, 'analytic' or 'numeric', got {v!r}") from e
    if not 0.0 <= value < 1.0:
        raise ValueError(f"Explicit mr must be in [0, 1), got {value}")
    return value


class Case(str, Enum):
    """A: only qubit A sees the reservoir. B: both qubits see identical local reservoirs."""

    A = "a"
    B = "b"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            lowered = value.lower()
            for member in cls:
                if member.value == lowered:
                    return member
        return None

    @property
    def target(self) -> Qubit:
        return Qubit.A if self is Case.A else Qubit.BOTH


class Objective(str, Enum):
    CONCURRENCE = "concurrence"
    STEERING = "steering"


class MrPolicy(str, Enum):
    EXPLICIT = "explicit"
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


class ScenarioConfig(BaseModel):
    """One protocol setting: case, Werner p, WM strength and the reversal policy."""

    model_config = ConfigDict(frozen=True)

    case: Case = Case.A
    p: float = Field(default=0.8, ge=0.0, le=1.0, description="Werner parameter")
    m: float = Field(default=0.0, ge=0.0, lt=1.0, description="WM strength")
    mr: Union[float, Literal["analytic", "numeric"]] = Field(
        default="analytic", description="Explicit WMR strength or an optimal policy"
    )
    objective: Objective = Objective.CONCURRENCE
    reservoir: ReservoirParams = Field(default_factory=ReservoirParams)

    @field_validator("mr", mode="before")
    def validate_mr(cls, v):
        return parse_mr(v)

    @property
    def mr_policy(self) -> MrPolicy:
        if isinstance(self.mr, str):
            return MrPolicy(self.mr)
        return MrPolicy.EXPLICIT


@dataclass(frozen=True)
class ProtocolOutcome:
    """Final post-selected state with the cost and parameters that produced it."""

    state: DensityMatrix4
    success_prob: float
    mr_used: float
    g_used: float


@dataclass(frozen=True)
class Discrepancy:
    """Largest element-wise gap between the composed channel and a closed form."""

    max_deviation: float
    element: str
    oracle: XStateParams
    closed: XStateParams


def clamp_mr(mr: float) -> float:
    """Keep a reversal strength inside [0, 1 - 1e-9]."""
    if not 0.0 <= mr <= 1.0:
        raise InvalidArgumentError(f"WMR strength must be in [0, 1], got {mr}")
    return min(mr, MR_CAP)


def _evolve(target: Qubit, p: float, m: float, mr: float, g: float) -> ProtocolOutcome:
    mr = clamp_mr(mr)
    measured = weak_measure(werner(p), target, m)
    damped = amplitude_damp(measured.state, target, g)
    reversed_ = measure_reverse(damped, target, mr)
    return ProtocolOutcome(
        state=reversed_.state,
        success_prob=measured.success_prob * reversed_.success_prob,
        mr_used=mr,
        g_used=g,
    )


def evolve_case_a(p: float, m: float, mr: float, g: float) -> ProtocolOutcome:
    """Werner(p) -> WM on A -> damping on A with survival g -> WMR on A."""
    return _evolve(Qubit.A, p, m, mr, g)


def evolve_case_b(p: float, m: float, mr: float, g: float) -> ProtocolOutcome:
    """Werner(p) -> WM on both -> damping on both -> WMR on both."""
    return _evolve(Qubit.BOTH, p, m, mr, g)


def evolve(case: Case, p: float, m: float, mr: float, g: float) -> ProtocolOutcome:
    return _evolve(Case(case).target, p, m, mr, g)


def evolve_wm_only(case: Case, p: float, m: float, g: float) -> ProtocolOutcome:
    """WM and damping without the reversal step."""
    target = Case(case).target
    measured = weak_measure(werner(p), target, m)
    damped = amplitude_damp(measured.state, target, g)
    return ProtocolOutcome(state=damped, success_prob=measured.success_prob, mr_used=0.0, g_used=g)


def _case_a_denominator(m: float, mr: float, g: float) -> float:
    denominator = m - 2 + (2 + g * (m - 1) - m) * mr
    if abs(denominator) <= DENOMINATOR_FLOOR:
        raise SingularConfigurationError(
            f"Case A denominator vanishes at m={m}, mr={mr}, g={g}"
        )
    return denominator


def closed_form_case_a(p: float, m: float, mr: float, g: float) -> XStateParams:
    """Closed-form final state of case A (rho14 = 0)."""
    d = _case_a_denominator(m, mr, g)
    return XStateParams(
        rho11=(mr - 1) * (2 + g * (m - 1) * (1 + p) - m * (1 + p)) / (2 * d),
        rho22=(1 - mr) * (m - 2 + g * (m - 1) * (p - 1) - m * p) / (2 * d),
        rho33=g * (m - 1) * (1 + p) / (2 * d),
        rho44=g * (1 - m) * (p - 1) / (2 * d),
        rho14=0.0,
        rho23=p * math.sqrt(g) * math.sqrt(1 - m) * math.sqrt(1 - mr) / d,
    )


def _clamped_radicand(value: float, label: str) -> float:
    if value < -DENOMINATOR_FLOOR:
        raise InvalidArgumentError(f"{label} = {value:.3e} is negative; parameters out of range")
    return max(value, 0.0)


def concurrence_case_a(p: float, m: float, mr: float, g: float) -> float:
    """Closed-form concurrence of the case A state."""
    d = _case_a_denominator(m, mr, g)
    theta = g * (1 - mr) * (m - 1) * (p - 1) * (2 + (1 + p) * (g * (m - 1) - m))
    theta = _clamped_radicand(theta, "Theta")
    value = (math.sqrt(theta) - 2 * p * math.sqrt(g) * math.sqrt(1 - m) * math.sqrt(1 - mr)) / d
    return max(0.0, value)


def case_b_normalizer(p: float, m: float, mr: float, g: float) -> float:
    """Normalizer Q of the case B closed form (negative for physical inputs)."""
    q = (
        2 * m * (2 + (g * (2 + g - g * p - 2 * mr) + 2 * (-2 + mr)) * mr)
        - 4
        - m ** 2 * (-1 + p) * ((1 - g) * (2 + g - mr) * mr - 1)
        + mr * (8 - 4 * mr + g * (-4 + (4 + g * (-1 + p)) * mr))
    )
    if abs(q) <= DENOMINATOR_FLOOR:
        raise SingularConfigurationError(f"Case B normalizer vanishes at p={p}, m={m}, mr={mr}, g={g}")
    return q


def _case_b_bracket(p: float, m: float, g: float) -> float:
    return m * (4 + m * (p - 1)) - 4 + g ** 2 * (p - 1) + g * (4 + m * (m - 4 - m * p))


def closed_form_case_b(p: float, m: float, mr: float, g: float) -> XStateParams:
    """
    Closed-form final state of case B as published (rho14 = 0).

    rho11 is also recovered from the trace; a mismatch is reported at DEBUG
    level and the transcribed value is returned.
    """
    q = case_b_normalizer(p, m, mr, g)
    rho11 = (mr - 1) ** 2 * _case_b_bracket(p, m, g) / q
    rho22 = g * (g - 2 + m - p * g + m * p) * (1 - mr) / q
    rho33 = g * (m - 1) * (m - 2 + g * (m - 1) * (p - 1) - m * p) * (mr - 1) / q
    rho44 = g ** 2 * (1 - m) ** 2 * (p - 1) / q
    rho23 = 2 * g * (m - 1) * p * (mr - 1) / q

    if rho44 < -DENOMINATOR_FLOOR:
        raise NumericFailureError(f"Case B closed form gives negative population rho44={rho44:.3e}")
    residual = rho11 - (1 - rho22 - rho33 - rho44)
    if abs(residual) > EQUIVALENCE_TOL:
        logger.debug(f"Case B closed form trace residual {residual:.3e} at p={p}, m={m}, mr={mr}, g={g}")
    return XStateParams(rho11=rho11, rho22=rho22, rho33=rho33, rho44=rho44, rho14=0.0, rho23=rho23)


def concurrence_case_b(p: float, m: float, mr: float, g: float) -> float:
    """Closed-form concurrence of the case B state."""
    q = case_b_normalizer(p, m, mr, g)
    upsilon = g ** 2 * (1 - m) ** 2 * (p - 1) * _case_b_bracket(p, m, g) * (mr - 1) ** 2
    upsilon = _clamped_radicand(upsilon, "Upsilon")
    value = (2 * math.sqrt(upsilon) - 4 * g * (-1 + m) * p * (mr - 1)) / q
    return max(0.0, value)


def closed_form(case: Case, p: float, m: float, mr: float, g: float) -> XStateParams:
    if Case(case) is Case.A:
        return closed_form_case_a(p, m, mr, g)
    return closed_form_case_b(p, m, mr, g)


def closed_form_concurrence(case: Case, p: float, m: float, mr: float, g: float) -> float:
    if Case(case) is Case.A:
        return concurrence_case_a(p, m, mr, g)
    return concurrence_case_b(p, m, mr, g)


_ELEMENTS = ("rho11", "rho22", "rho33", "rho44", "rho14", "rho23")


def closed_form_discrepancy(case: Case, p: float, m: float, mr: float, g: float) -> Discrepancy:
    """
    Compare the composed channel with the closed form for one parameter tuple.

    The composed channel is authoritative; deviations above 1e-10 are logged.
    """
    oracle = to_x_params(evolve(case, p, m, mr, g).state)
    closed = closed_form(case, p, m, mr, g)
    gaps = [abs(a - b) for a, b in zip(oracle.as_tuple(), closed.as_tuple())]
    worst = max(range(len(gaps)), key=gaps.__getitem__)
    result = Discrepancy(max_deviation=gaps[worst], element=_ELEMENTS[worst], oracle=oracle, closed=closed)
    if result.max_deviation > EQUIVALENCE_TOL:
        logger.info(
            f"Closed form for case {Case(case).value.upper()} deviates by {result.max_deviation:.3e} "
            f"in {result.element} at (p={p}, m={m}, mr={mr}, g={g}); using the composed channel"
        )
    return result
