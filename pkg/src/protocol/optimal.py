"""
Optimal reversal strength.

Closed-form optima exist for both cases; the numeric search (grid then
golden-section) covers the steering objective and any point where the
case B expression leaves its domain.
"""
import logging
import math
from typing import Callable, Dict, Tuple

import numpy as np

from src.core.errors import ApproximationDomainError, DegenerateOutcomeError
from src.protocol.scenarios import (
    MR_CAP,
    Case,
    MrPolicy,
    Objective,
    ScenarioConfig,
    clamp_mr,
    evolve,
)
from src.quantum.channel import SUCCESS_FLOOR
from src.quantum.measures import concurrence_x, steering_s
from src.quantum.qstate import bloch_from_x, to_x_params

logger = logging.getLogger(__name__)

GRID_POINTS = 256
GOLDEN_TOL = 1e-8
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0
_DOMAIN_FLOOR = 1e-12


def _cap(mr: float) -> float:
    return min(max(mr, 0.0), MR_CAP)


def optimal_mr_a(m: float, g: float) -> float:
    """Case A optimum: mr = (2 - 2g - m + 2gm) / (2 - g - m + gm)."""
    numerator = 2 - 2 * g - m + 2 * g * m
    denominator = 2 - g - m + g * m
    return _cap(numerator / denominator)


def optimal_mr_b(m: float, g: float, p: float) -> float:
    """
    Case B optimum: mr = 1 - sqrt(g^2 (1-m)^2 (p-1) / B(p, m, g)).

    Raises:
        ApproximationDomainError: the radicand is negative or 0/0
    """
    numerator = g ** 2 * (1 - m) ** 2 * (p - 1)
    denominator = m * (4 + m * (p - 1)) - 4 + g ** 2 * (p - 1) + g * (4 + m * (m - 4 - m * p))
    if abs(denominator) < _DOMAIN_FLOOR:
        raise ApproximationDomainError(
            f"Case B optimum is 0/0 at m={m}, g={g}, p={p}"
        )
    radicand = numerator / denominator
    if radicand < 0.0:
        raise ApproximationDomainError(
            f"Case B optimum has negative radicand at m={m}, g={g}, p={p}", radicand=radicand
        )
    return _cap(1.0 - math.sqrt(radicand))


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = GOLDEN_TOL) -> Tuple[float, float]:
    """
    Maximize a unimodal function on [a, b] by golden-section search.

    Returns:
        (argmax estimate, function value there)
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        mid = 0.5 * (a + b)
        return mid, f(mid)

    steps = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(steps):
        if fc > fd:
            b, d, fd = d, c, fc
            h *= _INV_PHI
            c = a + _INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            fd = f(d)

    if fc > fd:
        return c, fc
    return d, fd


def objective_value(case: Case, p: float, m: float, mr: float, g: float, objective: Objective) -> float:
    """Concurrence or normalized steering of the composed-channel state."""
    x = to_x_params(evolve(case, p, m, mr, g).state)
    if Objective(objective) is Objective.CONCURRENCE:
        return concurrence_x(x)
    return steering_s(bloch_from_x(x)).s


def optimal_mr_numeric(
    case: Case,
    p: float,
    m: float,
    g: float,
    objective: Objective = Objective.CONCURRENCE,
    grid_points: int = GRID_POINTS,
) -> Tuple[float, float]:
    """
    Search mr in [0, 1 - 1e-9] for the largest objective value.

    A uniform grid locates the best cell; golden-section refines inside the
    neighbouring cells. Reversal strengths whose post-selection degenerates
    are treated as infeasible.

    Returns:
        (mr, objective value at mr)
    """
    def score(mr: float) -> float:
        try:
            return objective_value(case, p, m, mr, g, objective)
        except DegenerateOutcomeError:
            return -math.inf

    grid = np.linspace(0.0, MR_CAP, grid_points)
    values = np.array([score(float(mr)) for mr in grid])
    k = int(np.argmax(values))
    best_mr, best_value = float(grid[k]), float(values[k])
    if not math.isfinite(best_value):
        raise DegenerateOutcomeError(0.0, SUCCESS_FLOOR)

    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, grid_points - 1)])
    logger.debug(f"Refining {Objective(objective).value} optimum for case {Case(case).value} in [{lo:.6f}, {hi:.6f}]")
    refined_mr, refined_value = golden_section_max(score, lo, hi)
    if refined_value > best_value:
        best_mr, best_value = refined_mr, refined_value
    return best_mr, best_value


def resolve_mr(config: ScenarioConfig, g: float) -> float:
    """Turn a scenario's reversal policy into a concrete strength for survival g."""
    policy = config.mr_policy
    if policy is MrPolicy.EXPLICIT:
        return clamp_mr(float(config.mr))

    if policy is MrPolicy.ANALYTIC:
        try:
            return analytic_optimum(config.case, config.p, config.m, g)
        except ApproximationDomainError as e:
            logger.warning(f"{e}; falling back to numeric search")

    mr, _ = optimal_mr_numeric(config.case, config.p, config.m, g, config.objective)
    return mr


def analytic_optimum(case: Case, p: float, m: float, g: float) -> float:
    """Closed-form optimum for either case (case B may raise ApproximationDomainError)."""
    if Case(case) is Case.A:
        return optimal_mr_a(m, g)
    return optimal_mr_b(m, g, p)


def objective_agreement(case: Case, p: float, m: float, g: float) -> Dict[Objective, float]:
    """
    Distance in mr between the closed-form optimum and the numeric argmax of each objective.

    Used to tell which quantity the closed forms actually optimize.
    """
    reference = analytic_optimum(case, p, m, g)
    return {
        objective: abs(optimal_mr_numeric(case, p, m, g, objective)[0] - reference)
        for objective in Objective
    }
