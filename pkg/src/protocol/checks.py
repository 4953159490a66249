"""Cross-checks of the closed forms against the composed channel."""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

from src.core.errors import ApproximationDomainError
from src.protocol.optimal import objective_agreement
from src.protocol.scenarios import Case, Objective, closed_form_concurrence, closed_form_discrepancy, evolve
from src.quantum.measures import concurrence

logger = logging.getLogger(__name__)

GRID_VALUES = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass
class ClosedFormReport:
    """Worst deviations over a (p, m, mr, g) grid for one case."""

    case: Case
    points: int
    max_state_deviation: float
    worst_element: str
    max_concurrence_deviation: float

    def __repr__(self):
        return (
            f"ClosedFormReport(case={self.case.value.upper()}, points={self.points}, "
            f"state={self.max_state_deviation:.3e} in {self.worst_element}, "
            f"concurrence={self.max_concurrence_deviation:.3e})"
        )


def closed_form_report(case: Case, values: Sequence[float] = GRID_VALUES) -> ClosedFormReport:
    """Compare state elements and concurrence on every (p, m, mr, g) in values^4."""
    report = ClosedFormReport(Case(case), 0, 0.0, "", 0.0)
    for p, m, mr, g in itertools.product(values, repeat=4):
        gap = closed_form_discrepancy(case, p, m, mr, g)
        if gap.max_deviation >= report.max_state_deviation:
            report.max_state_deviation = gap.max_deviation
            report.worst_element = gap.element
        wootters = concurrence(evolve(case, p, m, mr, g).state)
        report.max_concurrence_deviation = max(
            report.max_concurrence_deviation,
            abs(wootters - closed_form_concurrence(case, p, m, mr, g)),
        )
        report.points += 1
    logger.info(f"{report}")
    return report


def optimum_report(case: Case, p: float, ms: Sequence[float], gs: Sequence[float]) -> Dict[Objective, float]:
    """
    Largest |numeric argmax - closed-form optimum| per objective over an (m, g) grid.

    Grid points where the case B closed form leaves its domain are skipped.
    """
    worst: Dict[Objective, float] = {objective: 0.0 for objective in Objective}
    skipped: List[tuple] = []
    for m, g in itertools.product(ms, gs):
        try:
            gaps = objective_agreement(case, p, m, g)
        except ApproximationDomainError:
            skipped.append((m, g))
            continue
        for objective, gap in gaps.items():
            worst[objective] = max(worst[objective], gap)
    if skipped:
        logger.warning(f"Skipped {len(skipped)} (m, g) points outside the closed-form domain")
    return worst
