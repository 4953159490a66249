"""Death and revival of correlations along a time trace."""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from src.core.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

Interval = Tuple[float, float]


def positive_intervals(ts: Sequence[float], values: Sequence[float], floor: float = 0.0) -> List[Interval]:
    """
    Maximal runs of consecutive grid points where values exceed floor.

    Args:
        ts: Strictly increasing time grid
        values: Measure sampled on ts
        floor: Threshold a value must exceed to count as positive

    Returns:
        List of (first t, last t) of each run, in time order
    """
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    if ts.shape != values.shape or ts.ndim != 1:
        raise InvalidArgumentError(f"Time grid and values must be equal-length 1-D arrays, got {ts.shape} and {values.shape}")

    intervals = []
    start = None
    for i, positive in enumerate(values > floor):
        if positive and start is None:
            start = i
        elif not positive and start is not None:
            intervals.append((float(ts[start]), float(ts[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(ts[start]), float(ts[-1])))
    return intervals


@dataclass
class RevivalReport:
    """Positive intervals of concurrence and steering on one trace."""

    concurrence_intervals: List[Interval] = field(default_factory=list)
    steering_intervals: List[Interval] = field(default_factory=list)

    @property
    def concurrence_revives(self) -> bool:
        return len(self.concurrence_intervals) >= 2

    @property
    def steering_revives(self) -> bool:
        return len(self.steering_intervals) >= 2

    def steering_during_revivals(self) -> bool:
        """True if steering is positive anywhere inside a concurrence revival."""
        for c_start, c_end in self.concurrence_intervals[1:]:
            for s_start, s_end in self.steering_intervals:
                if s_start <= c_end and s_end >= c_start:
                    return True
        return False

    def __repr__(self):
        return (
            f"RevivalReport(concurrence={len(self.concurrence_intervals)} intervals, "
            f"steering={len(self.steering_intervals)} intervals)"
        )


def revival_report(
    ts: Sequence[float],
    concurrence: Sequence[float],
    steering: Sequence[float],
    floor: float = 0.0,
) -> RevivalReport:
    """Summarize where concurrence and normalized steering are positive."""
    report = RevivalReport(
        concurrence_intervals=positive_intervals(ts, concurrence, floor),
        steering_intervals=positive_intervals(ts, steering, floor),
    )
    logger.debug(f"{report}")
    return report
