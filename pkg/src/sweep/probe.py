"""Decay-factor table for checking reservoir parameters."""
import logging
import math
from typing import List, TextIO, Tuple

import numpy as np

from src.core.errors import InvalidArgumentError
from src.quantum.channel import ReservoirParams, decay_factor
from src.sweep.output import format_value

logger = logging.getLogger(__name__)


def probe_times(t_start: float, t_end: float, step: float) -> np.ndarray:
    """Grid t_start, t_start + step, ... up to and including t_end (within rounding)."""
    if step <= 0:
        raise InvalidArgumentError(f"Probe step must be positive, got {step}")
    if t_start < 0 or t_end < t_start:
        raise InvalidArgumentError(f"Probe range must satisfy 0 <= t_start <= t_end, got [{t_start}, {t_end}]")
    count = int(math.floor((t_end - t_start) / step + 1e-9)) + 1
    return t_start + step * np.arange(count)


def gt_probe(
    res: ReservoirParams,
    t_start: float = 0.0,
    t_end: float = 30.0,
    step: float = 0.05,
    allow_markovian: bool = False,
) -> List[Tuple[float, float]]:
    """Tabulate (t, G_t) over the probe grid."""
    return [(float(t), decay_factor(res, float(t), allow_markovian)) for t in probe_times(t_start, t_end, step)]


def write_probe(sink: TextIO, res: ReservoirParams, rows: List[Tuple[float, float]]) -> int:
    """Write the regime header comment and the t,g table."""
    sink.write(f"# regime: {res.regime.value} (lambda={res.lam}, 2*gamma0={2 * res.gamma0})\n")
    sink.write("t,g\n")
    for t, g in rows:
        sink.write(f"{format_value(t)},{format_value(g)}\n")
    return len(rows)
