"""
Grid evaluation for sweeps and figure surfaces.

Each grid point is independent. Large grids fan out over a process pool;
results come back in grid order whatever the completion order.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from src.config import SweepConfig, settings
from src.core.errors import DegenerateOutcomeError, InvalidArgumentError
from src.protocol.optimal import optimal_mr_numeric, resolve_mr
from src.protocol.scenarios import MrPolicy, ProtocolOutcome, ScenarioConfig, evolve, evolve_wm_only
from src.quantum.channel import decay_factor
from src.quantum.measures import bures_fidelity_x, concurrence_x, steering_s
from src.quantum.qstate import bloch_from_x, to_x_params, werner
from src.sweep.output import write_csv
from src.sweep.rows import SweepRow

logger = logging.getLogger(__name__)

PARALLEL_MIN_POINTS = 256


@dataclass(frozen=True)
class GridPoint:
    """A scenario at one time. protected=False drops the reversal step."""

    scenario: ScenarioConfig
    t: float
    allow_markovian: bool = False
    protected: bool = True


def _protected_outcome(scenario: ScenarioConfig, g: float) -> ProtocolOutcome:
    mr = resolve_mr(scenario, g)
    try:
        return evolve(scenario.case, scenario.p, scenario.m, mr, g)
    except DegenerateOutcomeError as e:
        if scenario.mr_policy is MrPolicy.EXPLICIT:
            raise
        logger.warning(f"{e} at mr={mr:.9f}, g={g:.3e}; searching feasible reversal strengths")
        mr, _ = optimal_mr_numeric(scenario.case, scenario.p, scenario.m, g, scenario.objective)
        return evolve(scenario.case, scenario.p, scenario.m, mr, g)


def evaluate_point(point: GridPoint) -> SweepRow:
    """Evolve one grid point and measure the final state against the initial Werner state."""
    scenario = point.scenario
    g = decay_factor(scenario.reservoir, point.t, point.allow_markovian)
    if point.protected:
        outcome = _protected_outcome(scenario, g)
    else:
        outcome = evolve_wm_only(scenario.case, scenario.p, scenario.m, g)

    x = to_x_params(outcome.state)
    steering = steering_s(bloch_from_x(x))
    row = SweepRow(
        t=float(point.t),
        g=g,
        p=scenario.p,
        m=scenario.m,
        mr=outcome.mr_used,
        concurrence=concurrence_x(x),
        si=steering.si,
        s=steering.s,
        fidelity=bures_fidelity_x(to_x_params(werner(scenario.p)), x),
        success_prob=outcome.success_prob,
    )
    return row.check()


def worker_count(threads: Optional[int] = None) -> int:
    """Resolve a thread cap (0 or None = all cores) to a worker count."""
    threads = settings.threads if threads is None else threads
    if threads < 0:
        raise InvalidArgumentError(f"Thread cap must be >= 0, got {threads}")
    return threads or os.cpu_count() or 1


def run_points(points: Sequence[GridPoint], threads: Optional[int] = None) -> List[SweepRow]:
    """Evaluate points, in parallel for large grids, returning rows in input order."""
    workers = worker_count(threads)
    if len(points) < PARALLEL_MIN_POINTS or workers == 1:
        return [evaluate_point(point) for point in points]

    chunksize = max(1, len(points) // (workers * 8))
    logger.debug(f"Evaluating {len(points)} points on {workers} workers (chunksize {chunksize})")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate_point, points, chunksize=chunksize))


def check_time_grid(ts: np.ndarray) -> None:
    if ts.size == 0:
        raise InvalidArgumentError("Time grid is empty")
    if np.any(ts < 0):
        raise InvalidArgumentError(f"Time grid has negative times (min {ts.min()})")
    if np.any(np.diff(ts) <= 0):
        raise InvalidArgumentError("Time grid must be strictly increasing")


def sweep_rows(config: SweepConfig, threads: Optional[int] = None) -> List[SweepRow]:
    ts = config.time_grid()
    check_time_grid(ts)
    scenario = config.scenario()
    points = [GridPoint(scenario, float(t), config.allow_markovian) for t in ts]
    return run_points(points, threads)


def run_sweep(config: SweepConfig, threads: Optional[int] = None) -> int:
    """
    Evaluate the sweep and write it to config.out.

    Args:
        config: Validated sweep configuration
        threads: Worker cap overriding STEERLAB_THREADS

    Returns:
        Number of rows written
    """
    logger.info(
        f"🔬 Sweep case {config.case.value.upper()}: p={config.p}, m={config.m}, mr={config.mr}, "
        f"t in [{config.t_start}, {config.t_end}] x {config.t_steps}"
    )
    rows = sweep_rows(config, threads)
    count = write_csv(config.out, rows)
    logger.info(f"✅ Sweep finished with {count} rows")
    return count
