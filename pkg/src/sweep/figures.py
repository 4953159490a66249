"""
Figure data presets.

Each figure is a list of panels. A panel fixes some of (p, m, t), sweeps the
rest over a 1-D curve family or a 2-D surface, and writes one CSV per
measure it shows. Defaults: gamma0 = 1, lambda = 0.1, t in [0, 30],
p in [0, 1], m in [0, 0.99].
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import settings
from src.core.errors import InvalidArgumentError
from src.protocol.scenarios import Case, ScenarioConfig
from src.quantum.channel import ReservoirParams
from src.sweep.output import write_csv
from src.sweep.rows import SweepRow
from src.sweep.runner import GridPoint, run_points

logger = logging.getLogger(__name__)

T_RANGE = (0.0, 30.0)
P_RANGE = (0.0, 1.0)
M_RANGE = (0.0, 0.99)
CURVE_WMS = (0.0, 0.4, 0.8)
FIGURES = tuple(range(2, 9))
SURFACE_AXES = (("m", "t"), ("p", "t"), ("p", "m"))


@dataclass(frozen=True)
class Output:
    """One CSV file of a panel: its name suffix and the measure column it carries."""

    suffix: str
    measure: str


@dataclass
class Panel:
    """
    A block of grid points shared by one or more output files.

    Attributes:
        case: Protocol case
        fixed: Parameters held constant (subset of p, m, t)
        axes: Swept parameters in grid order (outer first)
        outputs: Files written from this block
        mr: Reversal policy ("analytic" or an explicit strength)
        protected: False drops the reversal step
        curve_values: Discrete values of the first axis for curve panels
    """

    case: Case
    fixed: Dict[str, float]
    axes: Tuple[str, ...]
    outputs: Tuple[Output, ...]
    mr: Union[float, str] = "analytic"
    protected: bool = True
    curve_values: Optional[Tuple[float, ...]] = None

    def columns(self, measure: str) -> Tuple[str, ...]:
        cols = tuple(self.axes)
        if measure != "mr":
            cols += ("mr",)
        return cols + (measure,)


def _axis(name: str, points: int) -> np.ndarray:
    lo, hi = {"t": T_RANGE, "p": P_RANGE, "m": M_RANGE}[name]
    return np.linspace(lo, hi, points)


def _grid(panel: Panel, curve_points: int, surface_points: int) -> List[Dict[str, float]]:
    if panel.curve_values is not None:
        first = np.asarray(panel.curve_values, dtype=float)
        second = _axis(panel.axes[1], curve_points)
    else:
        first = _axis(panel.axes[0], surface_points)
        second = _axis(panel.axes[1], surface_points)
    return [
        {**panel.fixed, panel.axes[0]: float(a), panel.axes[1]: float(b)}
        for a in first
        for b in second
    ]


def _points(panel: Panel, reservoir: ReservoirParams, curve_points: int, surface_points: int) -> List[GridPoint]:
    points = []
    for values in _grid(panel, curve_points, surface_points):
        scenario = ScenarioConfig(
            case=panel.case,
            p=values["p"],
            m=values["m"],
            mr=panel.mr,
            reservoir=reservoir,
        )
        points.append(GridPoint(scenario, values["t"], protected=panel.protected))
    return points


def _surfaces(case: Case, fixed: Sequence[Tuple[str, float]], outputs: Sequence[Tuple[Output, ...]]) -> List[Panel]:
    """Three caption panels: (m, t) at fixed p, (p, t) at fixed m, (p, m) at fixed t."""
    return [
        Panel(case, {name: value}, axes, panel_outputs)
        for (name, value), axes, panel_outputs in zip(fixed, SURFACE_AXES, outputs)
    ]


def figure_panels(n: int, p: Optional[float] = None) -> List[Panel]:
    """
    Panels of figure n.

    Args:
        n: Figure number, 2..8
        p: Werner parameter for the curve figures 2 (default 0.8) and 5 (default 0.9)
    """
    if n == 2:
        return [Panel(Case.A, {"p": 0.8 if p is None else p}, ("m", "t"),
                      (Output("a", "concurrence"), Output("b", "s")), curve_values=CURVE_WMS)]
    if n == 3:
        outputs = [(Output(f"a{i}", "concurrence"), Output(f"b{i}", "s")) for i in (1, 2, 3)]
        return _surfaces(Case.A, (("p", 0.8), ("m", 0.2), ("t", 8.0)), outputs)
    if n == 4:
        return _surfaces(Case.B, (("p", 0.2), ("m", 0.2), ("t", 2.0)), [(Output(x, "mr"),) for x in "abc"])
    if n == 5:
        return [Panel(Case.B, {"p": 0.9 if p is None else p}, ("m", "t"),
                      (Output("a", "concurrence"), Output("b", "s")), curve_values=CURVE_WMS)]
    if n == 6:
        return _surfaces(Case.B, (("p", 0.9), ("m", 0.4), ("t", 8.0)), [(Output(x, "s"),) for x in "abc"])
    if n == 7:
        return [
            Panel(case, {"m": 0.0}, ("t", "p"), (Output(letter, "fidelity"),), mr=0.0)
            for case, letter in ((Case.A, "a"), (Case.B, "b"))
        ]
    if n == 8:
        panels = []
        for case, letter in ((Case.A, "a"), (Case.B, "b")):
            panels.append(Panel(case, {"p": 0.9}, ("m", "t"), (Output(letter, "fidelity"),)))
            panels.append(Panel(case, {"p": 0.9}, ("m", "t"), (Output(f"{letter}_wm", "fidelity"),),
                                protected=False))
        return panels
    raise InvalidArgumentError(f"Unknown figure {n}; choose one of {FIGURES[0]}..{FIGURES[-1]}")


def figure(
    n: int,
    out_dir: Optional[str] = None,
    p: Optional[float] = None,
    curve_points: Optional[int] = None,
    surface_points: Optional[int] = None,
    reservoir: Optional[ReservoirParams] = None,
    threads: Optional[int] = None,
) -> List[Path]:
    """
    Regenerate the CSV data behind figure n.

    Returns:
        Paths of the files written, in panel order
    """
    panels = figure_panels(n, p)
    out = Path(out_dir or settings.output_dir)
    curve_points = curve_points or settings.curve_points
    surface_points = surface_points or settings.surface_points
    if min(curve_points, surface_points) < 2:
        raise InvalidArgumentError("Figure grids need at least 2 points per axis")
    reservoir = reservoir or settings.reservoir

    logger.info(f"📈 Figure {n}: {len(panels)} panel(s), curves x{curve_points}, surfaces {surface_points}^2")
    written = []
    for panel in panels:
        rows: List[SweepRow] = run_points(_points(panel, reservoir, curve_points, surface_points), threads)
        for output in panel.outputs:
            path = out / f"fig{n}{output.suffix}.csv"
            write_csv(str(path), rows, panel.columns(output.measure))
            written.append(path)
    logger.info(f"✅ Figure {n} written to {out}")
    return written
