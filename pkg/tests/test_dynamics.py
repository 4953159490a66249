"""Tests for death/revival detection and the revival-without-steering behaviour."""
import numpy as np
import pytest

from src.config import SweepConfig
from src.core.errors import InvalidArgumentError
from src.protocol.dynamics import positive_intervals, revival_report
from src.sweep.runner import sweep_rows


def test_positive_intervals_runs():
    """Each run of positive values becomes one interval."""
    ts = np.arange(7.0)
    values = [1.0, 1.0, 0.0, 0.0, 2.0, 0.0, 3.0]
    assert positive_intervals(ts, values) == [(0.0, 1.0), (4.0, 4.0), (6.0, 6.0)]


def test_positive_intervals_floor():
    """Values at or below the floor end a run."""
    ts = np.arange(5.0)
    values = [0.5, 1e-4, 0.5, 0.5, 0.0]
    assert positive_intervals(ts, values, floor=1e-3) == [(0.0, 0.0), (2.0, 3.0)]
    assert positive_intervals(ts, values) == [(0.0, 3.0)]


def test_positive_intervals_shape_mismatch():
    """Test that mismatched lengths raise."""
    with pytest.raises(InvalidArgumentError):
        positive_intervals([0.0, 1.0], [1.0])


def test_report_flags():
    """Revival flags read off the interval counts."""
    ts = np.arange(8.0)
    report = revival_report(
        ts,
        concurrence=[1, 1, 0, 1, 1, 0, 1, 0],
        steering=[1, 0, 0, 0, 0, 0, 0, 0],
    )
    assert report.concurrence_revives
    assert not report.steering_revives
    assert not report.steering_during_revivals()


@pytest.fixture(scope="module")
def baseline_rows():
    """Case A, p = 0.8, no WM/WMR, t in [0, 30] on 3000 points."""
    config = SweepConfig(case="a", p=0.8, m=0.0, mr=0.0, t_start=0.0, t_end=30.0, t_steps=3000)
    return sweep_rows(config, threads=1)


def test_entanglement_revives_but_steering_does_not(baseline_rows):
    """Concurrence dies and revives; steering never returns once lost."""
    ts = [row.t for row in baseline_rows]
    report = revival_report(
        ts,
        [row.concurrence for row in baseline_rows],
        [row.s for row in baseline_rows],
        floor=1e-3,
    )
    assert len(report.concurrence_intervals) >= 2
    assert len(report.steering_intervals) == 1
    assert report.steering_intervals[0][0] == 0.0
    assert not report.steering_during_revivals()

    first_loss = next(row.t for row in baseline_rows if row.s == 0.0)
    assert all(row.s == 0.0 for row in baseline_rows if row.t >= first_loss)


def test_entangled_but_unsteerable_points_exist(baseline_rows):
    """Some points are entangled without being steerable."""
    assert any(row.concurrence > 0.0 and row.s == 0.0 for row in baseline_rows)
