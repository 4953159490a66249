"""One evaluated grid point of a sweep or figure surface."""
from dataclasses import dataclass
from typing import Tuple

from src.core.errors import NumericFailureError
from src.quantum.measures import SI_MAX

SWEEP_COLUMNS: Tuple[str, ...] = (
    "t", "g", "p", "m", "mr", "concurrence", "si", "s", "fidelity", "success_prob",
)

_RANGE_TOL = 1e-9


@dataclass(frozen=True)
class SweepRow:
    """Protocol parameters at time t and the measures of the resulting state."""

    t: float
    g: float
    p: float
    m: float
    mr: float
    concurrence: float
    si: float
    s: float
    fidelity: float
    success_prob: float

    def check(self) -> "SweepRow":
        """Raise if any measure left its documented range."""
        bounds = {
            "g": (0.0, 1.0),
            "mr": (0.0, 1.0),
            "concurrence": (0.0, 1.0),
            "si": (0.0, SI_MAX),
            "s": (0.0, 1.0),
            "fidelity": (0.0, 1.0),
            "success_prob": (0.0, 1.0),
        }
        for name, (lo, hi) in bounds.items():
            value = getattr(self, name)
            if not lo - _RANGE_TOL <= value <= hi + _RANGE_TOL:
                raise NumericFailureError(f"Row at t={self.t}: {name}={value} outside [{lo}, {hi}]")
        if self.success_prob <= 0.0:
            raise NumericFailureError(f"Row at t={self.t}: success probability {self.success_prob} is not positive")
        return self
