"""Saturation analysis of error-vs-dimension series.

A series saturates when its trailing window of values lies in a relative
band: (max - min) <= rtol * max(mean, floor).  Saturation of every Fock
state's series is evidence (not proof) that the untruncated Trotter product
converges, hence the verdict label "consistent-with-convergence".
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .trotter import ErrorSeries

DEFAULT_WINDOW = 20
DEFAULT_RTOL = 0.05
FLOOR = 1e-12

CONSISTENT = "consistent-with-convergence"
NON_SATURATING = "non-saturating"


@dataclass(frozen=True)
class PlateauVerdict:
    saturates: bool
    plateau_value: float | None
    onset_dimension: int | None
    window: int
    rtol: float
    band: tuple[float, float]  # (min, max) of the trailing window

    def as_dict(self) -> dict:
        return {
            "saturates": self.saturates,
            "plateau_value": self.plateau_value,
            "onset_dimension": self.onset_dimension,
            "window": self.window,
            "rtol": self.rtol,
        }


def _passes(chunk: np.ndarray, rtol: float) -> bool:
    return float(chunk.max() - chunk.min()) <= rtol * max(float(chunk.mean()), FLOOR)


def detect_plateau(series: ErrorSeries, window: int = DEFAULT_WINDOW,
                   rtol: float = DEFAULT_RTOL) -> PlateauVerdict:
    if window < 1:
        raise UsageError(f"window must be positive, got {window}")
    if rtol <= 0:
        raise UsageError(f"rtol must be positive, got {rtol}")
    if len(series) < 2 * window:
        raise UsageError(f"series {series.state_label!r} has {len(series)} rows; "
                         f"need at least {2 * window} for window {window}")
    vals = np.asarray(series.values, dtype=float)
    tail = vals[-window:]
    band = (float(tail.min()), float(tail.max()))
    if not _passes(tail, rtol):
        return PlateauVerdict(False, None, None, window, rtol, band)

    # onset: earliest start from which every sliding window passes
    start = len(vals) - window
    while start > 0 and _passes(vals[start - 1:start - 1 + window], rtol):
        start -= 1
    return PlateauVerdict(True, float(tail.mean()), int(series.dims[start]), window, rtol, band)


@dataclass(frozen=True)
class ProblemVerdict:
    label: str
    failing: tuple[str, ...]

    @property
    def converges(self) -> bool:
        return self.label == CONSISTENT


def classify_problem(series_per_state, window: int = DEFAULT_WINDOW,
                     rtol: float = DEFAULT_RTOL) -> ProblemVerdict:
    series_per_state = list(series_per_state)
    if not series_per_state:
        raise UsageError("need at least one series to classify")
    failing = tuple(s.state_label for s in series_per_state
                    if not detect_plateau(s, window, rtol).saturates)
    return ProblemVerdict(NON_SATURATING if failing else CONSISTENT, failing)
