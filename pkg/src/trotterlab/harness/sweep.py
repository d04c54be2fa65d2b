"""Run a SweepConfig over its dimension grid."""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import bounds, diagnostics
from ..errors import NumericalError
from ..trotter import ErrorSeries, TrotterProblem, fock_label, state_error, uniform_error
from .config import STATE_ERROR, SweepConfig

log = logging.getLogger(__name__)

THREADS_ENV = "TROTTERLAB_THREADS"
UNIFORM_LABEL = "uniform"
INSUFFICIENT = "insufficient-data"


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
    return os.cpu_count() or 1


@dataclass
class SweepResult:
    config: SweepConfig
    series: dict[str, ErrorSeries]
    verdicts: dict[str, diagnostics.PlateauVerdict | None]
    overall: str | None
    failing: tuple[str, ...] = ()
    seconds: float = 0.0
    bounds: dict[str, float] = field(default_factory=dict)

    @property
    def labels(self) -> list[str]:
        return list(self.series)


def _evaluate_dimension(config: SweepConfig, d: int, method: str) -> np.ndarray:
    try:
        prob = TrotterProblem.from_polynomials(config.h1, config.h2, d, method=method)
        if config.mode == STATE_ERROR:
            present = [m for m in config.states if m < d]
            cols = np.zeros((d, len(present)), dtype=np.complex128)
            cols[present, np.arange(len(present))] = 1.0
            out = np.full(len(config.states), np.nan)
            out[[config.states.index(m) for m in present]] = state_error(prob, config.t, config.trotter_steps, cols)
            return out
        return np.array([uniform_error(prob, config.t, config.trotter_steps, method=method)])
    except NumericalError as exc:
        raise NumericalError(f"d={d}: {exc}", residual=exc.residual) from exc


def run_sweep(config: SweepConfig, threads: int | None = None, method: str = "jacobi") -> SweepResult:
    """Evaluate every grid dimension; results are assembled in ascending d.

    Dimensions are independent, so they are mapped over a thread pool
    (``TROTTERLAB_THREADS`` caps its size); the Jacobi kernel releases the GIL.
    """
    start = time.perf_counter()
    dims = config.dims
    workers = threads or thread_count()
    if workers > 1 and len(dims) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda d: _evaluate_dimension(config, d, method), dims))
    else:
        rows = [_evaluate_dimension(config, d, method) for d in dims]
    table = np.vstack(rows)

    labels = [fock_label(m) for m in config.states] if config.mode == STATE_ERROR else [UNIFORM_LABEL]
    series = {}
    for j, label in enumerate(labels):
        keep = ~np.isnan(table[:, j])
        series[label] = ErrorSeries(label, config.trotter_steps, config.t,
                                    tuple(int(d) for d, k in zip(dims, keep) if k),
                                    tuple(float(v) for v in table[keep, j]))

    verdicts: dict = {}
    overall = None
    failing: tuple = ()
    if config.mode == STATE_ERROR:
        for label, s in series.items():
            enough = len(s) >= 2 * config.window
            verdicts[label] = diagnostics.detect_plateau(s, config.window, config.rtol) if enough else None
        if all(v is not None for v in verdicts.values()):
            pv = diagnostics.classify_problem(series.values(), config.window, config.rtol)
            overall, failing = pv.label, pv.failing
        else:
            overall = INSUFFICIENT

    overlay = {}
    if config.bound_overlay:
        overlay = {fock_label(m): bounds.ho_analytic_bound(m, config.t, config.trotter_steps)
                   for m in config.states}
    return SweepResult(config, series, verdicts, overall, failing,
                       time.perf_counter() - start, overlay)

