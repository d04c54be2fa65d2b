"""Trotter evolution on truncated Hamiltonians and the associated error functionals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fock, linalg
from .errors import UsageError
from .linalg import SpectralDecomposition


@dataclass(frozen=True)
class TrotterProblem:
    """Two Hermitian generators on one space, with their sum pre-diagonalized."""

    h1: np.ndarray
    h2: np.ndarray
    spec1: SpectralDecomposition
    spec2: SpectralDecomposition
    spec_sum: SpectralDecomposition

    @classmethod
    def from_matrices(cls, h1, h2, method: str = "jacobi") -> "TrotterProblem":
        h1 = linalg.hermitian(h1)
        h2 = linalg.hermitian(h2)
        if h1.shape != h2.shape:
            raise UsageError(f"h1 and h2 differ in dimension: {h1.shape} vs {h2.shape}")
        return cls(h1, h2,
                   linalg.eig_hermitian(h1, method=method),
                   linalg.eig_hermitian(h2, method=method),
                   linalg.eig_hermitian(h1 + h2, method=method))

    @classmethod
    def from_polynomials(cls, p1: fock.LadderPolynomial, p2: fock.LadderPolynomial, d: int,
                         method: str = "jacobi") -> "TrotterProblem":
        return cls.from_matrices(fock.truncate_polynomial(p1, d), fock.truncate_polynomial(p2, d),
                                 method=method)

    @property
    def dim(self) -> int:
        return self.h1.shape[0]

    def step_unitaries(self, t: float, n: int) -> tuple[np.ndarray, np.ndarray]:
        _check_steps(n)
        return self.spec1.propagator(t / n), self.spec2.propagator(t / n)

    def exact(self, t: float, psi) -> np.ndarray:
        return linalg.evolve_state(self.spec_sum, t, psi)


def _check_steps(n: int) -> None:
    if int(n) != n or n < 1:
        raise UsageError(f"number of Trotter steps must be a positive integer, got {n}")


def _as_states(prob: TrotterProblem, psi) -> np.ndarray:
    x = np.asarray(psi, dtype=np.complex128)
    if x.shape[0] != prob.dim:
        raise UsageError(f"state has dimension {x.shape[0]}, problem has {prob.dim}")
    return x


def trotter_state(prob: TrotterProblem, t: float, n: int, psi) -> np.ndarray:
    """(e^{-i t H1/n} e^{-i t H2/n})^n psi; the H2 step acts first.

    ``psi`` may also be a (d, k) stack of column states.
    """
    x = _as_states(prob, psi)
    u1, u2 = prob.step_unitaries(t, n)
    for _ in range(int(n)):
        x = u1 @ (u2 @ x)
    return x


def state_error(prob: TrotterProblem, t: float, n: int, psi) -> float | np.ndarray:
    """|| (W^(n)(t) - U(t)) psi ||.  Returns one value per column for stacked states."""
    x = _as_states(prob, psi)
    diff = trotter_state(prob, t, n, x) - prob.exact(t, x)
    return np.linalg.norm(diff, axis=0) if diff.ndim == 2 else linalg.vector_norm2(diff)


def trotter_matrix(prob: TrotterProblem, t: float, n: int) -> np.ndarray:
    u1, u2 = prob.step_unitaries(t, n)
    return np.linalg.matrix_power(u1 @ u2, int(n))


def uniform_error(prob: TrotterProblem, t: float, n: int, method: str = "jacobi") -> float:
    """Operator-norm distance between the Trotter product and exp(-i t (H1 + H2))."""
    diff = trotter_matrix(prob, t, n) - prob.spec_sum.propagator(t)
    return linalg.spectral_norm(diff, method=method)


@dataclass(frozen=True)
class ErrorSeries:
    """Trotter error of one state across truncation dimensions."""

    state_label: str
    trotter_steps: int
    time: float
    dims: tuple
    values: tuple

    def __post_init__(self):
        if len(self.dims) != len(self.values):
            raise UsageError("dims and values must have equal length")
        if any(b <= a for a, b in zip(self.dims, self.dims[1:])):
            raise UsageError("series dimensions must be strictly increasing")

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def rows(self) -> list[tuple[int, float]]:
        return list(zip(self.dims, self.values))

    def scaled(self, c: float) -> "ErrorSeries":
        return ErrorSeries(self.state_label, self.trotter_steps, self.time, self.dims,
                           tuple(c * v for v in self.values))


def fock_label(m: int) -> str:
    return f"m{m}"


def error_series(h1_poly, h2_poly, m: int, t: float, n: int, d_list: Sequence[int],
                 method: str = "jacobi") -> ErrorSeries:
    """b_d^(n)(|m>; t) for every d in ``d_list`` (ascending, all > m)."""
    _check_steps(n)
    dims = [int(d) for d in d_list]
    if not dims:
        raise UsageError("empty dimension list")
    if m >= dims[0]:
        raise UsageError(f"|{m}> is outside the smallest truncation d={dims[0]}")
    values = []
    for d in dims:
        prob = TrotterProblem.from_polynomials(h1_poly, h2_poly, d, method=method)
        values.append(float(state_error(prob, t, n, fock.fock_state(m, d))))
    return ErrorSeries(fock_label(m), int(n), float(t), tuple(dims), tuple(values))


def tail_error_estimate(series: ErrorSeries, window: int = 20) -> float:
    """Largest of the last ``window`` values: a finite stand-in for limsup over d."""
    if window < 1 or window > len(series):
        raise UsageError(f"window {window} does not fit a series of {len(series)} rows")
    return max(series.values[-window:])
