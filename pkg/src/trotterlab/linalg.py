"""Dense complex linear algebra: Hermitian eigensolver, unitary evolution, norms.

Matrices and states are plain numpy arrays. Functions here never mutate
their inputs; arrays they return are marked read-only where they are meant
to be shared (Hermitian matrices, spectral decompositions).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import NumericalError, UsageError

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise UsageError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def hermitian(a) -> np.ndarray:
    """Return (A + A^dagger)/2 as a read-only complex array.

    Rounding in products of truncated operators leaves ~1e-16 asymmetry;
    symmetrizing is cheaper than rejecting it.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise UsageError(f"Hermitian matrix must be square and non-empty, got {m.shape}")
    return _frozen(0.5 * (m + m.conj().T))


def is_hermitian(a, atol: float = 1e-12) -> bool:
    m = as_matrix(a)
    return m.shape[0] == m.shape[1] and bool(np.all(np.abs(m - m.conj().T) <= atol))


def normalized(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=np.complex128)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise UsageError("cannot normalize the zero vector")
    return v / nrm


def _check_inner(a_cols: int, b_rows: int, what: str) -> None:
    if a_cols != b_rows:
        raise UsageError(f"{what}: dimension mismatch ({a_cols} vs {b_rows})")


def matvec(a, psi) -> np.ndarray:
    m = as_matrix(a)
    v = np.asarray(psi, dtype=np.complex128)
    _check_inner(m.shape[1], v.shape[0], "matvec")
    return m @ v


def matmul(a, b) -> np.ndarray:
    m, n = as_matrix(a), as_matrix(b)
    _check_inner(m.shape[1], n.shape[0], "matmul")
    return m @ n


def vector_norm2(psi) -> float:
    v = np.asarray(psi, dtype=np.complex128).ravel()
    return float(math.sqrt(np.vdot(v, v).real))


@numba.njit(cache=True, nogil=True)
def _jacobi_kernel(a, tol, max_sweeps):
    # Cyclic complex Jacobi.  Only the upper triangle of `a` is read or
    # written.  Rows of `vt` hold the conjugated eigenvectors so that every
    # accumulation touches contiguous memory.
    n = a.shape[0]
    vt = np.eye(n, dtype=np.complex128)
    fro2 = 0.0
    for i in range(n):
        fro2 += a[i, i].real ** 2
        for j in range(i + 1, n):
            fro2 += 2.0 * (a[i, j].real ** 2 + a[i, j].imag ** 2)
    target = tol * math.sqrt(fro2)
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off2 += a[i, j].real ** 2 + a[i, j].imag ** 2
        off = math.sqrt(2.0 * off2)
        if off <= target:
            return vt, sweep, off
        if sweep == max_sweeps:
            break
        # Rutishauser threshold: skip small pivots during the first sweeps
        thresh = 0.2 * off / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag == 0.0 or ag < thresh:
                    continue
                e = g / ag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * ag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                se = s * e
                sec = s * e.conjugate()
                # row p <- c*row_p - se*row_q ; row q <- sec*row_p + c*row_q
                for k in range(p):
                    x = a[k, p].conjugate()
                    y = a[k, q].conjugate()
                    a[k, p] = (c * x - se * y).conjugate()
                    a[k, q] = (sec * x + c * y).conjugate()
                for k in range(p + 1, q):
                    x = a[p, k]
                    y = a[k, q].conjugate()
                    a[p, k] = c * x - se * y
                    a[k, q] = (sec * x + c * y).conjugate()
                for k in range(q + 1, n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x - se * y
                    a[q, k] = sec * x + c * y
                a[p, p] = app - t * ag
                a[q, q] = aqq + t * ag
                a[p, q] = 0.0
                for k in range(n):
                    x = vt[p, k]
                    y = vt[q, k]
                    vt[p, k] = c * x - se * y
                    vt[q, k] = sec * x + c * y
    return vt, -1, off


@dataclass(frozen=True)
class SpectralDecomposition:
    """H = V diag(eigenvalues) V^dagger with eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def propagator(self, t: float) -> np.ndarray:
        """Dense matrix exp(-i t H)."""
        v = self.eigenvectors
        return (v * np.exp(-1j * t * self.eigenvalues)) @ v.conj().T

    def evolve(self, t: float, psi) -> np.ndarray:
        return evolve_state(self, t, psi)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(h, method: str = "jacobi", tol: float = JACOBI_TOL,
                  max_sweeps: int = JACOBI_MAX_SWEEPS) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    ``method="jacobi"`` (default) runs cyclic Jacobi rotations until the
    off-diagonal Frobenius mass drops below ``tol * ||H||_F``; it raises
    NumericalError carrying the residual when ``max_sweeps`` is exhausted.
    ``method="lapack"`` defers to numpy's ``eigh``.
    """
    m = hermitian(h)
    n = m.shape[0]
    if method == "lapack":
        w, v = np.linalg.eigh(m)
        return SpectralDecomposition(_frozen(w.astype(np.float64)), _frozen(v.astype(np.complex128)))
    if method != "jacobi":
        raise UsageError(f"unknown eigensolver {method!r}")

    a = np.array(m, dtype=np.complex128, order="C")
    vt, sweeps, off = _jacobi_kernel(a, tol, max_sweeps)
    if sweeps < 0:
        raise NumericalError(
            f"Jacobi did not converge in {max_sweeps} sweeps (dim {n}, off-diagonal mass {off:.3e})",
            residual=off,
        )
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    v = vt.conj().T[:, order]
    return SpectralDecomposition(_frozen(w[order]), _frozen(np.ascontiguousarray(v)), sweeps)


def evolve_state(decomp: SpectralDecomposition, t: float, psi) -> np.ndarray:
    """V diag(exp(-i t lambda)) V^dagger psi.  psi may be a vector or a stack of columns."""
    v = decomp.eigenvectors
    x = np.asarray(psi, dtype=np.complex128)
    _check_inner(v.shape[0], x.shape[0], "evolve_state")
    phases = np.exp(-1j * t * decomp.eigenvalues)
    coeff = v.conj().T @ x
    if coeff.ndim == 1:
        coeff = phases * coeff
    else:
        coeff = phases[:, None] * coeff
    return v @ coeff


def spectral_norm(a, method: str = "jacobi") -> float:
    """Largest singular value, from the top eigenvalue of A^dagger A."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    gram = m.conj().T @ m
    top = eig_hermitian(gram, method=method).eigenvalues[-1]
    return float(math.sqrt(max(top, 0.0)))
