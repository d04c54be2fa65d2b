"""Analytic Trotter error bounds.

eigenstate_bound          (2t^2/n) max_i ||(H_i - h/2)^2 phi||  for (H1+H2) phi = h phi
eigenstate_bound_optimized  same with the split h = alpha*h + (1-alpha)*h optimized
ho_analytic_bound         closed form of the above for H1 = Q^2/2, H2 = P^2/2, phi = |m>
commutator_uniform_bound  (t^2/2n) ||[H1, H2]||
superposition_bound       sqrt(sum |c_j|^2 b_j^2)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import UsageError

CERTIFICATE_RTOL = 1e-8
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EigenpairCertificate:
    phi: np.ndarray
    h: float
    residual: float

    @property
    def accepted(self) -> bool:
        return self.residual <= CERTIFICATE_RTOL * max(1.0, abs(self.h))


def certify(h1, h2, phi, h: float) -> EigenpairCertificate:
    """Measure ||(H1 + H2) phi - h phi|| for a candidate eigenpair."""
    phi = linalg.normalized(phi)
    total = np.asarray(h1) + np.asarray(h2)
    if total.shape[0] != phi.shape[0]:
        raise UsageError(f"eigenvector dimension {phi.shape[0]} does not match {total.shape[0]}")
    residual = linalg.vector_norm2(total @ phi - h * phi)
    return EigenpairCertificate(phi, float(h), residual)


def _require(cert: EigenpairCertificate) -> None:
    if not cert.accepted:
        raise UsageError(f"eigenpair rejected: residual {cert.residual:.3e} for h={cert.h:.6g}")


def _prefactor(t: float, n: int) -> float:
    if int(n) != n or n < 1:
        raise UsageError(f"number of Trotter steps must be a positive integer, got {n}")
    return 2.0 * t * t / n


class _SplitObjective:
    """alpha -> max(||(H1 - alpha h)^2 phi||, ||(H2 - (1 - alpha) h)^2 phi||).

    (H - x)^2 phi = H^2 phi - 2x H phi + x^2 phi, so each evaluation is O(d)
    once H phi and H^2 phi are known.
    """

    def __init__(self, h1, h2, cert: EigenpairCertificate):
        phi = cert.phi
        self.h = cert.h
        self.vecs = []
        for hm in (np.asarray(h1), np.asarray(h2)):
            hv = hm @ phi
            self.vecs.append((hm @ hv, hv, phi))

    @staticmethod
    def _norm(vecs, x: float) -> float:
        h2v, hv, phi = vecs
        return linalg.vector_norm2(h2v - 2.0 * x * hv + (x * x) * phi)

    def terms(self, alpha: float) -> tuple[float, float]:
        return (self._norm(self.vecs[0], alpha * self.h),
                self._norm(self.vecs[1], (1.0 - alpha) * self.h))

    def __call__(self, alpha: float) -> float:
        return max(self.terms(alpha))

    def quartic(self, which: int) -> np.ndarray:
        """Coefficients (highest first) of ||(H_i - x)^2 phi||^2 as a polynomial in alpha."""
        h2v, hv, phi = self.vecs[which]
        g = lambda u, v: float(np.vdot(u, v).real)  # noqa: E731
        g00, g01, g02 = g(h2v, h2v), g(h2v, hv), g(h2v, phi)
        g11, g12, g22 = g(hv, hv), g(hv, phi), g(phi, phi)
        in_x = np.array([g22, -4.0 * g12, 4.0 * g11 + 2.0 * g02, -4.0 * g01, g00])
        # substitute x = h*alpha (term 1) or x = h - h*alpha (term 2)
        lin = np.array([self.h, 0.0]) if which == 0 else np.array([-self.h, self.h])
        out = np.zeros(1)
        for c in in_x:
            out = np.polyadd(np.polymul(out, lin), [c])
        return out


@dataclass(frozen=True)
class AlphaSearchConfig:
    lo: float = -2.0
    hi: float = 3.0
    points: int = 501
    tol: float = 1e-6
    polish: bool = True

    def grid(self) -> np.ndarray:
        g = np.linspace(self.lo, self.hi, self.points)
        return np.union1d(g, [0.5])


def eigenstate_bound(h1, h2, cert: EigenpairCertificate, t: float, n: int) -> float:
    _require(cert)
    return _prefactor(t, n) * _SplitObjective(h1, h2, cert)(0.5)


def _golden(f, a: float, b: float, tol: float) -> float:
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return c if fc <= fd else d


def _real_roots(coeffs) -> list[float]:
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=float), "f")
    if coeffs.size <= 1:
        return []
    roots = np.roots(coeffs)
    scale = max(1.0, float(np.abs(roots).max()))
    return [float(r.real) for r in roots if abs(r.imag) <= 1e-7 * scale]


def _bisect_crossing(diff, a: float, b: float, iters: int = 200) -> float:
    fa = diff(a)
    for _ in range(iters):
        mid = 0.5 * (a + b)
        if mid in (a, b):
            break
        fm = diff(mid)
        if (fm <= 0.0) == (fa <= 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def _polish_candidates(obj: _SplitObjective, near: float) -> list[float]:
    """Stationary points of each term and crossings of the two terms."""
    p1, p2 = obj.quartic(0), obj.quartic(1)
    cands = _real_roots(np.polyder(p1)) + _real_roots(np.polyder(p2))
    diff = lambda a: obj.terms(a)[0] - obj.terms(a)[1]  # noqa: E731
    for r in _real_roots(np.polysub(p1, p2)) + [near]:
        width = 1e-6 * max(1.0, abs(r))
        lo, hi = r - width, r + width
        for _ in range(40):
            if (diff(lo) <= 0.0) != (diff(hi) <= 0.0):
                cands.append(_bisect_crossing(diff, lo, hi))
                break
            lo, hi = r - 2.0 * (r - lo), r + 2.0 * (hi - r)
        else:
            cands.append(r)
    return cands


def eigenstate_bound_optimized(h1, h2, cert: EigenpairCertificate, t: float, n: int,
                               search: AlphaSearchConfig | None = None) -> tuple[float, float]:
    """Minimize the split-eigenstate bound over alpha; returns (bound, alpha_star).

    A uniform grid (always containing 1/2) picks a bracket, golden-section
    refines it, and with ``search.polish`` the exact stationary and crossing
    points of the two quartic norms are also evaluated.
    """
    _require(cert)
    search = search or AlphaSearchConfig()
    obj = _SplitObjective(h1, h2, cert)
    grid = search.grid()
    vals = np.array([obj(a) for a in grid])
    k = int(np.argmin(vals))
    best_a, best_v = float(grid[k]), float(vals[k])

    if grid.size > 1:
        a = grid[max(k - 1, 0)]
        b = grid[min(k + 1, grid.size - 1)]
        g = _golden(obj, float(a), float(b), search.tol)
        if obj(g) < best_v:
            best_a, best_v = g, obj(g)
    if search.polish and obj.h != 0.0:
        for c in _polish_candidates(obj, best_a):
            v = obj(c)
            if v < best_v:
                best_a, best_v = c, v
    return _prefactor(t, n) * best_v, best_a


def ho_analytic_bound(m: int, t: float, n: int) -> float:
    """(t^2/2n) sqrt(3/8 (m(m+1)(m^2+m+14) + 10)) for H1 = Q^2/2, H2 = P^2/2, phi = |m>."""
    if int(m) != m or m < 0:
        raise UsageError(f"occupation number must be a non-negative integer, got {m}")
    _prefactor(t, n)
    m = int(m)
    return t * t / (2.0 * n) * math.sqrt(0.375 * (m * (m + 1) * (m * m + m + 14) + 10))


def superposition_bound(coeffs) -> float:
    """sqrt(sum |c_j|^2 b_j^2) from (amplitude, basis error) pairs."""
    pairs = [(complex(c), float(b)) for c, b in coeffs]
    weight = sum(abs(c) ** 2 for c, _ in pairs)
    if weight > 1.0 + 1e-12:
        raise UsageError(f"amplitudes have squared norm {weight:.15g} > 1")
    return math.sqrt(sum(abs(c) ** 2 * b * b for c, b in pairs))


def triangle_superposition_bound(coeffs) -> float:
    """sum |c_j| b_j, which always dominates || sum c_j e_j || when ||e_j|| = b_j."""
    return float(sum(abs(complex(c)) * float(b) for c, b in coeffs))


def commutator_uniform_bound(h1, h2, t: float, n: int, method: str = "jacobi") -> float:
    a, b = linalg.as_matrix(h1), linalg.as_matrix(h2)
    if a.shape != b.shape:
        raise UsageError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return _prefactor(t, n) / 4.0 * linalg.spectral_norm(a @ b - b @ a, method=method)
