"""Randomized check of the eigenstate bound on small Hermitian pairs."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import bounds, linalg
from ..trotter import TrotterProblem, state_error

TIMES = (0.1, 0.5, 1.0, 2.0)
STEPS = (1, 2, 5, 10, 100)
ATOL = 1e-10


def random_hermitian(rng: np.random.Generator, d: int, scale: float = 1.0) -> np.ndarray:
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return linalg.hermitian(scale * (m + m.conj().T) / 2.0)


@dataclass
class VerifyReport:
    seed: int
    trials: int
    max_dim: int
    checks: int = 0
    violations: list = field(default_factory=list)
    optimized_violations: list = field(default_factory=list)
    max_ratio: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.optimized_violations


def verify(max_dim: int = 8, trials: int = 200, seed: int = 0,
           times=TIMES, steps=STEPS, method: str = "jacobi") -> VerifyReport:
    """For each random pair and every eigenvector of the sum, check
    state_error <= eigenstate_bound + ATOL over all (t, n), and that the
    alpha-optimized bound never exceeds the alpha = 1/2 bound."""
    rng = np.random.default_rng(seed)
    report = VerifyReport(seed, trials, max_dim)
    for trial in range(trials):
        d = int(rng.integers(1, max_dim + 1))
        scale = float(np.exp(rng.uniform(-1.0, 1.0)))
        h1 = random_hermitian(rng, d, scale)
        h2 = random_hermitian(rng, d, scale)
        prob = TrotterProblem.from_matrices(h1, h2, method=method)
        vecs = prob.spec_sum.eigenvectors
        certs = [bounds.certify(h1, h2, vecs[:, k], prob.spec_sum.eigenvalues[k]) for k in range(d)]

        for k, cert in enumerate(certs):
            plain = bounds.eigenstate_bound(h1, h2, cert, 1.0, 1)
            opt, _ = bounds.eigenstate_bound_optimized(h1, h2, cert, 1.0, 1)
            if opt > plain:
                report.optimized_violations.append((trial, k, opt, plain))

        for t in times:
            for n in steps:
                errs = np.atleast_1d(state_error(prob, t, n, vecs))
                for k, cert in enumerate(certs):
                    bound = bounds.eigenstate_bound(h1, h2, cert, t, n)
                    report.checks += 1
                    if errs[k] > bound + ATOL:
                        report.violations.append((trial, k, t, n, float(errs[k]), bound))
                    if bound > 0.0:
                        report.max_ratio = max(report.max_ratio, float(errs[k]) / bound)
    return report
