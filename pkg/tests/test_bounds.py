import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trotterlab import bounds, fock, linalg, trotter
from trotterlab.bounds import AlphaSearchConfig
from trotterlab.errors import UsageError
from trotterlab.trotter import TrotterProblem

from conftest import SX, SZ, random_hermitian

HALF_Q2 = fock.get_builtin("half_q2")
HALF_P2 = fock.get_builtin("half_p2")


def _top_cert(h1, h2):
    dec = linalg.eig_hermitian(h1 + h2)
    return bounds.certify(h1, h2, dec.eigenvectors[:, -1], dec.eigenvalues[-1])


def test_pauli_eigenstate_bound():
    # ||(1.5 - sqrt2 X) phi||^2 = 1.25 on the top eigenvector of X + Z, so b = t^2 sqrt5 / n
    cert = _top_cert(SX, SZ)
    assert bounds.eigenstate_bound(SX, SZ, cert, 0.5, 10) == pytest.approx(0.25 * math.sqrt(5) / 10, rel=1e-12)


def test_rejects_non_eigenvector():
    cert = bounds.certify(SX, SZ, np.array([1, 0]), 1.0)
    assert not cert.accepted
    with pytest.raises(UsageError):
        bounds.eigenstate_bound(SX, SZ, cert, 1.0, 1)
    with pytest.raises(UsageError):
        bounds.eigenstate_bound_optimized(SX, SZ, cert, 1.0, 1)


def test_bound_zero_at_t_zero():
    assert bounds.eigenstate_bound(SX, SZ, _top_cert(SX, SZ), 0.0, 3) == 0.0
    assert bounds.ho_analytic_bound(3, 0.0, 10) == 0.0


def test_ho_bound_values():
    assert bounds.ho_analytic_bound(0, 1, 1000) == pytest.approx(math.sqrt(3 / 5) / 800, rel=1e-12)
    assert bounds.ho_analytic_bound(1, 1, 1000) == pytest.approx(3 * math.sqrt(7) / 4000, rel=1e-12)
    with pytest.raises(UsageError):
        bounds.ho_analytic_bound(-1, 1, 10)
    with pytest.raises(UsageError):
        bounds.ho_analytic_bound(0, 1, 0)


@pytest.mark.parametrize("m", range(11))
def test_ho_bound_equals_truncated_eigenstate_bound(m):
    d = m + 6
    h1, h2 = fock.truncate_polynomial(HALF_Q2, d), fock.truncate_polynomial(HALF_P2, d)
    cert = bounds.certify(h1, h2, fock.fock_state(m, d), m + 0.5)
    assert cert.accepted
    assert bounds.eigenstate_bound(h1, h2, cert, 1.3, 7) == pytest.approx(
        bounds.ho_analytic_bound(m, 1.3, 7), abs=1e-10)


@pytest.mark.parametrize("m", range(5))
def test_ho_bound_dominates_every_truncation(m):
    for d in range(m + 1, m + 12):
        prob = TrotterProblem.from_polynomials(HALF_Q2, HALF_P2, d)
        err = trotter.state_error(prob, 1.0, 20, fock.fock_state(m, d))
        assert err <= bounds.ho_analytic_bound(m, 1.0, 20) + 1e-10


def test_optimized_grid_contains_half():
    assert 0.5 in AlphaSearchConfig().grid()
    assert 0.5 in AlphaSearchConfig(points=4).grid()


@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6))
def test_optimized_never_worse(seed, d):
    rng = np.random.default_rng(seed)
    h1, h2 = random_hermitian(rng, d), random_hermitian(rng, d)
    cert = _top_cert(h1, h2)
    opt, alpha = bounds.eigenstate_bound_optimized(h1, h2, cert, 1.0, 3)
    assert opt <= bounds.eigenstate_bound(h1, h2, cert, 1.0, 3)
    assert np.isfinite(alpha)


@given(seed=st.integers(0, 2**32 - 1), a=st.floats(-5, 5), b=st.floats(-5, 5))
def test_optimized_shift_covariance(seed, a, b):
    rng = np.random.default_rng(seed)
    d = 4
    h1, h2 = random_hermitian(rng, d), random_hermitian(rng, d)
    dec = linalg.eig_hermitian(h1 + h2)
    phi, h = dec.eigenvectors[:, 0], dec.eigenvalues[0]
    base, _ = bounds.eigenstate_bound_optimized(h1, h2, bounds.certify(h1, h2, phi, h), 1.0, 1)
    g1, g2 = h1 + a * np.eye(d), h2 + b * np.eye(d)
    shifted, _ = bounds.eigenstate_bound_optimized(g1, g2, bounds.certify(g1, g2, phi, h + a + b), 1.0, 1)
    assert abs(base - shifted) <= 1e-9


def test_superposition_bound_arithmetic():
    assert bounds.superposition_bound([(1, 0.3)]) == pytest.approx(0.3)
    r = 1 / math.sqrt(2)
    assert bounds.superposition_bound([(r, 0.3), (r, 0.4)]) == pytest.approx(math.sqrt(0.125), rel=1e-12)
    assert bounds.superposition_bound([(0.6, 0.0), (0.8j, 0.0)]) == 0.0
    with pytest.raises(UsageError):
        bounds.superposition_bound([(1, 0.1), (0.5, 0.1)])


@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 6))
def test_triangle_superposition_bound_dominates(seed, d):
    rng = np.random.default_rng(seed)
    prob = TrotterProblem.from_matrices(random_hermitian(rng, d), random_hermitian(rng, d))
    c = rng.normal(size=d) + 1j * rng.normal(size=d)
    c /= np.linalg.norm(c)
    basis = trotter.state_error(prob, 1.0, 2, np.eye(d))
    err = trotter.state_error(prob, 1.0, 2, c)
    assert err <= bounds.triangle_superposition_bound(zip(c, basis)) + 1e-10


def test_commutator_bound_pauli():
    assert bounds.commutator_uniform_bound(SX, SZ, 0.5, 10) == pytest.approx(0.025, rel=1e-12)
    assert bounds.commutator_uniform_bound(SZ, 3 * SZ, 1.0, 1) < 1e-12


def test_commutator_bound_dominates_uniform_error(rng):
    for _ in range(10):
        h1, h2 = random_hermitian(rng, 5), random_hermitian(rng, 5)
        prob = TrotterProblem.from_matrices(h1, h2)
        assert trotter.uniform_error(prob, 0.7, 6) <= bounds.commutator_uniform_bound(h1, h2, 0.7, 6) + 1e-12


def test_commutator_bound_grows_for_q_p():
    vals = [bounds.commutator_uniform_bound(fock.position_matrix(d), fock.momentum_matrix(d), 1.0, 1)
            for d in (10, 50, 100)]
    assert vals[0] < vals[1] < vals[2]
