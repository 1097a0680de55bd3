import numpy as np
import pytest
from hypothesis import given
from scipy.linalg import expm

from tccorr.dynamics import (ManifoldDensity, TCParams, build_unitary, evolve, evolve_many,
                             unitaries)
from tccorr.errors import DomainError, InputError
from tccorr.families import Family, FamilySpec, make_state

from conftest import manifolds, taus


def manifold_hamiltonian(n: int) -> np.ndarray:
    """Interaction-picture coupling in {|++,n-1>, |+-,n>, |-+,n>, |--,n+1>}, g = 1."""
    h = np.zeros((4, 4))
    h[0, 1] = h[0, 2] = np.sqrt(n)
    h[1, 3] = h[2, 3] = np.sqrt(n + 1)
    return h + h.T


@pytest.mark.parametrize("n", [1, 2, 7, 100])
def test_propagator_matches_matrix_exponential(n):
    # tau is time in units of 1/Omega_R with Omega_R = g sqrt(4n+2), but the
    # closed form oscillates as 2 pi tau: one unit of tau is one Rabi period
    h = manifold_hamiltonian(n)
    omega = np.sqrt(4 * n + 2)
    for tau in (0.0, 0.13, 0.5, 0.77):
        t = 2 * np.pi * tau / omega
        np.testing.assert_allclose(build_unitary(n, tau), expm(-1j * h * t), atol=1e-12)


@given(manifolds, taus)
def test_unitarity(n, tau):
    u = build_unitary(n, tau)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-12)


@given(manifolds, taus, taus)
def test_group_property(n, t1, t2):
    np.testing.assert_allclose(build_unitary(n, t1) @ build_unitary(n, t2),
                               build_unitary(n, t1 + t2), atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 1000])
def test_full_period_is_identity(n):
    np.testing.assert_allclose(build_unitary(n, 1.0), np.eye(4), atol=1e-12)
    np.testing.assert_allclose(build_unitary(n, 0.0), np.eye(4), atol=0)


def test_batched_propagators_match_scalar():
    ts = np.linspace(0, 1, 17)
    stack = unitaries(4, ts)
    for t, u in zip(ts, stack):
        np.testing.assert_allclose(u, build_unitary(4, t), atol=1e-14)


def test_evolution_preserves_trace_and_positivity():
    rho0 = make_state(FamilySpec(Family.ALI, 0.4, 2))
    out = evolve_many(rho0, np.linspace(0, 1, 101))
    np.testing.assert_allclose(np.trace(out, axis1=1, axis2=2).real, 1.0, atol=1e-12)
    assert np.linalg.eigvalsh(out).min() > -1e-12


def test_evolve_returns_validated_density():
    rho0 = make_state(FamilySpec(Family.PHI_PLUS, 0.3, 1))
    r = evolve(rho0, 0.37)
    assert isinstance(r, ManifoldDensity) and r.n == 1
    assert r.purity() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("bad", [0, -1, 1.5, "2"])
def test_bad_manifold_rejected(bad):
    with pytest.raises((DomainError, InputError)):
        build_unitary(bad, 0.1)


def test_non_finite_time_rejected():
    with pytest.raises(InputError):
        build_unitary(1, np.inf)


def test_time_conversion_roundtrip():
    p = TCParams(g=0.3)
    assert p.rabi_frequency(2) == pytest.approx(0.3 * np.sqrt(10))
    assert p.to_time(p.to_tau(1.7, 2), 2) == pytest.approx(1.7)
