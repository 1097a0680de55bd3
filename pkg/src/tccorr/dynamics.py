"""Exact resonant Tavis-Cummings evolution inside one excitation manifold.

The manifold with index ``n`` is spanned, in this order, by

    |++, n-1>,  |+-, n>,  |-+, n>,  |--, n+1>

(two-level-system labels, then photon number).  Time is dimensionless,
``tau = t * Omega_R`` with ``Omega_R = g * sqrt(4n + 2)``, so every observable
has period 1 in ``tau``.  The global phase ``exp(-i omega n t)`` of the
propagator is dropped; it cancels in ``U rho U^dagger``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InputError
from .qmatrix import check_density, dagger

BASIS_LABELS = ("|++>_{n-1}", "|+->_n", "|-+>_n", "|-->_{n+1}")


def check_manifold(n) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"manifold index must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise DomainError(f"manifold index must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class TCParams:
    """Coupling ``g`` and the common TLS/field frequency ``omega`` (resonance).

    ``omega`` is kept for completeness only; no observable depends on it.
    """

    g: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        if not self.g > 0:
            raise DomainError(f"coupling g must be positive, got {self.g}")

    def rabi_frequency(self, n: int) -> float:
        return self.g * np.sqrt(4 * check_manifold(n) + 2)

    def rabi_period(self, n: int) -> float:
        return 1.0 / self.rabi_frequency(n)

    def to_tau(self, t, n: int):
        """Physical time -> dimensionless time in units of the Rabi period."""
        return np.asarray(t) * self.rabi_frequency(n)

    def to_time(self, tau, n: int):
        return np.asarray(tau) / self.rabi_frequency(n)


@dataclass(frozen=True)
class ManifoldDensity:
    """Density matrix of the two TLS plus field, restricted to manifold ``n``."""

    rho: np.ndarray = field(repr=False)
    n: int

    def __post_init__(self):
        object.__setattr__(self, "n", check_manifold(self.n))
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise InputError(f"manifold density must be 4x4, got {rho.shape}")
        object.__setattr__(self, "rho", check_density(rho))

    @classmethod
    def from_amplitudes(cls, amps, n: int) -> "ManifoldDensity":
        v = np.asarray(amps, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()), n)

    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)


def _blocks(n: int, tau):
    tau = np.asarray(tau, dtype=float)
    if not np.all(np.isfinite(tau)):
        raise InputError("tau must be finite")
    c1 = np.cos(2 * np.pi * tau) - 1.0
    c2 = np.sin(2 * np.pi * tau)
    return tau, c1, c2


def unitaries(n: int, taus) -> np.ndarray:
    """Stack of manifold propagators, shape ``taus.shape + (4, 4)``."""
    n = check_manifold(n)
    tau, c1, c2 = _blocks(n, taus)
    d = 2 * n + 1
    sn = np.sqrt(n)
    snp = np.sqrt(n + 1)
    snn = np.sqrt(n * (n + 1.0))
    s = np.sqrt(2.0 * d)

    u = np.empty(tau.shape + (4, 4), dtype=complex)
    a = -1j * sn * c2 / s
    b = -1j * snp * c2 / s
    corner = snn * c1 / d
    u[..., 0, 0] = 1 + n * c1 / d
    u[..., 0, 1] = a
    u[..., 0, 2] = a
    u[..., 0, 3] = corner
    u[..., 1, 0] = a
    u[..., 1, 1] = 1 + c1 / 2
    u[..., 1, 2] = c1 / 2
    u[..., 1, 3] = b
    u[..., 2, 0] = a
    u[..., 2, 1] = c1 / 2
    u[..., 2, 2] = 1 + c1 / 2
    u[..., 2, 3] = b
    u[..., 3, 0] = corner
    u[..., 3, 1] = b
    u[..., 3, 2] = b
    u[..., 3, 3] = 1 + (n + 1) * c1 / d
    return u


def build_unitary(n: int, tau: float) -> np.ndarray:
    """Propagator of manifold ``n`` at dimensionless time ``tau`` (4x4, unitary)."""
    if np.ndim(tau) != 0:
        raise InputError("build_unitary takes a scalar tau; use unitaries() for arrays")
    return unitaries(n, float(tau))


def evolve(rho0: ManifoldDensity, tau: float) -> ManifoldDensity:
    u = build_unitary(rho0.n, tau)
    return ManifoldDensity(u @ rho0.rho @ u.conj().T, rho0.n)


def evolve_many(rho0: ManifoldDensity, taus, n: int | None = None) -> np.ndarray:
    """Evolved 4x4 matrices for every tau, without per-point validation.

    ``n`` overrides the manifold used for the dynamics while keeping the
    basis amplitudes of ``rho0``; the discord gate relies on this.
    """
    u = unitaries(rho0.n if n is None else n, taus)
    return u @ rho0.rho @ dagger(u)
