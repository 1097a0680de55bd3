"""Small dense Hermitian linear algebra: spectra, entropies, partial traces.

Everything here works on 2x2 and 4x4 matrices; stacked inputs of shape
``(..., d, d)`` are accepted by the batched helpers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import InputError, StateError

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-8
ENTROPY_CLIP = 1e-12


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues in descending order, optionally with eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def reconstruct(self) -> np.ndarray:
        if self.eigenvectors is None:
            raise InputError("spectrum was computed without eigenvectors")
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.conj().T


def _as_square(m, dims=(2, 4)) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] not in dims:
        raise InputError(f"expected square matrix of size {dims}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.conj(m), -1, -2)


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + dagger(m))


def eig_hermitian(m, vectors: bool = False) -> HermitianSpectrum:
    """Spectrum of the Hermitian part of a 2x2 or 4x4 matrix.

    The input is symmetrized as ``(M + M^dagger)/2`` before LAPACK's Hermitian
    solver runs, so tiny asymmetries from floating-point products are ignored.
    """
    a = hermitian_part(_as_square(m))
    if vectors:
        w, v = np.linalg.eigh(a)
        return HermitianSpectrum(w[..., ::-1].copy(), v[..., ::-1].copy())
    w = np.linalg.eigvalsh(a)
    return HermitianSpectrum(w[..., ::-1].copy())


def check_density(rho, tol: float = TRACE_TOL) -> np.ndarray:
    """Validate a single density matrix and return it as a complex array."""
    a = _as_square(rho)
    if a.ndim != 2:
        raise InputError("check_density takes a single matrix")
    if np.abs(a - dagger(a)).max() > HERMITIAN_TOL:
        raise StateError("matrix is not Hermitian")
    tr = np.trace(a).real
    if abs(tr - 1.0) > tol:
        raise StateError(f"trace {tr!r} differs from 1")
    lo = np.linalg.eigvalsh(hermitian_part(a))[0]
    if lo < -NEGATIVE_EIG_TOL:
        raise StateError(f"negative eigenvalue {lo:.3e}")
    return a


def entropy_from_eigenvalues(w) -> np.ndarray:
    """Shannon entropy in bits along the last axis, with 0 log 0 = 0."""
    w = np.asarray(w, dtype=float)
    w = np.where(w < ENTROPY_CLIP, 0.0, w)
    # an eigenvalue of 1 + eps would otherwise give a tiny negative entropy
    return np.maximum(-xlogy(w, w).sum(axis=-1) / np.log(2.0), 0.0)


def von_neumann_entropy(rho, validate: bool = True) -> float:
    """Von Neumann entropy ``-tr(rho log2 rho)`` of a 2x2 or 4x4 density matrix."""
    a = _as_square(rho)
    w = np.linalg.eigvalsh(hermitian_part(a))
    if validate:
        tr = w.sum()
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateError(f"trace {tr!r} differs from 1")
        if w[0] < -NEGATIVE_EIG_TOL:
            raise StateError(f"negative eigenvalue {w[0]:.3e}")
    return float(entropy_from_eigenvalues(w))


def entropies(rhos) -> np.ndarray:
    """Batched von Neumann entropies (bits) of stacked matrices, no validation."""
    return entropy_from_eigenvalues(np.linalg.eigvalsh(hermitian_part(np.asarray(rhos))))


def partial_trace_b(rho) -> np.ndarray:
    """Reduced state of qubit A from a two-qubit matrix (A is the left factor)."""
    r = np.asarray(rho).reshape(rho.shape[:-2] + (2, 2, 2, 2))
    return np.einsum("...ijkj->...ik", r)


def partial_trace_a(rho) -> np.ndarray:
    """Reduced state of qubit B from a two-qubit matrix."""
    r = np.asarray(rho).reshape(rho.shape[:-2] + (2, 2, 2, 2))
    return np.einsum("...ijik->...jk", r)


def eigvals_2x2(m) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenvalues (lower, upper) of stacked 2x2 Hermitian matrices."""
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    c = np.abs(m[..., 0, 1])
    half_tr = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + c**2)
    return half_tr - disc, half_tr + disc


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
