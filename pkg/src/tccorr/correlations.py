"""Entanglement and discord quantifiers for two qubits.

Qubit A is the left tensor factor and B the right one; measurements for the
classical correlations act on B.  All entropies are in bits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputError, NumericalError
from .qmatrix import (
    ENTROPY_CLIP,
    NEGATIVE_EIG_TOL,
    _as_square,
    check_density,
    eigvals_2x2,
    entropies,
    entropy_from_eigenvalues,
    hermitian_part,
    partial_trace_a,
    partial_trace_b,
)
from .reduction import TwoQubitX, XBatch

SIGMA_Y2 = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0]))  # sigma_y (x) sigma_y
PROJ_Z = np.array([[[1, 0], [0, 0]], [[0, 0], [0, 1]]], dtype=complex)
PROJ_X = 0.5 * np.array([[[1, 1], [1, 1]], [[1, -1], [-1, 1]]], dtype=complex)
HUANG_BOUND = 0.0021
# equality cases of the two inequalities (pure states) must not flip on rounding
CH_SLACK = 1e-12


class Branch(str, enum.Enum):
    SIGMA_Z = "SigmaZ"
    SIGMA_X = "SigmaX"
    NEITHER = "Neither"


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    branch: Branch
    chen_huang_valid: bool
    mutual_info: float
    classical_corr: float
    d_z: float
    d_x: float


# -- concurrence ------------------------------------------------------------

def concurrence_x(rho: TwoQubitX) -> float:
    """Concurrence of an X state with vanishing corner coherence."""
    return float(2.0 * max(0.0, abs(rho.r23) - np.sqrt(max(rho.r11, 0.0) * max(rho.r44, 0.0))))


def concurrence_x_batch(xb: XBatch) -> np.ndarray:
    return 2.0 * np.clip(xb.signed_concurrence(), 0.0, None)


def spin_flip_singular_values(rho) -> np.ndarray:
    """Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.

    With rho = L L^dagger these are the singular values of L^T (sy x sy) L, which
    avoids taking square roots of nearly vanishing eigenvalues.
    """
    a = hermitian_part(_as_square(rho, dims=(4,)))
    w, v = np.linalg.eigh(a)
    if w[0] < -NEGATIVE_EIG_TOL:
        raise NumericalError(f"state has eigenvalue {w[0]:.3e}; spin-flip product not positive")
    L = v * np.sqrt(np.clip(w, 0.0, None))
    return np.linalg.svd(L.T @ SIGMA_Y2 @ L, compute_uv=False)


def concurrence_wootters(rho) -> float:
    lam = spin_flip_singular_values(rho)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


# -- entropic quantities ----------------------------------------------------

def mutual_information(rho) -> float:
    """``S(A) + S(B) - S(AB)`` in bits."""
    a = check_density(rho)
    s_a, s_b = entropies(np.stack([partial_trace_b(a), partial_trace_a(a)]))
    return float(max(s_a + s_b - entropies(a), 0.0))


def _eta(x):
    x = np.where(x < ENTROPY_CLIP, 0.0, x)
    return entropy_from_eigenvalues(x[..., None])


def _measured_entropy(rhos: np.ndarray, proj0: np.ndarray) -> np.ndarray:
    """sum_k p_k S(rho_A|k) for the measurement {proj0, 1 - proj0} on B.

    Broadcasts over leading axes of ``rhos`` (..., 4, 4) and ``proj0`` (..., 2, 2).
    """
    r = rhos.reshape(rhos.shape[:-2] + (2, 2, 2, 2))
    rho_a = np.einsum("...abcb->...ac", r)
    sig0 = np.einsum("...abcd,...db->...ac", r, proj0)
    total = 0.0
    for sig in (sig0, rho_a - sig0):
        lo, hi = eigvals_2x2(sig)
        p = sig[..., 0, 0].real + sig[..., 1, 1].real
        term = _eta(lo) + _eta(hi) - _eta(p)
        total = total + np.where(p < ENTROPY_CLIP, 0.0, term)
    return np.clip(total, 0.0, None)


def _check_projectors(projectors) -> np.ndarray:
    p = np.asarray(projectors, dtype=complex)
    if p.shape != (2, 2, 2):
        raise InputError("expected a pair of 2x2 projectors")
    if np.abs(p[0] + p[1] - np.eye(2)).max() > 1e-12:
        raise InputError("projectors do not sum to the identity")
    for q in p:
        if np.abs(q @ q - q).max() > 1e-12 or np.abs(q - q.conj().T).max() > 1e-12:
            raise InputError("not an orthogonal projector")
        if abs(np.trace(q).real - 1.0) > 1e-12:
            raise InputError("projectors must be rank one")
    return p


def conditional_entropy_measured(rho, projectors) -> float:
    """Average entropy of A after the projective measurement ``projectors`` on B."""
    a = check_density(rho)
    p = _check_projectors(projectors)
    return float(_measured_entropy(a, p[0]))


def _chen_huang(r11, r22, r33, r44, r23, measured: str = "B"):
    """Sufficient conditions for the sigma_z / sigma_x branch to be the exact minimum.

    The sigma_z condition depends on which qubit is measured: for B it reads
    |r23|^2 <= (r11 - r33)(r44 - r22); for A the 2 and 3 labels swap.  The
    sigma_x condition is symmetric.
    """
    c = np.abs(r23)
    if measured == "B":
        cond_z = c**2 <= (r11 - r33) * (r44 - r22) + CH_SLACK
    elif measured == "A":
        cond_z = c**2 <= (r11 - r22) * (r44 - r33) + CH_SLACK
    else:
        raise InputError(f"measured subsystem must be 'A' or 'B', got {measured!r}")
    root = np.sqrt(np.clip(r11 * r44, 0, None)) - np.sqrt(np.clip(r22 * r33, 0, None))
    cond_x = np.abs(root) <= c + CH_SLACK
    return cond_z, cond_x


@dataclass(frozen=True)
class DiscordBatch:
    discord: np.ndarray
    d_z: np.ndarray
    d_x: np.ndarray
    mutual_info: np.ndarray
    classical_corr: np.ndarray
    cond_z: np.ndarray
    cond_x: np.ndarray

    @property
    def chen_huang_valid(self) -> np.ndarray:
        return self.cond_z | self.cond_x

    def branch(self, i) -> Branch:
        z, x = bool(self.cond_z[i]), bool(self.cond_x[i])
        if z and x:
            return Branch.SIGMA_Z if self.d_z[i] <= self.d_x[i] else Branch.SIGMA_X
        if z:
            return Branch.SIGMA_Z
        if x:
            return Branch.SIGMA_X
        return Branch.NEITHER

    def branches(self) -> list[Branch]:
        return [self.branch(i) for i in range(len(self.discord))]

    def at(self, i) -> DiscordResult:
        return DiscordResult(
            float(self.discord[i]),
            self.branch(i),
            bool(self.chen_huang_valid[i]),
            float(self.mutual_info[i]),
            float(self.classical_corr[i]),
            float(self.d_z[i]),
            float(self.d_x[i]),
        )


def discord_x_batch(xb: XBatch) -> DiscordBatch:
    m = xb.to_matrices()
    s_ab = entropies(m)
    s_a = entropy_from_eigenvalues(np.stack([xb.r11 + xb.r22, xb.r33 + xb.r44], axis=-1))
    s_b = entropy_from_eigenvalues(np.stack([xb.r11 + xb.r33, xb.r22 + xb.r44], axis=-1))
    mi = np.clip(s_a + s_b - s_ab, 0.0, None)
    base = s_b - s_ab
    d_z = np.clip(base + _measured_entropy(m, PROJ_Z[0]), 0.0, None)
    d_x = np.clip(base + _measured_entropy(m, PROJ_X[0]), 0.0, None)
    d = np.minimum(d_z, d_x)
    cz, cx = _chen_huang(xb.r11, xb.r22, xb.r33, xb.r44, xb.r23)
    return DiscordBatch(d, d_z, d_x, mi, mi - d, cz, cx)


def chen_huang_conditions(rho: TwoQubitX, measured: str = "B") -> tuple[bool, bool]:
    """(sigma_z condition, sigma_x condition) for a measurement on ``measured``."""
    cz, cx = _chen_huang(rho.r11, rho.r22, rho.r33, rho.r44, rho.r23, measured)
    return bool(cz), bool(cx)


def discord_x(rho: TwoQubitX) -> DiscordResult:
    """Discord as the smaller of the sigma_z and sigma_x measurement branches.

    ``chen_huang_valid`` is true when one of the two sufficient conditions for
    exactness holds; otherwise the true discord is below the returned value
    by at most ``HUANG_BOUND`` bits.
    """
    xb = XBatch(*(np.array([v]) for v in (rho.r11, rho.r22, rho.r33, rho.r44, rho.r23)))
    return discord_x_batch(xb).at(0)


# -- brute-force oracle -----------------------------------------------------

def bloch_projectors(theta, phi) -> np.ndarray:
    """|v><v| for v = (cos(theta/2), e^{i phi} sin(theta/2)), broadcast over inputs."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    off = c * s * np.exp(1j * phi)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c * c
    out[..., 0, 1] = np.conj(off)
    out[..., 1, 0] = off
    out[..., 1, 1] = s * s
    return out


def golden_section(f, lo: float, hi: float, tol: float, max_iter: int = 200):
    """Minimize a scalar function on [lo, hi]; returns (x, f(x)).

    Deterministic, derivative-free; on ties the left point is kept.
    """
    invphi = (np.sqrt(5.0) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc <= fd else (d, fd)
    # endpoints matter when the minimum sits on the boundary
    for e in (lo, hi):
        fe = f(e)
        if fe < fx:
            x, fx = e, fe
    return x, fx


def min_conditional_entropy(rho, n_theta: int = 180, n_phi: int = 360,
                            angle_tol: float = 1e-6, max_iter: int = 200):
    """Minimum of the measured conditional entropy over projective measurements on B.

    Returns ``(value, theta, phi)``.  Coarse Bloch-sphere grid followed by
    alternating golden-section refinement of each angle.
    """
    if n_theta < 8 or n_phi < 8:
        raise ConfigurationError("brute-force grid needs at least 8 points per axis")
    a = hermitian_part(np.asarray(rho, dtype=complex))
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    grid = _measured_entropy(a, bloch_projectors(thetas[:, None], phis[None, :]))
    i, j = np.unravel_index(np.argmin(grid), grid.shape)  # first hit = lexicographic tie-break
    th, ph, best = thetas[i], phis[j], float(grid[i, j])

    def obj(t, p):
        return float(_measured_entropy(a, bloch_projectors(t, p)))

    # only strict improvements move the point: for X states the objective is flat in phi
    h_th = np.pi / (n_theta - 1)
    h_ph = 2 * np.pi / n_phi
    for _ in range(max_iter):
        moved = 0.0
        t_new, v = golden_section(lambda t: obj(t, ph), max(0.0, th - h_th),
                                  min(np.pi, th + h_th), angle_tol, max_iter)
        if v < best:
            moved, th, best = abs(t_new - th), t_new, v
        p_new, v = golden_section(lambda p: obj(th, p), ph - h_ph, ph + h_ph,
                                  angle_tol, max_iter)
        if v < best:
            moved, ph, best = max(moved, abs(p_new - ph)), p_new % (2 * np.pi), v
        if moved <= angle_tol:
            break
        h_th = min(h_th, max(2 * moved, 4 * angle_tol))
        h_ph = min(h_ph, max(2 * moved, 4 * angle_tol))
    return best, th, ph


def discord_bruteforce(rho, n_theta: int = 180, n_phi: int = 360,
                       angle_tol: float = 1e-6, max_iter: int = 200) -> float:
    """Discord from a numerical search over all projective measurements on B."""
    a = check_density(rho)
    cond, _, _ = min_conditional_entropy(a, n_theta, n_phi, angle_tol, max_iter)
    s_b = float(entropies(partial_trace_a(a)))
    s_ab = float(entropies(a))
    return float(max(s_b - s_ab + cond, 0.0))
