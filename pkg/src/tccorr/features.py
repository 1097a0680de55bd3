"""Locate collapse/revival times, kinks and critical alphas numerically.

Every detector samples one Rabi period on a uniform grid, brackets the feature
between neighbouring samples and then refines it: bisection for sign changes,
golden-section for V-shaped minima.  All searches are deterministic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .correlations import DiscordBatch, concurrence_x_batch, discord_x_batch, golden_section
from .dynamics import dagger, unitaries
from .errors import AmbiguityError, ConfigurationError, SolverFailure
from .families import CriticalAlpha, Family, FamilySpec, critical_alpha, make_state
from .reduction import XBatch, reduce_many

ZERO_CONCURRENCE = 1e-12
ZERO_POPULATION = 1e-14
ROOT_XTOL = 1e-11
MIN_RESOLUTION = 1000
ZERO_DISCORD = 1e-6


class KinkKind(str, enum.Enum):
    CONCURRENCE = "ConcurrenceKink"
    BRANCH_SWITCH = "DiscordBranchSwitch"
    ENTROPY_MIN_SWITCH = "DiscordEntropyMinSwitch"


@dataclass(frozen=True)
class Kink:
    tau: float
    kind: KinkKind
    detail: str = ""


@dataclass
class FeatureReport:
    spec: FamilySpec
    collapse_times: list[float] = field(default_factory=list)
    revival_times: list[float] = field(default_factory=list)
    kink_times: list[Kink] = field(default_factory=list)
    tolerance: float = ROOT_XTOL

    def events(self) -> list[tuple[float, str, str]]:
        """All features as (tau, kind, detail), sorted by time."""
        ev = [(t, "Collapse", "") for t in self.collapse_times]
        ev += [(t, "Revival", "") for t in self.revival_times]
        ev += [(k.tau, k.kind.value, k.detail) for k in self.kink_times]
        return sorted(ev)

    def merged(self, other: "FeatureReport") -> "FeatureReport":
        return FeatureReport(
            self.spec,
            sorted(self.collapse_times + other.collapse_times),
            sorted(self.revival_times + other.revival_times),
            sorted(self.kink_times + other.kink_times, key=lambda k: k.tau),
            max(self.tolerance, other.tolerance),
        )


class Trajectory:
    """Reduced two-qubit states of one family member along its orbit."""

    def __init__(self, spec: FamilySpec, dynamics_n: int | None = None):
        self.spec = spec
        self.n = spec.n if dynamics_n is None else dynamics_n
        self.rho0 = make_state(spec).rho

    def states(self, taus) -> XBatch:
        u = unitaries(self.n, np.atleast_1d(np.asarray(taus, dtype=float)))
        return reduce_many(u @ self.rho0 @ dagger(u))

    def signed_concurrence(self, tau: float) -> float:
        return float(self.states(tau).signed_concurrence()[0])

    def concurrence(self, taus) -> np.ndarray:
        return concurrence_x_batch(self.states(taus))

    def discord(self, taus) -> DiscordBatch:
        return discord_x_batch(self.states(taus))

    def population(self, key: str, tau: float) -> float:
        return float(getattr(self.states(tau), key)[0])


def _grid(resolution: int) -> np.ndarray:
    if resolution < MIN_RESOLUTION:
        raise ConfigurationError(
            f"resolution {resolution} cannot separate features; need >= {MIN_RESOLUTION}")
    return np.arange(resolution) / resolution


def _root(fun, lo: float, hi: float) -> float:
    return bisect(fun, lo, hi, xtol=ROOT_XTOL) % 1.0


# -- collapse / revival -----------------------------------------------------

def find_collapse_revival(spec: FamilySpec, resolution: int = 2000) -> FeatureReport:
    """Entanglement sudden death (collapse) and sudden birth (revival) times in [0, 1)."""
    taus = _grid(resolution)
    h = 1.0 / resolution
    traj = Trajectory(spec)
    s = traj.states(taus).signed_concurrence()
    zero = s <= ZERO_CONCURRENCE
    # a lone zero sample where C only touches 0 is not a dead interval
    touching = zero & ~np.roll(zero, 1) & ~np.roll(zero, -1) & (s >= -ZERO_CONCURRENCE)
    zero &= ~touching
    report = FeatureReport(spec)
    if zero.all() or not zero.any():
        return report

    def g(t):
        return traj.signed_concurrence(t % 1.0) - ZERO_CONCURRENCE

    for i in range(resolution):
        j = (i + 1) % resolution
        if zero[i] == zero[j]:
            continue
        root = _root(g, taus[i], taus[i] + h)
        (report.revival_times if zero[i] else report.collapse_times).append(root)
    report.collapse_times.sort()
    report.revival_times.sort()
    return report


def collapse_interval_width(spec: FamilySpec, center: float = 0.5,
                            resolution: int = 2000) -> float:
    """Length of the zero-concurrence interval containing ``center`` (0 if C > 0 there)."""
    traj = Trajectory(spec)
    if traj.signed_concurrence(center) > ZERO_CONCURRENCE:
        return 0.0
    h = 1.0 / resolution

    def g(t):
        return traj.signed_concurrence(t % 1.0) - ZERO_CONCURRENCE

    ends = []
    for step in (-h, h):
        t = center
        for _ in range(resolution // 2):
            t_next = t + step
            if g(t_next) > 0:
                lo, hi = sorted((t, t_next))
                ends.append(bisect(g, lo, hi, xtol=ROOT_XTOL))
                break
            t = t_next
        else:
            return 1.0
    return float(ends[1] - ends[0])


# -- kinks ------------------------------------------------------------------

def _local_minima(q: np.ndarray) -> np.ndarray:
    prev, nxt = np.roll(q, 1), np.roll(q, -1)
    return np.nonzero((q <= prev) & (q < nxt))[0]


def _is_v_shaped(fun, t: float, delta: float = 1e-7, slope: float = 1e-3) -> bool:
    return (fun(t + delta) + fun(t - delta)) / (2 * delta) > slope


def _dedupe(kinks: list[Kink], tol: float = 1e-8) -> list[Kink]:
    out: list[Kink] = []
    for k in sorted(kinks, key=lambda k: k.tau):
        if out and abs(k.tau - out[-1].tau) < tol and k.kind == out[-1].kind:
            continue
        out.append(k)
    return out


def population_zeros(traj: Trajectory, key: str, taus: np.ndarray,
                     values: np.ndarray | None = None) -> list[float]:
    """Times in the sampled window where population ``key`` vanishes linearly in amplitude."""
    h = taus[1] - taus[0]
    if values is None:
        values = getattr(traj.states(taus), key)
    q = np.sqrt(np.clip(values, 0.0, None))
    if q.max() < 1e-9:
        return []

    def amp(t):
        return np.sqrt(max(traj.population(key, t), 0.0))

    zeros = []
    for i in _local_minima(q):
        if q[i] > 0.05:
            continue
        t, v = golden_section(amp, taus[i] - h, taus[i] + h, ROOT_XTOL)
        if v * v > ZERO_POPULATION or not _is_v_shaped(amp, t):
            continue
        zeros.append(t % 1.0)
    return sorted(zeros)


def concurrence_kinks(spec: FamilySpec, resolution: int = 2000) -> list[Kink]:
    """Slope discontinuities of C where exactly one of r11, r44 vanishes and C > 0."""
    taus = _grid(resolution)
    traj = Trajectory(spec)
    xb = traj.states(taus)
    kinks = []
    for key, other in (("r11", "r44"), ("r44", "r11")):
        for t in population_zeros(traj, key, taus, getattr(xb, key)):
            if traj.population(other, t) <= ZERO_POPULATION:
                continue  # both vanish together: product has a double zero, C stays smooth
            if traj.signed_concurrence(t) <= ZERO_CONCURRENCE:
                continue
            kinks.append(Kink(t, KinkKind.CONCURRENCE, key))
    return _dedupe(kinks)


def _branch_switches(traj: Trajectory, taus: np.ndarray, db: DiscordBatch) -> list[Kink]:
    h = taus[1] - taus[0]
    diff = db.d_z - db.d_x
    sig = np.nonzero(np.abs(diff) > 1e-12)[0]
    if len(sig) < 2:
        return []
    res = len(taus)

    def g(t):
        d = traj.discord(t % 1.0)
        return float(d.d_z[0] - d.d_x[0])

    out = []
    for a, b in zip(sig, np.roll(sig, -1)):
        gap = (b - a) % res
        if gap == 0 or gap > 3 or np.sign(diff[a]) == np.sign(diff[b]):
            continue
        root = _root(g, taus[a], taus[a] + gap * h)
        label = "z->x" if diff[a] < 0 else "x->z"
        out.append(Kink(root, KinkKind.BRANCH_SWITCH, label))
    return out


def _refine_fd_kink(dfun, t0: float, h: float) -> float:
    t, delta = t0, h
    while delta > 1e-9:
        def peak(x, d=delta):
            return -abs(dfun(x + d) - 2 * dfun(x) + dfun(x - d))

        t, _ = golden_section(peak, t - delta, t + delta, delta * 1e-2)
        delta /= 8
    return t % 1.0


def _derivative_jumps(traj: Trajectory, taus: np.ndarray, d: np.ndarray,
                      exclude: list[float], ratio: float = 10.0) -> list[Kink]:
    """Secondary detector: second-difference spikes not explained by branch switches."""
    h = taus[1] - taus[0]
    res = len(taus)
    d2 = np.abs(np.roll(d, -1) - 2 * d + np.roll(d, 1))
    out = []
    offsets = np.r_[-8:-2, 3:9]
    for i in range(res):
        if d2[i] < d2[(i - 1) % res] or d2[i] < d2[(i + 1) % res]:
            continue
        scale = max(np.median(d2[(i + offsets) % res]), 1e-12)
        if d2[i] <= ratio * scale or d[i] < 1e-9:
            continue
        t = taus[i]
        if any(min(abs(t - e), 1 - abs(t - e)) < 3 * h for e in exclude):
            continue

        def dfun(x):
            return float(traj.discord(x % 1.0).discord[0])

        out.append(Kink(_refine_fd_kink(dfun, t, h), KinkKind.ENTROPY_MIN_SWITCH, "fd"))
    return out


def find_kinks(spec: FamilySpec, resolution: int = 2000,
               derivative_detector: bool = True) -> FeatureReport:
    """Concurrence kinks plus discord kinks (branch switches and other derivative jumps)."""
    taus = _grid(resolution)
    traj = Trajectory(spec)
    kinks = concurrence_kinks(spec, resolution)
    db = traj.discord(taus)
    switches = _branch_switches(traj, taus, db)
    kinks += switches
    if derivative_detector:
        kinks += _derivative_jumps(traj, taus, db.discord, [k.tau for k in switches])
    return FeatureReport(spec, kink_times=_dedupe(kinks))


def find_features(spec: FamilySpec, resolution: int = 2000) -> FeatureReport:
    return find_collapse_revival(spec, resolution).merged(find_kinks(spec, resolution))


def kink_esd_cooccurrence(report: FeatureReport, window: float = 0.02) -> dict[str, int]:
    """Count discord kinks just after a collapse or just before a revival."""
    dk = [k.tau for k in report.kink_times if k.kind is not KinkKind.CONCURRENCE]

    def near(t, ref, sign):
        d = ((t - ref) * sign) % 1.0
        return d <= window

    return {
        "discord_kinks": len(dk),
        "after_collapse": sum(any(near(t, c, 1) for c in report.collapse_times) for t in dk),
        "before_revival": sum(any(near(t, r, -1) for r in report.revival_times) for t in dk),
    }


# -- critical alphas --------------------------------------------------------

@dataclass(frozen=True)
class ZeroDiscordSolution:
    alpha: float
    max_discord: float
    sigma_z_exact_on_orbit: bool


def _max_orbit_discord(alpha: float, n: int, taus: np.ndarray) -> float:
    return float(Trajectory(FamilySpec(Family.PHI_MINUS, alpha, n)).discord(taus).discord.max())


def zero_discord_solution(n: int, tau_points: int = 2000, tol: float = 1e-8,
                          scan: int = 64) -> ZeroDiscordSolution:
    """Find the phi- member whose discord vanishes along the whole orbit."""
    taus = np.arange(tau_points) / tau_points
    lo, hi = 1 / np.sqrt(2), 1.0
    alphas = np.linspace(lo, hi, scan + 1)
    vals = [_max_orbit_discord(a, n, taus) for a in alphas]
    i = int(np.argmin(vals))
    a_lo, a_hi = alphas[max(i - 1, 0)], alphas[min(i + 1, scan)]
    a_star, m_star = golden_section(lambda a: _max_orbit_discord(a, n, taus), a_lo, a_hi, tol)
    if m_star >= ZERO_DISCORD:
        raise SolverFailure(
            f"phi- family, n={n}: smallest orbit-maximum discord {m_star:.3e} at "
            f"alpha={a_star:.8f} is not below {ZERO_DISCORD}")
    db = Trajectory(FamilySpec(Family.PHI_MINUS, a_star, n)).discord(taus)
    return ZeroDiscordSolution(float(a_star), float(m_star), bool(db.cond_z.all()))


def solve_alpha_zero_discord(n: int, **kw) -> float:
    sol = zero_discord_solution(n, **kw)
    if not sol.sigma_z_exact_on_orbit:
        raise SolverFailure(
            f"phi- family, n={n}: sigma_z exactness condition fails on the zero-discord "
            "orbit, so the vanishing discord is not certified")
    return sol.alpha


def plateau_flatness(alpha: float, n: int, window: float = 0.02, points: int = 81) -> float:
    taus = np.linspace(0.25 - window, 0.25 + window, points)
    d = Trajectory(FamilySpec(Family.ALI, alpha, n)).discord(taus).discord
    return float(d.max() - d.min())


def solve_alpha_plateau(n: int, window: float = 0.02, points: int = 81,
                        tol: float = 1e-6, scan: int = 199) -> float:
    """Ali-family alpha whose discord is flattest around tau = 1/4."""
    if not 0 < window < 0.25:
        raise ConfigurationError(f"plateau half-width must lie in (0, 1/4), got {window}")
    alphas = np.linspace(0.0, 1.0, scan + 2)[1:-1]
    vals = np.array([plateau_flatness(a, n, window, points) for a in alphas])
    best = int(np.argmin(vals))
    interior = [i for i in range(1, len(vals) - 1) if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]]
    rivals = [i for i in interior if abs(i - best) > 2 and vals[i] <= 2 * vals[best] + 1e-6]
    if rivals:
        raise AmbiguityError(
            f"Ali family, n={n}: flatness has comparable minima at alpha="
            + ", ".join(f"{alphas[i]:.4f}" for i in [best] + rivals))
    lo, hi = alphas[max(best - 1, 0)], alphas[min(best + 1, len(alphas) - 1)]
    a_star, _ = golden_section(lambda a: plateau_flatness(a, n, window, points), lo, hi, tol)
    d_quarter = float(Trajectory(FamilySpec(Family.ALI, a_star, n)).discord(0.25).discord[0])
    if abs(d_quarter - a_star) > 0.01:
        raise SolverFailure(
            f"Ali family, n={n}: plateau discord {d_quarter:.4f} differs from "
            f"alpha={a_star:.4f} by more than 0.01")
    return float(a_star)


def _first_zero(traj: Trajectory, key: str, taus: np.ndarray) -> float:
    z = population_zeros(traj, key, taus)
    if not z:
        raise SolverFailure(f"{key} never vanishes in the first half period")
    return z[0]


def solve_alpha_kink_merge(n: int, bracket=(0.4, 0.9), xtol: float = 1e-10) -> float:
    """phi+ alpha where the r11-zero and r44-zero kinks of C coincide."""
    taus = np.linspace(0.0, 0.5, 1001)[1:-1]

    def gap(a):
        traj = Trajectory(FamilySpec(Family.PHI_PLUS, a, n))
        return _first_zero(traj, "r11", taus) - _first_zero(traj, "r44", taus)

    return float(bisect(gap, *bracket, xtol=xtol))


def solve_alpha_collapse_closure(n: int, tol: float = 1e-10,
                                 resolution: int = 2000) -> tuple[float, float]:
    """phi+ alpha where the collapse interval around tau = 1/2 shrinks to a point.

    Returns ``(alpha, width)`` with the detected interval width at that alpha.
    """
    lo = critical_alpha(CriticalAlpha.ALPHA_B, n)

    def width(a):
        return collapse_interval_width(FamilySpec(Family.PHI_PLUS, a, n), 0.5, resolution)

    a_star, w = golden_section(width, lo, 1.0, tol)
    return float(a_star), float(w)


def ali_birth_threshold(n: int, xtol: float = 1e-12) -> float:
    """Smallest Ali alpha with nonzero concurrence at half period."""
    def s(a):
        return Trajectory(FamilySpec(Family.ALI, a, n)).signed_concurrence(0.5)

    return float(bisect(s, 0.0, 1.0, xtol=xtol))
