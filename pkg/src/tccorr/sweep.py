"""Parameter sweeps, the discord-gate schedule and flat-file serialization."""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .correlations import concurrence_x_batch, discord_bruteforce, discord_x_batch
from .dynamics import check_manifold, dagger, unitaries
from .errors import ConfigurationError, DomainError
from .families import Family, FamilySpec, make_state
from .features import solve_alpha_zero_discord
from .reduction import reduce_many

COLUMNS = ("family", "alpha", "n", "tau", "concurrence", "discord", "branch",
           "chen_huang_valid", "mutual_info", "classical_corr")
OPTIONAL_COLUMNS = ("discord_bruteforce",)
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class CorrelationPoint:
    family: str
    alpha: float
    n: int
    tau: float
    concurrence: float
    discord: float
    branch: str
    chen_huang_valid: bool
    mutual_info: float
    classical_corr: float
    discord_bruteforce: float | None = None


def thread_cap(default: int | None = None) -> int:
    raw = os.environ.get("TC_CORR_THREADS")
    if raw is None:
        return default or 1
    try:
        val = int(raw)
    except ValueError:
        raise ConfigurationError(f"TC_CORR_THREADS must be an integer, got {raw!r}") from None
    if val < 1:
        raise ConfigurationError("TC_CORR_THREADS must be >= 1")
    return val


def parse_range(text: str) -> tuple[float, ...]:
    """``"a:b:k"`` -> k evenly spaced values from a to b inclusive."""
    try:
        a, b, k = text.split(":")
        a, b, k = float(a), float(b), int(k)
    except ValueError:
        raise ConfigurationError(f"range must look like start:stop:count, got {text!r}") from None
    if k < 2:
        raise ConfigurationError("range count must be >= 2")
    return tuple(float(x) for x in np.linspace(a, b, k))


@dataclass(frozen=True)
class SweepConfig:
    family: Family
    alphas: tuple[float, ...]
    ns: tuple[int, ...] = (1,)
    tau_points: int = 2000
    outputs: tuple[str, ...] = COLUMNS
    out: Path | None = None
    format: str = "csv"
    grid_theta: int = 180
    grid_phi: int = 360

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        alphas = tuple(float(a) for a in self.alphas)
        if not alphas:
            raise ConfigurationError("no alpha values given")
        for a in alphas:
            if not 0.0 <= a <= 1.0:
                raise DomainError(f"alpha must lie in [0, 1], got {a}")
        object.__setattr__(self, "alphas", alphas)
        ns = tuple(check_manifold(n) for n in self.ns)
        if not ns:
            raise ConfigurationError("no manifold index given")
        object.__setattr__(self, "ns", ns)
        if self.tau_points < 2:
            raise ConfigurationError("tau grid needs at least 2 points")
        unknown = set(self.outputs) - set(COLUMNS) - set(OPTIONAL_COLUMNS)
        if unknown:
            raise ConfigurationError(f"unknown output columns {sorted(unknown)}")
        if self.format not in FORMATS:
            raise ConfigurationError(f"format must be one of {FORMATS}")
        if self.grid_theta < 8 or self.grid_phi < 8:
            raise ConfigurationError("brute-force grid needs at least 8 points per axis")


def correlation_points(spec: FamilySpec, taus, dynamics_n: int | None = None,
                       rho0: np.ndarray | None = None, bruteforce: tuple[int, int] | None = None,
                       ) -> list[CorrelationPoint]:
    """One row per tau for the orbit of ``spec`` (or of ``rho0`` evolved in ``dynamics_n``)."""
    taus = np.asarray(taus, dtype=float)
    n = spec.n if dynamics_n is None else dynamics_n
    r0 = make_state(spec).rho if rho0 is None else rho0
    u = unitaries(n, taus)
    full = u @ r0 @ dagger(u)
    xb = reduce_many(full)
    conc = concurrence_x_batch(xb)
    db = discord_x_batch(xb)
    branches = db.branches()
    mats = xb.to_matrices() if bruteforce else None
    rows = []
    for i, t in enumerate(taus):
        bf = None
        if bruteforce:
            bf = discord_bruteforce(mats[i], n_theta=bruteforce[0], n_phi=bruteforce[1])
        rows.append(CorrelationPoint(
            spec.family.value, spec.alpha, n, float(t), float(conc[i]), float(db.discord[i]),
            branches[i].value, bool(db.chen_huang_valid[i]), float(db.mutual_info[i]),
            float(db.classical_corr[i]), bf,
        ))
    return rows


def run_sweep(config: SweepConfig) -> list[CorrelationPoint]:
    """Rows ordered by (alpha, n, tau) whatever the worker count."""
    taus = np.arange(config.tau_points) / config.tau_points
    jobs = [FamilySpec(config.family, a, n) for a in config.alphas for n in config.ns]
    bf = (config.grid_theta, config.grid_phi) if "discord_bruteforce" in config.outputs else None
    workers = min(thread_cap(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda s: correlation_points(s, taus, bruteforce=bf), jobs))
    else:
        chunks = [correlation_points(s, taus, bruteforce=bf) for s in jobs]
    return [row for chunk in chunks for row in chunk]


# -- discord gate -----------------------------------------------------------

@dataclass(frozen=True)
class GateSchedule:
    """Manifold segments, each lasting a whole number of Rabi periods.

    The first segment fixes alpha to the zero-discord value of its manifold.
    """

    segments: tuple[tuple[int, int], ...]
    alpha_policy: str = "FixedAlphaZeroOfFirstN"
    tau_points: int = 200

    def __post_init__(self):
        segs = []
        for seg in self.segments:
            n_k, dur = seg
            if int(dur) != dur or dur < 1:
                raise ConfigurationError(
                    f"segment duration must be a whole number of periods >= 1, got {dur}")
            segs.append((check_manifold(n_k), int(dur)))
        if not segs:
            raise ConfigurationError("gate schedule is empty")
        if self.alpha_policy != "FixedAlphaZeroOfFirstN":
            raise ConfigurationError(f"unknown alpha policy {self.alpha_policy!r}")
        if self.tau_points < 2:
            raise ConfigurationError("tau grid needs at least 2 points per period")
        object.__setattr__(self, "segments", tuple(segs))

    @classmethod
    def parse(cls, text: str, **kw) -> "GateSchedule":
        """``"1:1,2:1,1:1"`` -> segments (n, periods)."""
        try:
            segs = tuple(tuple(int(x) for x in part.split(":")) for part in text.split(","))
        except ValueError:
            raise ConfigurationError(f"bad gate schedule {text!r}") from None
        if any(len(s) != 2 for s in segs):
            raise ConfigurationError(f"bad gate schedule {text!r}; expected n:periods,...")
        return cls(segs, **kw)


@dataclass
class GateRun:
    alpha: float
    rows: list[CorrelationPoint] = field(default_factory=list)
    segment_of_row: list[int] = field(default_factory=list)

    def segment_max_discord(self) -> list[float]:
        k = max(self.segment_of_row) + 1
        out = [0.0] * k
        for seg, row in zip(self.segment_of_row, self.rows):
            out[seg] = max(out[seg], row.discord)
        return out


def run_gate(schedule: GateSchedule, alpha: float | None = None) -> GateRun:
    """Evolve the phi- orbit piecewise, switching manifold at integer periods.

    The 4x4 state is handed across a boundary unchanged (same basis amplitudes,
    new photon number); ``alpha`` overrides the solver when given.
    """
    n1 = schedule.segments[0][0]
    if alpha is None:
        alpha = solve_alpha_zero_discord(n1)
    spec = FamilySpec(Family.PHI_MINUS, alpha, n1)
    rho = make_state(spec).rho
    run = GateRun(float(alpha))
    offset = 0
    local = np.arange(schedule.tau_points) / schedule.tau_points
    for k, (n_k, periods) in enumerate(schedule.segments):
        taus = (np.arange(periods)[:, None] + local[None, :]).ravel()
        rows = correlation_points(spec, taus, dynamics_n=n_k, rho0=rho)
        for row in rows:
            run.rows.append(CorrelationPoint(**{**asdict(row), "tau": row.tau + offset}))
            run.segment_of_row.append(k)
        u = unitaries(n_k, float(periods))
        rho = u @ rho @ u.conj().T
        offset += periods
    return run


# -- output -----------------------------------------------------------------

def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return ""
    return str(v)


def _json_value(v):
    if isinstance(v, float):
        return float(f"{v:.12g}")
    return v


def emit(rows, fmt: str = "csv", path=None, columns=COLUMNS) -> str:
    """Serialize rows; writes ``path`` when given and returns the text either way."""
    if not rows:
        raise ConfigurationError("nothing to write: dataset is empty")
    columns = tuple(columns)
    records = [{c: getattr(r, c) if not isinstance(r, dict) else r[c] for c in columns} for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for rec in records:
            w.writerow([_fmt(rec[c]) for c in columns])
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps([{c: _json_value(rec[c]) for c in columns} for rec in records],
                          indent=1) + "\n"
    else:
        raise ConfigurationError(f"format must be one of {FORMATS}, got {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
