#!/usr/bin/env python3
"""Regenerate the reference datasets: correlation sweeps, feature times and the gate run.

Each dataset is a CSV under ``--outdir``; rerunning with the same arguments
rewrites byte-identical files.
"""
from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from tccorr.families import CriticalAlpha, Family, FamilySpec, critical_alpha
from tccorr.features import find_collapse_revival, find_kinks, KinkKind
from tccorr.sweep import GateSchedule, SweepConfig, emit, run_gate, run_sweep

log = logging.getLogger("reproduce")
BELL = 1 / np.sqrt(2)


@dataclass(frozen=True)
class SweepSet:
    name: str
    family: Family
    alphas: tuple[float, ...]
    ns: tuple[int, ...] = (1,)


SWEEPS = (
    SweepSet("psi_plus_correlations", Family.PSI_PLUS, (0.0, 0.2, BELL)),
    SweepSet("psi_minus_correlations", Family.PSI_MINUS, (0.0, 0.1, 0.3, 0.6, BELL, 0.9)),
    SweepSet("phi_plus_correlations", Family.PHI_PLUS, (0.0, float(np.sqrt(1 / 3)), 0.8)),
    SweepSet("ali_correlations", Family.ALI, (0.3, 0.6, 1.0), (1, 10)),
)


@dataclass
class RunConfig:
    outdir: Path = Path("data")
    tau_points: int = 2000
    alpha_points: int = 101
    gate_points: int = 400
    only: tuple[str, ...] = field(default_factory=tuple)


def sweeps(cfg: RunConfig) -> None:
    for s in SWEEPS:
        if cfg.only and s.name not in cfg.only:
            continue
        rows = run_sweep(SweepConfig(s.family, s.alphas, s.ns, cfg.tau_points))
        emit(rows, "csv", cfg.outdir / f"{s.name}.csv")
        log.info("%s: %d rows", s.name, len(rows))


def bell_family_esd_times(cfg: RunConfig) -> None:
    """Collapse and revival times of the psi+ family against alpha."""
    rows = []
    for a in np.linspace(0, 1, cfg.alpha_points):
        r = find_collapse_revival(FamilySpec(Family.PSI_PLUS, a, 1), cfg.tau_points)
        rows += [{"alpha": float(a), "event": "Collapse", "tau": t} for t in r.collapse_times]
        rows += [{"alpha": float(a), "event": "Revival", "tau": t} for t in r.revival_times]
    emit(rows, "csv", cfg.outdir / "psi_plus_esd_times.csv", ("alpha", "event", "tau"))
    log.info("psi_plus_esd_times: %d rows", len(rows))


def phi_plus_kink_times(cfg: RunConfig) -> None:
    """Concurrence kink times of the phi+ family against alpha."""
    rows = []
    for a in np.linspace(0, 1, cfg.alpha_points):
        r = find_kinks(FamilySpec(Family.PHI_PLUS, a, 1), cfg.tau_points, derivative_detector=False)
        rows += [{"alpha": float(a), "tau": k.tau, "vanishing": k.detail}
                 for k in r.kink_times if k.kind is KinkKind.CONCURRENCE]
    emit(rows, "csv", cfg.outdir / "phi_plus_kink_times.csv", ("alpha", "tau", "vanishing"))
    log.info("phi_plus_kink_times: %d rows (merge expected at alpha=%.6f)", len(rows),
             critical_alpha(CriticalAlpha.ALPHA_B, 1))


def gate(cfg: RunConfig) -> None:
    run = run_gate(GateSchedule(((1, 1), (2, 1), (1, 1)), tau_points=cfg.gate_points))
    emit(run.rows, "csv", cfg.outdir / "discord_gate.csv")
    log.info("discord_gate: alpha=%.6f, per-segment max discord %s", run.alpha,
             ", ".join(f"{m:.2e}" for m in run.segment_max_discord()))


STEPS = {"sweeps": sweeps, "psi_plus_esd_times": bell_family_esd_times,
         "phi_plus_kink_times": phi_plus_kink_times, "discord_gate": gate}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--outdir", type=Path, default=RunConfig.outdir)
    p.add_argument("--tau-points", type=int, default=RunConfig.tau_points)
    p.add_argument("--alpha-points", type=int, default=RunConfig.alpha_points)
    p.add_argument("--steps", default=",".join(STEPS), help="comma-separated subset of steps")
    args = p.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    cfg = RunConfig(args.outdir, args.tau_points, args.alpha_points)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    for step in args.steps.split(","):
        STEPS[step.strip()](cfg)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
