#!/usr/bin/env python3
"""Table of critical initial-state parameters for a range of photon numbers."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from tccorr.errors import SolverFailure
from tccorr.families import CriticalAlpha, critical_alpha
from tccorr.features import ali_birth_threshold, solve_alpha_collapse_closure, zero_discord_solution
from tccorr.sweep import emit


def rows_for(n: int, window: float):
    a_one, width = solve_alpha_collapse_closure(n)
    z = zero_discord_solution(n)
    try:
        plateau = critical_alpha(CriticalAlpha.ALPHA_PLATEAU, n, window=window)
    except SolverFailure:
        plateau = float("nan")
    return {
        "n": n,
        "alpha_B": critical_alpha(CriticalAlpha.ALPHA_B, n),
        "alpha_c": critical_alpha(CriticalAlpha.ALPHA_C, n),
        "alpha_1": critical_alpha(CriticalAlpha.ALPHA_ONE, n),
        "alpha_1_numeric": a_one,
        "alpha_A": critical_alpha(CriticalAlpha.ALPHA_A, n),
        "alpha_A_numeric": ali_birth_threshold(n),
        "alpha_0": z.alpha,
        "alpha_0_exact": float(np.sqrt((n + 1) / (2 * n + 1))),
        "alpha_plateau": plateau,
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", default="1,2,3,5,10,100,1000")
    p.add_argument("--plateau-window", type=float, default=0.02)
    p.add_argument("--out")
    args = p.parse_args(argv)
    rows = [rows_for(int(n), args.plateau_window) for n in args.n.split(",")]
    text = emit(rows, "csv", args.out, tuple(rows[0]))
    if args.out is None:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
