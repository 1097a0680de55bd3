"""Command-line front end: ``tccorr {sweep,features,critical-alpha,gate}``.

Options may also come from a ``key = value`` file given with ``--config``;
flags on the command line override file entries.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigurationError, InputError, SolverFailure, TCError
from .families import CriticalAlpha, Family, FamilySpec, critical_alpha
from .features import collapse_interval_width, find_features, zero_discord_solution
from .sweep import (COLUMNS, FORMATS, OPTIONAL_COLUMNS, GateSchedule, SweepConfig, emit,
                    parse_range, run_gate, run_sweep)

EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_IO = 4
EXIT_OTHER = 1


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise ConfigurationError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise ConfigurationError(f"expected comma-separated integers, got {text!r}") from None


def read_config(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc.strerror}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = val
    return out


def _add_output(p):
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=FORMATS, default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tccorr",
        description="Concurrence and discord dynamics of two qubits in one cavity mode.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value file; flags override it")

    p = sub.add_parser("sweep", parents=[common], help="correlations over (alpha, n, tau)")
    p.add_argument("--family", required=False)
    p.add_argument("--alpha", help="comma-separated alpha values")
    p.add_argument("--alpha-range", help="start:stop:count, inclusive")
    p.add_argument("--n", default="1", help="comma-separated manifold indices")
    p.add_argument("--tau-points", type=int, default=2000, help="samples per Rabi period")
    p.add_argument("--columns", help="comma-separated output columns "
                   f"(default: all of {','.join(COLUMNS)}; extra: {','.join(OPTIONAL_COLUMNS)})")
    p.add_argument("--grid-theta", type=int, default=180)
    p.add_argument("--grid-phi", type=int, default=360)
    _add_output(p)

    p = sub.add_parser("features", parents=[common],
                       help="collapse, revival and kink times for one family member")
    p.add_argument("--family")
    p.add_argument("--alpha", type=float)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--tau-points", type=int, default=2000)
    _add_output(p)

    p = sub.add_parser("critical-alpha", parents=[common], help="critical initial-state parameters")
    p.add_argument("--kind", default=",".join(k.value for k in CriticalAlpha),
                   help="comma-separated kinds: " + ", ".join(k.value for k in CriticalAlpha))
    p.add_argument("--n", default="1", help="comma-separated manifold indices")
    p.add_argument("--plateau-window", type=float, default=0.02)
    _add_output(p)

    p = sub.add_parser("gate", parents=[common], help="photon-number discord gate")
    p.add_argument("--segments", default="1:1,2:1,1:1", help="n:periods,... (default %(default)s)")
    p.add_argument("--alpha", type=float, help="override the zero-discord alpha of the first segment")
    p.add_argument("--tau-points", type=int, default=200, help="samples per period")
    _add_output(p)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    cfg = read_config(known.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    cmd = next((a for a in argv if a in sub.choices), None)
    if cmd is None:
        return
    sp = sub.choices[cmd]
    dests = {a.dest: a for a in sp._actions}
    unknown = sorted(set(cfg) - set(dests) - {"config"})
    if unknown:
        raise ConfigurationError(f"unknown config keys for '{cmd}': {', '.join(unknown)}")
    # argparse runs string defaults through the option's type converter
    sp.set_defaults(**{k: v for k, v in cfg.items() if k != "config"})


def _require(value, name):
    if value is None:
        raise ConfigurationError(f"--{name} is required")
    return value


def _cmd_sweep(args) -> str:
    if args.alpha is not None and args.alpha_range is not None:
        raise ConfigurationError("give either --alpha or --alpha-range, not both")
    if args.alpha_range is not None:
        alphas = parse_range(args.alpha_range)
    else:
        alphas = _floats(_require(args.alpha, "alpha"))
    columns = tuple(c.strip() for c in args.columns.split(",")) if args.columns else COLUMNS
    cfg = SweepConfig(
        family=_require(args.family, "family"), alphas=alphas, ns=_ints(args.n),
        tau_points=args.tau_points, outputs=columns, out=args.out, format=args.format,
        grid_theta=args.grid_theta, grid_phi=args.grid_phi,
    )
    return emit(run_sweep(cfg), cfg.format, cfg.out, columns)


def _cmd_features(args) -> str:
    spec = FamilySpec(Family.parse(_require(args.family, "family")),
                      _require(args.alpha, "alpha"), args.n)
    report = find_features(spec, resolution=args.tau_points)
    rows = [{"family": spec.family.value, "alpha": spec.alpha, "n": spec.n,
             "tau": tau, "event": event, "detail": detail}
            for tau, event, detail in report.events()]
    if not rows:
        rows = [{"family": spec.family.value, "alpha": spec.alpha, "n": spec.n,
                 "tau": None, "event": "none", "detail": ""}]
    return emit(rows, args.format, args.out, ("family", "alpha", "n", "tau", "event", "detail"))


def _cmd_critical(args) -> str:
    kinds = [CriticalAlpha(k.strip()) if k.strip() in CriticalAlpha._value2member_map_
             else None for k in args.kind.split(",")]
    if None in kinds:
        raise ConfigurationError(
            f"unknown kind in {args.kind!r}; choose from " + ", ".join(k.value for k in CriticalAlpha))
    rows = []
    for kind in kinds:
        for n in _ints(args.n):
            detail = ""
            if kind is CriticalAlpha.ALPHA_ZERO_DISCORD:
                sol = zero_discord_solution(n)
                if not sol.sigma_z_exact_on_orbit:
                    raise SolverFailure(f"phi- family, n={n}: zero-discord orbit not certified")
                alpha, detail = sol.alpha, f"max_discord={sol.max_discord:.3e}"
            elif kind is CriticalAlpha.ALPHA_PLATEAU:
                alpha = critical_alpha(kind, n, window=args.plateau_window)
            else:
                alpha = critical_alpha(kind, n)
                if kind is CriticalAlpha.ALPHA_ONE:
                    w = collapse_interval_width(FamilySpec(Family.PHI_PLUS, alpha, n))
                    detail = f"collapse_width={w:.3e}"
            rows.append({"kind": kind.value, "n": n, "alpha": float(alpha), "detail": detail})
    return emit(rows, args.format, args.out, ("kind", "n", "alpha", "detail"))


def _cmd_gate(args) -> str:
    schedule = GateSchedule.parse(args.segments, tau_points=args.tau_points)
    run = run_gate(schedule, alpha=args.alpha)
    return emit(run.rows, args.format, args.out)


COMMANDS = {"sweep": _cmd_sweep, "features": _cmd_features,
            "critical-alpha": _cmd_critical, "gate": _cmd_gate}


def _fail(exc: BaseException, code: int) -> int:
    msg = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(msg), file=sys.stderr)
    return code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        text = COMMANDS[args.command](args)
    except SolverFailure as exc:
        return _fail(exc, EXIT_SOLVER)
    except (ConfigurationError, InputError, ValueError) as exc:
        return _fail(exc, EXIT_USAGE)
    except OSError as exc:
        return _fail(exc, EXIT_IO)
    except TCError as exc:
        return _fail(exc, EXIT_OTHER)
    if args.out is None:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
