"""Command-line interface.

Exit codes: 0 success, 1 selftest failure, 2 invalid parameters,
3 degenerate pair where an asymptote was requested, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, fields

from . import __version__
from .bounds import (DEFAULT_ORACLE_K, ClassPair, asymptotic_bound, derived_params,
                     mc_bhatt, oracle_bhatt)
from .classify import mc_error_prob
from .distributions import ParetoClass
from .errors import ConfigError, DegeneratePairError, DomainError
from .heatmap import METRICS, emit_heatmap
from .sweep import GRID_FIELDS, GridSpec, run_sweep, write_csv

EXIT_OK, EXIT_SELFTEST, EXIT_INVALID, EXIT_DEGENERATE, EXIT_IO = 0, 1, 2, 3, 4

# non-grid keys accepted in a config file, with their parsers
EXTRA_KEYS = {"csv": str, "heatmap": str, "heatmap_path": str, "workers": int,
              "oracle_k": int, "vmax": float}


def _fmt(x: float) -> str:
    return repr(float(x))


def _grid_types():
    return {f.name: (int if f.type in ("int", int) else float) for f in fields(GridSpec)}


def parse_config(text: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    types = {**_grid_types(), **EXTRA_KEYS}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in types:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = types[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return out


def _add_pair_args(p):
    p.add_argument("--alpha1", type=float, default=10.0)
    p.add_argument("--beta1", type=float, default=1.0)
    p.add_argument("--alpha2", type=float)
    p.add_argument("--beta2", type=float)
    p.add_argument("--theta", type=float, help="sqrt(alpha1/alpha2), instead of --alpha2")
    p.add_argument("--gamma", type=float, help="beta1/beta2, instead of --beta2")
    p.add_argument("--pi1", type=float, default=0.5)
    p.add_argument("--t", type=float, required=True, help="observation horizon T")


def _pair(args) -> ClassPair:
    if args.alpha2 is not None and args.theta is not None:
        raise ConfigError("give either --alpha2 or --theta, not both")
    if args.beta2 is not None and args.gamma is not None:
        raise ConfigError("give either --beta2 or --gamma, not both")
    if args.alpha2 is None and args.theta is None:
        raise ConfigError("one of --alpha2 / --theta is required")
    if args.beta2 is None and args.gamma is None:
        raise ConfigError("one of --beta2 / --gamma is required")
    if args.theta is not None and not 0 < args.theta <= 1:
        raise ConfigError("--theta must lie in (0, 1]")
    if args.gamma is not None and not args.gamma > 0:
        raise ConfigError("--gamma must be positive")
    alpha2 = args.alpha2 if args.alpha2 is not None else args.alpha1 / args.theta ** 2
    beta2 = args.beta2 if args.beta2 is not None else args.beta1 / args.gamma
    return ClassPair(ParetoClass(args.alpha1, args.beta1), ParetoClass(alpha2, beta2), args.pi1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renewal-bhatt",
        description="Bhattacharyya bound and Bayes error for two-class Pareto renewal processes.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="asymptotic bound B*(T)")
    _add_pair_args(p)

    p = sub.add_parser("mc-b", help="importance-sampling estimate of B(T)")
    _add_pair_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("oracle-b", help="renewal-series (convolution) value of B(T)")
    _add_pair_args(p)
    p.add_argument("--k", type=int, default=DEFAULT_ORACLE_K, help="grid nodes per alpha2")

    p = sub.add_parser("pe", help="Monte-Carlo Bayes error probability")
    _add_pair_args(p)
    p.add_argument("--m", type=int, required=True, help="realizations per class")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep", help="run the (T, theta, gamma) grid")
    p.add_argument("--config", help="flat key = value file")
    for name, typ in _grid_types().items():
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=typ)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv", help="output CSV path")
    p.add_argument("--heatmap", choices=METRICS, help="metric to render")
    p.add_argument("--heatmap-path", dest="heatmap_path", help="output SVG path")
    p.add_argument("--vmax", type=float)
    p.add_argument("--oracle-k", dest="oracle_k", type=int)

    sub.add_parser("selftest", help="run the instant anchor checks")
    return parser


def _cmd_bound(args):
    pair = _pair(args)
    print(_fmt(asymptotic_bound(derived_params(pair), pair.c2.alpha, args.t)))


def _cmd_mc_b(args):
    est = mc_bhatt(_pair(args), args.t, args.m, args.seed, workers=args.workers)
    print(_fmt(est.value), _fmt(est.std_err))


def _cmd_oracle_b(args):
    pair = _pair(args)
    value = oracle_bhatt(pair, args.t, k=args.k)
    print(_fmt(value))
    print(f"# trapezoidal convolution, step alpha2/{args.k} = {pair.c2.alpha / args.k:g}; "
          "discretization error shrinks with --k", file=sys.stderr)


def _cmd_pe(args):
    est = mc_error_prob(_pair(args), args.t, args.m, args.seed, workers=args.workers)
    print(_fmt(est.value), _fmt(est.std_err))


def _cmd_sweep(args):
    settings = {}
    if args.config:
        try:
            with open(args.config) as fh:
                settings.update(parse_config(fh.read()))
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
    for key in (*GRID_FIELDS, *EXTRA_KEYS):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    grid = {k: v for k, v in settings.items() if k in GRID_FIELDS}
    if (grid.get("m_bhatt", 0) or grid.get("m_pe", 0)) and "seed" not in grid:
        raise ConfigError("randomized sweeps need an explicit seed")
    spec = GridSpec(**grid)
    workers = settings.get("workers", 1)
    if "csv" not in settings:
        raise ConfigError("sweep needs --csv (or csv = ... in the config)")
    heatmap = settings.get("heatmap")
    if heatmap is not None and heatmap not in METRICS:
        raise ConfigError(f"heatmap metric must be one of {METRICS}")
    effective = {**asdict(spec), "workers": workers,
                 **{k: v for k, v in settings.items() if k in EXTRA_KEYS}}
    for key, value in effective.items():
        print(f"{key} = {value}", file=sys.stderr)
    results = run_sweep(spec, workers)
    write_csv(results, settings["csv"])
    if heatmap:
        path = settings.get("heatmap_path") or f"{settings['csv'].rsplit('.', 1)[0]}_{heatmap}.svg"
        emit_heatmap(results, heatmap, path, settings.get("vmax", 1.0))


def _cmd_selftest(args):
    from .selftest import run_selftest

    return EXIT_OK if run_selftest() else EXIT_SELFTEST


COMMANDS = {"bound": _cmd_bound, "mc-b": _cmd_mc_b, "oracle-b": _cmd_oracle_b,
            "pe": _cmd_pe, "sweep": _cmd_sweep, "selftest": _cmd_selftest}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args) or EXIT_OK
    except DegeneratePairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
