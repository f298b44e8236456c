"""Command-line interface.

Exit codes: 0 success, 1 parse error, 2 validation error, 3 numerical error.
Global options (--seed, --restarts, --tol, --output) default to the
environment variables ENTK_SEED, ENTK_RESTARTS, ENTK_TOL and ENTK_OUTPUT.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .dynamics import (
    LindbladModel,
    evolve,
    fit_exponential,
    parse_channel,
)
from .errors import EntkError, NumericalError, ValidationError
from .families import FAMILIES
from .io import ParseError, csv_lines, dumps_state, parse_named_state, read_csv, resolve_state
from .pure import ProjectorMix, default_mix, parse_pattern
from .roof import (
    algebraic_lower_bounds,
    build_correlation_tensor,
    compute_bounds,
    optimized_lower_bound,
    quasi_pure_approximation,
    quasi_pure_z,
    spectral_T,
)
from .states import PureState, is_ppt, schmidt_decompose

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3

log = logging.getLogger("entk")


def _env(name, cast, default):
    raw = os.environ.get(f"ENTK_{name}")
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise ParseError(f"ENTK_{name}={raw!r} is not a valid {cast.__name__}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=None, help="random seed (env ENTK_SEED, default 0)")
    g.add_argument("--restarts", type=int, default=None, help="simplex restarts (env ENTK_RESTARTS, default 20)")
    g.add_argument("--tol", type=float, default=None, help="state validation tolerance (env ENTK_TOL, default 1e-10)")
    g.add_argument("--output", "-o", default=None, help="output file (env ENTK_OUTPUT, default stdout)")
    return p


def _resolve_globals(args):
    if args.seed is None:
        args.seed = _env("SEED", int, 0)
    if args.restarts is None:
        args.restarts = _env("RESTARTS", int, 20)
    if args.tol is None:
        args.tol = _env("TOL", float, 1e-10)
    if args.output is None:
        args.output = _env("OUTPUT", str, None)


def _config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _meta(args, config: dict) -> dict:
    return {"version": __version__, "seed": args.seed, "config_hash": _config_hash(config)}


def _csv_header(meta: dict) -> list[str]:
    return [f"# entk {meta['version']}", f"# seed: {meta['seed']}", f"# config_hash: {meta['config_hash']}"]


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _state_config(args, **extra):
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "output")}
    cfg.update(extra)
    return cfg


# ------------------------------------------------------------------ subcommands


def cmd_gen(args):
    spec = args.state
    if args.a is not None:
        if spec not in FAMILIES:
            raise ParseError(f"--a only applies to {sorted(FAMILIES)}")
        spec = f"{spec}:a={args.a!r}"
    state = parse_named_state(spec)
    meta = _meta(args, _state_config(args))
    meta["source"] = spec
    _emit(args, dumps_state(state, meta))


def cmd_schmidt(args):
    state = resolve_state(args.state, args.tol)
    if not isinstance(state, PureState):
        raise ValidationError("schmidt needs a pure state (a file with a 'vector' entry)")
    dec = schmidt_decompose(state, args.split)
    meta = _meta(args, _state_config(args))
    lines = _csv_header(meta) + csv_lines(["index", "coefficient"], enumerate(dec.coefficients))
    _emit(args, "\n".join(lines) + "\n")


def _parse_mix(text: str, n: int) -> ProjectorMix:
    if text in (None, "default"):
        return default_mix(n)
    if text == "bipartite":
        return ProjectorMix.bipartite()
    weights = {}
    for item in text.split(","):
        pat, _, w = item.partition("*")
        pat = pat.strip().replace("m", "-").replace("p", "+")
        try:
            weights[parse_pattern(pat)] = float(w) if w else 4.0
        except ValueError as exc:
            raise ParseError(f"bad mix entry {item!r}: {exc}") from exc
    return ProjectorMix(n, weights)


def cmd_bounds(args):
    state = resolve_state(args.state, args.tol)
    mix = _parse_mix(args.mix, len(state.dims))
    rep = compute_bounds(
        state,
        mix,
        restarts=args.restarts,
        max_iters=args.max_iters,
        seed=args.seed,
        upper=args.upper,
        upper_iters=args.upper_iters,
    )
    out = rep.as_dict()
    out["dims"] = list(state.dims)
    out["meta"] = _meta(args, _state_config(args))
    _emit(args, json.dumps(out, indent=1, sort_keys=True) + "\n")


def cmd_dynamics(args):
    state = resolve_state(args.state, args.tol)
    channel = parse_channel(args.channel)
    n = len(state.dims)
    if any(d != 2 for d in state.dims):
        raise ValidationError(f"dynamics needs qubit factors, got dims {state.dims}")
    if args.points < 2 or not args.tmax > 0:
        raise ValidationError("need --points >= 2 and --tmax > 0")
    times = np.linspace(0.0, args.tmax, args.points)
    model = LindbladModel(n, channel)
    obs = args.observable
    if obs in ("auto", "wootters") and n == 2:
        names, mix = ("concurrence", "entropy", "lambda_max"), None
    elif obs == "gap":
        if n != 2:
            raise ValidationError("the gap observable is defined for two qubits")
        names, mix = ("gap", "entropy", "lambda_max"), None
    elif obs == "wootters":
        raise ValidationError("the Wootters observable is defined for two qubits")
    else:
        names, mix = ("concurrence", "entropy", "lambda_max"), default_mix(n)
    traj = evolve(state, model, times, observables=names, mix=mix, max_dim=args.max_dim)
    meta = _meta(args, _state_config(args))
    rows = zip(traj.times, *(traj.observables[k] for k in names))
    lines = _csv_header(meta) + [f"# observable: {obs}"] + csv_lines(["t", "value", "entropy", "lambda_max"], rows)
    _emit(args, "\n".join(lines) + "\n")


def cmd_fit(args):
    try:
        with open(args.csv, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {args.csv}") from exc
    header, data = read_csv(text)
    if args.column not in header:
        raise ParseError(f"column {args.column!r} not in {header}")
    t = data[:, 0]
    v = data[:, header.index(args.column)]
    window = None
    if args.window:
        try:
            lo, hi = (float(x) for x in args.window.split(","))
        except ValueError as exc:
            raise ParseError("--window takes 't_start,t_end'") from exc
        window = (lo, hi)
    f = fit_exponential(t, v, window)
    out = {
        "A": f.A,
        "gamma": f.gamma,
        "B": f.B,
        "residual": f.residual,
        "window": list(f.window),
        "n_samples": f.n_samples,
        "meta": _meta(args, _state_config(args)),
    }
    _emit(args, json.dumps(out, indent=1, sort_keys=True) + "\n")


def scan_row(family: str, a: float, restarts: int, seed: int, max_iters: int = 500):
    """(a, min partial-transpose eigenvalue, best algebraic, optimized, quasi-pure)."""
    rho = FAMILIES[family](a)
    _, min_eig = is_ppt(rho)
    tensor = build_correlation_tensor(rho)
    fam = spectral_T(tensor)
    if len(fam) == 0:
        return (a, min_eig, 0.0, 0.0, 0.0)
    alg = max(algebraic_lower_bounds(fam))
    try:
        qp = quasi_pure_approximation(tensor)
        extra = [quasi_pure_z(fam)]
    except NumericalError:
        qp, extra = float("nan"), []
    opt = optimized_lower_bound(fam, restarts, max_iters, seed, extra_starts=extra)
    return (a, min_eig, alg, opt.value, qp)


def cmd_ppt_scan(args):
    if args.family not in FAMILIES:
        raise ParseError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES)}")
    if args.points < 1:
        raise ValidationError("--points must be >= 1")
    grid = np.linspace(args.start, args.stop, args.points)
    rows = [scan_row(args.family, float(a), args.restarts, args.seed, args.max_iters) for a in grid]
    meta = _meta(args, _state_config(args))
    header = ["a", "min_pt_eigenvalue", "best_algebraic", "optimized", "quasi_pure"]
    _emit(args, "\n".join(_csv_header(meta) + csv_lines(header, rows)) + "\n")


# ------------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(prog="entk", description="Concurrence estimates and entanglement dynamics.")
    p.add_argument("--version", action="version", version=f"entk {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="write a named state to a JSON file")
    s.add_argument("state", help="named state, e.g. ghz:3, w:4, bell:phi+, maxent:3, hor33:a=0.5, or a family name with --a")
    s.add_argument("--a", type=float, default=None, help="family parameter")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("schmidt", parents=[common], help="Schmidt coefficients of a pure state as CSV")
    s.add_argument("state", help="state file or named state")
    s.add_argument("--split", type=int, default=1, help="number of leading factors on the left side")
    s.set_defaults(func=cmd_schmidt)

    s = sub.add_parser("bounds", parents=[common], help="lower and upper concurrence bounds as JSON")
    s.add_argument("state", help="state file or named state")
    s.add_argument(
        "--mix",
        default="default",
        help="'default', 'bipartite', or comma-separated sign patterns with optional weight, "
        "e.g. --mix=--+ or --mix=mmp*2 (m/p stand for -/+)",
    )
    s.add_argument("--upper", action="store_true", help="also run the gradient upper bound")
    s.add_argument("--max-iters", type=int, default=500, help="simplex iterations per start")
    s.add_argument("--upper-iters", type=int, default=2000, help="conjugate-gradient iterations")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("dynamics", parents=[common], help="Lindblad evolution of a qubit state as CSV")
    s.add_argument("--state", required=True, help="state file or named state")
    s.add_argument("--channel", required=True, help="zero:G, thermal:G,nbar, infinite:G or dephasing:G")
    s.add_argument("--tmax", type=float, default=100.0)
    s.add_argument("--points", type=int, default=200)
    s.add_argument("--observable", choices=["auto", "qp", "wootters", "gap"], default="auto")
    s.add_argument("--max-dim", type=int, default=64, help="Hilbert-space dimension cap")
    s.set_defaults(func=cmd_dynamics)

    s = sub.add_parser("fit", parents=[common], help="fit A exp(-gamma t) + B to a CSV column")
    s.add_argument("csv", help="CSV with time in the first column")
    s.add_argument("--column", default="value")
    s.add_argument("--window", default=None, help="t_start,t_end (default: automatic window)")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("ppt-scan", parents=[common], help="bounds along a Horodecki family as CSV")
    s.add_argument("family", help=f"one of {sorted(FAMILIES)}")
    s.add_argument("--from", dest="start", type=float, default=0.0)
    s.add_argument("--to", dest="stop", type=float, default=1.0)
    s.add_argument("--points", type=int, default=50)
    s.add_argument("--max-iters", type=int, default=500)
    s.set_defaults(func=cmd_ppt_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        _resolve_globals(args)
        args.func(args)
    except ParseError as exc:
        print(f"entk: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"entk: validation error: {exc}", file=sys.stderr)
        for v in getattr(exc, "violations", [])[1:]:
            print(f"  also: {v}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, ArithmeticError) as exc:
        print(f"entk: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"entk: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EntkError as exc:
        print(f"entk: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
