"""Command-line surface: evaluate, sweep, optimize, thresholds, oracle checks,
and figure-data emission.

Exit codes: 0 success, 2 invalid arguments/config, 3 numerical failure
(diagnostic JSON on stdout), 4 output write failure.  Single values are
printed as one JSON record carrying every parameter needed to re-run the
identical computation; curves and surfaces go to CSV (UTF-8, LF endings,
17 significant digits) with provenance in '#'-prefixed preamble lines.
A flat ``key = value`` config file can seed any option; explicit flags win.
``LEVY_LAB_THREADS`` caps sweep parallelism.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from . import __version__
from .calculus import deriv_s_J_infty, thresholds
from .functionals import (
    EfficiencyQuery,
    LongTimeQuery,
    eval_efficiency_result,
    eval_J_infty,
    eval_L_surface,
    eval_scaled,
    g_scaled,
    j_infty,
    stationary_overlap,
)
from .optimize import (
    FunctionalHandle,
    find_extremum,
    minimizer_drift,
    scaled_efficiency_handle,
    scan,
)
from .oracle import default_comparisons
from .quadrature import QuadratureError
from .spectra import DomainShape, ball, band_density, interval, uniform_prey
from .calculus import deriv_s_unnormalized
from .functionals import eval_efficiency

FIG_NAMES = ("fig2", "fig3", "fig4", "fig5", "fig6")
_S_GRID_DEFAULT = "0.01:0.99:97"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def parse_shape(text: str) -> DomainShape:
    """'interval:a,b' or 'ball:n,R'."""
    try:
        kind, rest = text.split(":", 1)
        parts = [float(p) for p in rest.split(",")]
        if kind == "interval":
            a, b = parts
            return interval(a, b)
        if kind == "ball":
            n, R = parts
            return ball(int(n), R)
    except (ValueError, TypeError):
        pass
    raise argparse.ArgumentTypeError(
        f"cannot parse shape {text!r}; expected interval:a,b or ball:n,R"
    )


def parse_grid(text: str) -> np.ndarray:
    """'lo:hi:count' inclusive grid."""
    try:
        lo, hi, cnt = text.split(":")
        return np.linspace(float(lo), float(hi), int(cnt))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"cannot parse grid {text!r}; expected lo:hi:count"
        )


def apply_config(argv: list, parser: argparse.ArgumentParser) -> list:
    """Expand --config FILE into CLI tokens ahead of the explicit flags."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        parser.error("--config needs a file path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    known = {opt for action in parser._actions for opt in action.option_strings}
    flags = {opt for action in parser._actions if isinstance(
        action, (argparse._StoreTrueAction, argparse._StoreFalseAction))
        for opt in action.option_strings}
    tokens: list = []
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        parser.error(f"cannot read config {path}: {exc}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            parser.error(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        opt = "--" + key.replace("_", "-")
        if opt not in known:
            parser.error(f"{path}:{lineno}: unknown key {key!r}")
        if opt in flags:
            if value.lower() in ("true", "1", "yes"):
                tokens.append(opt)
            elif value.lower() not in ("false", "0", "no"):
                parser.error(f"{path}:{lineno}: boolean key {key!r} got {value!r}")
        else:
            tokens.extend([opt, value])
    # config first so explicit flags override
    return tokens + rest


def emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True))


def write_csv(path: str, header: str, rows, provenance: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(provenance):
            fh.write(f"# {key} = {provenance[key]}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    params = {"functional": args.functional, "s": args.s, "T": args.T, "r": args.r}
    if args.functional in ("J", "Junnorm", "g"):
        normalized = args.functional != "Junnorm"
        if args.band is not None:
            c, b = args.band
            spec = band_density(c, b)
            params.update(band_center=c, band_half_width=b)
            res = eval_efficiency_result(
                EfficiencyQuery(spec, args.s, args.T, normalized=normalized))
            value, err, tb = res.value, res.error_estimate, res.tail_bound
        elif args.shape is not None:
            params.update(shape=args.shape_text)
            if args.functional == "g":
                value = g_scaled(args.shape, args.r, args.s, args.T)
            else:
                value = eval_scaled(args.shape, args.r, args.s, args.T)
                value = value if normalized else args.T * value
            err = tb = 0.0  # folded into the quadrature tolerances
        else:
            raise ValueError("J-type functionals need --shape or --band")
    elif args.functional == "Jinf":
        params = {"functional": "Jinf", "R": args.R, "r": args.r, "s": args.s}
        value = eval_J_infty(LongTimeQuery(R=args.R, r=args.r, s=args.s))
        err = tb = 0.0
    elif args.functional == "L":
        params = {"functional": "L", "s": args.s, "r": args.r}
        value = eval_L_surface(args.s, args.r)
        err = tb = 0.0
    elif args.functional == "overlap":
        if args.omega1 is None or args.omega2 is None:
            raise ValueError("overlap needs --omega1 and --omega2")
        params = {"functional": "overlap", "omega1": args.omega1_text,
                  "omega2": args.omega2_text}
        value = stationary_overlap(args.omega1, args.omega2)
        err = tb = 0.0
    else:
        raise ValueError(f"unknown functional {args.functional}")
    emit({"functional": params.pop("functional"), "params": params,
          "value": value, "error_estimate": err, "tail_bound": tb})
    return 0


def _figure_rows(name: str):
    """(filename, header, rows, provenance) tuples for one named figure."""
    s_grid = np.linspace(0.01, 0.99, 97)
    base = interval(-1.0, 1.0)
    if name == "fig2":
        for a in (0.08, 0.3, 2.0):
            spec = band_density(0.0, a)
            rows = [(s, eval_efficiency(EfficiencyQuery(spec, s, 1.0, normalized=False)))
                    for s in s_grid]
            yield (f"fig2_a{a:g}.csv", "s,value",
                   rows, {"panel": f"a={a:g}", "T": 1, "grid": "s=0.01:0.99:97"})
    elif name == "fig3":
        w = 1.0 / (3.0 * math.pi)
        for rc in (0.0, 0.16, 3.0):
            spec = band_density(rc, w)
            rows = [(s, eval_efficiency(EfficiencyQuery(spec, s, 1.0, normalized=False)))
                    for s in s_grid]
            yield (f"fig3_r{rc:g}.csv", "s,value",
                   rows, {"panel": f"r={rc:g}", "T": 1, "half_width": w,
                          "grid": "s=0.01:0.99:97"})
    elif name == "fig4":
        xi_grid = np.linspace(0.0, 12.0, 257)
        for a in (0.035, 0.1, 0.5):
            rows = []
            for xi in xi_grid:
                v = 4.0 if xi == 0.0 else (math.sin(2 * math.pi * a * xi)
                                           / (math.pi * a * xi)) ** 2
                rows.append((xi, v))
            yield (f"fig4_a{a:g}.csv", "xi,value",
                   rows, {"panel": f"a={a:g}", "grid": "xi=0:12:257"})
    elif name == "fig5":
        for T, tag in ((1.0, "1"), (1e8, "1e8")):
            rows = [(s, eval_scaled(base, 1e4, s, T)) for s in s_grid]
            yield (f"fig5_T{tag}.csv", "s,value",
                   rows, {"panel": f"T={tag}", "base": "interval:-1,1",
                          "dilation": 1e4, "grid": "s=0.01:0.99:97"})
    elif name == "fig6":
        s64 = np.linspace(0.01, 0.99, 64)
        r64 = np.linspace(0.0, 5.0, 64)
        rows = [(s, r, eval_L_surface(float(s), float(r)))
                for r in r64 for s in s64]
        yield ("fig6_L.csv", "s,r,value",
               rows, {"surface": "L(s,r)", "T": 1,
                      "grid": "s=0.01:0.99:64 x r=0:5:64"})
    else:
        raise ValueError(f"unknown figure {name!r}")


def cmd_figure(args) -> int:
    names = FIG_NAMES if args.name == "all" else (args.name,)
    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    for name in names:
        for fname, header, rows, prov in _figure_rows(name):
            path = os.path.join(args.out_dir, fname)
            try:
                write_csv(path, header, rows, prov)
            except OSError as exc:
                print(f"error: cannot write {path}: {exc}", file=sys.stderr)
                return 4
            written.append(path)
    emit({"figure": args.name, "files": written})
    return 0


def _sweep_handle(args) -> FunctionalHandle:
    if args.functional in ("J", "Junnorm"):
        if args.band is not None:
            c, b = args.band
            spec = band_density(c, b)
            normalized = args.functional == "J"
            return FunctionalHandle(
                value=lambda s: eval_efficiency(
                    EfficiencyQuery(spec, s, args.T, normalized=normalized)),
                derivative=lambda s: (1.0 if not normalized else 1.0 / args.T)
                * deriv_s_unnormalized(spec, s, args.T),
                provenance={"functional": args.functional, "band": f"{c},{b}",
                            "T": args.T},
            )
        if args.shape is None:
            raise ValueError("sweep needs --shape or --band")
        return scaled_efficiency_handle(args.shape, args.r, args.T)
    if args.functional == "Jinf":
        return FunctionalHandle(
            value=lambda s: j_infty(args.R, args.r, s),
            derivative=lambda s: deriv_s_J_infty(args.R, args.r, s),
            provenance={"functional": "Jinf", "R": args.R, "r": args.r},
        )
    raise ValueError(f"cannot sweep functional {args.functional!r}")


def cmd_sweep(args) -> int:
    handle = _sweep_handle(args)
    grid = args.s_grid
    curve = scan(handle, float(grid[0]), float(grid[-1]), len(grid))
    rows = []
    for i, s in enumerate(curve.grid):
        d = curve.derivatives[i] if curve.derivatives is not None else math.nan
        rows.append((s, curve.values[i], d))
    prov = dict(curve.provenance)
    prov["s_grid"] = args.s_grid_text
    try:
        write_csv(args.out, "s,value,derivative", rows, prov)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 4
    emit({"sweep": prov, "points": len(rows), "failures": list(curve.failures),
          "out": args.out})
    return 0


def cmd_optimize(args) -> int:
    kind = "min" if args.minimize else "max"
    if args.drift_T:
        drift = minimizer_drift(args.shape, args.r, args.drift_T)
        emit({"minimizer_drift": [
            {"T": T, "location": loc, "classification": cls}
            for T, loc, cls in drift],
            "params": {"shape": args.shape_text, "r": args.r}})
        return 0
    handle = scaled_efficiency_handle(args.shape, args.r, args.T)
    rep = find_extremum(handle, kind, args.s_lo, args.s_hi, tol=args.tol)
    emit({"kind": rep.kind, "location": rep.location, "value": rep.value,
          "bracket": list(rep.bracket), "classification": rep.classification,
          "converged": rep.converged,
          "params": {"shape": args.shape_text, "r": args.r, "T": args.T,
                     "s_lo": args.s_lo, "s_hi": args.s_hi, "tol": args.tol}})
    return 0


def cmd_thresholds(args) -> int:
    rep = thresholds(args.R, args.sigma)
    emit({"M": rep.M, "m_sigma": rep.m_sigma, "r_Omega": rep.r_Omega,
          "r_sigma_Omega": rep.r_sigma_Omega, "sigma": rep.sigma, "R": rep.R,
          "grid_truncated": rep.grid_truncated})
    return 0


def cmd_oracle(args) -> int:
    comps = default_comparisons()
    for c in comps:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: primary={_fmt(c.primary_value)} "
              f"oracle={_fmt(c.oracle_value)} rel_gap={c.rel_gap:.3e} "
              f"tol={c.tolerance:.0e}")
    emit({"comparisons": len(comps), "passed": sum(c.passed for c in comps)})
    return 0 if all(c.passed for c in comps) else 3


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levylab",
        description="Levy-foraging efficiency functionals: evaluation, "
                    "derivatives, sweeps, optimization, thresholds, figure data.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, shape=True, band=False, time=True):
        p.add_argument("--config", help="flat key = value config file")
        if shape:
            p.add_argument("--shape", type=str, default=None,
                           help="interval:a,b or ball:n,R")
        if band:
            p.add_argument("--band", type=str, default=None,
                           help="center,half_width frequency band")
        p.add_argument("--r", type=float, default=1.0, help="dilation / shift")
        p.add_argument("--s", type=float, default=0.5, help="Levy exponent")
        if time:
            p.add_argument("--T", type=float, default=1.0, help="time span")

    p_eval = sub.add_parser("eval", help="evaluate one functional")
    p_eval.add_argument("--functional", required=True,
                        choices=["J", "Junnorm", "g", "Jinf", "L", "overlap"])
    add_common(p_eval, band=True)
    p_eval.add_argument("--R", type=float, default=1.0,
                        help="interval half-length (Jinf)")
    p_eval.add_argument("--omega1", type=str, default=None)
    p_eval.add_argument("--omega2", type=str, default=None)
    p_eval.set_defaults(func=cmd_eval)

    p_fig = sub.add_parser("figure", help="emit figure data CSVs")
    p_fig.add_argument("name", choices=FIG_NAMES + ("all",))
    p_fig.add_argument("--out-dir", default="figures_csv")
    p_fig.add_argument("--config", help="flat key = value config file")
    p_fig.set_defaults(func=cmd_figure)

    p_sweep = sub.add_parser("sweep", help="sample a functional over an s-grid")
    p_sweep.add_argument("--functional", default="J",
                         choices=["J", "Junnorm", "Jinf"])
    add_common(p_sweep, band=True)
    p_sweep.add_argument("--R", type=float, default=1.0)
    p_sweep.add_argument("--s-grid", default=_S_GRID_DEFAULT,
                         help="lo:hi:count")
    p_sweep.add_argument("--out", default="sweep.csv")
    p_sweep.set_defaults(func=cmd_sweep)

    p_opt = sub.add_parser("optimize", help="locate an extremal Levy exponent")
    group = p_opt.add_mutually_exclusive_group()
    group.add_argument("--min", dest="minimize", action="store_true")
    group.add_argument("--max", dest="minimize", action="store_false")
    p_opt.set_defaults(minimize=True)
    add_common(p_opt)
    p_opt.add_argument("--s-lo", type=float, default=0.05)
    p_opt.add_argument("--s-hi", type=float, default=0.99)
    p_opt.add_argument("--tol", type=float, default=1e-5)
    p_opt.add_argument("--drift-T", type=float, nargs="*", default=None,
                       help="minimizer drift over this list of T values")
    p_opt.set_defaults(func=cmd_optimize)

    p_thr = sub.add_parser("thresholds", help="long-search dilation thresholds")
    p_thr.add_argument("--config", help="flat key = value config file")
    p_thr.add_argument("--R", type=float, required=True)
    p_thr.add_argument("--sigma", type=float, required=True)
    p_thr.set_defaults(func=cmd_thresholds)

    p_or = sub.add_parser("oracle", help="run the oracle comparison battery")
    p_or.add_argument("--all", action="store_true", default=True)
    p_or.add_argument("--config", help="flat key = value config file")
    p_or.set_defaults(func=cmd_oracle)
    return parser


def _post_parse(args) -> None:
    if getattr(args, "shape", None) is not None:
        args.shape_text = args.shape
        args.shape = parse_shape(args.shape)
    if getattr(args, "band", None) is not None:
        try:
            c, b = (float(x) for x in args.band.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"cannot parse band {args.band!r}; expected center,half_width")
        args.band = (c, b)
    for name in ("omega1", "omega2"):
        if getattr(args, name, None) is not None:
            setattr(args, name + "_text", getattr(args, name))
            setattr(args, name, parse_shape(getattr(args, name)))
    if getattr(args, "s_grid", None) is not None:
        args.s_grid_text = args.s_grid
        args.s_grid = parse_grid(args.s_grid)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # locate the subcommand to expand --config against its own options
    sub_actions = [a for a in parser._actions
                   if isinstance(a, argparse._SubParsersAction)]
    if argv and sub_actions and argv[0] in sub_actions[0].choices:
        subparser = sub_actions[0].choices[argv[0]]
        argv = [argv[0]] + apply_config(argv[1:], subparser)
    args = parser.parse_args(argv)
    try:
        _post_parse(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except (QuadratureError, ValueError) as exc:
        emit({"error": str(exc), "type": type(exc).__name__,
              "command": args.command})
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
