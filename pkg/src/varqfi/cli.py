"""Command-line front end: figure tables as CSV plus one-shot evaluations.

Subcommands fig1/fig2/fig3 sweep the bound formulas (and optionally the
Fock oracle) over parameter grids and emit deterministic CSV; bound and
oracle evaluate a single named formula or the oracle on explicit
parameters.  Output goes to stdout unless --out is given; --plot writes a
gnuplot script referencing the CSV file.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bounds import (
    cq_min_loss_diffusion,
    cq_min_loss_thermal,
    cq_min_loss_zero_T,
    exact_qfi_squeezed,
    im_opt_squeezed,
    phase_variance_bound_full,
)
from .fock_core import InputMoments, TruncationError, squeezed_dim, thermal_dim
from .numerics import AccuracyError, OptimizationError
from .qfi_oracle import squeezed_probe_qfi
from .waveform import OpoSpectrumModel, PriorSpectrum, mse_bound_optimized

__all__ = ["main"]

# largest squeezing the default truncation rule certifies end to end
ORACLE_R_MAX = 0.8


class UsageError(Exception):
    pass


def _fmt(value):
    return "%.12g" % value


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return _fmt(value)


def _csv_text(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _log_grid(lo, hi, points):
    if not (lo > 0.0 and hi > lo and points >= 2):
        raise UsageError("grid needs 0 < min < max and at least 2 points")
    return np.logspace(math.log10(lo), math.log10(hi), int(points))


def _lin_grid(lo, hi, points):
    if not (hi > lo and points >= 2):
        raise UsageError("grid needs min < max and at least 2 points")
    return np.linspace(lo, hi, int(points))


def _float_list(text):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise UsageError("expected a comma-separated list of numbers: %r" % text)
    if not values:
        raise UsageError("empty list: %r" % text)
    return values


def _pmap(fn, items, threads):
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _emit(args, csv_text, plot_script=None):
    if args.plot and not args.out:
        raise UsageError("--plot requires --out (the script references the CSV file)")
    if args.plot and plot_script is None:
        raise UsageError("this command has no plot output")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.plot:
        with open(args.plot, "w", newline="") as fh:
            fh.write(plot_script)
    return 0


def _squeezed_moments(mean_n):
    return InputMoments(mean_n, 2.0 * mean_n * (mean_n + 1.0))


# ---------------------------------------------------------------- figures


def _plot_header(xlabel, ylabel, logscale):
    return [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set logscale " + logscale,
        "set xlabel '%s'" % xlabel,
        "set ylabel '%s'" % ylabel,
    ]


def _plot_text(header_lines, clauses):
    return "\n".join(header_lines + ["plot \\", ", \\\n".join("  " + c for c in clauses)]) + "\n"


def cmd_fig1(args):
    grid = _log_grid(args.n_min, args.n_max, args.n_points)
    rows = []
    for n_T in args.nt_list:
        for mean_n in grid:
            m = _squeezed_moments(float(mean_n))
            r = math.asinh(math.sqrt(mean_n))
            rows.append(
                (
                    float(mean_n),
                    n_T,
                    cq_min_loss_thermal(m, args.eta, n_T),
                    exact_qfi_squeezed(r, args.eta, n_T),
                )
            )
    csv = _csv_text(("mean_n", "n_T", "cq_min", "exact_qfi"), rows)
    plot = None
    if args.plot:
        clauses = []
        for n_T in args.nt_list:
            tag = _fmt(n_T)
            sel = "($2==%s?$1:1/0)" % tag
            clauses.append(
                "'%s' using %s:3 with lines title 'bound, n_T=%s'" % (args.out, sel, tag)
            )
            clauses.append(
                "'%s' using %s:4 with lines dashtype 2 title 'exact, n_T=%s'"
                % (args.out, sel, tag)
            )
        plot = _plot_text(
            _plot_header("mean photon number", "Fisher information", "xy"), clauses
        )
    return _emit(args, csv, plot)


def cmd_fig2(args):
    r_grid = _lin_grid(args.r_min, args.r_max, args.r_points)
    if args.r_min < 0.0:
        raise UsageError("squeezing grid must be nonnegative")
    oracle_dim = squeezed_dim(ORACLE_R_MAX) + thermal_dim(0.0) - 1

    def oracle_value(r):
        if not args.with_oracle or r > ORACLE_R_MAX:
            return None
        return squeezed_probe_qfi(
            r, args.eta, 0.0, args.lam, dim=oracle_dim, bath_dim=oracle_dim
        )

    oracle_vals = _pmap(oracle_value, [float(r) for r in r_grid], args.threads)
    rows = []
    for r, oracle in zip(r_grid, oracle_vals):
        mean_n = math.sinh(float(r)) ** 2
        m = _squeezed_moments(mean_n)
        row = [
            mean_n,
            cq_min_loss_diffusion(m, args.eta, args.lam),
            im_opt_squeezed(float(r), args.eta, args.lam),
        ]
        if args.with_oracle:
            row.append(oracle)
        rows.append(tuple(row))
    header = ["mean_n", "cq_min", "im_opt"]
    if args.with_oracle:
        header.append("oracle_qfi")
        skipped = sum(1 for r in r_grid if r > ORACLE_R_MAX)
        if skipped:
            print(
                "warning: oracle column left empty for %d rows with r > %g "
                "(beyond the truncation-safe range)" % (skipped, ORACLE_R_MAX),
                file=sys.stderr,
            )
    csv = _csv_text(header, rows)
    plot = None
    if args.plot:
        lines = _plot_header("mean photon number", "Fisher information", "xy")
        lines.append("set datafile missing ''")
        clauses = [
            "'%s' using 1:2 with lines title 'upper bound'" % args.out,
            "'%s' using 1:3 with lines dashtype 2 title 'measurement bound'" % args.out,
        ]
        if args.with_oracle:
            clauses.append("'%s' using 1:4 with points title 'Fock oracle'" % args.out)
        plot = _plot_text(lines, clauses)
    return _emit(args, csv, plot)


def cmd_fig3(args):
    grid = _log_grid(args.n_min, args.n_max, args.n_points)
    prior = PriorSpectrum(kappa=1.0, p=2.0, lambda_c=1.0)

    def row(pair):
        eta, flux = pair
        try:
            model = OpoSpectrumModel(16.0 * flux ** (1.0 / 3.0), flux)
            beta_star, bound, _flat = mse_bound_optimized(
                prior, model, eta, rel_tol=args.tol_rel
            )
            return (flux, eta, bound, beta_star, "")
        except (AccuracyError, OptimizationError, ValueError) as exc:
            return (flux, eta, None, None, str(exc).replace(",", ";"))

    pairs = [(eta, float(flux)) for eta in args.eta_list for flux in grid]
    rows = _pmap(row, pairs, args.threads)
    csv = _csv_text(("flux_N", "eta", "mse_bound", "beta_star", "error"), rows)
    plot = None
    if args.plot:
        clauses = []
        for eta in args.eta_list:
            tag = _fmt(eta)
            clauses.append(
                "'%s' using ($2==%s?$1:1/0):3 with lines title 'eta=%s'"
                % (args.out, tag, tag)
            )
        plot = _plot_text(_plot_header("photon flux", "MSE bound", "xy"), clauses)
    return _emit(args, csv, plot)


# ------------------------------------------------------- one-shot reports

# name -> (ordered (key, default) pairs, evaluator); None marks a required key
_BOUND_TABLE = {
    "eq15": (
        (("mean_n", None), ("var_n", None), ("eta", 1.0), ("nT", 0.0)),
        lambda p: cq_min_loss_thermal(
            InputMoments(p["mean_n"], p["var_n"]), p["eta"], p["nT"]
        ),
    ),
    "eq16": (
        (("mean_n", None), ("var_n", None), ("eta", 1.0)),
        lambda p: cq_min_loss_zero_T(InputMoments(p["mean_n"], p["var_n"]), p["eta"]),
    ),
    "eq17": (
        (("r", None), ("eta", 1.0), ("nT", 0.0)),
        lambda p: exact_qfi_squeezed(p["r"], p["eta"], p["nT"]),
    ),
    "eq21": (
        (("mean_n", None), ("var_n", None), ("eta", 1.0), ("lambda", 0.0)),
        lambda p: cq_min_loss_diffusion(
            InputMoments(p["mean_n"], p["var_n"]), p["eta"], p["lambda"]
        ),
    ),
    "eq22": (
        (("mean_n", None), ("var_n", None), ("eta", 1.0), ("nT", 0.0), ("lambda", 0.0)),
        lambda p: phase_variance_bound_full(
            InputMoments(p["mean_n"], p["var_n"]), p["eta"], p["nT"], p["lambda"]
        ),
    ),
    "eq25": (
        (("r", None), ("eta", 1.0), ("lambda", 0.0)),
        lambda p: im_opt_squeezed(p["r"], p["eta"], p["lambda"]),
    ),
}


def _parse_pairs(tokens, allowed):
    values = {}
    for tok in tokens:
        if "=" not in tok:
            raise UsageError("expected key=value, got %r" % tok)
        key, _, raw = tok.partition("=")
        if key not in allowed:
            raise UsageError(
                "unknown parameter %r (valid: %s)" % (key, ", ".join(sorted(allowed)))
            )
        try:
            values[key] = float(raw)
        except ValueError:
            raise UsageError("parameter %s needs a number, got %r" % (key, raw))
    return values


def cmd_bound(args):
    if args.name not in _BOUND_TABLE:
        raise UsageError(
            "unknown bound name %r (valid: %s)"
            % (args.name, ", ".join(sorted(_BOUND_TABLE)))
        )
    fields, evaluate = _BOUND_TABLE[args.name]
    given = _parse_pairs(args.params, {key for key, _ in fields})
    params = {}
    for key, default in fields:
        if key in given:
            params[key] = given[key]
        elif default is None:
            raise UsageError("bound %s requires %s=..." % (args.name, key))
        else:
            params[key] = default
    value = evaluate(params)
    inputs = " ".join("%s=%s" % (key, _fmt(params[key])) for key, _ in fields)
    line = "%s %s value=%s\n" % (args.name, inputs, _fmt(value))
    return _emit(args, line)


def cmd_oracle(args):
    fields = (
        ("r", None),
        ("eta", 1.0),
        ("nT", 0.0),
        ("lambda", 0.0),
        ("dim", -1.0),
        ("bath_dim", -1.0),
    )
    given = _parse_pairs(args.params, {key for key, _ in fields})
    params = {}
    for key, default in fields:
        if key in given:
            params[key] = given[key]
        elif default is None:
            raise UsageError("oracle requires %s=..." % key)
        else:
            params[key] = default
    dim = int(params["dim"])
    if dim < 0:
        dim = squeezed_dim(params["r"]) + thermal_dim(params["nT"]) - 1
    bath_dim = int(params["bath_dim"])
    if bath_dim < 0:
        bath_dim = dim
    value = squeezed_probe_qfi(
        params["r"], params["eta"], params["nT"], params["lambda"],
        dim=dim, bath_dim=bath_dim,
    )
    line = "oracle r=%s eta=%s nT=%s lambda=%s dim=%d bath_dim=%d value=%s\n" % (
        _fmt(params["r"]),
        _fmt(params["eta"]),
        _fmt(params["nT"]),
        _fmt(params["lambda"]),
        dim,
        bath_dim,
        _fmt(value),
    )
    return _emit(args, line)


# ------------------------------------------------------------- plumbing


def _add_common(parser):
    parser.add_argument("--out", help="write CSV/report to this file instead of stdout")
    parser.add_argument(
        "--plot", help="also write a gnuplot script referencing the CSV (needs --out)"
    )
    parser.add_argument(
        "--tol-rel",
        type=float,
        default=1e-8,
        help="relative tolerance for adaptive quadrature (fig3 rows)",
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="reserved; nothing in scope is random"
    )
    parser.add_argument(
        "--threads", type=int, default=1, help="parallel workers for row computations"
    )
    parser.add_argument(
        "--config", help="key=value file supplying defaults; flags override it"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="varqfi",
        description="Variational phase-estimation bounds, their Fock-space "
        "oracle, and the waveform MSE tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("fig1", help="bound vs exact information under thermal loss")
    p1.add_argument("--eta", type=float, default=0.8)
    p1.add_argument(
        "--nt-list", dest="nt_list", type=_float_list, default=[10.0, 100.0],
        help="comma-separated thermal occupations",
    )
    p1.add_argument("--n-min", type=float, default=0.1)
    p1.add_argument("--n-max", type=float, default=100.0)
    p1.add_argument("--n-points", type=int, default=50)
    _add_common(p1)
    p1.set_defaults(func=cmd_fig1)

    p2 = sub.add_parser("fig2", help="loss+diffusion bound sandwich vs probe energy")
    p2.add_argument("--eta", type=float, default=0.95)
    p2.add_argument("--lambda", dest="lam", type=float, default=0.1)
    p2.add_argument("--r-min", type=float, default=0.1)
    p2.add_argument("--r-max", type=float, default=4.7)
    p2.add_argument("--r-points", type=int, default=40)
    p2.add_argument(
        "--with-oracle", action="store_true",
        help="add a Fock-oracle column for truncation-safe rows",
    )
    _add_common(p2)
    p2.set_defaults(func=cmd_fig2)

    p3 = sub.add_parser("fig3", help="waveform MSE bound vs photon flux")
    p3.add_argument(
        "--eta-list", dest="eta_list", type=_float_list, default=[1.0, 0.95],
        help="comma-separated transmissions (1 gives the lossless reference)",
    )
    p3.add_argument("--n-min", type=float, default=1e2)
    p3.add_argument("--n-max", type=float, default=1e8)
    p3.add_argument("--n-points", type=int, default=25)
    _add_common(p3)
    p3.set_defaults(func=cmd_fig3)

    pb = sub.add_parser("bound", help="evaluate one named bound on explicit parameters")
    pb.add_argument("name", help="one of %s" % "|".join(sorted(_BOUND_TABLE)))
    pb.add_argument("params", nargs="*", help="key=value pairs")
    _add_common(pb)
    pb.set_defaults(func=cmd_bound)

    po = sub.add_parser("oracle", help="brute-force QFI of a lossy squeezed probe")
    po.add_argument("params", nargs="*", help="key=value pairs (r required)")
    _add_common(po)
    po.set_defaults(func=cmd_oracle)

    return parser, {"fig1": p1, "fig2": p2, "fig3": p3, "bound": pb, "oracle": po}


def _load_config(path):
    entries = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(
                        "%s:%d: expected key=value, got %r" % (path, lineno, line)
                    )
                key, _, value = line.partition("=")
                entries[key.strip().replace("-", "_")] = value.strip()
        return entries
    except OSError as exc:
        raise UsageError("cannot read config file: %s" % exc)


def _flag_given(argv, action):
    for opt in action.option_strings:
        for tok in argv:
            if tok == opt or tok.startswith(opt + "="):
                return True
    return False


def _apply_config(args, argv, subparser):
    entries = _load_config(args.config)
    actions = {
        a.dest: a
        for a in subparser._actions
        if a.option_strings and a.dest not in ("help", "config")
    }
    for key, raw in entries.items():
        if key not in actions:
            raise UsageError(
                "unknown config key %r (valid: %s)" % (key, ", ".join(sorted(actions)))
            )
        action = actions[key]
        if _flag_given(argv, action):
            continue
        if isinstance(action, argparse._StoreTrueAction):
            setattr(args, key, raw.lower() in ("1", "true", "yes", "on"))
        elif action.type is not None:
            try:
                setattr(args, key, action.type(raw))
            except ValueError as exc:
                raise UsageError("config key %s: %s" % (key, exc))
        else:
            setattr(args, key, raw)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            _apply_config(args, argv, subparsers[args.command])
        return args.func(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except (AccuracyError, OptimizationError, TruncationError) as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
