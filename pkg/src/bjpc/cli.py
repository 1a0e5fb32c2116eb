"""Command-line interface: ``bjpc simulate|fit|ci|region|ocs|reproduce``."""

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .estimate import BoundaryFitError, EstimationError, fit_amle, fit_mle
from .intervals import asymptotic_ci, bootstrap_ci
from .model import SampleError, SchemeError, WeibullParams, dump_dataset, load_dataset, validate_scheme
from .ocs import DEFAULT_REPS, search_optimum
from .region import DEFAULT_GRID, RULES, joint_region
from .reproduce import TABLES, reproduce
from .simulate import RngStream, simulate_mechanism, simulate_spacings

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4

SEED_ENV = "BJPC_SEED"


def default_seed():
    return int(os.environ.get(SEED_ENV, "1"))


def parse_removals(text):
    """Parse ``"14,0*8"`` style removal vectors; ``v*n`` repeats ``v`` n times."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if "*" in tok:
            v, n = tok.split("*")
            out.extend([int(v)] * int(n))
        else:
            out.append(int(tok))
    return out


def parse_params(text):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected alpha,lambda1,lambda2")
    return WeibullParams(*parts)


def _scheme_from_args(args, required=True):
    if args.m is None and args.k is None and args.R is None:
        if required:
            raise SchemeError("--m, --k and --R are required")
        return None
    if None in (args.m, args.k, args.R):
        raise SchemeError("--m, --k and --R must be given together")
    return validate_scheme(args.m, args.k, parse_removals(args.R))


def _load_sample(args):
    scheme = _scheme_from_args(args, required=False)
    return load_dataset(args.dataset, scheme=scheme)


def _emit(text, out):
    """Write machine-readable output to ``out`` or stdout; return True if a file was written."""
    if out:
        Path(out).write_text(text)
        return True
    sys.stdout.write(text)
    return False


def _fmt(x):
    return f"{x:.6g}"


# -- subcommands -----------------------------------------------------------------

def cmd_simulate(args):
    scheme = _scheme_from_args(args)
    rng = RngStream(args.seed if args.seed is not None else default_seed(), args.stream)
    gen = simulate_mechanism if args.generator == "mechanism" else simulate_spacings
    sample = gen(scheme, args.params, rng)
    text = dump_dataset(sample) + "\n"
    if _emit(text, args.out):
        print(f"wrote k={scheme.k} failures (k1={sample.k1}, k2={sample.k2}) to {args.out}")
    return EXIT_OK


def cmd_fit(args):
    sample = _load_sample(args)
    fits = []
    methods = ["mle", "amle"] if args.method == "both" else [args.method]
    for method in methods:
        try:
            if method == "mle":
                fit, diag = fit_mle(sample)
                d = fit.to_dict()
                d["iterations"] = diag.iterations
                d["alpha_bracket"] = list(diag.alpha_bracket)
            else:
                d = fit_amle(sample, xi=args.xi).to_dict()
                d["xi"] = args.xi
        except BoundaryFitError as exc:
            d = exc.fit.to_dict()
            d["boundary"] = True
        fits.append(d)
    text = json.dumps({"k1": sample.k1, "k2": sample.k2, "fits": fits}, indent=2) + "\n"
    if _emit(text, args.out):
        for d in fits:
            print(f"{d['method']:5s} alpha={_fmt(d['alpha'])} lambda1={_fmt(d['lambda1'])} "
                  f"lambda2={_fmt(d['lambda2'])}")
    return EXIT_OK


def cmd_ci(args):
    sample = _load_sample(args)
    fit, _ = fit_mle(sample)
    seed = args.seed if args.seed is not None else default_seed()
    intervals = []
    if args.method in ("asymptotic", "both"):
        intervals += asymptotic_ci(sample, fit, args.level)
    if args.method in ("bootstrap", "both"):
        intervals += bootstrap_ci(sample, fit, args.level, args.boot_reps, RngStream(seed))
    rows = [iv.to_dict() for iv in intervals]
    text = json.dumps({"fit": fit.to_dict(), "intervals": rows}, indent=2) + "\n"
    if _emit(text, args.out):
        for iv in intervals:
            print(f"{iv.method:10s} {iv.parameter:8s} [{_fmt(iv.lower)}, {_fmt(iv.upper)}]")
    return EXIT_OK


def cmd_region(args):
    sample = _load_sample(args)
    region = joint_region(sample, args.gamma, grid=args.grid, rule=args.rule)
    lo, hi = region.alpha_interval
    mle = fit_mle(sample)[0].alpha
    alphas = args.alphas if args.alphas else [mle, lo, 0.5 * (lo + hi), hi]
    rows = region.boundary(alphas)
    doc = {
        "gamma": region.gamma, "gamma1": region.gamma1, "gamma2": region.gamma2,
        "alpha_interval": [lo, hi], "volume": region.volume, "alpha_mle": mle,
        "boundary": [{"alpha": a, "lower": l, "upper": u} for a, l, u in rows],
    }
    if args.emit_boundary:
        with open(args.emit_boundary, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["alpha", "lower", "upper"])
            wr.writerows([[repr(a), repr(l), repr(u)] for a, l, u in rows])
    text = json.dumps(doc, indent=2) + "\n"
    if _emit(text, args.out):
        print(f"alpha in [{_fmt(lo)}, {_fmt(hi)}], volume {_fmt(region.volume)}")
    return EXIT_OK


def cmd_ocs(args):
    seed = args.seed if args.seed is not None else default_seed()
    ranked = search_optimum(args.m, args.k, args.design_params, args.gamma, args.family,
                            args.reps, RngStream(seed), block_size=args.block_size,
                            grid=args.grid, scale=args.scale)
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["rank", "R", "expected_volume", "volume_se", "etot", "etot_se", "reps"])
    for i, ev in enumerate(ranked, 1):
        wr.writerow([i, ev.scheme.label(), repr(ev.expected_volume), repr(ev.volume_se),
                     repr(ev.etot), repr(ev.etot_se), ev.reps])
    if _emit(buf.getvalue(), args.out):
        for i, ev in enumerate(ranked[:5], 1):
            print(f"{i:3d} R={ev.scheme.label()} E(Vol)={ev.expected_volume:.4g} "
                  f"(se {ev.volume_se:.2g}) ETOT={ev.etot:.4g}")
    return EXIT_OK


def cmd_reproduce(args):
    seed = args.seed if args.seed is not None else default_seed()
    checks = reproduce(args.table, args.scale, seed, args.boot_reps)
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["item", "published", "reproduced", "mc_se", "tolerance", "kind", "pass"])
    for c in checks:
        wr.writerow([c.item, c.published, repr(c.value), repr(c.se), c.tol, c.kind,
                     "PASS" if c.passed else "FAIL"])
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    for c in checks:
        se = "" if c.se == 0 or c.se != c.se else f" +- {c.se:.2g}"
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.item}: published {c.published:.6g}, "
              f"reproduced {c.value:.6g}{se}")
    n_pass = sum(c.passed for c in checks)
    print(f"table {args.table}: {n_pass}/{len(checks)} checks within tolerance")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def _add_scheme(p, required=False):
    p.add_argument("--m", type=int, required=required, help="units per population")
    p.add_argument("--k", type=int, required=required, help="number of observed failures")
    p.add_argument("--R", required=required, help='removals, e.g. "14,0*8"')


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bjpc",
        description="Weibull inference and optimum censoring for balanced joint progressive "
                    "Type-II censored samples.",
        epilog=f"Exit status: {EXIT_USAGE} usage error, {EXIT_VALIDATION} invalid input, "
               f"{EXIT_NUMERICAL} numerical failure. ${SEED_ENV} sets the default seed (1).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate one BJPC sample as a JSON dataset")
    _add_scheme(p, required=True)
    p.add_argument("--params", type=parse_params, required=True, metavar="A,L1,L2")
    p.add_argument("--seed", type=int)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--generator", choices=["spacings", "mechanism"], default="spacings")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="MLE and/or AMLE for a dataset")
    p.add_argument("dataset")
    _add_scheme(p)
    p.add_argument("--method", choices=["mle", "amle", "both"], default="both")
    p.add_argument("--xi", choices=["log_mean", "exact"], default="log_mean")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("ci", help="asymptotic and percentile bootstrap intervals")
    p.add_argument("dataset")
    _add_scheme(p)
    p.add_argument("--level", type=float, default=0.90)
    p.add_argument("--method", choices=["asymptotic", "bootstrap", "both"], default="both")
    p.add_argument("--boot-reps", type=int, default=1000)
    p.add_argument("--bootstrap", choices=["parametric"], default="parametric")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("region", help="exact joint confidence region and its volume")
    p.add_argument("dataset")
    _add_scheme(p)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--rule", choices=list(RULES), default="corrected",
                   help="volume quadrature: end-corrected or plain trapezoid rule")
    p.add_argument("--alphas", type=lambda s: [float(x) for x in s.split(",")],
                   help="shapes at which to emit trapezoid bounds")
    p.add_argument("--emit-boundary", metavar="CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("ocs", help="rank censoring schemes by expected region volume")
    p.add_argument("--m", type=int, required=True, help="units per population")
    p.add_argument("--k", type=int, required=True, help="number of observed failures")
    p.add_argument("--family", choices=["single_block", "exhaustive"], default="single_block")
    p.add_argument("--block-size", type=int, help="removals in the single block (default m-k)")
    p.add_argument("--gamma", type=float, default=0.1, help="1 - confidence level of the region")
    p.add_argument("--reps", type=int, default=DEFAULT_REPS, help="Monte-Carlo replications per scheme")
    p.add_argument("--design-params", type=parse_params, required=True, metavar="A,L1,L2",
                   help="parameter values at which the expected volume is evaluated")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--scale", choices=["table", "geometric"], default="table",
                   help="'table' reports 8x the geometric volume, the scale of the reference tables")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ocs)

    p = sub.add_parser("reproduce", help="regenerate a published table and compare")
    p.add_argument("table", type=int, choices=TABLES)
    p.add_argument("--scale", type=float, help="fraction of the published replication count")
    p.add_argument("--boot-reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemeError, SampleError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"bjpc: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (EstimationError, ArithmeticError) as exc:
        print(f"bjpc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
