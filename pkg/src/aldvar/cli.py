"""Command-line surface.

Subcommands: ``quantile`` (one severity, one method), ``sweep`` (tail-index
grid to CSV), ``bench`` (reference tables to CSV), ``simstudy`` (sampling-error
study), ``precision`` (quantile-precision formulas). Every run echoes its
resolved configuration, seed included, so output is reproducible from the
printed line alone.

Exit codes: 0 success, 2 argument/parse error, 3 domain error,
4 non-convergence.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import approx, harness, montecarlo, precision
from .errors import ConvergenceError, DomainError, InterpolationError
from .severity import parse_severity

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NONCONVERGENCE = 4

OUTPUT_DIR_ENV = "ALDVAR_OUTPUT_DIR"


def _out_path(name: str | None, default: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV, ".")
    return os.path.join(base, name or default)


def _fmt6(x: float) -> str:
    return f"{x:.6g}"


def _echo_config(args: argparse.Namespace, extras: dict | None = None) -> None:
    pairs = {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    if extras:
        pairs.update(extras)
    print("config: " + " ".join(f"{k}={v}" for k, v in pairs.items()))


def _endpoints_from_args(args: argparse.Namespace, model) -> tuple[float, float] | None:
    mode = getattr(args, "endpoints_mode", "table1")
    if mode == "fixed":
        return approx.FIXED_ENDPOINTS
    if mode == "custom":
        if not getattr(args, "endpoints", None):
            raise DomainError("--endpoints-mode custom requires --endpoints LO,HI")
        lo, hi = (float(t) for t in args.endpoints.split(","))
        return (lo, hi)
    return None  # per-family catalog defaults


def cmd_quantile(args: argparse.Namespace) -> int:
    model = parse_severity(args.severity)
    _echo_config(args)
    method = args.method.upper()
    if method == "MC":
        config = montecarlo.SimConfig(model=model, lam=args.lam, years=int(args.years),
                                      alphas=(args.alpha,), seed=args.seed,
                                      workers=args.workers)
        sim = montecarlo.run_simulation(config)
        print(f"method=MC alpha={args.alpha} value={_fmt6(sim.var[args.alpha])} "
              f"stderr={_fmt6(sim.stderr[args.alpha])} years={int(args.years)} seed={args.seed}")
        return EXIT_OK
    inputs = approx.ApproxInputs(model, args.lam, args.alpha,
                                 endpoints=_endpoints_from_args(args, model))
    fn = {"SLA": approx.sla, "ISLA": approx.isla, "MISLA": approx.misla}[method]
    est = fn(inputs)
    print(f"method={est.method} alpha={args.alpha} value={_fmt6(est.value)} "
          f"branch={est.branch} base={_fmt6(est.base_term)} "
          f"correction={_fmt6(est.correction_term)}")
    for key, val in sorted(est.diagnostics.items()):
        print(f"  {key}={val}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    model = parse_severity(args.severity)
    _echo_config(args)
    grid = harness.parse_grid(args.grid)
    out = _out_path(args.output, "sweep.csv")
    points = harness.run_sweep(model, args.lam, args.alpha, grid,
                               endpoints=_endpoints_from_args(args, model),
                               output_path=out)
    print(f"sweep: {len(points)} grid points -> {out}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    overrides = {}
    if args.config:
        overrides = harness.parse_config_file(args.config)
    table = overrides.get("table", args.table)
    mc_years = int(float(overrides.get("mc_years", args.mc_years)))
    seed = int(overrides.get("seed", args.seed))
    endpoints_mode = overrides.get("endpoints_mode", args.endpoints_mode)
    output = overrides.get("output", args.output)
    methods = tuple(m.strip().upper() for m in args.methods.split(","))
    config = harness.BenchConfig(table=table, mc_years=mc_years, seed=seed,
                                 methods=methods, endpoints_mode=endpoints_mode,
                                 output_path=_out_path(output, f"{table}.csv"),
                                 mc_workers=args.workers)
    _echo_config(args, {"resolved_table": table, "resolved_seed": seed,
                        "resolved_mc_years": mc_years})
    rows = harness.run_table(config)
    for r in rows:
        pct = "" if r.pct_diff_vs_mc is None else f" pct_diff={r.pct_diff_vs_mc:+.4f}%"
        rt = "" if r.runtime_seconds is None else f" runtime={r.runtime_seconds:.4g}s"
        alpha = "" if r.alpha is None else f" alpha={r.alpha}"
        print(f"{r.severity:6s} {r.method:13s}{alpha} value={_fmt6(r.value)}{pct}{rt}")
    print(f"bench: {len(rows)} rows -> {config.output_path}")
    return EXIT_OK


def cmd_simstudy(args: argparse.Namespace) -> int:
    config = harness.BenchConfig(table="T6_simstudy", seed=args.seed,
                                 runs=args.runs, sims_per_run=args.sims,
                                 sim_years=args.years)
    _echo_config(args)
    result = harness.run_simstudy(config)
    for alpha in harness.SIMSTUDY_ALPHAS:
        frac = result.fraction_sla_mean_higher(alpha)
        print(f"alpha={alpha}: SLA run-mean exceeds MISLA run-mean in "
              f"{frac:.1%} of {len(result.runs)} runs")
    print(f"fitted tail index < 1 in {result.xi_lt_1_fraction:.1%} of simulations; "
          f"{result.fit_failures} fit failures")
    worst = max(result.runs,
                key=lambda r: r.stats[("SLA", 0.999)].mean - r.stats[("MISLA", 0.999)].mean)
    print(f"largest-gap run (stream {worst.seed_stream}):")
    for (method, alpha), st in sorted(worst.stats.items()):
        print(f"  {method:6s} alpha={alpha}: mean={_fmt6(st.mean)} median={_fmt6(st.median)} "
              f"max={_fmt6(st.maximum)} std={_fmt6(st.stddev)} "
              f"skew={st.skewness:.2f} kurt={st.kurtosis:.2f}")
    return EXIT_OK


def cmd_precision(args: argparse.Namespace) -> int:
    _echo_config(args)
    if args.n is not None:
        q = precision.PrecisionQuery(alpha=args.alpha, density=args.density,
                                     quantile=args.quantile, n=int(float(args.n)))
        print(f"quantile_stddev={_fmt6(precision.quantile_stddev(q))}")
    if args.rel_err is not None:
        q = precision.PrecisionQuery(alpha=args.alpha, density=args.density,
                                     quantile=args.quantile, rel_err=args.rel_err)
        print(f"required_n={precision.required_n(q)}")
    if args.n is None and args.rel_err is None:
        raise DomainError("precision needs --n (stddev direction) or --rel-err (sample-size direction)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aldvar",
        description="Extreme quantiles of compound Poisson loss distributions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    q = sub.add_parser("quantile", help="one severity, one method")
    q.add_argument("--severity", required=True, help='e.g. "GPD(0.99,4954.245)"')
    q.add_argument("--lambda", dest="lam", type=float, default=25.0,
                   help="Poisson mean annual loss count")
    q.add_argument("--alpha", type=float, default=0.999)
    q.add_argument("--method", default="misla",
                   choices=["sla", "isla", "misla", "mc", "SLA", "ISLA", "MISLA", "MC"])
    q.add_argument("--endpoints-mode", dest="endpoints_mode", default="table1",
                   choices=["table1", "fixed", "custom"])
    q.add_argument("--endpoints", help="LO,HI for --endpoints-mode custom")
    q.add_argument("--years", type=float, default=1e7, help="years for --method mc")
    q.add_argument("--seed", type=int, default=42)
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=cmd_quantile)

    s = sub.add_parser("sweep", help="tail-index sweep to CSV")
    s.add_argument("--severity", required=True)
    s.add_argument("--lambda", dest="lam", type=float, default=25.0)
    s.add_argument("--alpha", type=float, default=0.999)
    s.add_argument("--grid", required=True, help="start:stop:step, e.g. 0.5:1.5:0.005")
    s.add_argument("--endpoints-mode", dest="endpoints_mode", default="table1",
                   choices=["table1", "fixed", "custom"])
    s.add_argument("--endpoints")
    s.add_argument("--output", help="CSV path (default sweep.csv in $%s)" % OUTPUT_DIR_ENV)
    s.set_defaults(func=cmd_sweep)

    b = sub.add_parser("bench", help="reference tables to CSV")
    b.add_argument("--table", default="T2_999",
                   choices=[t for t in harness.TABLE_IDS if t not in ("T6_simstudy", "FIG_sweep")])
    b.add_argument("--mc-years", dest="mc_years", type=float, default=1e7)
    b.add_argument("--seed", type=int, default=42)
    b.add_argument("--methods", default="SLA,ISLA,MISLA",
                   help="comma list from SLA,ISLA,MISLA,MC")
    b.add_argument("--endpoints-mode", dest="endpoints_mode", default="table1",
                   choices=["table1", "fixed", "custom"])
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--output", help="CSV path")
    b.add_argument("--config", help="flat key=value config file")
    b.set_defaults(func=cmd_bench)

    t6 = sub.add_parser("simstudy", help="sampling-error study")
    t6.add_argument("--runs", type=int, default=50)
    t6.add_argument("--sims", type=int, default=1000)
    t6.add_argument("--years", type=int, default=10)
    t6.add_argument("--seed", type=int, default=42)
    t6.set_defaults(func=cmd_simstudy)

    p = sub.add_parser("precision", help="quantile-precision formulas")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--quantile", type=float, default=1.0)
    p.add_argument("--n", help="sample size (stddev direction)")
    p.add_argument("--rel-err", dest="rel_err", type=float,
                   help="target relative error (sample-size direction)")
    p.set_defaults(func=cmd_precision)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed; normalize the usage-error code
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ConvergenceError, InterpolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # severity-spec and grid parse problems
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
