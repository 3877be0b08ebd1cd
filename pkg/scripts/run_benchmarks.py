#!/usr/bin/env python3
"""Reproduce the reference benchmark tables (means, quantiles, runtimes,
endpoint robustness) as CSV files.

Example:
    python scripts/run_benchmarks.py --out results/ --tables T1_means T2_999
    python scripts/run_benchmarks.py --with-mc --mc-years 1e7 --seed 42
"""

import argparse
import os

from aldvar import harness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--tables", nargs="+",
                    default=["T1_means", "T2_999", "T3_9997", "T4_runtime", "T5_fixedpts"])
    ap.add_argument("--with-mc", action="store_true",
                    help="add the Monte Carlo column (slow: minutes per table)")
    ap.add_argument("--mc-years", type=float, default=1e7)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=2)
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    methods = ("SLA", "ISLA", "MISLA") + (("MC",) if args.with_mc else ())
    for table in args.tables:
        cfg = harness.BenchConfig(
            table=table, mc_years=int(args.mc_years), seed=args.seed,
            methods=methods, mc_workers=args.workers,
            output_path=os.path.join(args.out, f"{table}.csv"))
        rows = harness.run_table(cfg)
        print(f"{table}: {len(rows)} rows -> {cfg.output_path}")


if __name__ == "__main__":
    main()
