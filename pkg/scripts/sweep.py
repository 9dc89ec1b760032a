"""Sweep the pattern set size and report speedups and break-even points.

    python3 scripts/sweep.py --suite linalg --sizes 10 25 50 100 199 --subjects 200 --out sweep.csv

The break-even point is the number of subjects after which the net's setup
time is paid back by its faster matching.
"""
import argparse
import csv
import math
import sys

from termmatch.bench import BenchConfig, run_bench


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--suite", choices=("linalg", "syntactic"), default="linalg")
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 25, 50, 100, 199])
    parser.add_argument("--subjects", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repetitions", type=int, default=3)
    parser.add_argument("--out")
    args = parser.parse_args(argv)

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["suite", "patterns", "matcher", "setup_s", "match_per_subject_s", "speedup", "break_even"])
    for size in args.sizes:
        config = BenchConfig(suite=args.suite, patterns=size, subjects=args.subjects,
                             seed=args.seed, repetitions=args.repetitions)
        rows = run_bench(config)
        base = next(r for r in rows if r.matcher == "one-to-one")
        base_per = base.match_s / base.subjects
        for row in rows:
            per = row.match_s / row.subjects
            speedup = base_per / per if per else math.inf
            gain = base_per - per
            break_even = math.ceil(row.setup_s / gain) if gain > 0 else ""
            writer.writerow([args.suite, size, row.matcher, f"{row.setup_s:.6f}", f"{per:.8f}",
                             f"{speedup:.2f}", break_even if row.matcher != "one-to-one" else ""])
        out.flush()
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
