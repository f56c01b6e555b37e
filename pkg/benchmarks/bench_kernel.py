"""Compare the compiled and pure-Python coloring kernels.

    python benchmarks/bench_kernel.py [--codes N] [--seed S]

Programs are compiled once up front, so the timings cover only the search.
Both kernels must return identical counts; any disagreement aborts the run.
"""
import argparse
import random
import sys
import time

from twistlink import coloring
from twistlink.corpus import random_code
from twistlink.presentation import twisted_group, twisted_quandle
from twistlink.targets import builtin_target

WORKLOADS = (
    ("group", twisted_group, ("S3", "D4", "S4")),
    ("quandle", twisted_quandle, ("R3", "R5", "R6")),
)


def run(kernel, jobs):
    t0 = time.perf_counter()
    counts = [coloring.count_colorings(p, t, kernel=kernel) for p, t in jobs]
    return time.perf_counter() - t0, counts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--codes", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if coloring._ckernel is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    codes = [random_code(rng, max_crossings=6, max_bars=4, max_components=2)
             for _ in range(args.codes)]
    print(f"{'workload':<10}{'target':<8}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for label, build, targets in WORKLOADS:
        presentations = [build(c) for c in codes]
        for p in presentations:
            p.program
        for name in targets:
            t = builtin_target(name)
            jobs = [(p, t) for p in presentations]
            py, a = run("python", jobs)
            cy, b = run("cython", jobs)
            if a != b:
                print(f"kernels disagree on {label} into {name}", file=sys.stderr)
                return 2
            print(f"{label:<10}{name:<8}{py:>10.3f}{cy:>10.3f}{py / cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
