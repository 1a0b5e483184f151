"""Time every algorithm with compiled kernels and with the pure-Python fallback.

Runs ``onemap bench`` twice in subprocesses (``ONEMAP_DISABLE_JIT`` unset, then
set to 1) on identical seeded inputs and prints the timings side by side.

    python benchmarks/compare_jit.py --sizes 1000,5000 --m 8,32
"""
import argparse
import csv
import io
import os
import subprocess
import sys


def bench(args, disable_jit):
    env = dict(os.environ)
    env.pop("ONEMAP_DISABLE_JIT", None)
    if disable_jit:
        env["ONEMAP_DISABLE_JIT"] = "1"
    cmd = [sys.executable, "-m", "onemap", "bench", "--sizes", args.sizes, "--m", args.m,
           "--algos", args.algos, "--seed", str(args.seed), "--repeat", str(args.repeat)]
    if args.force_average:
        cmd.append("--force-average")
    out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True).stdout
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    rows = csv.DictReader(io.StringIO(body), delimiter="\t")
    return {(r["algorithm"], int(r["n"]), int(r["m"])): float(r["seconds"]) for r in rows}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="1000,4000")
    p.add_argument("--m", default="8,32")
    p.add_argument("--algos", default="average,treewalk,heavypath")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--force-average", action="store_true")
    args = p.parse_args(argv)

    fast = bench(args, disable_jit=False)
    slow = bench(args, disable_jit=True)
    print(f"{'algorithm':<10} {'n':>7} {'m':>5} {'numba s':>10} {'python s':>10} {'speedup':>8}")
    for key in sorted(fast):
        algo, n, m = key
        f, s = fast[key], slow.get(key, float("nan"))
        print(f"{algo:<10} {n:>7} {m:>5} {f:>10.4f} {s:>10.4f} {s / f if f else float('inf'):>7.1f}x")


if __name__ == "__main__":
    main()
