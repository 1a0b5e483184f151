"""Command-line interface: ``map``, ``validate`` and ``bench``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from ._jit import JIT_ENABLED
from .average import DEFAULT_BUDGET_FACTOR, meets_average_condition
from .core import brute_force, zero_map
from .pipeline import ALGORITHMS, compute, random_text, run_all
from .suffix_index import build_index
from .text import IntText, SequenceError, ingest

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DIVERGED = 4

log = logging.getLogger("onemap")


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _str_list(text: str) -> list:
    return [v for v in text.replace(",", " ").split() if v]


# ------------------------------------------------------------------ map ----

def format_tsv(name: str, m: int, k: int, mode: str, algo: str, counts) -> str:
    lines = [f"# record={name}\tm={m}\tk={k}\tmode={mode}\talgorithm={algo}"]
    lines += [f"{i}\t{int(c)}" for i, c in enumerate(counts)]
    return "\n".join(lines) + "\n"


def format_wig(name: str, m: int, counts) -> str:
    lines = [f"fixedStep chrom={name} start=1 step=1 span={m}"]
    lines += [str(int(c)) for c in counts]
    return "\n".join(lines) + "\n"


def cmd_map(args) -> int:
    try:
        with open(args.input, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        records = ingest(data, args.format, case_fold=args.case_fold)
    except SequenceError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO

    mode = "exact" if args.k == 0 else args.count
    tracks = []
    for idx, t in enumerate(records):
        name = t.source_name or f"record{idx}"
        if not 1 <= args.m < t.n:
            print(f"error: record {name!r}: need 1 <= m < n, got m={args.m}, n={t.n}", file=sys.stderr)
            return EXIT_USAGE
        res = compute(t, args.m, args.algo, args.budget)
        tracks.append((name, res.algorithm, res.counts(args.k, mode)))

    if args.out_format == "tsv":
        body = "".join(format_tsv(nm, args.m, args.k, mode, al, c) for nm, al, c in tracks)
    elif args.out_format == "wig":
        body = "".join(format_wig(nm, args.m, c) for nm, _, c in tracks)
    else:
        payload = [
            {"record": nm, "m": args.m, "k": args.k, "mode": mode, "algorithm": al,
             "counts": [int(v) for v in c]}
            for nm, al, c in tracks
        ]
        body = json.dumps(payload) + "\n"

    if args.out in (None, "-"):
        sys.stdout.write(body)
    else:
        try:
            with open(args.out, "w") as fh:
                fh.write(body)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


# ------------------------------------------------------------- validate ----

def check_instance(t: IntText, m: int, fault: Optional[str] = None) -> Optional[dict]:
    """First disagreement with the brute-force oracle, or ``None``."""
    expect1 = brute_force(t, m, 1)
    expect0 = brute_force(t, m, 0)
    got0 = zero_map(build_index(t), m)
    if not np.array_equal(got0, expect0):
        return _divergence(t, m, "zero_map", expect0, got0)
    for algo, res in run_all(t, m).items():
        c1 = res.c1.copy()
        if algo == fault:
            c1[len(c1) // 2] += 1
        if not np.array_equal(c1, expect1):
            return _divergence(t, m, algo, expect1, c1)
        if not np.array_equal(res.c0, expect0):
            return _divergence(t, m, algo + ":c0", expect0, res.c0)
    return None


def _divergence(t, m, algo, expect, got) -> dict:
    pos = int(np.flatnonzero(np.asarray(expect) != np.asarray(got))[0])
    return {
        "algorithm": algo,
        "m": m,
        "n": t.n,
        "text": t.decode().decode("latin-1"),
        "position": pos,
        "expected": int(expect[pos]),
        "got": int(got[pos]),
    }


def shrink(t: IntText, m: int, fault: Optional[str] = None) -> tuple:
    """Trim letters from either end while the disagreement persists."""
    best = t
    changed = True
    while changed:
        changed = False
        for cut in (slice(1, None), slice(None, -1)):
            cand = IntText(best.ranks[cut], best.alphabet)
            if m < cand.n and check_instance(cand, m, fault) is not None:
                best = cand
                changed = True
                break
    return best, check_instance(best, m, fault)


def validate(n: int, sigma: int, ms: list, trials: int, seed: int, fault: Optional[str] = None) -> Optional[dict]:
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        t = random_text(rng, n, sigma)
        for m in ms:
            if not 1 <= m < n:
                continue
            bad = check_instance(t, m, fault)
            if bad is not None:
                _, bad = shrink(t, m, fault)
                bad["trial"] = trial
                return bad
    return None


def cmd_validate(args) -> int:
    if args.n < 2 or args.sigma < 1 or args.trials < 0:
        print("error: need n >= 2, sigma >= 1, trials >= 0", file=sys.stderr)
        return EXIT_USAGE
    bad = validate(args.n, args.sigma, args.m, args.trials, args.seed, args.inject_fault)
    if bad is not None:
        print("DIVERGENCE " + json.dumps(bad, sort_keys=True))
        return EXIT_DIVERGED
    print(f"OK n={args.n} sigma={args.sigma} m={','.join(map(str, args.m))} trials={args.trials} seed={args.seed}")
    return EXIT_OK


# ---------------------------------------------------------------- bench ----

def bench_rows(sizes, ms, algos, seed, sigma=4, repeat=1, force_average=False):
    """Yield ``(algo, n, m, sigma, seconds)`` for every applicable configuration."""
    # load or compile kernels before the clock starts
    warm = random_text(np.random.default_rng(seed), 64, sigma)
    for algo in algos:
        compute(warm, 8, algo, budget_factor=None)
    for n in sizes:
        t = random_text(np.random.default_rng([seed, n]), n, sigma)
        for m in ms:
            if not 1 <= m < n:
                continue
            for algo in algos:
                if algo == "average" and (m < 3 or not (force_average or meets_average_condition(n, sigma, m))):
                    continue
                best = float("inf")
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    compute(t, m, algo, budget_factor=None)
                    best = min(best, time.perf_counter() - t0)
                yield algo, n, m, sigma, best


def cmd_bench(args) -> int:
    unknown = [a for a in args.algos if a not in ALGORITHMS]
    if unknown:
        print(f"error: unknown algorithm(s) {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    out = sys.stdout
    out.write(f"# jit={'on' if JIT_ENABLED else 'off'} seed={args.seed}\n")
    out.write("algorithm\tn\tm\tsigma\tseconds\n")
    rows = bench_rows(args.sizes, args.m, args.algos, args.seed, args.sigma, args.repeat, args.force_average)
    for algo, n, m, sigma, secs in rows:
        out.write(f"{algo}\t{n}\t{m}\t{sigma}\t{secs:.6f}\n")
        out.flush()
    return EXIT_OK


# ----------------------------------------------------------------- main ----

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onemap", description="Exact 0- and 1-mappability of a text.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="compute a mappability track per record")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["raw", "fasta"], default="raw")
    p.add_argument("-m", type=int, required=True, help="window length")
    p.add_argument("-k", type=int, choices=[0, 1], default=1)
    p.add_argument("--count", choices=["exact", "at-most"], default="at-most",
                   help="with -k 1: distance exactly 1, or at most 1 (default)")
    p.add_argument("--algo", choices=list(ALGORITHMS), default="auto")
    p.add_argument("--out", default=None)
    p.add_argument("--out-format", choices=["tsv", "json", "wig"], default="tsv")
    p.add_argument("--case-fold", action="store_true")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET_FACTOR,
                   help="average-case work budget, in extension events per text letter")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("validate", help="cross-check all algorithms on random texts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--inject-fault", choices=["average", "treewalk", "heavypath"], default=None,
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="time algorithms on random texts")
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--algos", type=_str_list, default=["average", "treewalk", "heavypath"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=int, default=4)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--force-average", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
