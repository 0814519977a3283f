"""Fuzz the soundness sentinel: lower <= upper on random sparse germs.

    python3 scripts/fuzz_soundness.py --count 500 --seed 1

Germs refused by the degeneracy or support checks are counted, not bracketed.
Exits non-zero when a violation is found and prints the witness curve.
"""
import argparse
import collections
import random
import sys

from lojbound.bounds import BoundConfig, bracket
from lojbound.catalog import random_sparse
from lojbound.curves import CurveBudget
from lojbound.errors import LojboundError
from lojbound.mixedpoly import format_function
from lojbound.nondeg import NDBudget


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--max-terms", type=int, default=8)
    ap.add_argument("--mixed-rate", type=float, default=0.15)
    ap.add_argument("--curves", type=int, default=200)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    base = BoundConfig(nd=NDBudget(starts=24, iters=150), curves=CurveBudget(curves=args.curves))
    refused = collections.Counter()
    tight = checked = 0
    bad = []
    for k in range(args.count):
        f = random_sparse(rng, args.max_n, args.max_terms, mixed_rate=args.mixed_rate)
        try:
            rep = bracket(f, base.with_seed(args.seed * 100003 + k))
        except LojboundError as exc:
            refused[type(exc).__name__] += 1
            continue
        checked += 1
        tight += rep.tight
        if not rep.sound:
            bad.append((f, rep))
            print("VIOLATION", format_function(f), rep.summary_line())
            print("  witness:", "; ".join(rep.sample.witness.describe()))
    print(f"checked {checked}, tight {tight}, refused {dict(refused)}, violations {len(bad)}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
