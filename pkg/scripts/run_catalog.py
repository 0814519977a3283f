"""Bracket every catalog germ and print one summary line each.

    python3 scripts/run_catalog.py [--seed 0] [--json out.json]
"""
import argparse
import json
import time

from lojbound.bounds import BoundConfig, bracket
from lojbound.catalog import CATALOG
from lojbound.errors import LojboundError


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="write all reports to this file")
    args = ap.parse_args()
    config = BoundConfig().with_seed(args.seed)
    reports = {}
    for e in CATALOG:
        t0 = time.perf_counter()
        try:
            rep = bracket(e.function, config)
            line = rep.summary_line()
            reports[e.name] = rep.to_json()
        except LojboundError as exc:
            line = f"refused: {type(exc).__name__}"
            reports[e.name] = {"refused": str(exc)}
        expected = "" if e.expected_upper is None else f" (expected {e.expected_upper})"
        print(f"{e.name:18s} {time.perf_counter() - t0:5.2f}s  {line}{expected}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
