#!/usr/bin/env python3
"""Sweep every hyperbolic integer triple up to a bound and report timing.

Usage:
    python scripts/run_sweep.py [--bound 100] [--cross-check] [--show-witnesses]

With --cross-check the rational-solution oracle is run against the table
verdict for every triple; any CONTRADICTION would indicate a bug and makes
the script exit nonzero.
"""

import argparse
import sys
import time

from triform.kimura import decide_condition_ric, hyperbolic_integer_triples
from triform.riccati import CONTRADICTION, cross_check


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=100, help="largest finite entry")
    ap.add_argument(
        "--cross-check",
        action="store_true",
        help="also run the rational oracle on every triple",
    )
    ap.add_argument(
        "--show-witnesses",
        action="store_true",
        help="print any triple whose witness fired (expected: none)",
    )
    args = ap.parse_args()

    start = time.monotonic()
    triples = list(hyperbolic_integer_triples(args.bound))
    fired = []
    contradictions = []
    for p in triples:
        if args.cross_check:
            report = cross_check(p)
            if report.status == CONTRADICTION:
                contradictions.append(p)
            if not report.verdict.holds:
                fired.append((p, report.verdict))
        else:
            v = decide_condition_ric(p)
            if not v.holds:
                fired.append((p, v))
    elapsed = time.monotonic() - start

    print(f"triples examined : {len(triples)}")
    print(f"witnesses fired  : {len(fired)}")
    if args.cross_check:
        print(f"contradictions   : {len(contradictions)}")
    print(f"elapsed          : {elapsed:.2f}s")
    if args.show_witnesses:
        for p, v in fired:
            print(f"  {p}: {v.witness}")
    if contradictions:
        print("ERROR: table and oracle disagree on:", file=sys.stderr)
        for p in contradictions:
            print(f"  {p}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
