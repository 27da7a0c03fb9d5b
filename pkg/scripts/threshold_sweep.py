"""
Tabulate the empirical de Polignac set against (limit, threshold).
One census per limit; thresholds are applied to it without re-sieving.
Run: python scripts/threshold_sweep.py [--limits 10000,100000,1000000] [--thresholds 1,10,100] [--csv out.csv]
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

import pandas as pd

from polignac_core.primes import KNOWN_GAP_BOUNDS, empirical_pol, gap_census


def sweep(limits: list[int], thresholds: list[int], threads: int = 1) -> pd.DataFrame:
    """One row per (limit, threshold): size, largest member, least member, digit-{0,2} members."""
    rows = []
    for limit in limits:
        census = gap_census(limit, threads=threads)
        for threshold in thresholds:
            pol = empirical_pol(census, threshold)
            least = pol.members[0] if pol.members else None
            rows.append(
                {
                    "limit": limit,
                    "threshold": threshold,
                    "primes": census.prime_count,
                    "max_gap": census.max_gap,
                    "pol_size": len(pol),
                    "pol_least": least,
                    "pol_max": pol.max_member,
                    "digits_02": sum(1 for g in pol.members if set(str(g)) <= {"0", "2"}),
                    "below_246": least is not None and least <= KNOWN_GAP_BOUNDS["polymath8b"],
                }
            )
    return pd.DataFrame(rows)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def main():
    parser = argparse.ArgumentParser(description="Empirical de Polignac set size sweep")
    parser.add_argument("--limits", default="10000,100000,1000000")
    parser.add_argument("--thresholds", default="1,10,100,1000")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--csv", default=None, help="Write the table to this file")
    args = parser.parse_args()

    frame = sweep(_ints(args.limits), _ints(args.thresholds), args.threads)
    if args.csv:
        frame.to_csv(args.csv, index=False, lineterminator="\n")
        print(f"Wrote {len(frame)} rows to {args.csv}")
    else:
        print(frame.to_string(index=False))


if __name__ == "__main__":
    main()
