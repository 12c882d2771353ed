#!/usr/bin/env python3
"""Sweep the bundled strategies over boards and locality classes.

Prints worst/mean guess counts per configuration next to the relevant
lower-bound formulas, exhaustively over all secrets.
"""

import argparse
import statistics
from fractions import Fraction

from permind.cayley import window_diameter_lower_bound
from permind.perms import all_permutations, ell, window
from permind.strategies import (
    CompatibleSetStrategy,
    ConveyorHexagonStrategy,
    HonestCodemaker,
    localize,
    run_game,
)


def sweep(n_values, k):
    rows = []
    for n in n_values:
        for label, make, locality in (
            ("compatible", lambda n=n: CompatibleSetStrategy(), None),
            (f"localized(k={k})", lambda n=n: localize(CompatibleSetStrategy(), k), ell(k)),
            ("conveyor-hexagon", lambda n=n: ConveyorHexagonStrategy(n), window(2)),
        ):
            if label == "conveyor-hexagon" and n < 3:
                continue
            counts = []
            for secret in all_permutations(n):
                result = run_game(make(), HonestCodemaker(secret), locality=locality)
                assert result.solved
                counts.append(result.guess_count)
            rows.append(
                dict(
                    n=n,
                    strategy=label,
                    locality=str(locality) if locality else "none",
                    worst=max(counts),
                    mean=round(statistics.mean(counts), 2),
                )
            )
    return rows


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument("--k", type=int, default=2)
    args = parser.parse_args()

    rows = sweep(range(2, args.max_n + 1), args.k)
    width = max(len(r["strategy"]) for r in rows)
    print(f"{'n':>2}  {'strategy':<{width}}  {'locality':<10}  {'worst':>5}  {'mean':>7}")
    for r in rows:
        print(f"{r['n']:>2}  {r['strategy']:<{width}}  {r['locality']:<10}  {r['worst']:>5}  {r['mean']:>7}")
    print()
    k = args.k
    for n in range(2, args.max_n + 1):
        adaptive = Fraction(n * n - 3 * n, 2 * k)
        print(
            f"n={n}: adaptive ell({k}) lower bound (n^2-3n)/2k = {adaptive}; "
            f"window({k}) diameter bound = {window_diameter_lower_bound(n, k)}"
        )


if __name__ == "__main__":
    main()
