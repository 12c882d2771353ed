#!/usr/bin/env python3
"""Exhaustive minimax values for small boards and locality parameters."""

import argparse
import time

from permind.perms import ell, window
from permind.strategies import optimal_adaptive_value


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=4)
    parser.add_argument("--windows", action="store_true", help="also compute window-locality values")
    args = parser.parse_args()

    for n in range(2, args.max_n + 1):
        for k in range(2, n + 1):
            t0 = time.time()
            v = optimal_adaptive_value(n, ell(k))
            print(f"A_ell(n={n}, k={k}) = {v}   [{time.time() - t0:.2f}s]")
            if args.windows:
                t0 = time.time()
                vw = optimal_adaptive_value(n, window(k))
                print(f"A_win(n={n}, k={k}) = {vw}   [{time.time() - t0:.2f}s]")


if __name__ == "__main__":
    main()
