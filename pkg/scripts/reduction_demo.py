#!/usr/bin/env python3
"""End-to-end demo of the hardness reductions and the 2-local solver.

Compiles a small monotone formula both ways, solves the resulting
transcripts by brute force, then builds a 2-local transcript from a random
game and runs the parity pipeline on it.
"""

import random

from permind.complexity import (
    MonotoneCnf,
    PmSatInstance,
    reduce_to_3local,
    reduce_to_pm_sat,
    sat_brute_force,
    solve_2local_sat,
)
from permind.perms import check_locality, ell, random_permutation
from permind.strategies import CompatibleSetStrategy, HonestCodemaker, localize, run_game


def main():
    f = MonotoneCnf.from_clauses(3, [(1, 2, 3)])
    print(f"formula: {f.clauses} over {f.n_vars} variables")
    print(f"exactly-one assignment: {f.exactly_one_satisfiable()}")

    inst = reduce_to_pm_sat(f)
    print(f"\nunrestricted reduction: {len(inst.transcript)} guesses on S_{inst.transcript.n}")
    w = sat_brute_force(inst)
    print(f"brute-force witness: {w.one_line if w else None}")

    inst3 = reduce_to_3local(f)
    ok = check_locality(inst3.transcript, ell(3))
    print(f"\n3-local reduction: {len(inst3.transcript)} guesses, ell(3) locality: {ok}")
    w3 = sat_brute_force(inst3)
    print(f"brute-force witness: {w3.one_line if w3 else None}")

    rng = random.Random(0)
    secret = random_permutation(6, rng)
    game = run_game(localize(CompatibleSetStrategy(), 2), HonestCodemaker(secret), locality=ell(2))
    t = game.transcript
    print(f"\n2-local game transcript: {len(t)} guesses against secret {secret.one_line}")
    found = solve_2local_sat(PmSatInstance(t, locality=ell(2)), seed=0)
    print(f"parity pipeline witness: {found.one_line if found else None}")


if __name__ == "__main__":
    main()
