"""Command-line entry points.

Subcommands: ``simulate`` (run strategies against codemakers), ``search-optimal``
(exhaustive minimax value), ``reduce`` (formula -> transcript instance),
``solve-sat`` (satisfiability of an instance file), ``analyze`` (static guess
list diagnostics), ``serve`` (the HTTP game service).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from fractions import Fraction
from pathlib import Path

from . import complexity, fileio, strategies
from .cayley import window_diameter_lower_bound
from .errors import CapacityError, PermindError
from .graphs import find_k22, is_sufficient, untested_graph
from .perms import (
    ELL,
    LocalityClass,
    all_permutations,
    check_locality,
    ell,
    random_permutation,
)


def parse_locality(text: str) -> LocalityClass | None:
    if text in ("none", ""):
        return None
    try:
        kind, k = text.split(":")
        return LocalityClass(kind, int(k))
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(
            f"bad locality {text!r}; use ell:<k>, window:<k>, or none"
        ) from None


def emit(report: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(report, indent=1, default=str))
        return
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for row in value:
                print("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
        else:
            print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# simulate


def make_strategy(name: str, n: int, locality: LocalityClass | None):
    if name == "compatible":
        return strategies.CompatibleSetStrategy()
    if name == "localized-compatible":
        if locality is None or locality.kind != ELL:
            raise PermindError("localized-compatible needs an ell:<k> locality")
        return strategies.localize(strategies.CompatibleSetStrategy(), locality.k)
    if name == "conveyor":
        return strategies.conveyor_belt_strategy(n)
    if name == "conveyor-hexagon":
        return strategies.ConveyorHexagonStrategy(n)
    raise PermindError(f"unknown strategy {name!r}")


def cmd_simulate(args) -> int:
    locality = args.locality
    rng = __import__("random").Random(args.seed)
    if args.trials == "all":
        secrets = list(all_permutations(args.n))
    else:
        secrets = [random_permutation(args.n, rng) for _ in range(int(args.trials))]
    counts = []
    for secret in secrets:
        strategy = make_strategy(args.strategy, args.n, locality)
        if args.codemaker == "honest":
            codemaker = strategies.HonestCodemaker(secret)
        elif args.codemaker == "adversary":
            codemaker = strategies.MatchingAdversaryCodemaker(args.n)
        else:
            raise PermindError(f"unknown codemaker {args.codemaker!r}")
        result = strategies.run_game(strategy, codemaker, locality=locality)
        if not result.solved:
            raise PermindError(f"strategy failed to solve secret {secret.one_line}")
        counts.append(result.guess_count)
    report = {
        "strategy": args.strategy,
        "codemaker": args.codemaker,
        "n": args.n,
        "locality": str(locality) if locality else "none",
        "trials": len(counts),
        "worst": max(counts),
        "mean": round(statistics.mean(counts), 3),
    }
    n = args.n
    if locality is not None:
        k = locality.k
        report["bound_adaptive_ell_lower"] = f"(n^2-3n)/2k = {Fraction(n * n - 3 * n, 2 * k)}"
        report["bound_window_diameter_lower"] = f"ceil(n^2/2)/(2k(k-1)) = {window_diameter_lower_bound(n, k)}"
        report["bound_routing_steps"] = f"ceil((n-1)/(k-1)) = {-((n - 1) // -(k - 1))}"
    emit(report, args.format)
    return 0


# ---------------------------------------------------------------------------
# search-optimal


def cmd_search_optimal(args) -> int:
    locality = args.locality or ell(2)
    if args.tree_out:
        value, tree = strategies.optimal_strategy_tree(args.n, locality)
        Path(args.tree_out).write_text(json.dumps(tree, indent=1) + "\n")
    else:
        value = strategies.optimal_adaptive_value(args.n, locality)
    emit({"n": args.n, "locality": str(locality), "optimal_guesses": value}, args.format)
    return 0


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(args) -> int:
    formula = fileio.load_cnf(args.cnf)
    if args.target == "pm-sat":
        inst = complexity.reduce_to_pm_sat(formula)
    elif args.target == "3local":
        inst = complexity.reduce_to_3local(formula)
    else:
        raise PermindError(f"unknown target {args.target!r}")
    fileio.save_instance(args.out, inst)
    report = {
        "target": args.target,
        "n_vars": formula.n_vars,
        "clauses": len(formula.clauses),
        "board": inst.transcript.n,
        "guesses": len(inst.transcript),
        "out": args.out,
    }
    if inst.locality is not None:
        certified = check_locality(inst.transcript, inst.locality)
        report["locality"] = f"{inst.locality} ({'certified' if certified else 'VIOLATED'})"
    emit(report, args.format)
    return 0


# ---------------------------------------------------------------------------
# solve-sat


def cmd_solve_sat(args) -> int:
    inst = fileio.load_instance(args.instance)
    if args.mode == "brute":
        witness = complexity.sat_brute_force(inst, block_pruning=args.block_pruning)
    elif args.mode == "parity":
        if not check_locality(inst.transcript, ell(2)):
            raise PermindError("parity mode requires an ell:2-local transcript")
        witness = complexity.solve_2local_sat(inst, seed=args.seed)
    elif args.mode == "auto":
        if check_locality(inst.transcript, ell(2)):
            witness = complexity.solve_2local_sat(inst, seed=args.seed)
        else:
            witness = complexity.sat_brute_force(inst, block_pruning=args.block_pruning)
    else:
        raise PermindError(f"unknown mode {args.mode!r}")
    if witness is None:
        emit({"result": "UNSAT"}, args.format)
        return 1
    from .perms import black_peg_score

    assert all(black_peg_score(g, witness) == b for g, b in inst.transcript.entries)
    emit({"result": "SAT", "witness": list(witness.one_line)}, args.format)
    return 0


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args) -> int:
    if args.graph:
        g = fileio.parse_edge_list(Path(args.graph).read_text())
        witness = find_k22(g)
        report = {
            "n": g.n,
            "edges": g.edge_count,
            "k22": "none"
            if witness is None
            else {
                "positions": [witness[0][0] + 1, witness[0][1] + 1],
                "symbols": [witness[1][0] + 1, witness[1][1] + 1],
            },
        }
        emit(report, args.format)
        return 0
    doc = json.loads(Path(args.guesses).read_text())
    guesses = fileio.guess_list_from_doc(doc)
    if not guesses:
        raise PermindError("the guess list is empty")
    n = guesses[0].n
    u = untested_graph(guesses)
    witness = find_k22(u)
    report = {
        "n": n,
        "guesses": len(guesses),
        "untested_edges": u.edge_count,
        "k22": "none"
        if witness is None
        else {
            "positions": [witness[0][0] + 1, witness[0][1] + 1],
            "symbols": [witness[1][0] + 1, witness[1][1] + 1],
        },
    }
    try:
        report["sufficient"] = is_sufficient(guesses)
    except CapacityError as exc:
        report["sufficient"] = f"skipped ({exc})"
    if args.export_graph:
        Path(args.export_graph).write_text(fileio.graph_to_edge_list(u))
        report["exported_graph"] = args.export_graph
    emit(report, args.format)
    return 0


# ---------------------------------------------------------------------------
# serve


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(seed=args.seed, cap_n=args.cap_n, log_file=args.log_file)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permind")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a strategy against a codemaker")
    p.add_argument("--strategy", required=True)
    p.add_argument("--codemaker", default="honest", choices=("honest", "adversary"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--locality", type=parse_locality, default=None)
    p.add_argument("--trials", default="all", help="'all' or a trial count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search-optimal", help="exhaustive minimax over adaptive local strategies")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--locality", type=parse_locality, default=None)
    p.add_argument("--tree-out", default=None)
    p.set_defaults(func=cmd_search_optimal)

    p = sub.add_parser("reduce", help="compile a monotone CNF into a transcript instance")
    p.add_argument("--cnf", required=True)
    p.add_argument("--target", required=True, choices=("pm-sat", "3local"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve-sat", help="decide satisfiability of an instance file")
    p.add_argument("--instance", required=True)
    p.add_argument("--mode", default="auto", choices=("auto", "brute", "parity"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--block-pruning", action="store_true")
    p.set_defaults(func=cmd_solve_sat)

    p = sub.add_parser("analyze", help="diagnostics for a static guess list or a graph file")
    p.add_argument("--guesses", default=None)
    p.add_argument("--graph", default=None)
    p.add_argument("--export-graph", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--port", type=int, default=8008)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap-n", type=int, default=8)
    p.add_argument("--log-file", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze" and not (args.guesses or args.graph):
        parser.error("analyze needs --guesses or --graph")
    try:
        return args.func(args)
    except fileio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (PermindError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
