"""File formats: transcript documents, monotone CNF files, graph edge lists.

The transcript document is JSON with fields ``n``, ``guesses`` (1-based
one-line arrays), ``scores``, and optionally ``locality`` ({kind, k}).
CNF files carry a ``p mcnf <n_vars> <m>`` header followed by m lines of
three positive variable indices.  Graph edge lists start with ``n`` and
continue with 1-based ``i j`` lines.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .complexity import MonotoneCnf, PmSatInstance
from .graphs import BipartiteSecretGraph
from .perms import LocalityClass, Permutation, Transcript


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# transcript documents


def transcript_to_doc(t: Transcript, locality: Optional[LocalityClass] = None) -> dict:
    doc = {
        "n": t.n,
        "guesses": [list(g.one_line) for g in t.guesses],
        "scores": list(t.scores),
    }
    if locality is not None:
        doc["locality"] = {"kind": locality.kind, "k": locality.k}
    return doc


def transcript_from_doc(doc: dict) -> tuple[Transcript, Optional[LocalityClass]]:
    try:
        n = int(doc["n"])
        guesses = [Permutation.from_one_line(g) for g in doc["guesses"]]
        scores = [int(b) for b in doc.get("scores", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad transcript document: {exc}") from exc
    if len(scores) != len(guesses):
        raise ParseError(
            f"guesses and scores lists differ in length ({len(guesses)} vs {len(scores)})"
        )
    t = Transcript(n, tuple(zip(guesses, scores)))
    locality = None
    if "locality" in doc and doc["locality"] is not None:
        loc = doc["locality"]
        locality = LocalityClass(str(loc["kind"]), int(loc["k"]))
    return t, locality


def guess_list_from_doc(doc: dict) -> list[Permutation]:
    try:
        guesses = [Permutation.from_one_line(g) for g in doc["guesses"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad guess list document: {exc}") from exc
    n = int(doc.get("n", guesses[0].n if guesses else 0))
    for g in guesses:
        if g.n != n:
            raise ParseError(f"guess {list(g.one_line)} does not have size n={n}")
    return guesses


def save_instance(path, inst: PmSatInstance):
    doc = transcript_to_doc(inst.transcript, inst.locality)
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_instance(path) -> PmSatInstance:
    t, locality = transcript_from_doc(json.loads(Path(path).read_text()))
    return PmSatInstance(t, locality)


# ---------------------------------------------------------------------------
# CNF files


def parse_cnf(text: str) -> MonotoneCnf:
    lines = text.splitlines()
    header = None
    clauses = []
    expect = None
    n_vars = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "mcnf":
                raise ParseError(f"line {lineno}: expected header 'p mcnf <n_vars> <m>'")
            try:
                n_vars, expect = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer header fields") from None
            header = line
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 variable indices, got {len(parts)}")
        try:
            triple = tuple(int(x) for x in parts)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer variable index") from None
        if any(x < 1 for x in triple):
            raise ParseError(f"line {lineno}: variables are positive (monotone formula)")
        clauses.append(triple)
    if header is None:
        raise ParseError("missing 'p mcnf' header")
    if expect is not None and len(clauses) != expect:
        raise ParseError(f"header promises {expect} clauses, file has {len(clauses)}")
    try:
        return MonotoneCnf.from_clauses(n_vars, clauses)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_cnf(f: MonotoneCnf) -> str:
    lines = [f"p mcnf {f.n_vars} {len(f.clauses)}"]
    lines.extend(" ".join(str(x) for x in cl) for cl in f.clauses)
    return "\n".join(lines) + "\n"


def load_cnf(path) -> MonotoneCnf:
    return parse_cnf(Path(path).read_text())


# ---------------------------------------------------------------------------
# graph edge lists


def graph_to_edge_list(g: BipartiteSecretGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{i + 1} {j + 1}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> BipartiteSecretGraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edge list")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError("first line must be n") from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'i j'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer endpoint") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"line {lineno}: endpoint out of range 1..{n}")
        edges.append((i - 1, j - 1))
    return BipartiteSecretGraph.from_edges(n, edges)
