"""Bipartite matching machinery for possible-secret and untested-edge graphs.

A secret permutation corresponds to a perfect matching between positions and
symbols; transcripts carve subgraphs of K_{n,n} whose matchings are the
remaining candidate secrets.  This module provides the graph type plus
maximum matching, unique-perfect-matching detection, half graphs, K_{2,2}
search, the edge-probing adversary, and static-sufficiency checking.

Graphs are value types: a tuple of per-position symbol bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError
from .perms import (
    Permutation,
    Transcript,
    all_permutations,
    black_peg_score,
    compatible_secrets,
)

Edge = tuple[int, int]  # (position, symbol), 0-based


@dataclass(frozen=True)
class BipartiteSecretGraph:
    """Bipartite graph between n positions and n symbols.

    rows[i] is a bitmask of symbols adjacent to position i.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("rows length must equal n")
        full = (1 << self.n) - 1
        for r in self.rows:
            if r & ~full:
                raise ValueError("row bitmask out of range")

    @classmethod
    def complete(cls, n: int) -> "BipartiteSecretGraph":
        full = (1 << n) - 1
        return cls(n, (full,) * n)

    @classmethod
    def empty(cls, n: int) -> "BipartiteSecretGraph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "BipartiteSecretGraph":
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {(i, j)} out of range for n={n}")
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def from_matching(cls, p: Permutation) -> "BipartiteSecretGraph":
        """The perfect matching graph of a permutation (position i - symbol p(i))."""
        return cls(p.n, tuple(1 << v for v in p.image))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> Iterator[Edge]:
        for i, r in enumerate(self.rows):
            m = r
            while m:
                j = (m & -m).bit_length() - 1
                yield (i, j)
                m &= m - 1

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def degree_position(self, i: int) -> int:
        return self.rows[i].bit_count()

    def degree_symbol(self, j: int) -> int:
        return sum(r >> j & 1 for r in self.rows)

    def without_edge(self, i: int, j: int) -> "BipartiteSecretGraph":
        rows = list(self.rows)
        rows[i] &= ~(1 << j)
        return BipartiteSecretGraph(self.n, tuple(rows))

    def with_edge(self, i: int, j: int) -> "BipartiteSecretGraph":
        rows = list(self.rows)
        rows[i] |= 1 << j
        return BipartiteSecretGraph(self.n, tuple(rows))

    def union(self, other: "BipartiteSecretGraph") -> "BipartiteSecretGraph":
        if self.n != other.n:
            raise ValueError("union of graphs of different sizes")
        return BipartiteSecretGraph(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))


def maximum_matching(g: BipartiteSecretGraph) -> dict[int, int]:
    """Maximum-cardinality matching as {position: symbol} (augmenting paths)."""
    match_sym = [-1] * g.n  # symbol -> position

    def try_augment(i: int, visited: list[bool]) -> bool:
        row = g.rows[i]
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if not visited[j]:
                visited[j] = True
                if match_sym[j] == -1 or try_augment(match_sym[j], visited):
                    match_sym[j] = i
                    return True
        return False

    for i in range(g.n):
        try_augment(i, [False] * g.n)
    return {i: j for j, i in enumerate(match_sym) if i != -1}


def perfect_matching(g: BipartiteSecretGraph) -> Optional[dict[int, int]]:
    m = maximum_matching(g)
    return m if len(m) == g.n else None


def has_perfect_matching(g: BipartiteSecretGraph) -> bool:
    return perfect_matching(g) is not None


def _alternating_cycle_exists(g: BipartiteSecretGraph, pm: dict[int, int]) -> bool:
    # Orient matched edges symbol->position and unmatched position->symbol;
    # a directed cycle is exactly an alternating cycle, i.e. a second PM.
    matched_sym = {j: i for i, j in pm.items()}
    color = [0] * g.n  # per position: 0 unvisited, 1 on stack, 2 done

    def dfs(i: int) -> bool:
        color[i] = 1
        row = g.rows[i] & ~(1 << pm[i])
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            nxt = matched_sym[j]
            if color[nxt] == 1:
                return True
            if color[nxt] == 0 and dfs(nxt):
                return True
        color[i] = 2
        return False

    return any(color[i] == 0 and dfs(i) for i in range(g.n))


def has_unique_pm(g: BipartiteSecretGraph) -> bool:
    """True iff the graph has exactly one perfect matching."""
    pm = perfect_matching(g)
    if pm is None:
        return False
    return not _alternating_cycle_exists(g, pm)


def edge_in_all_pms(g: BipartiteSecretGraph, e: Edge) -> bool:
    """True iff every perfect matching of g uses e.  Requires g to have a PM."""
    if not has_perfect_matching(g):
        raise ValueError("graph has no perfect matching")
    if not g.has_edge(*e):
        return False
    return not has_perfect_matching(g.without_edge(*e))


def count_perfect_matchings(g: BipartiteSecretGraph, limit: int | None = None) -> int:
    """Permanent of the biadjacency matrix by DP over symbol subsets.

    With ``limit`` set, the returned value is min(count, limit).
    """
    n = g.n
    counts = {0: 1}
    for i in range(n):
        row = g.rows[i]
        nxt: dict[int, int] = {}
        for used, c in counts.items():
            free = row & ~used
            m = free
            while m:
                b = m & -m
                m ^= b
                key = used | b
                nxt[key] = nxt.get(key, 0) + c
        counts = nxt
        if not counts:
            return 0
    total = counts.get((1 << n) - 1, 0)
    if limit is not None:
        return min(total, limit)
    return total


def half_graph(n: int) -> BipartiteSecretGraph:
    """Edge (i, s_j) iff i <= j; the extremal unique-perfect-matching graph."""
    if n < 1:
        raise ValueError("n must be >= 1")
    full = (1 << n) - 1
    rows = tuple((full >> i) << i for i in range(n))
    return BipartiteSecretGraph(n, rows)


def possible_secrets_graph(t: Transcript, cap: int = 8) -> BipartiteSecretGraph:
    """Union of the matchings of all secrets compatible with the transcript."""
    rows = [0] * t.n
    for sigma in compatible_secrets(t, cap=cap):
        for i, v in enumerate(sigma.image):
            rows[i] |= 1 << v
    return BipartiteSecretGraph(t.n, tuple(rows))


def untested_graph(static_guesses: Sequence[Permutation]) -> BipartiteSecretGraph:
    """Edge (i, s_j) iff no guess places symbol j at position i."""
    if not static_guesses:
        raise ValueError("need at least one guess to know n")
    n = static_guesses[0].n
    full = (1 << n) - 1
    rows = [full] * n
    for g in static_guesses:
        if g.n != n:
            raise ValueError("guesses of mixed sizes")
        for i, v in enumerate(g.image):
            rows[i] &= ~(1 << v)
    return BipartiteSecretGraph(n, tuple(rows))


def find_k22(g: BipartiteSecretGraph) -> Optional[tuple[tuple[int, int], tuple[int, int]]]:
    """A K_{2,2} witness ((i, j), (s_x, s_y)) if one exists, else None.

    Pairwise common-neighborhood scan over position pairs.
    """
    for i in range(g.n):
        ri = g.rows[i]
        if ri.bit_count() < 2:
            continue
        for j in range(i + 1, g.n):
            common = ri & g.rows[j]
            if common.bit_count() >= 2:
                x = (common & -common).bit_length() - 1
                common &= common - 1
                y = (common & -common).bit_length() - 1
                return ((i, j), (x, y))
    return None


class AdversaryState:
    """Edge-probe adversary that keeps the set of still-possible matchings.

    Starts at K_{n,n}; a probe is answered yes iff the edge lies in every
    perfect matching of the current graph, and the edge is deleted on a no.
    The graph always retains at least one perfect matching.
    """

    def __init__(self, n: int):
        self.n = n
        self.graph = BipartiteSecretGraph.complete(n)
        self.log: list[tuple[Edge, bool]] = []

    @property
    def no_count(self) -> int:
        return sum(1 for _, ans in self.log if not ans)

    @property
    def yes_count(self) -> int:
        return sum(1 for _, ans in self.log if ans)

    def answer(self, e: Edge) -> bool:
        ans = edge_in_all_pms(self.graph, e)
        if not ans and self.graph.has_edge(*e):
            self.graph = self.graph.without_edge(*e)
        self.log.append((e, ans))
        return ans

    def is_determined(self) -> bool:
        """Whether only one matching remains consistent with the answers."""
        return count_perfect_matchings(self.graph, limit=2) == 1


def adversary_answer(state: AdversaryState, e: Edge) -> bool:
    return state.answer(e)


SUFFICIENCY_CAP = 6


def score_vector(guesses: Sequence[Permutation], sigma: Permutation) -> tuple[int, ...]:
    return tuple(black_peg_score(g, sigma) for g in guesses)


def is_sufficient(static_guesses: Sequence[Permutation], cap: int = SUFFICIENCY_CAP) -> bool:
    """Whether the guess list pins down every secret.

    Equivalent to the double loop over secrets: the list is sufficient iff
    the score vectors of all n! secrets are pairwise distinct.
    """
    if not static_guesses:
        return False
    n = static_guesses[0].n
    if n > cap:
        raise CapacityError(f"sufficiency check over S_{n} exceeds cap {cap}")
    if n == 1:
        return True
    seen = set()
    for sigma in all_permutations(n):
        v = score_vector(static_guesses, sigma)
        if v in seen:
            return False
        seen.add(v)
    return True
