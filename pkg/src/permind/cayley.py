"""Generator sets on S_n, routing decompositions, BFS distances, displacement.

Two families of generator sets are provided: support-bounded sets (all
permutations moving at most k points) and window-bounded sets (all
permutations whose support fits in an interval of consecutive positions).
The window family comes in two interval lengths, ``k`` (span <= k-1, the one
matching window-locality of consecutive guesses) and ``k+1`` (a wider
variant); both are exposed since they do not coincide and each is useful.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError
from .perms import Permutation, all_permutations, compose, invert

SUPPORT = "support"
WINDOW = "window"

BFS_CAP = 7


@dataclass(frozen=True)
class GeneratorSet:
    """A generating set of S_n given by a membership rule.

    kind "support": support size at most k.
    kind "window":  support contained in an interval of ``window_len``
    consecutive positions (window_len defaults to k).
    """

    kind: str
    k: int
    n: int
    window_len: int | None = None

    def __post_init__(self):
        if self.kind not in (SUPPORT, WINDOW):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.k < 2:
            raise ValueError("k must be >= 2")

    @classmethod
    def support_bounded(cls, k: int, n: int) -> "GeneratorSet":
        return cls(SUPPORT, k, n)

    @classmethod
    def window_bounded(cls, k: int, n: int) -> "GeneratorSet":
        """Window of k consecutive positions (span <= k-1)."""
        return cls(WINDOW, k, n, window_len=k)

    @classmethod
    def window_bounded_wide(cls, k: int, n: int) -> "GeneratorSet":
        """The wider variant: window of k+1 consecutive positions."""
        return cls(WINDOW, k, n, window_len=k + 1)

    def contains(self, p: Permutation) -> bool:
        sup = p.support()
        if not sup:
            return True
        if self.kind == SUPPORT:
            return len(sup) <= self.k
        length = self.window_len if self.window_len is not None else self.k
        return max(sup) - min(sup) <= length - 1

    def elements(self, include_identity: bool = False) -> list[Permutation]:
        """All members of the set in S_n (filtered enumeration; small n only)."""
        out = []
        for p in all_permutations(self.n):
            if p.is_identity() and not include_identity:
                continue
            if self.contains(p):
                out.append(p)
        return out


@dataclass(frozen=True)
class RoutingPath:
    """Factors composing (left to right) to a routed target permutation."""

    factors: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.factors)

    def product(self, n: int) -> Permutation:
        out = Permutation.identity(n)
        for f in self.factors:
            out = compose(out, f)
        return out


def route(target: Permutation, k: int) -> RoutingPath:
    """Decompose ``target`` into factors of support <= k.

    The factors compose left-to-right to ``target`` and there are at most
    ceil((m-1)/(k-1)) of them, where m is the support size.  Cycles are
    consumed in order of smallest element, each listed from its smallest
    element, so the output is deterministic.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    factors: list[Permutation] = []
    rest = target
    while True:
        moved = sorted(rest.support())
        m = len(moved)
        if m == 0:
            break
        if m <= k:
            factors.append(rest)
            break
        order: list[int] = []
        for cyc in rest.cycles():
            order.extend(cyc)
        head = order[:k]
        head_set = set(head)
        # the unique value of head not hit by rest on head minus its last element
        hit = {rest.image[x] for x in head[:-1]}
        (y,) = head_set - hit
        gimage = list(range(target.n))
        for x in head[:-1]:
            gimage[x] = rest.image[x]
        gimage[head[-1]] = y
        gamma = Permutation(tuple(gimage))
        factors.append(gamma)
        rest = compose(invert(gamma), rest)
    return RoutingPath(tuple(factors))


def route_length_bound(m: int, k: int) -> int:
    """ceil((m-1)/(k-1)) for support size m, 0 when m = 0."""
    if m == 0:
        return 0
    return -((m - 1) // -(k - 1))


def lehmer_rank(image: tuple[int, ...]) -> int:
    """Rank of a permutation in lexicographic order (factorial number system)."""
    n = len(image)
    rank = 0
    for i, v in enumerate(image):
        smaller = sum(1 for w in image[i + 1 :] if w < v)
        rank = rank * (n - i) + smaller
    return rank


def bfs_distances_from(start: Permutation, gens: GeneratorSet, cap: int = BFS_CAP) -> dict[Permutation, int]:
    """Exact Cayley-graph distances from ``start`` to every vertex.

    Edges are right multiplications by generator elements.  States are
    rank-encoded into a dense distance table, exhaustive over S_n (capped).
    """
    n = start.n
    if n > cap:
        raise CapacityError(f"BFS over S_{n} exceeds cap {cap}")
    steps = [g.image for g in gens.elements()]
    size = math.factorial(n)
    dist = [-1] * size
    dist[lehmer_rank(start.image)] = 0
    queue = deque([(start.image, 0)])
    while queue:
        cur, d = queue.popleft()
        for g in steps:
            nxt = tuple(cur[v] for v in g)
            r = lehmer_rank(nxt)
            if dist[r] == -1:
                dist[r] = d + 1
                queue.append((nxt, d + 1))
    out = {}
    for img in itertools.permutations(range(n)):
        d = dist[lehmer_rank(img)]
        if d != -1:
            out[Permutation(img)] = d
    return out


def bfs_distance(p: Permutation, q: Permutation, gens: GeneratorSet, cap: int = BFS_CAP) -> int:
    """Exact distance between two vertices of Cay(S_n, gens)."""
    dist = bfs_distances_from(p, gens, cap=cap)
    if q not in dist:
        raise ValueError("generator set does not connect the two permutations")
    return dist[q]


def bfs_diameter(gens: GeneratorSet, cap: int = BFS_CAP) -> int:
    """Diameter of Cay(S_n, gens); by vertex transitivity, the eccentricity of id."""
    dist = bfs_distances_from(Permutation.identity(gens.n), gens, cap=cap)
    if len(dist) != math.factorial(gens.n):
        raise ValueError("generator set does not generate S_n")
    return max(dist.values())


def displacement(p: Permutation) -> int:
    """Total displacement sum |p(i) - i|."""
    return sum(abs(v - i) for i, v in enumerate(p.image))


def reverse_permutation(n: int) -> Permutation:
    return Permutation(tuple(n - 1 - i for i in range(n)))


def window_diameter_lower_bound(n: int, k: int) -> Fraction:
    """ceil(n^2/2) / (2k(k-1)), the displacement bound on the window-set diameter."""
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    return Fraction(-(n * n // -2), 2 * k * (k - 1))
