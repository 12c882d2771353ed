"""Strategies, codemakers, and the machinery that plays them against each other.

Adaptive strategies expose ``next_guess(transcript) -> Permutation``; static
strategies are a fixed guess list plus a decoder that maps the received
scores to one final, locality-free guess.  ``run_game`` drives either kind
against a codemaker, enforcing locality when asked.

Also here: the locality wrapper that routes any base strategy through
small-support steps, the window-2 conveyor-belt pipeline with its
six-arrangement window walks and walk decoding, exhaustive minimax search
for optimal adaptive values, and the edge-probing adversary game.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .cayley import GeneratorSet, route
from .errors import CapacityError, LocalityViolation, ProtocolViolation
from .graphs import AdversaryState, Edge, perfect_matching
from .perms import (
    ELL,
    LocalityClass,
    Permutation,
    Transcript,
    all_permutations,
    black_peg_score,
    compatible_secrets,
    compose,
    diff_set,
    invert,
    step_is_local,
)

# ---------------------------------------------------------------------------
# codemakers


class HonestCodemaker:
    """Scores guesses against a fixed secret."""

    def __init__(self, secret: Permutation):
        self.secret = secret

    @property
    def n(self) -> int:
        return self.secret.n

    def score(self, guess: Permutation) -> int:
        return black_peg_score(guess, self.secret)


@dataclass(frozen=True)
class GenerousFeedback:
    score: int
    correct_changed: frozenset[int]  # changed positions that are now correct (0-based)


class GenerousCodemaker(HonestCodemaker):
    """Honest codemaker that also reveals which changed positions are correct.

    For the first guess every position counts as changed.
    """

    def feedback(self, prev: Optional[Permutation], guess: Permutation) -> GenerousFeedback:
        changed = range(guess.n) if prev is None else diff_set(prev, guess)
        correct = frozenset(i for i in changed if guess.image[i] == self.secret.image[i])
        return GenerousFeedback(self.score(guess), correct)


class MatchingAdversaryCodemaker:
    """Secretless codemaker that answers to keep the candidate set large.

    Picks, among scores consistent with some remaining candidate, the one
    leaving the most candidates (ties toward the smallest score).  Answers
    stay mutually consistent, so the game is always winnable.
    """

    def __init__(self, n: int, cap: int = 8):
        if n > cap:
            raise CapacityError(f"adversary candidate set over S_{n} exceeds cap {cap}")
        self.n = n
        self.candidates = list(all_permutations(n))

    def score(self, guess: Permutation) -> int:
        classes: dict[int, list[Permutation]] = {}
        for sigma in self.candidates:
            classes.setdefault(black_peg_score(guess, sigma), []).append(sigma)
        best = max(classes, key=lambda b: (len(classes[b]), -b))
        self.candidates = classes[best]
        return best


# ---------------------------------------------------------------------------
# strategy kinds and the game runner


class AdaptiveStrategy:
    """Base: maps the transcript so far to the next guess."""

    def next_guess(self, transcript: Transcript) -> Permutation:
        raise NotImplementedError


@dataclass(frozen=True)
class StaticStrategy:
    """A fixed guess list plus a decoder for the final unrestricted guess."""

    guesses: tuple[Permutation, ...]
    decoder: Callable[[Sequence[int]], Permutation]


@dataclass(frozen=True)
class GameResult:
    transcript: Transcript
    guess_count: int
    solved: bool


def _checked_score(codemaker, guess: Permutation) -> int:
    b = codemaker.score(guess)
    n = guess.n
    if not 0 <= b <= n or (b == n - 1 and n >= 2):
        raise ProtocolViolation(f"codemaker returned impossible score {b} for n={n}")
    return b


def _check_step(prev: Optional[Permutation], guess: Permutation, locality: Optional[LocalityClass]):
    if locality is None or prev is None:
        return
    if not step_is_local(prev, guess, locality):
        d = sorted(i + 1 for i in diff_set(prev, guess))
        raise LocalityViolation(f"guess breaks {locality} locality at positions {d}", positions=d)


def run_game(
    strategy,
    codemaker,
    locality: Optional[LocalityClass] = None,
    max_guesses: Optional[int] = None,
) -> GameResult:
    """Play a full game and return its transcript.

    Adaptive play stops at the winning guess (score n).  Static play scores
    the whole fixed list, then the decoder's final guess, which is exempt
    from the locality constraint.  A strategy that breaks locality aborts
    with LocalityViolation.
    """
    n = codemaker.n
    if isinstance(strategy, StaticStrategy):
        t = Transcript(n)
        prev: Optional[Permutation] = None
        for g in strategy.guesses:
            _check_step(prev, g, locality)
            t = t.with_entry(g, _checked_score(codemaker, g))
            prev = g
        final = strategy.decoder(t.scores)
        t = t.with_entry(final, _checked_score(codemaker, final))
        return GameResult(t, len(t), t.entries[-1][1] == n)

    limit = max_guesses if max_guesses is not None else 4 * math.factorial(n)
    t = Transcript(n)
    prev = None
    generous = isinstance(codemaker, GenerousCodemaker) and hasattr(strategy, "observe_generous")
    for _ in range(limit):
        g = strategy.next_guess(t)
        _check_step(prev, g, locality)
        if generous:
            fb = codemaker.feedback(prev, g)
            strategy.observe_generous(g, fb)
            b = fb.score
        else:
            b = _checked_score(codemaker, g)
        t = t.with_entry(g, b)
        prev = g
        if b == n:
            return GameResult(t, len(t), True)
    return GameResult(t, len(t), False)


# ---------------------------------------------------------------------------
# baseline strategy and the locality wrapper


class CompatibleSetStrategy(AdaptiveStrategy):
    """Always guess the lexicographically least compatible permutation."""

    def __init__(self, cap: int = 8):
        self.cap = cap

    def next_guess(self, transcript: Transcript) -> Permutation:
        cands = compatible_secrets(transcript, cap=self.cap)
        if not cands:
            raise ProtocolViolation("no permutation is compatible with the transcript")
        return cands[0]


class LocalizedStrategy(AdaptiveStrategy):
    """Route a base strategy's guesses through support-<=k steps.

    Each base guess becomes a short run of intermediate guesses whose final
    element is the base guess; by default, the base strategy only ever sees
    the base guesses and their scores, and the scores of intermediate
    guesses are dropped (set consume_intermediate=True to feed everything
    through, for bases that can use extra entries).
    """

    def __init__(self, base: AdaptiveStrategy, k: int, consume_intermediate: bool = False):
        if k < 2:
            raise ValueError("k must be >= 2")
        self.base = base
        self.k = k
        self.consume_intermediate = consume_intermediate
        self._pending: deque[Permutation] = deque()
        self._base_indices: list[int] = []

    def _base_view(self, transcript: Transcript) -> Transcript:
        if self.consume_intermediate:
            return transcript
        entries = tuple(transcript.entries[i] for i in self._base_indices)
        return Transcript(transcript.n, entries)

    def next_guess(self, transcript: Transcript) -> Permutation:
        if self._pending:
            g = self._pending.popleft()
            if not self._pending:
                self._base_indices.append(len(transcript))
            return g
        target = self.base.next_guess(self._base_view(transcript))
        if not transcript.entries:
            self._base_indices.append(0)
            return target
        current = transcript.entries[-1][0]
        factors = route(compose(invert(current), target), self.k).factors
        if not factors:
            self._base_indices.append(len(transcript))
            return target  # base repeated its guess
        prefix = current
        for f in factors:
            prefix = compose(prefix, f)
            self._pending.append(prefix)
        g = self._pending.popleft()
        if not self._pending:
            self._base_indices.append(len(transcript))
        return g


def localize_static(s: StaticStrategy, k: int) -> StaticStrategy:
    """Static counterpart of LocalizedStrategy: expand the guess list."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if not s.guesses:
        return s
    expanded: list[Permutation] = [s.guesses[0]]
    base_positions = [0]
    cur = s.guesses[0]
    for g in s.guesses[1:]:
        factors = route(compose(invert(cur), g), k).factors
        if not factors:
            expanded.append(g)
        else:
            for f in factors:
                cur = compose(cur, f)
                expanded.append(cur)
        base_positions.append(len(expanded) - 1)
        cur = g

    base_decoder = s.decoder

    def decoder(scores: Sequence[int]) -> Permutation:
        return base_decoder([scores[i] for i in base_positions])

    return StaticStrategy(tuple(expanded), decoder)


def localize(strategy, k: int, consume_intermediate: bool = False):
    """Wrap an adaptive or static strategy into an ell_k-local one."""
    if isinstance(strategy, StaticStrategy):
        return localize_static(strategy, k)
    return LocalizedStrategy(strategy, k, consume_intermediate=consume_intermediate)


def compatible_decoder(guesses: Sequence[Permutation], cap: int = 8) -> Callable[[Sequence[int]], Permutation]:
    """Decoder picking the lexicographically least secret compatible with all scores."""
    guesses = tuple(guesses)
    n = guesses[0].n

    def decode(scores: Sequence[int]) -> Permutation:
        t = Transcript(n, tuple(zip(guesses, scores)))
        cands = compatible_secrets(t, cap=cap)
        if not cands:
            raise ProtocolViolation("scores are compatible with no secret")
        return cands[0]

    return decode


# ---------------------------------------------------------------------------
# conveyor belt and window walks


def conveyor_belt(n: int) -> list[Permutation]:
    """Identity plus n passes of the adjacent-transposition sweep.

    1 + n(n-1) guesses; consecutive guesses differ by an adjacent
    transposition and every symbol visits every position.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    cur = list(range(n))
    out = [Permutation(tuple(cur))]
    for _ in range(n):
        for i in range(n - 1):
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
            out.append(Permutation(tuple(cur)))
    return out


def conveyor_belt_strategy(n: int, cap: int = 8) -> StaticStrategy:
    guesses = tuple(conveyor_belt(n))
    return StaticStrategy(guesses, compatible_decoder(guesses, cap=cap))


# Window-relative swap patterns for the six-arrangement walk replacing one
# adjacent transposition.  The normal pattern nets a swap of the window's
# first two slots, the mirror pattern (used at the right edge) the last two.
_WALK_SWAPS_NORMAL = ((1, 2), (0, 1), (1, 2), (0, 1), (1, 2))
_WALK_SWAPS_MIRROR = ((0, 1), (1, 2), (0, 1), (1, 2), (0, 1))


def _walk_arrangements(swaps) -> tuple[tuple[int, int, int], ...]:
    cur = [1, 2, 3]
    out = [tuple(cur)]
    for a, b in swaps:
        cur[a], cur[b] = cur[b], cur[a]
        out.append(tuple(cur))
    return tuple(out)


ARRANGEMENTS_NORMAL = _walk_arrangements(_WALK_SWAPS_NORMAL)
ARRANGEMENTS_MIRROR = _walk_arrangements(_WALK_SWAPS_MIRROR)


def walk_window(i: int, n: int) -> tuple[int, int, int]:
    """Window positions (1-based) for the walk simulating transposition (i, i+1)."""
    if n < 3:
        raise ValueError("window walks need n >= 3")
    if not 1 <= i <= n - 1:
        raise ValueError(f"transposition index {i} out of range")
    if i <= n - 2:
        return (i, i + 1, i + 2)
    return (n - 2, n - 1, n)


def hexagon_expand(current: Permutation, i: int) -> list[Permutation]:
    """The five follow-up guesses walking all six arrangements of a window.

    Together with ``current`` they visit every arrangement of the three
    symbols in the window of transposition (i, i+1) (1-based); consecutive
    guesses differ by one adjacent transposition and the last guess equals
    ``current`` with positions i, i+1 swapped.
    """
    n = current.n
    w = walk_window(i, n)
    swaps = _WALK_SWAPS_NORMAL if i <= n - 2 else _WALK_SWAPS_MIRROR
    cur = list(current.image)
    out = []
    for a, b in swaps:
        pa, pb = w[a] - 1, w[b] - 1
        cur[pa], cur[pb] = cur[pb], cur[pa]
        out.append(Permutation(tuple(cur)))
    return out


def window_masks(include_all_outside: bool = True) -> list[tuple[int, int, int]]:
    """Possible per-slot contents of a window in the secret.

    Entry m of a mask is the relative label (1..3) of the window symbol the
    secret holds at window slot m, or 0 when the secret holds a non-window
    symbol there.  The draw from the multiset {0,0,1,2,3} gives 33 masks;
    the all-outside mask (0,0,0) is realizable too and is included unless
    switched off.
    """
    masks = sorted(set(itertools.permutations((0, 0, 1, 2, 3), 3)))
    if include_all_outside:
        masks.append((0, 0, 0))
    return masks


def mask_score_vector(mask: Sequence[int], arrangements: Sequence[tuple[int, int, int]]) -> tuple[int, ...]:
    """In-window score of each walk arrangement against a window mask."""
    return tuple(sum(1 for m, g in zip(mask, arr) if m == g) for arr in arrangements)


def verify_distinguishability() -> bool:
    """Check that the 33 multiset-drawn masks give pairwise distinct vectors."""
    masks, vectors = distinguishability_report()
    return len(masks) == 33 and len(set(vectors.values())) == len(masks)


def distinguishability_report():
    """The 33 masks and their 6-score vectors over the walk arrangements."""
    masks = window_masks(include_all_outside=False)
    vectors = {m: mask_score_vector(m, ARRANGEMENTS_NORMAL) for m in masks}
    return masks, vectors


def decode_window_walk(
    scores: Sequence[int],
    arrangements: Sequence[tuple[int, int, int]],
    n: int,
) -> tuple[int, int, int]:
    """Recover the window mask from the six scores of one walk.

    The observed scores are the in-window vector of the true mask plus a
    constant outside-window offset in 0..n-3.  No two masks produce vectors
    differing by a constant, so the pair (mask, offset) is unique; a vector
    fitting no mask means the scores are dishonest.
    """
    if len(scores) != 6:
        raise ValueError("a window walk has exactly 6 scores")
    best = None
    for mask in window_masks():
        vec = mask_score_vector(mask, arrangements)
        offs = {s - v for s, v in zip(scores, vec)}
        if len(offs) != 1:
            continue
        (off,) = offs
        if 0 <= off <= n - 3:
            if best is not None:
                raise ProtocolViolation("ambiguous window walk scores")
            best = mask
    if best is None:
        raise ProtocolViolation(f"window walk scores {tuple(scores)} match no mask")
    return best


def decode_generous(scores: Sequence[int], n: int, mirror: bool = False) -> tuple[int, int, int]:
    """Decode one walk's scores into per-slot match information (0 = no match)."""
    arr = ARRANGEMENTS_MIRROR if mirror else ARRANGEMENTS_NORMAL
    return decode_window_walk(scores, arr, n)


@dataclass(frozen=True)
class _WalkMeta:
    start_index: int  # transcript index of the walk's first arrangement
    window: tuple[int, int, int]  # 1-based positions
    symbols: tuple[int, ...]  # 0-based symbols at the window when the walk starts
    mirror: bool


def conveyor_walk_plan(n: int) -> tuple[list[Permutation], list[_WalkMeta]]:
    """The conveyor belt with every transposition replaced by a window walk.

    Returns the full static guess list (identity first) and the metadata
    needed to decode each walk afterwards.
    """
    if n < 3:
        raise ValueError("the walk pipeline needs n >= 3")
    cur = Permutation.identity(n)
    plan = [cur]
    walks: list[_WalkMeta] = []
    for _ in range(n):
        for i in range(1, n):
            w = walk_window(i, n)
            syms = tuple(cur.image[p - 1] for p in w)
            walks.append(_WalkMeta(len(plan) - 1, w, syms, mirror=i > n - 2))
            for g in hexagon_expand(cur, i):
                plan.append(g)
            cur = plan[-1]
    return plan, walks


def _adjacent_walk(start: Permutation, target: Permutation) -> list[Permutation]:
    """Adjacent-transposition path from start to target (target included)."""
    cur = list(start.image)
    goal = target.image
    out: list[Permutation] = []
    for p in range(len(goal)):
        if cur[p] == goal[p]:
            continue
        q = cur.index(goal[p], p + 1)
        while q > p:
            cur[q - 1], cur[q] = cur[q], cur[q - 1]
            out.append(Permutation(tuple(cur)))
            q -= 1
    return out


class ConveyorHexagonStrategy(AdaptiveStrategy):
    """Window-2-local composite: conveyor walks, decode, then walk to the secret.

    Plays the fixed walk plan, decodes every window walk into (position,
    symbol) facts, assembles the secret, and finishes with a shortest
    adjacent-transposition walk whose last guess is the secret.  Every
    consecutive pair of guesses differs by one adjacent transposition.
    """

    def __init__(self, n: int):
        self.n = n
        self.plan, self.walks = conveyor_walk_plan(n)
        self._tail: Optional[list[Permutation]] = None

    def _decode_secret(self, transcript: Transcript) -> Permutation:
        scores = transcript.scores
        image: list[Optional[int]] = [None] * self.n
        for w in self.walks:
            s6 = scores[w.start_index : w.start_index + 6]
            mask = decode_generous(s6, self.n, mirror=w.mirror)
            for slot in range(3):
                if mask[slot] == 0:
                    continue
                pos = w.window[slot] - 1
                sym = w.symbols[mask[slot] - 1]
                if image[pos] not in (None, sym):
                    raise ProtocolViolation("inconsistent walk feedback")
                image[pos] = sym
        if any(v is None for v in image):
            raise ProtocolViolation("walk feedback left positions undetermined")
        return Permutation(tuple(image))  # type: ignore[arg-type]

    def next_guess(self, transcript: Transcript) -> Permutation:
        k = len(transcript)
        if k < len(self.plan):
            return self.plan[k]
        if self._tail is None:
            secret = self._decode_secret(transcript)
            tail = _adjacent_walk(self.plan[-1], secret)
            if not tail:
                tail = [secret]  # replay: final guess must still be made
            self._tail = tail
        idx = k - len(self.plan)
        return self._tail[min(idx, len(self._tail) - 1)]


def conveyor_hexagon_static(n: int, cap: int = 8) -> StaticStrategy:
    """Static form of the walk pipeline: fixed walks, one decoded final guess."""
    plan, walks = conveyor_walk_plan(n)

    def decode(scores: Sequence[int]) -> Permutation:
        image: list[Optional[int]] = [None] * n
        for w in walks:
            mask = decode_generous(scores[w.start_index : w.start_index + 6], n, mirror=w.mirror)
            for slot in range(3):
                if mask[slot]:
                    image[w.window[slot] - 1] = w.symbols[mask[slot] - 1]
        if any(v is None for v in image):
            raise ProtocolViolation("walk feedback left positions undetermined")
        return Permutation(tuple(image))  # type: ignore[arg-type]

    return StaticStrategy(tuple(plan), decode)


class ConveyorGenerousStrategy(AdaptiveStrategy):
    """Plain conveyor belt against a generous codemaker, then walk to the secret.

    Uses the revealed correct-changed positions instead of window walks.
    """

    def __init__(self, n: int):
        self.n = n
        self.plan = conveyor_belt(n)
        self.known: dict[int, int] = {}
        self._tail: Optional[list[Permutation]] = None

    def observe_generous(self, guess: Permutation, fb: GenerousFeedback):
        for pos in fb.correct_changed:
            self.known[pos] = guess.image[pos]

    def next_guess(self, transcript: Transcript) -> Permutation:
        k = len(transcript)
        if k < len(self.plan):
            return self.plan[k]
        if self._tail is None:
            if len(self.known) < self.n:
                raise ProtocolViolation("generous feedback left positions undetermined")
            secret = Permutation(tuple(self.known[i] for i in range(self.n)))
            tail = _adjacent_walk(self.plan[-1], secret) or [secret]
            self._tail = tail
        idx = k - len(self.plan)
        return self._tail[min(idx, len(self._tail) - 1)]


# ---------------------------------------------------------------------------
# exhaustive minimax: optimal adaptive values


OPTIMAL_CAP = 5


def _locality_generators(n: int, locality: LocalityClass) -> GeneratorSet:
    if locality.kind == ELL:
        return GeneratorSet.support_bounded(locality.k, n)
    return GeneratorSet.window_bounded(locality.k, n)


class _MinimaxSearch:
    """Memoized value iteration over (candidate set, last guess) states.

    Guessing an informative vertex (one splitting the candidate set, or
    winning outright) costs 1 plus the adversary's best branch; guessing an
    uninformative vertex is pure movement.  Per candidate set, values over
    all vertices satisfy a shortest-path recurrence solved with Dijkstra.
    """

    def __init__(self, n: int, locality: LocalityClass):
        self.n = n
        perms = [p.image for p in all_permutations(n)]
        self.perms = perms
        self.index = {img: i for i, img in enumerate(perms)}
        gens = _locality_generators(n, locality).elements()
        self.neighbors: list[list[int]] = []
        for img in perms:
            p = Permutation(img)
            self.neighbors.append(sorted(self.index[compose(p, g).image] for g in gens))
        self.memo: dict[frozenset, list[int]] = {}

    @staticmethod
    def _score(a: tuple[int, ...], b: tuple[int, ...]) -> int:
        return sum(1 for x, y in zip(a, b) if x == y)

    def values(self, cands: frozenset) -> list[int]:
        """G[v] = worst-case guesses to finish when the next guess is v."""
        cached = self.memo.get(cands)
        if cached is not None:
            return cached
        m = len(self.perms)
        INF = float("inf")
        g_val: list = [INF] * m
        heap = []
        for v in range(m):
            img = self.perms[v]
            classes: dict[int, list] = {}
            for c in cands:
                classes.setdefault(self._score(img, c), []).append(c)
            if len(classes) == 1:
                (b,) = classes
                if b != self.n:
                    continue  # uninformative: value set by movement relaxation
            worst = 0
            for b, cls in classes.items():
                if b == self.n:
                    continue
                sub = self.values(frozenset(cls))
                worst = max(worst, min(sub[u] for u in self.neighbors[v]))
            g_val[v] = 1 + worst
            heapq.heappush(heap, (g_val[v], v))
        while heap:
            d, v = heapq.heappop(heap)
            if d > g_val[v]:
                continue
            for u in self.neighbors[v]:
                if g_val[u] > d + 1:
                    g_val[u] = d + 1
                    heapq.heappush(heap, (d + 1, u))
        self.memo[cands] = g_val
        return g_val

    def root_value(self) -> int:
        first = self.perms[self.index[tuple(range(self.n))]]
        classes: dict[int, list] = {}
        for img in self.perms:
            classes.setdefault(self._score(first, img), []).append(img)
        worst = 0
        id_idx = self.index[tuple(range(self.n))]
        for b, cls in classes.items():
            if b == self.n:
                continue
            sub = self.values(frozenset(cls))
            worst = max(worst, min(sub[u] for u in self.neighbors[id_idx]))
        return 1 + worst

    # -- strategy tree reconstruction -----------------------------------

    def _best_next(self, cands: frozenset, last: int) -> int:
        g_val = self.values(cands)
        return min(self.neighbors[last], key=lambda u: (g_val[u], self.perms[u]))

    def _branches(self, v: int, cands: frozenset) -> dict[int, frozenset]:
        img = self.perms[v]
        classes: dict[int, list] = {}
        for c in cands:
            classes.setdefault(self._score(img, c), []).append(c)
        return {b: frozenset(cls) for b, cls in classes.items()}

    def tree(self, cands: frozenset, last: int) -> dict:
        v = self._best_next(cands, last)
        return self._subtree(v, cands)

    def _subtree(self, v: int, cands: frozenset) -> dict:
        branches = self._branches(v, cands)
        children: dict[str, object] = {}
        for b in sorted(branches):
            if b == self.n:
                children[str(b)] = "solved"
            else:
                children[str(b)] = self.tree(branches[b], v)
        return {"guess": [x + 1 for x in self.perms[v]], "children": children}


def optimal_adaptive_value(n: int, locality: LocalityClass, cap: int = OPTIMAL_CAP) -> int:
    """Exact worst-case guess count of the best adaptive local strategy.

    Counts the first guess and the winning guess; the first guess is fixed
    to the identity (scores are left-translation invariant, so this loses
    nothing).  The adversarial codemaker always picks the score that
    maximizes the remaining subtree among nonempty candidate classes.
    """
    if n > cap:
        raise CapacityError(f"optimal search over S_{n} exceeds cap {cap}")
    if n == 1:
        return 1
    return _MinimaxSearch(n, locality).root_value()


def optimal_strategy_tree(n: int, locality: LocalityClass, cap: int = OPTIMAL_CAP) -> tuple[int, dict]:
    """Optimal value plus one witnessing strategy tree (root guess = identity)."""
    if n > cap:
        raise CapacityError(f"optimal search over S_{n} exceeds cap {cap}")
    search = _MinimaxSearch(n, locality)
    value = search.root_value()
    id_idx = search.index[tuple(range(n))]
    tree = search._subtree(id_idx, frozenset(p.image for p in all_permutations(n)))
    return value, tree


# ---------------------------------------------------------------------------
# the extra-generous edge-probing game


@dataclass(frozen=True)
class ProbeGameResult:
    probes: int
    yes_count: int
    no_count: int
    matching: Permutation  # the unique matching when the game ended


def extra_generous_probe_game(prober: Callable[[int], Iterable[Edge]], n: int) -> ProbeGameResult:
    """Run an edge-probing strategy against the matching adversary.

    The prober yields edges of K_{n,n}; the adversary answers yes iff the
    edge lies in every still-possible matching and deletes it otherwise.
    Stops as soon as a single matching remains consistent.
    """
    state = AdversaryState(n)
    for e in prober(n):
        state.answer(e)
        if state.is_determined():
            pm = perfect_matching(state.graph)
            assert pm is not None
            image = tuple(pm[i] for i in range(n))
            return ProbeGameResult(len(state.log), state.yes_count, state.no_count, Permutation(image))
    raise ValueError("prober exhausted before the matching was determined")


def row_scan_prober(n: int) -> Iterator[Edge]:
    return ((i, j) for i in range(n) for j in range(n))


def column_scan_prober(n: int) -> Iterator[Edge]:
    return ((i, j) for j in range(n) for i in range(n))


def diagonal_scan_prober(n: int) -> Iterator[Edge]:
    return ((i, (i + d) % n) for d in range(n) for i in range(n))


def random_prober(seed: int) -> Callable[[int], Iterator[Edge]]:
    import random

    def prober(n: int) -> Iterator[Edge]:
        edges = [(i, j) for i in range(n) for j in range(n)]
        random.Random(seed).shuffle(edges)
        return iter(edges)

    return prober
