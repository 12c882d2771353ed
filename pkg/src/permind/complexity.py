"""Hardness reduction generators and transcript satisfiability solvers.

Monotone exactly-one 3-SAT formulas are compiled into score transcripts in
two flavors: an unrestricted one (blocks of three positions per variable,
block-scrambling guesses, clause guesses) and a 3-local one whose guesses
walk between gadget permutations three positions at a time.

For 2-local transcripts, the score differences of consecutive guesses are
compiled into forced / forbidden / exactly-one-of-two edge constraints on
the secret's matching, which become a parity-constrained perfect matching
instance.  The instance is decided by a character-sum determinant identity
test over a large prime field (one-sided error), with an exhaustive
enumeration backend as oracle and fallback.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapacityError
from .graphs import BipartiteSecretGraph, Edge
from .perms import (
    LocalityClass,
    Permutation,
    Transcript,
    black_peg_score,
    check_locality,
    diff_set,
    ell,
)

ALPHA3 = Permutation.from_one_line((2, 3, 1))
BETA3 = Permutation.from_one_line((3, 1, 2))

FIELD_PRIME = (1 << 61) - 1  # Mersenne prime, comfortably >= 2^31

BRUTE_CAP = 9
BRUTE_BLOCK_CAP = 12
CHARSUM_CAP = 16
EXHAUSTIVE_RESIDUAL_CAP = 9


# ---------------------------------------------------------------------------
# formulas and instances


@dataclass(frozen=True)
class MonotoneCnf:
    """An all-positive 3-CNF; a clause is a sorted triple of variable indices."""

    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("need at least one variable")
        for cl in self.clauses:
            if len(cl) != 3 or len(set(cl)) != 3:
                raise ValueError(f"clause {cl} must have 3 distinct variables")
            if not all(1 <= x <= self.n_vars for x in cl):
                raise ValueError(f"clause {cl} out of range for {self.n_vars} variables")
            if tuple(sorted(cl)) != cl:
                raise ValueError(f"clause {cl} must be sorted")

    @classmethod
    def from_clauses(cls, n_vars: int, clauses: Iterable[Sequence[int]]) -> "MonotoneCnf":
        return cls(n_vars, tuple(tuple(sorted(cl)) for cl in clauses))

    def exactly_one_satisfiable(self) -> Optional[tuple[int, ...]]:
        """Assignment enumeration oracle: a witness set of true variables, or None."""
        for bits in itertools.product((0, 1), repeat=self.n_vars):
            if all(sum(bits[x - 1] for x in cl) == 1 for cl in self.clauses):
                return tuple(i + 1 for i, b in enumerate(bits) if b)
        return None


@dataclass(frozen=True)
class PmSatInstance:
    """A transcript whose satisfiability is in question, with an optional
    locality certificate (validated at construction)."""

    transcript: Transcript
    locality: Optional[LocalityClass] = None

    def __post_init__(self):
        if self.locality is not None and not check_locality(self.transcript, self.locality):
            raise ValueError(f"transcript is not {self.locality}-local")


# ---------------------------------------------------------------------------
# blocks and gadget permutations


def block(i: int) -> tuple[int, int, int]:
    """Positions (1-based) of the i-th variable block."""
    if i < 1:
        raise ValueError("block index is 1-based")
    return (3 * i - 2, 3 * i - 1, 3 * i)


def apply_at_positions(base: Permutation, positions: Sequence[int], sigma3: Permutation) -> Permutation:
    """Rearrange the values at the given positions (1-based) by an S_3 element.

    The new value at positions[m] is the old value at positions[sigma3(m)].
    """
    image = list(base.image)
    old = [base.image[p - 1] for p in positions]
    for m in range(3):
        image[positions[m] - 1] = old[sigma3.image[m]]
    return Permutation(tuple(image))


def scrambled_pair_guess(n_vars: int, i: int, j: int, sigma3: Permutation) -> Permutation:
    """Identity with blocks i < j swapped and their contents rearranged by sigma3."""
    if not 1 <= i < j <= n_vars:
        raise ValueError("need 1 <= i < j <= n_vars")
    pieces: list[tuple[int, ...]] = [block(b) for b in range(1, n_vars + 1)]
    bi, bj = pieces[i - 1], pieces[j - 1]
    pieces[i - 1] = tuple(bj[sigma3.image[m]] for m in range(3))
    pieces[j - 1] = tuple(bi[sigma3.image[m]] for m in range(3))
    return Permutation.from_one_line([x for piece in pieces for x in piece])


def clause_guess(n_vars: int, clause: Sequence[int]) -> Permutation:
    """Identity with the three clause blocks cycled forward (alpha applied)."""
    g = Permutation.identity(3 * n_vars)
    for v in clause:
        g = apply_at_positions(g, block(v), ALPHA3)
    return g


def block_secret(assignment: Sequence[Permutation]) -> Permutation:
    """The secret encoding one S_3 element per block."""
    image: list[int] = []
    for bi, sigma in enumerate(assignment):
        base = block(bi + 1)
        image.extend(base[sigma.image[m]] for m in range(3))
    return Permutation.from_one_line(image)


# ---------------------------------------------------------------------------
# the two reductions


def reduce_to_pm_sat(f: MonotoneCnf) -> PmSatInstance:
    """Compile a formula into an unrestricted score transcript.

    Satisfiable iff the formula has an exactly-one-true assignment.
    1 + 6*C(n,2) + m guesses: the identity (score 0), all block-pair
    scrambles (score 0), one clause guess per clause (score 3).
    """
    n_vars = f.n_vars
    big_n = 3 * n_vars
    t = Transcript(big_n).with_entry(Permutation.identity(big_n), 0)
    sigmas = [Permutation(img) for img in itertools.permutations(range(3))]
    for i in range(1, n_vars + 1):
        for j in range(i + 1, n_vars + 1):
            for sigma in sigmas:
                t = t.with_entry(scrambled_pair_guess(n_vars, i, j, sigma), 0)
    for cl in f.clauses:
        t = t.with_entry(clause_guess(n_vars, cl), 3)
    return PmSatInstance(t)


def clause_walk_steps(clause: Sequence[int]) -> list[tuple[Permutation, tuple[int, int, int]]]:
    """The nine 3-cycles walking the identity to a clause guess."""
    i, j, k = clause
    return [
        (ALPHA3, (3 * i - 2, 3 * j - 2, 3 * k - 2)),
        (ALPHA3, (3 * i - 1, 3 * j - 1, 3 * k - 1)),
        (ALPHA3, (3 * i, 3 * j, 3 * k)),
        (ALPHA3, block(i)),
        (ALPHA3, block(j)),
        (ALPHA3, block(k)),
        (BETA3, (3 * i - 2, 3 * j - 2, 3 * k - 2)),
        (BETA3, (3 * i - 1, 3 * j - 1, 3 * k - 1)),
        (BETA3, (3 * i, 3 * j, 3 * k)),
    ]


_WALK_SCORES = (0, 0, 0, 0, 0, 0, 1, 2, 3)


def reduce_to_3local(f: MonotoneCnf) -> PmSatInstance:
    """Compile a formula into a transcript whose steps move <= 3 positions.

    The block-preservation stage guesses every cross-block transposition
    (score 0) with the identity re-guessed in between.  Each clause gadget
    walks to the clause guess through nine 3-cycles with scores
    (0,0,0,0,0,0,1,2,3), then walks back to the identity; the backward
    guesses revisit permutations whose scores are already pinned, keeping
    consecutive guesses within 3 positions without adding constraints.
    """
    n_vars = f.n_vars
    big_n = 3 * n_vars
    ident = Permutation.identity(big_n)
    t = Transcript(big_n).with_entry(ident, 0)
    for i in range(1, big_n + 1):
        for j in range(i + 1, big_n + 1):
            if (i - 1) // 3 == (j - 1) // 3:
                continue
            t = t.with_entry(Permutation.transposition(big_n, i, j), 0)
            t = t.with_entry(ident, 0)
    for cl in sorted(f.clauses):
        states = [ident]
        for sigma, pos in clause_walk_steps(cl):
            states.append(apply_at_positions(states[-1], pos, sigma))
        for state, score in zip(states[1:], _WALK_SCORES):
            t = t.with_entry(state, score)
        back = list(zip(states[:-1], (0, 0, 0, 0, 0, 0, 0, 1, 2)))
        for state, score in reversed(back):
            t = t.with_entry(state, score)
    return PmSatInstance(t, locality=ell(3))


def clause_gadget_scores(assignment: Sequence[Permutation]) -> tuple[int, ...]:
    """Scores of the identity plus the nine walk guesses for clause (1,2,3)
    against the secret built from three block elements."""
    if len(assignment) != 3:
        raise ValueError("need one S_3 element per clause variable")
    secret = block_secret(assignment)
    states = [Permutation.identity(9)]
    for sigma, pos in clause_walk_steps((1, 2, 3)):
        states.append(apply_at_positions(states[-1], pos, sigma))
    return tuple(black_peg_score(g, secret) for g in states)


# ---------------------------------------------------------------------------
# brute-force satisfiability oracle


def _candidate_array(n: int, block_pruning: bool) -> np.ndarray:
    if block_pruning:
        if n % 3 != 0:
            raise ValueError("block pruning needs n divisible by 3")
        arrangements = [list(p) for p in itertools.permutations(range(3))]
        per_block = []
        for b in range(n // 3):
            base = 3 * b
            per_block.append([[base + x for x in arr] for arr in arrangements])
        rows = [sum(combo, []) for combo in itertools.product(*per_block)]
        return np.array(rows, dtype=np.int8)
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8)


def sat_brute_force(inst: PmSatInstance, block_pruning: bool = False) -> Optional[Permutation]:
    """Exhaustive search for a compatible secret (lexicographically least).

    Unrestricted up to S_9; with block_pruning, candidates are restricted to
    permutations acting within 3-blocks, up to S_12.
    """
    n = inst.transcript.n
    cap = BRUTE_BLOCK_CAP if block_pruning else BRUTE_CAP
    if n > cap:
        raise CapacityError(f"brute force over S_{n} exceeds cap {cap}")
    cands = _candidate_array(n, block_pruning)
    for guess, score in inst.transcript.entries:
        row = np.array(guess.image, dtype=np.int8)
        cands = cands[(cands == row).sum(axis=1) == score]
        if len(cands) == 0:
            return None
    return Permutation(tuple(int(x) for x in cands[0]))


# ---------------------------------------------------------------------------
# 2-local constraint extraction


@dataclass(frozen=True)
class ConstraintSets:
    """Edge constraints extracted from a 2-local transcript.

    forced edges must lie in the secret matching, forbidden must not, and
    exactly one edge of every xor pair must.  first_guess/b1 carry the
    initial intersection constraint.
    """

    forced: frozenset[Edge]
    forbidden: frozenset[Edge]
    xor_pairs: tuple[frozenset[Edge], ...]
    first_guess: Permutation
    b1: int

    @property
    def contradictory(self) -> bool:
        return bool(self.forced & self.forbidden)


def extract_constraints(inst: PmSatInstance) -> Optional[ConstraintSets]:
    """Classify every consecutive score difference of a 2-local transcript.

    Returns None when some difference is impossible outright (|delta| > 2,
    or a repeated guess with a changed score).  Consecutive guesses must
    differ in 0 or 2 positions.
    """
    t = inst.transcript
    if len(t) == 0:
        raise ValueError("empty transcript")
    forced: set[Edge] = set()
    forbidden: set[Edge] = set()
    xor_pairs: set[frozenset[Edge]] = set()
    entries = t.entries
    for (g1, b1), (g2, b2) in zip(entries, entries[1:]):
        d = sorted(diff_set(g1, g2))
        delta = b2 - b1
        if not d:
            if delta != 0:
                return None
            continue
        if len(d) != 2:
            raise ValueError("consecutive guesses must differ in 0 or 2 positions")
        a, b = d
        u, v = g1.image[a], g1.image[b]
        e1, e2 = (a, u), (b, v)
        f1, f2 = (a, v), (b, u)
        if delta == 2:
            forced.update((f1, f2))
            forbidden.update((e1, e2))
        elif delta == -2:
            forced.update((e1, e2))
            forbidden.update((f1, f2))
        elif delta == 1:
            forbidden.update((e1, e2))
            xor_pairs.add(frozenset((f1, f2)))
        elif delta == -1:
            forbidden.update((f1, f2))
            xor_pairs.add(frozenset((e1, e2)))
        elif delta == 0:
            forbidden.update((e1, e2, f1, f2))
        else:
            return None
    return ConstraintSets(
        frozenset(forced),
        frozenset(forbidden),
        tuple(sorted(xor_pairs, key=sorted)),
        entries[0][0],
        entries[0][1],
    )


# ---------------------------------------------------------------------------
# parity perfect matching


@dataclass(frozen=True)
class ParityMatchingInstance:
    """Perfect matching with a target weight and a target label parity.

    Labels are bitmasks over t coordinates; a matching M is a solution when
    sum of weights equals target_weight and the XOR of labels equals
    target_parity.
    """

    graph: BipartiteSecretGraph
    weights: dict[Edge, int]
    labels: dict[Edge, int]
    t: int
    target_parity: int
    target_weight: int


def build_parity_instance(cs: ConstraintSets) -> ParityMatchingInstance:
    """Compile constraint sets into a parity matching instance.

    Forbidden edges are deleted (rather than weighted n), leaving weights in
    {0,1}: weight 0 on first-guess edges, 1 elsewhere, so a matching avoids
    violating the first score iff its weight is n - b1.  Each xor pair and
    each forced edge gets one parity coordinate; the target parity is
    all-ones.  A forced edge that was also forbidden simply loses its only
    carrier, making the instance unsatisfiable, as it must be.
    """
    n = cs.first_guess.n
    g = BipartiteSecretGraph.complete(n)
    for e in cs.forbidden:
        g = g.without_edge(*e)
    weights = {e: 0 if cs.first_guess.image[e[0]] == e[1] else 1 for e in g.edges()}
    labels: dict[Edge, int] = {}
    m = len(cs.xor_pairs)
    for j, pair in enumerate(cs.xor_pairs):
        for e in pair:
            if g.has_edge(*e):
                labels[e] = labels.get(e, 0) | (1 << j)
    for i, e in enumerate(sorted(cs.forced)):
        if g.has_edge(*e):
            labels[e] = labels.get(e, 0) | (1 << (m + i))
    t = m + len(cs.forced)
    return ParityMatchingInstance(g, weights, labels, t, (1 << t) - 1, n - cs.b1)


class _ParityWork:
    """Mutable solving state: live adjacency, labels, residual targets."""

    def __init__(self, n, rows, weights, labels, t, target, r):
        self.n = n
        self.rows = rows  # list of bitmasks
        self.weights = weights  # dict edge -> weight
        self.labels = labels  # dict edge -> bitmask, live edges only
        self.t = t
        self.target = target
        self.r = r
        self.forced: list[Edge] = []

    @classmethod
    def from_instance(cls, inst: ParityMatchingInstance) -> "_ParityWork":
        rows = list(inst.graph.rows)
        labels = {e: lab for e, lab in inst.labels.items() if inst.graph.has_edge(*e)}
        return cls(inst.graph.n, rows, dict(inst.weights), labels, inst.t, inst.target_parity, inst.target_weight)

    def clone(self) -> "_ParityWork":
        w = _ParityWork(self.n, list(self.rows), self.weights, dict(self.labels), self.t, self.target, self.r)
        w.forced = list(self.forced)
        return w

    def _delete(self, e: Edge):
        i, j = e
        self.rows[i] &= ~(1 << j)
        self.labels.pop(e, None)

    def force(self, e: Edge) -> bool:
        """Commit edge e to the matching; False when impossible."""
        i, j = e
        if not self.rows[i] >> j & 1:
            return False
        self.target ^= self.labels.pop(e, 0)
        self.r -= self.weights.get(e, 0)
        row = self.rows[i]
        self.rows[i] = 0
        m = row & ~(1 << j)
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            self.labels.pop((i, b), None)
        for i2 in range(self.n):
            if i2 != i and self.rows[i2] >> j & 1:
                self.rows[i2] &= ~(1 << j)
                self.labels.pop((i2, j), None)
        self.forced.append(e)
        return self.r >= 0

    def _matched_positions(self) -> set[int]:
        return {i for i, _ in self.forced}

    def _matched_symbols(self) -> set[int]:
        return {j for _, j in self.forced}

    def propagate(self) -> bool:
        """Resolve single-carrier coordinates to fixpoint; False = unsat."""
        while True:
            buckets: dict[int, list[Edge]] = {}
            for e, lab in self.labels.items():
                m = lab
                while m:
                    j = (m & -m).bit_length() - 1
                    m &= m - 1
                    buckets.setdefault(j, []).append(e)
            changed = False
            for j in range(self.t):
                carriers = buckets.get(j, [])
                bit = self.target >> j & 1
                if not carriers:
                    if bit:
                        return False
                    continue
                if len(carriers) == 1:
                    e = carriers[0]
                    if bit:
                        if not self.force(e):
                            return False
                    else:
                        self._delete(e)
                    changed = True
                    break
            if not changed:
                break
        matched_pos = self._matched_positions()
        for i in range(self.n):
            if i not in matched_pos and self.rows[i] == 0:
                return False
        matched_sym = self._matched_symbols()
        col_any = 0
        for r in self.rows:
            col_any |= r
        for j in range(self.n):
            if j not in matched_sym and not col_any >> j & 1:
                return False
        return True

    # -- residual views ---------------------------------------------------

    def residual(self):
        """Index-compressed live subproblem: positions, symbols, coordinates."""
        pos = [i for i in range(self.n) if i not in self._matched_positions()]
        sym = [j for j in range(self.n) if j not in self._matched_symbols()]
        live_coords = sorted({j for lab in self.labels.values() for j in _bits(lab)})
        coord_index = {c: k for k, c in enumerate(live_coords)}
        target = 0
        for c in live_coords:
            if self.target >> c & 1:
                target |= 1 << coord_index[c]
        # coordinates with target bit 1 but no live carrier are unsatisfiable
        dead_unsat = any(
            self.target >> j & 1 and j not in coord_index for j in range(self.t)
        )
        return pos, sym, coord_index, target, dead_unsat

    @property
    def live_coordinate_count(self) -> int:
        return len({j for lab in self.labels.values() for j in _bits(lab)})

    @property
    def residual_size(self) -> int:
        return self.n - len(self.forced)

    # -- exhaustive backend ------------------------------------------------

    def exhaustive_witness(self) -> Optional[list[Edge]]:
        pos, sym, coord_index, target, dead = self.residual()
        if dead:
            return None
        k = len(pos)
        if k == 0:
            return list(self.forced) if self.r == 0 and target == 0 else None
        sym_index = {j: a for a, j in enumerate(sym)}
        rows = []
        for i in pos:
            mask = 0
            m = self.rows[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                mask |= 1 << sym_index[j]
            rows.append(mask)
        order = sorted(range(k), key=lambda a: rows[a].bit_count())
        choice: list[Optional[int]] = [None] * k

        def dfs(step: int, used: int, weight: int, parity: int) -> bool:
            if weight > self.r:
                return False
            if step == k:
                return weight == self.r and parity == target
            a = order[step]
            i = pos[a]
            m = rows[a] & ~used
            while m:
                bsym = (m & -m).bit_length() - 1
                m &= m - 1
                j = sym[bsym]
                e = (i, j)
                lab = self.labels.get(e, 0)
                plab = 0
                for c in _bits(lab):
                    plab |= 1 << coord_index[c]
                if dfs(step + 1, used | (1 << bsym), weight + self.weights.get(e, 0), parity ^ plab):
                    choice[a] = j
                    return True
            return False

        if not dfs(0, 0, 0, 0):
            return None
        return list(self.forced) + [(pos[a], choice[a]) for a in range(k)]  # type: ignore[misc]

    # -- character-sum decision ---------------------------------------------

    def charsum_decide(self, rng: random.Random, p: int = FIELD_PRIME) -> bool:
        """One-sided randomized decision: True means certainly satisfiable,
        False is wrong with probability at most (degree)/p per call.

        For every sign character over the live coordinates, build the matrix
        with entries (random scalar) * character(label) * z^weight; the
        character-weighted sum of determinants keeps exactly the matchings
        with the target parity, each as a distinct monomial in the scalars,
        so the z^r coefficient is nonzero iff a solution exists.
        """
        pos, sym, coord_index, target, dead = self.residual()
        if dead:
            return False
        k = len(pos)
        if k == 0:
            return self.r == 0 and target == 0
        tprime = len(coord_index)
        scalars = {}
        plabels = {}
        for a, i in enumerate(pos):
            for b, j in enumerate(sym):
                if self.rows[i] >> j & 1:
                    scalars[(a, b)] = rng.randrange(1, p)
                    lab = self.labels.get((i, j), 0)
                    pl = 0
                    for c in _bits(lab):
                        pl |= 1 << coord_index[c]
                    plabels[(a, b)] = pl
        max_w = 0
        for a, i in enumerate(pos):
            ws = [self.weights.get((i, j), 0) for j in sym if self.rows[i] >> j & 1]
            max_w += max(ws) if ws else 0
        if not 0 <= self.r <= max_w:
            return False
        npoints = max_w + 1
        points = list(range(1, npoints + 1))
        base_entries = [
            (a, b, x, plabels[(a, b)], self.weights.get((pos[a], sym[b]), 0))
            for (a, b), x in scalars.items()
        ]
        zpows = [[pow(z, w, p) for w in range(max_w + 1)] for z in points]
        totals = [0] * npoints
        for s in range(1 << tprime):
            sign_c = -1 if (s & target).bit_count() & 1 else 1
            signed = [(a, b, x * (-1 if (s & pl).bit_count() & 1 else 1), w) for a, b, x, pl, w in base_entries]
            for idx in range(npoints):
                zpow = zpows[idx]
                mat = [[0] * k for _ in range(k)]
                for a, b, sx, w in signed:
                    mat[a][b] = sx * zpow[w] % p
                totals[idx] = (totals[idx] + sign_c * _det_mod(mat, p)) % p
        coeffs = _interpolate(points, totals, p)
        return self.r < len(coeffs) and coeffs[self.r] % p != 0

    def self_reduction_witness(self, rng: random.Random) -> Optional[list[Edge]]:
        """Peel off edges one at a time, re-deciding after each tentative force."""
        work = self
        for _ in range(self.n):
            pos = [i for i in range(work.n) if i not in work._matched_positions()]
            if not pos:
                break
            i = pos[0]
            advanced = False
            m = work.rows[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                trial = work.clone()
                if trial.force((i, j)) and trial.propagate() and trial.charsum_decide(rng):
                    work = trial
                    advanced = True
                    break
            if not advanced:
                return None
        pos, sym, coord_index, target, dead = work.residual()
        if pos or dead or work.r != 0 or target != 0:
            return None
        return list(work.forced)


def _bits(mask: int):
    while mask:
        b = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        yield b


def _det_mod(mat: list[list[int]], p: int) -> int:
    """Determinant over F_p by Gaussian elimination."""
    a = [row[:] for row in mat]
    k = len(a)
    det = 1
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        inv = pow(a[col][col], p - 2, p)
        det = det * a[col][col] % p
        for r in range(col + 1, k):
            if a[r][col]:
                factor = a[r][col] * inv % p
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def _interpolate(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Coefficients of the unique degree-<len(xs) polynomial through the points."""
    k = len(xs)
    coeffs = [0] * k
    for i in range(k):
        # numerator polynomial prod_{j != i} (X - x_j)
        num = [1]
        denom = 1
        for j in range(k):
            if j == i:
                continue
            num = [
                (c1 - xs[j] * c0) % p
                for c0, c1 in zip(num + [0], [0] + num)
            ]
            denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, p - 2, p) % p
        for d in range(len(num)):
            coeffs[d] = (coeffs[d] + scale * num[d]) % p
    return coeffs


def matching_satisfies(inst: ParityMatchingInstance, matching: Iterable[Edge]) -> bool:
    """Recompute the defining conditions of the instance on a matching."""
    edges = list(matching)
    n = inst.graph.n
    if len(edges) != n:
        return False
    if len({i for i, _ in edges}) != n or len({j for _, j in edges}) != n:
        return False
    if not all(inst.graph.has_edge(*e) for e in edges):
        return False
    if sum(inst.weights.get(e, 0) for e in edges) != inst.target_weight:
        return False
    parity = 0
    for e in edges:
        parity ^= inst.labels.get(e, 0)
    return parity == inst.target_parity


def solve_parity_matching(
    inst: ParityMatchingInstance,
    seed: int = 0,
    method: str = "auto",
    charsum_cap: int = CHARSUM_CAP,
) -> Optional[frozenset[Edge]]:
    """Find a perfect matching with the target weight and parity, or None.

    method "exhaustive" enumerates; "charsum" always decides by the
    character sum and extracts by self-reduction; "auto" decides by the
    character sum when the residual parity dimension fits the cap and
    extracts exhaustively on small residuals.  None answers from the
    randomized path carry one-sided error at most degree/p per trial.
    """
    if method not in ("auto", "charsum", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    work = _ParityWork.from_instance(inst)
    if not work.propagate():
        return None

    if method == "exhaustive":
        found = work.exhaustive_witness()
        return frozenset(found) if found is not None else None

    rng = random.Random(seed)
    if method == "auto" and work.live_coordinate_count > charsum_cap:
        if work.residual_size > EXHAUSTIVE_RESIDUAL_CAP:
            raise CapacityError(
                f"residual parity dimension {work.live_coordinate_count} exceeds cap {charsum_cap} "
                f"and residual size {work.residual_size} is too large to enumerate"
            )
        found = work.exhaustive_witness()
        return frozenset(found) if found is not None else None

    if not work.charsum_decide(rng):
        return None
    if method == "auto" and work.residual_size <= 6:
        found = work.exhaustive_witness()
    else:
        found = work.self_reduction_witness(rng)
        if found is None:
            # a sub-decision was unlucky; one fresh retry before giving up
            found = work.self_reduction_witness(rng)
    if found is None:
        return None
    return frozenset(found)


# ---------------------------------------------------------------------------
# the full 2-local pipeline


def matching_to_permutation(matching: Iterable[Edge], n: int) -> Permutation:
    image = [-1] * n
    for i, j in matching:
        image[i] = j
    return Permutation(tuple(image))


def solve_2local_sat(inst: PmSatInstance, seed: int = 0, method: str = "auto") -> Optional[Permutation]:
    """Decide a 2-local transcript and produce a verified witness secret.

    extract -> propagate -> parity matching -> reassemble; a None from the
    randomized path is one-sided (wrong with probability at most degree/p),
    while any returned secret has been checked against the whole transcript.
    """
    cs = extract_constraints(inst)
    if cs is None or cs.contradictory:
        return None
    pinst = build_parity_instance(cs)
    matching = solve_parity_matching(pinst, seed=seed, method=method)
    if matching is None:
        return None
    sigma = matching_to_permutation(matching, inst.transcript.n)
    for guess, score in inst.transcript.entries:
        if black_peg_score(guess, sigma) != score:
            raise RuntimeError("parity pipeline produced an incompatible witness")
    return sigma
