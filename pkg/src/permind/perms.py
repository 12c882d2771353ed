"""Permutations, black-peg scoring, difference sets, transcripts and locality.

Permutations are stored in one-line notation, 0-based internally: ``image[i]``
is the value at position ``i``.  Everything user-facing (serialization, CLI,
figures) speaks 1-based one-line notation, converted at the boundary via
``Permutation.from_one_line`` / ``Permutation.one_line``.

All values here are immutable and hashable; the operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapacityError, SizeMismatchError

ELL = "ell"
WINDOW = "window"


@dataclass(frozen=True)
class Permutation:
    """An element of S_n in one-line notation (0-based internally)."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n < 1:
            raise ValueError("permutation must act on at least one point")
        seen = [False] * n
        for v in self.image:
            if not 0 <= v < n or seen[v]:
                raise ValueError(f"not a bijection on 0..{n - 1}: {self.image}")
            seen[v] = True

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_line(cls, values: Sequence[int]) -> "Permutation":
        """Build from 1-based one-line notation, e.g. (2, 3, 1)."""
        return cls(tuple(v - 1 for v in values))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        """The transposition of positions i, j (1-based) in S_n."""
        image = list(range(n))
        image[i - 1], image[j - 1] = image[j - 1], image[i - 1]
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    @property
    def one_line(self) -> tuple[int, ...]:
        """1-based one-line notation, matching the external format."""
        return tuple(v + 1 for v in self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __repr__(self) -> str:
        return f"Permutation{self.one_line}"

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.image))

    def compose(self, other: "Permutation") -> "Permutation":
        """Function composition: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise SizeMismatchError(f"cannot compose sizes {self.n} and {other.n}")
        return Permutation(tuple(self.image[v] for v in other.image))

    __mul__ = compose

    def invert(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.image):
            inv[v] = i
        return Permutation(tuple(inv))

    def support(self) -> frozenset[int]:
        """Positions moved by the permutation (0-based)."""
        return frozenset(i for i, v in enumerate(self.image) if v != i)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest element,
        ordered by smallest element (deterministic)."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start] or self.image[start] == start:
                continue
            cyc = []
            cur = start
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur)
                cur = self.image[cur]
            out.append(tuple(cyc))
        return out


def compose(p: Permutation, q: Permutation) -> Permutation:
    return p.compose(q)


def invert(p: Permutation) -> Permutation:
    return p.invert()


def support(p: Permutation) -> frozenset[int]:
    return p.support()


def black_peg_score(guess: Permutation, secret: Permutation) -> int:
    """Number of positions where guess and secret agree."""
    if guess.n != secret.n:
        raise SizeMismatchError(f"sizes {guess.n} and {secret.n}")
    return sum(1 for a, b in zip(guess.image, secret.image) if a == b)


def diff_set(p: Permutation, q: Permutation) -> frozenset[int]:
    """Positions where p and q differ (0-based).  Never of size 1."""
    if p.n != q.n:
        raise SizeMismatchError(f"sizes {p.n} and {q.n}")
    return frozenset(i for i in range(p.n) if p.image[i] != q.image[i])


@dataclass(frozen=True)
class LocalityClass:
    """Either support-bounded steps (ell) or window-bounded steps (window)."""

    kind: str
    k: int

    def __post_init__(self):
        if self.kind not in (ELL, WINDOW):
            raise ValueError(f"unknown locality kind {self.kind!r}")
        if self.k < 2:
            raise ValueError("locality parameter k must be >= 2")

    def __str__(self) -> str:
        return f"{self.kind}({self.k})"


def ell(k: int) -> LocalityClass:
    return LocalityClass(ELL, k)


def window(k: int) -> LocalityClass:
    return LocalityClass(WINDOW, k)


def step_is_local(p: Permutation, q: Permutation, c: LocalityClass) -> bool:
    """Whether consecutive guesses p -> q satisfy the locality class.

    An empty difference set (a repeated guess) satisfies both kinds.
    """
    d = diff_set(p, q)
    if not d:
        return True
    if c.kind == ELL:
        return len(d) <= c.k
    return max(d) - min(d) <= c.k - 1


@dataclass(frozen=True)
class Transcript:
    """An ordered record of (guess, black-peg score) pairs for one board."""

    n: int
    entries: tuple[tuple[Permutation, int], ...] = ()

    def __post_init__(self):
        for g, b in self.entries:
            if g.n != self.n:
                raise SizeMismatchError(f"guess of size {g.n} in transcript of size {self.n}")
            if not 0 <= b <= self.n:
                raise ValueError(f"score {b} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[Permutation, int]]:
        return iter(self.entries)

    @property
    def guesses(self) -> tuple[Permutation, ...]:
        return tuple(g for g, _ in self.entries)

    @property
    def scores(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.entries)

    def with_entry(self, guess: Permutation, score: int) -> "Transcript":
        return Transcript(self.n, self.entries + ((guess, score),))


def check_locality(subject, c: LocalityClass) -> bool:
    """True iff every consecutive guess pair is a legal step for ``c``.

    ``subject`` may be a Transcript, a sequence of Permutations, or a
    (Permutation, Permutation) pair.
    """
    if isinstance(subject, Transcript):
        guesses: Sequence[Permutation] = subject.guesses
    elif len(subject) == 2 and isinstance(subject[0], Permutation) and isinstance(subject[1], Permutation):
        guesses = (subject[0], subject[1])
    else:
        guesses = tuple(subject)
    return all(step_is_local(p, q, c) for p, q in zip(guesses, guesses[1:]))


def find_protocol_violation(t: Transcript) -> int | None:
    """Index of the first entry whose score no secret could produce, or None.

    A score of n-1 is impossible: two permutations cannot differ in exactly
    one position.
    """
    for idx, (_, b) in enumerate(t.entries):
        if b == t.n - 1 and t.n >= 2:
            return idx
    return None


def all_permutations(n: int) -> Iterator[Permutation]:
    for image in itertools.permutations(range(n)):
        yield Permutation(image)


COMPATIBLE_CAP = 8


def compatible_secrets(t: Transcript, cap: int = COMPATIBLE_CAP) -> list[Permutation]:
    """All secrets consistent with every (guess, score) entry.

    Exhaustive over S_n; refuses n beyond ``cap``.  Results are in
    lexicographic one-line order.
    """
    if t.n > cap:
        raise CapacityError(f"compatible_secrets over S_{t.n} exceeds cap {cap}")
    out = []
    for sigma in all_permutations(t.n):
        if all(black_peg_score(g, sigma) == b for g, b in t.entries):
            out.append(sigma)
    return out


def random_permutation(n: int, rng) -> Permutation:
    """Uniform random permutation from a random.Random-like source."""
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(tuple(image))
