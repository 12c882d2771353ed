"""HTTP game service for the play/assist UI.

Sessions live in memory, one lock per session; all randomness flows from a
single base seed so runs are replayable.  Codebreaker mode hides a secret
and scores the caller's guesses; assistant mode accepts relayed
(guess, score) feedback and serves locality-legal next-guess suggestions.

Suggestions do a 1-ply minimax over locality-legal neighbors of the last
guess (minimize the worst-case number of surviving candidates, a winning
guess counting as zero), ties broken lexicographically; when no neighbor
can split the candidate set, the suggestion routes toward the
lexicographically least compatible secret so that following suggestions
always terminates in victory.
"""

from __future__ import annotations

import itertools
import json
import random
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .cayley import route
from .errors import CapacityError, ProtocolViolation
from .perms import (
    ELL,
    WINDOW,
    LocalityClass,
    Permutation,
    Transcript,
    black_peg_score,
    compatible_secrets,
    compose,
    diff_set,
    invert,
    random_permutation,
    step_is_local,
)

DEFAULT_CAP_N = 8


@dataclass
class GameSession:
    id: str
    n: int
    locality: LocalityClass
    mode: str  # "codebreaker" | "assistant"
    transcript: Transcript
    secret: Optional[Permutation]
    done: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock)


class NewGameRequest(BaseModel):
    n: int = Field(ge=2)
    k: int = Field(ge=2)
    locality: str = Field(pattern="^(ell|window)$")
    mode: str = Field(pattern="^(codebreaker|assistant)$")


class GuessRequest(BaseModel):
    guess: list[int]


class FeedbackRequest(BaseModel):
    guess: list[int]
    score: int


def locality_neighbors(last: Permutation, locality: LocalityClass) -> list[Permutation]:
    """All legal next guesses differing from ``last``, lexicographic order."""
    n = last.n
    out = set()
    if locality.kind == ELL:
        for positions in _subsets_up_to(n, locality.k):
            for images in itertools.permutations(positions):
                if images == positions:
                    continue
                image = list(last.image)
                for p, q in zip(positions, images):
                    image[p] = last.image[q]
                out.add(Permutation(tuple(image)))
    else:
        for start in range(n - locality.k + 1):
            span = range(start, start + locality.k)
            for arrangement in itertools.permutations(span):
                if tuple(arrangement) == tuple(span):
                    continue
                image = list(last.image)
                for p, q in zip(span, arrangement):
                    image[p] = last.image[q]
                out.add(Permutation(tuple(image)))
    return sorted(out, key=lambda p: p.image)


def _subsets_up_to(n: int, k: int):
    for size in range(2, k + 1):
        yield from itertools.combinations(range(n), size)


def suggest_guess(transcript: Transcript, locality: LocalityClass, cap: int = DEFAULT_CAP_N) -> tuple[Permutation, int]:
    """The suggestion policy; returns (guess, current compatible count)."""
    cands = compatible_secrets(transcript, cap=cap)
    if not cands:
        raise ProtocolViolation("the feedback so far is compatible with no secret")
    if not transcript.entries:
        return Permutation.identity(transcript.n), len(cands)
    last = transcript.entries[-1][0]
    neighbors = locality_neighbors(last, locality)
    best: Optional[Permutation] = None
    best_worst = None
    for g in neighbors:
        classes: dict[int, int] = {}
        for sigma in cands:
            b = black_peg_score(g, sigma)
            classes[b] = classes.get(b, 0) + 1
        worst = max((0 if b == transcript.n else c) for b, c in classes.items())
        if best_worst is None or worst < best_worst:
            best, best_worst = g, worst
    if best is not None and best_worst is not None and best_worst < len(cands):
        return best, len(cands)
    # no neighbor splits the candidate set: route toward the least candidate
    target = cands[0]
    if locality.kind == WINDOW:
        return _adjacent_step_toward(last, target), len(cands)
    factors = route(compose(invert(last), target), locality.k).factors
    if not factors:
        return target, len(cands)
    return compose(last, factors[0]), len(cands)


def _adjacent_step_toward(last: Permutation, target: Permutation) -> Permutation:
    """One adjacent transposition moving ``last`` toward ``target``."""
    cur = list(last.image)
    goal = target.image
    for p in range(len(goal)):
        if cur[p] == goal[p]:
            continue
        q = cur.index(goal[p], p + 1)
        cur[q - 1], cur[q] = cur[q], cur[q - 1]
        return Permutation(tuple(cur))
    return target


def create_app(seed: Optional[int] = None, cap_n: int = DEFAULT_CAP_N, log_file: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="permind game service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, GameSession] = {}
    rng = random.Random(seed)
    counter = itertools.count(1)
    store_lock = threading.Lock()

    def log_event(event: dict):
        if log_file is None:
            return
        event = {"ts": time.time(), **event}
        with open(log_file, "a") as fh:
            fh.write(json.dumps(event) + "\n")

    def get_session(game_id: str) -> GameSession:
        s = sessions.get(game_id)
        if s is None:
            raise HTTPException(status_code=404, detail=f"unknown game {game_id}")
        return s

    def parse_guess(s: GameSession, values: list[int]) -> Permutation:
        try:
            g = Permutation.from_one_line(values)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        if g.n != s.n:
            raise HTTPException(status_code=422, detail=f"guess has size {g.n}, game has n={s.n}")
        if s.transcript.entries:
            last = s.transcript.entries[-1][0]
            if not step_is_local(last, g, s.locality):
                positions = sorted(i + 1 for i in diff_set(last, g))
                raise HTTPException(
                    status_code=422,
                    detail={"error": f"guess breaks {s.locality} locality", "positions": positions},
                )
        return g

    def compatible_count(s: GameSession) -> int:
        return len(compatible_secrets(s.transcript, cap=max(cap_n, s.n)))

    def state_doc(s: GameSession) -> dict:
        return {
            "id": s.id,
            "n": s.n,
            "k": s.locality.k,
            "locality": s.locality.kind,
            "mode": s.mode,
            "status": "solved" if s.done else "active",
            "guesses": [list(g.one_line) for g in s.transcript.guesses],
            "scores": list(s.transcript.scores),
            "compatible_count": compatible_count(s),
        }

    @app.post("/api/games", status_code=201)
    def new_game(req: NewGameRequest):
        if req.n > cap_n:
            raise HTTPException(status_code=422, detail=f"n={req.n} exceeds the service cap {cap_n}")
        if req.locality == WINDOW and req.k > req.n:
            raise HTTPException(status_code=422, detail="window size exceeds the board")
        with store_lock:
            idx = next(counter)
            game_id = f"g{idx:04d}{rng.randrange(16**4):04x}"
            secret = random_permutation(req.n, rng) if req.mode == "codebreaker" else None
            s = GameSession(
                id=game_id,
                n=req.n,
                locality=LocalityClass(req.locality, req.k),
                mode=req.mode,
                transcript=Transcript(req.n),
                secret=secret,
            )
            sessions[game_id] = s
        log_event({"event": "new_game", "id": game_id, "n": req.n, "k": req.k,
                   "locality": req.locality, "mode": req.mode})
        return {"id": game_id, "n": s.n, "k": s.locality.k, "locality": s.locality.kind, "mode": s.mode}

    @app.get("/api/games/{game_id}")
    def get_game(game_id: str):
        s = get_session(game_id)
        with s.lock:
            return state_doc(s)

    @app.post("/api/games/{game_id}/guesses")
    def post_guess(game_id: str, req: GuessRequest):
        s = get_session(game_id)
        with s.lock:
            if s.mode != "codebreaker":
                raise HTTPException(status_code=422, detail="guesses are for codebreaker games; use feedback")
            if s.done:
                raise HTTPException(status_code=409, detail="game already solved")
            g = parse_guess(s, req.guess)
            assert s.secret is not None
            score = black_peg_score(g, s.secret)
            s.transcript = s.transcript.with_entry(g, score)
            if score == s.n:
                s.done = True
            count = compatible_count(s)
        log_event({"event": "guess", "id": game_id, "guess": list(g.one_line), "score": score})
        return {"score": score, "count": count, "status": "solved" if s.done else "active"}

    @app.post("/api/games/{game_id}/feedback")
    def post_feedback(game_id: str, req: FeedbackRequest):
        s = get_session(game_id)
        with s.lock:
            if s.mode != "assistant":
                raise HTTPException(status_code=422, detail="feedback is for assistant games; use guesses")
            if s.done:
                raise HTTPException(status_code=409, detail="game already solved")
            g = parse_guess(s, req.guess)
            if not 0 <= req.score <= s.n:
                raise HTTPException(status_code=422, detail=f"score must lie in 0..{s.n}")
            if req.score == s.n - 1:
                raise HTTPException(
                    status_code=422,
                    detail=f"score {req.score} = n-1 is impossible for permutations (protocol violation)",
                )
            s.transcript = s.transcript.with_entry(g, req.score)
            if req.score == s.n:
                s.done = True
            count = compatible_count(s)
        log_event({"event": "feedback", "id": game_id, "guess": list(g.one_line), "score": req.score})
        return {"ok": True, "compatible_count": count, "status": "solved" if s.done else "active"}

    @app.get("/api/games/{game_id}/suggestion")
    def get_suggestion(game_id: str):
        s = get_session(game_id)
        with s.lock:
            if s.done:
                raise HTTPException(status_code=409, detail="game already solved")
            try:
                guess, count = suggest_guess(s.transcript, s.locality, cap=max(cap_n, s.n))
            except (CapacityError, ProtocolViolation) as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"guess": list(guess.one_line), "compatible_count": count}

    return app
