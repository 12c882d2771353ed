import pytest
from fastapi.testclient import TestClient

from permind.perms import Permutation, Transcript, black_peg_score, compatible_secrets, ell
from permind.service import create_app, locality_neighbors, suggest_guess


@pytest.fixture()
def client():
    return TestClient(create_app(seed=42))


def new_game(client, **overrides):
    body = {"n": 6, "k": 2, "locality": "ell", "mode": "assistant"}
    body.update(overrides)
    resp = client.post("/api/games", json=body)
    assert resp.status_code == 201
    return resp.json()


class TestSessionLifecycle:
    def test_create(self, client):
        game = new_game(client)
        assert game["n"] == 6 and game["locality"] == "ell" and game["k"] == 2

    def test_unknown_game_404(self, client):
        assert client.get("/api/games/nope").status_code == 404

    def test_state_document(self, client):
        game = new_game(client, n=4)
        state = client.get(f"/api/games/{game['id']}").json()
        assert state["status"] == "active"
        assert state["guesses"] == [] and state["compatible_count"] == 24

    def test_cap_n(self):
        client = TestClient(create_app(seed=1, cap_n=5))
        resp = client.post(
            "/api/games", json={"n": 6, "k": 2, "locality": "ell", "mode": "assistant"}
        )
        assert resp.status_code == 422


class TestAssistantMode:
    def test_feedback_and_suggestion_flow(self, client):
        game = new_game(client)
        gid = game["id"]
        resp = client.post(
            f"/api/games/{gid}/feedback", json={"guess": [1, 2, 3, 4, 5, 6], "score": 0}
        )
        assert resp.status_code == 200
        assert resp.json()["compatible_count"] == 265  # derangements of S_6
        sugg = client.get(f"/api/games/{gid}/suggestion")
        assert sugg.status_code == 200
        body = sugg.json()
        assert body["compatible_count"] == 265
        guess = Permutation.from_one_line(body["guess"])
        ident = Permutation.identity(6)
        assert len([i for i in range(6) if guess.image[i] != ident.image[i]]) <= 2

    def test_nonlocal_guess_422_with_positions(self, client):
        game = new_game(client)
        gid = game["id"]
        client.post(f"/api/games/{gid}/feedback", json={"guess": [1, 2, 3, 4, 5, 6], "score": 0})
        resp = client.post(
            f"/api/games/{gid}/feedback", json={"guess": [2, 3, 1, 4, 5, 6], "score": 0}
        )
        assert resp.status_code == 422
        assert resp.json()["detail"]["positions"] == [1, 2, 3]

    def test_impossible_score_rejected(self, client):
        game = new_game(client)
        resp = client.post(
            f"/api/games/{game['id']}/feedback", json={"guess": [1, 2, 3, 4, 5, 6], "score": 5}
        )
        assert resp.status_code == 422

    def test_count_nonincreasing(self, client):
        game = new_game(client, n=5)
        gid = game["id"]
        secret = Permutation.from_one_line((3, 1, 2, 5, 4))
        cur = Permutation.identity(5)
        counts = []
        for _ in range(40):
            state = client.get(f"/api/games/{gid}").json()
            if state["status"] == "solved":
                break
            sugg = client.get(f"/api/games/{gid}/suggestion").json()
            counts.append(sugg["compatible_count"])
            guess = Permutation.from_one_line(sugg["guess"])
            score = black_peg_score(guess, secret)
            resp = client.post(
                f"/api/games/{gid}/feedback", json={"guess": sugg["guess"], "score": score}
            )
            assert resp.status_code == 200
        assert counts == sorted(counts, reverse=True)

    def test_victory_by_following_suggestions(self, client):
        # the scripted "physical" secret is relayed through feedback only
        game = new_game(client, n=5)
        gid = game["id"]
        secret = Permutation.from_one_line((2, 1, 4, 5, 3))
        solved = False
        for _ in range(60):
            sugg = client.get(f"/api/games/{gid}/suggestion")
            if sugg.status_code == 409:
                solved = True
                break
            guess = Permutation.from_one_line(sugg.json()["guess"])
            score = black_peg_score(guess, secret)
            resp = client.post(
                f"/api/games/{gid}/feedback", json={"guess": list(guess.one_line), "score": score}
            )
            assert resp.status_code == 200
            if resp.json()["status"] == "solved":
                solved = True
                break
        assert solved

    def test_completed_game_conflicts(self, client):
        game = new_game(client, n=4)
        gid = game["id"]
        client.post(f"/api/games/{gid}/feedback", json={"guess": [1, 2, 3, 4], "score": 4})
        assert (
            client.post(f"/api/games/{gid}/feedback", json={"guess": [1, 2, 3, 4], "score": 4}).status_code
            == 409
        )
        assert client.get(f"/api/games/{gid}/suggestion").status_code == 409


class TestCodebreakerMode:
    def test_guess_scoring_and_victory(self):
        client = TestClient(create_app(seed=7))
        game = new_game(client, n=4, mode="codebreaker")
        gid = game["id"]
        # replay the hidden secret by exhausting locality-legal play
        cur = Permutation.identity(4)
        resp = client.post(f"/api/games/{gid}/guesses", json={"guess": list(cur.one_line)})
        assert resp.status_code == 200
        transcript = Transcript(4).with_entry(cur, resp.json()["score"])
        for _ in range(40):
            if resp.json().get("status") == "solved":
                break
            cands = compatible_secrets(transcript)
            assert resp.json()["count"] == len(cands)
            sugg = client.get(f"/api/games/{gid}/suggestion").json()
            guess = Permutation.from_one_line(sugg["guess"])
            resp = client.post(f"/api/games/{gid}/guesses", json={"guess": sugg["guess"]})
            assert resp.status_code == 200
            transcript = transcript.with_entry(guess, resp.json()["score"])
        assert resp.json()["status"] == "solved"

    def test_seed_reproducibility(self):
        outcomes = []
        for _ in range(2):
            client = TestClient(create_app(seed=123))
            game = new_game(client, n=5, mode="codebreaker")
            resp = client.post(
                f"/api/games/{game['id']}/guesses", json={"guess": [1, 2, 3, 4, 5]}
            )
            outcomes.append(resp.json()["score"])
        assert outcomes[0] == outcomes[1]

    def test_feedback_rejected_in_codebreaker(self, client):
        game = new_game(client, n=4, mode="codebreaker")
        resp = client.post(
            f"/api/games/{game['id']}/feedback", json={"guess": [1, 2, 3, 4], "score": 0}
        )
        assert resp.status_code == 422


class TestSuggestionPolicy:
    def test_neighbors_window(self):
        last = Permutation.identity(4)
        neigh = locality_neighbors(last, ell(2))
        assert len(neigh) == 6  # the transpositions
        from permind.perms import window

        wneigh = locality_neighbors(last, window(2))
        assert len(wneigh) == 3  # adjacent transpositions only

    def test_suggestion_terminates_on_singleton(self):
        # single remaining candidate two swaps away: suggestions must make progress
        secret = Permutation.from_one_line((2, 1, 4, 3))
        t = Transcript(4)
        for g in Permutation.identity(4), Permutation.from_one_line((1, 2, 4, 3)):
            t = t.with_entry(g, black_peg_score(g, secret))
        # pin down the candidate set to the secret alone
        for g in compatible_secrets(t)[:]:
            if g != secret:
                t = t.with_entry(t.entries[-1][0], black_peg_score(t.entries[-1][0], secret))
                break
        t2 = Transcript(4)
        for g, b in t.entries:
            t2 = t2.with_entry(g, b)
        seen = set()
        cur = t2
        for _ in range(12):
            if len(compatible_secrets(cur)) == 0:
                break
            guess, _ = suggest_guess(cur, ell(2))
            cur = cur.with_entry(guess, black_peg_score(guess, secret))
            if guess == secret:
                return
            key = (guess.image, len(cur))
            assert key not in seen
            seen.add(key)
        assert cur.entries[-1][0] == secret
