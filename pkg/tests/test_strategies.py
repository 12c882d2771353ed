import math
import random

import pytest

from permind.errors import CapacityError, LocalityViolation, ProtocolViolation
from permind.perms import (
    Permutation,
    all_permutations,
    black_peg_score,
    check_locality,
    ell,
    random_permutation,
    window,
)
from permind.strategies import (
    ARRANGEMENTS_MIRROR,
    ARRANGEMENTS_NORMAL,
    AdaptiveStrategy,
    CompatibleSetStrategy,
    ConveyorGenerousStrategy,
    ConveyorHexagonStrategy,
    GenerousCodemaker,
    HonestCodemaker,
    MatchingAdversaryCodemaker,
    column_scan_prober,
    conveyor_belt,
    conveyor_belt_strategy,
    conveyor_hexagon_static,
    decode_generous,
    diagonal_scan_prober,
    distinguishability_report,
    extra_generous_probe_game,
    hexagon_expand,
    localize,
    mask_score_vector,
    optimal_adaptive_value,
    optimal_strategy_tree,
    random_prober,
    row_scan_prober,
    run_game,
    verify_distinguishability,
    walk_window,
    window_masks,
)


def P(*one_line):
    return Permutation.from_one_line(one_line)


class TestRunGame:
    def test_compatible_solves_s3(self):
        for secret in all_permutations(3):
            r = run_game(CompatibleSetStrategy(), HonestCodemaker(secret))
            assert r.solved and r.guess_count <= 6
            assert r.transcript.entries[-1][0] == secret

    def test_locality_violation_aborts(self):
        class ThreeCycleFirst(AdaptiveStrategy):
            def next_guess(self, t):
                return [Permutation.identity(4), P(2, 3, 1, 4)][len(t)]

        with pytest.raises(LocalityViolation) as err:
            run_game(ThreeCycleFirst(), HonestCodemaker(P(4, 3, 2, 1)), locality=ell(2))
        assert err.value.positions == (1, 2, 3)

    def test_static_conveyor_solves_s4_window2(self):
        for secret in all_permutations(4):
            r = run_game(conveyor_belt_strategy(4), HonestCodemaker(secret), locality=window(2))
            assert r.solved
            assert r.guess_count == 14  # 13 fixed guesses + the decoded final

    def test_adversary_codemaker_is_consistent(self):
        r = run_game(CompatibleSetStrategy(), MatchingAdversaryCodemaker(4))
        assert r.solved
        # every earlier answer must be consistent with the final secret
        secret = r.transcript.entries[-1][0]
        for g, b in r.transcript.entries:
            assert black_peg_score(g, secret) == b

    def test_unsolved_when_capped(self):
        class StuckStrategy(AdaptiveStrategy):
            def next_guess(self, t):
                return Permutation.identity(3)

        r = run_game(StuckStrategy(), HonestCodemaker(P(2, 3, 1)), max_guesses=5)
        assert not r.solved and r.guess_count == 5


class TestLocalize:
    @pytest.mark.parametrize("k", [2, 3])
    def test_preserves_solvedness_n4(self, k):
        bound_per_step = math.ceil((4 - 1) / (k - 1))
        for secret in all_permutations(4):
            base = run_game(CompatibleSetStrategy(), HonestCodemaker(secret))
            local = run_game(localize(CompatibleSetStrategy(), k), HonestCodemaker(secret), locality=ell(k))
            assert local.solved
            assert check_locality(local.transcript, ell(k))
            assert local.guess_count <= 1 + (base.guess_count - 1) * bound_per_step

    def test_k_equals_n_is_base(self):
        for secret in all_permutations(4):
            base = run_game(CompatibleSetStrategy(), HonestCodemaker(secret))
            local = run_game(localize(CompatibleSetStrategy(), 4), HonestCodemaker(secret), locality=ell(4))
            assert local.guess_count == base.guess_count

    def test_consume_intermediate_still_solves(self):
        for secret in all_permutations(4):
            r = run_game(
                localize(CompatibleSetStrategy(), 2, consume_intermediate=True),
                HonestCodemaker(secret),
                locality=ell(2),
            )
            assert r.solved

    def test_static_localization(self):
        base = conveyor_belt_strategy(4)
        # k=4 routing may reorder steps but must keep the decoder working
        local = localize(base, 3)
        for secret in all_permutations(4):
            r = run_game(local, HonestCodemaker(secret), locality=ell(3))
            assert r.solved


class TestConveyor:
    def test_displayed_prefix(self):
        cb = conveyor_belt(4)
        assert [g.one_line for g in cb[:5]] == [
            (1, 2, 3, 4),
            (2, 1, 3, 4),
            (2, 3, 1, 4),
            (2, 3, 4, 1),
            (3, 2, 4, 1),
        ]

    def test_counts(self):
        assert len(conveyor_belt(2)) == 3
        assert [g.one_line for g in conveyor_belt(2)] == [(1, 2), (2, 1), (1, 2)]
        for n in (3, 4, 5):
            assert len(conveyor_belt(n)) == 1 + n * (n - 1)

    def test_adjacent_steps(self):
        cb = conveyor_belt(5)
        assert check_locality(cb, window(2))

    def test_every_symbol_visits_every_position(self):
        for n in (4, 5):
            seen = {(i, v) for g in conveyor_belt(n) for i, v in enumerate(g.image)}
            assert len(seen) == n * n


class TestHexagon:
    def test_walk_example(self):
        out = hexagon_expand(Permutation.identity(3), 1)
        assert [g.one_line for g in out] == [(1, 3, 2), (3, 1, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3)]

    def test_walk_is_adjacent_and_complete(self):
        cur = P(4, 2, 1, 3, 5)
        for i in (1, 2, 3, 4):
            walk = [cur] + hexagon_expand(cur, i)
            assert check_locality(walk, window(2))
            w = walk_window(i, 5)
            window_sets = {tuple(g.image[p - 1] for p in w) for g in walk}
            assert len(window_sets) == 6
            # net effect is the adjacent transposition (i, i+1)
            expect = list(cur.image)
            expect[i - 1], expect[i] = expect[i], expect[i - 1]
            assert walk[-1].image == tuple(expect)
            # positions outside the window never move
            for g in walk:
                for p in range(1, 6):
                    if p not in w:
                        assert g.image[p - 1] == cur.image[p - 1]

    def test_edge_window(self):
        assert walk_window(4, 5) == (3, 4, 5)
        assert walk_window(3, 5) == (3, 4, 5)
        assert walk_window(1, 5) == (1, 2, 3)
        with pytest.raises(ValueError):
            walk_window(1, 2)


class TestDistinguishability:
    def test_report(self):
        masks, vectors = distinguishability_report()
        assert len(masks) == 33
        assert len(set(vectors.values())) == 33
        assert vectors[(1, 2, 3)] == (3, 1, 0, 1, 0, 1)

    def test_verify(self):
        assert verify_distinguishability() is True

    def test_no_constant_vector_collisions(self):
        # decoding sees vector + unknown constant offset; no two masks may
        # differ by a constant, including the all-outside mask
        vectors = {m: mask_score_vector(m, ARRANGEMENTS_NORMAL) for m in window_masks()}
        assert len(vectors) == 34
        items = list(vectors.items())
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                diffs = {x - y for x, y in zip(items[a][1], items[b][1])}
                assert len(diffs) > 1


class TestDecode:
    def test_all_outside_mask(self):
        vec = mask_score_vector((0, 0, 0), ARRANGEMENTS_NORMAL)
        assert vec == (0, 0, 0, 0, 0, 0)
        assert decode_generous(vec, 6) == (0, 0, 0)

    def test_full_mask(self):
        vec = mask_score_vector((1, 2, 3), ARRANGEMENTS_NORMAL)
        assert decode_generous(vec, 6) == (1, 2, 3)

    def test_offset_is_stripped(self):
        vec = mask_score_vector((2, 1, 0), ARRANGEMENTS_NORMAL)
        shifted = tuple(v + 2 for v in vec)
        assert decode_generous(shifted, 6) == (2, 1, 0)

    def test_corrupted_vector_rejected(self):
        with pytest.raises(ProtocolViolation):
            decode_generous((5, 5, 5, 5, 5, 5), 6)
        with pytest.raises(ProtocolViolation):
            decode_generous((3, 3, 3, 3, 3, 3), 5)

    def test_mirror_arrangements(self):
        vec = mask_score_vector((1, 2, 3), ARRANGEMENTS_MIRROR)
        assert decode_generous(vec, 6, mirror=True) == (1, 2, 3)

    def test_every_real_walk_decodes(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(4, 7)
            secret = random_permutation(n, rng)
            cur = random_permutation(n, rng)
            i = rng.randint(1, n - 1)
            walk = [cur] + hexagon_expand(cur, i)
            scores = [black_peg_score(g, secret) for g in walk]
            w = walk_window(i, n)
            mask = decode_generous(scores, n, mirror=i > n - 2)
            syms = [cur.image[p - 1] for p in w]
            for slot in range(3):
                pos = w[slot] - 1
                if mask[slot] == 0:
                    assert secret.image[pos] not in syms
                else:
                    assert secret.image[pos] == syms[mask[slot] - 1]


class TestConveyorHexagonPipeline:
    @pytest.mark.parametrize("n", [4, 5])
    def test_solves_everything_window2(self, n):
        for secret in all_permutations(n):
            r = run_game(ConveyorHexagonStrategy(n), HonestCodemaker(secret), locality=window(2))
            assert r.solved
            assert check_locality(r.transcript, window(2))
            assert r.guess_count <= 10 * n * n

    def test_static_form_is_sufficient(self):
        from permind.graphs import is_sufficient

        s = conveyor_hexagon_static(4)
        assert is_sufficient(list(s.guesses))
        for secret in all_permutations(4):
            r = run_game(s, HonestCodemaker(secret), locality=window(2))
            assert r.solved

    def test_generous_conveyor(self):
        for secret in all_permutations(4):
            r = run_game(ConveyorGenerousStrategy(4), GenerousCodemaker(secret), locality=window(2))
            assert r.solved


class TestOptimalSearch:
    def test_n2(self):
        assert optimal_adaptive_value(2, ell(2)) == 2

    def test_n3_frozen_regression(self):
        # computed once by this exhaustive oracle and frozen
        assert optimal_adaptive_value(3, ell(2)) == 6

    def test_nonincreasing_in_k(self):
        values3 = [optimal_adaptive_value(3, ell(k)) for k in (2, 3)]
        assert values3 == sorted(values3, reverse=True)
        values4 = [optimal_adaptive_value(4, ell(k)) for k in (2, 3, 4)]
        assert values4 == sorted(values4, reverse=True)
        for k, v in zip((2, 3, 4), values4):
            assert v >= (4 * 4 - 3 * 4) / (2 * k)

    def test_window_values_frozen(self):
        # window moves are a subset of ell moves, so values can only go up
        assert optimal_adaptive_value(3, window(2)) == 6
        assert optimal_adaptive_value(4, window(2)) == 9
        assert optimal_adaptive_value(4, window(3)) == 6
        assert optimal_adaptive_value(4, window(2)) >= optimal_adaptive_value(4, ell(2))

    def test_cap(self):
        with pytest.raises(CapacityError):
            optimal_adaptive_value(6, ell(2))

    def test_tree_is_playable(self):
        value, tree = optimal_strategy_tree(3, ell(2))

        def play(node, secret, depth):
            guess = Permutation.from_one_line(node["guess"])
            b = black_peg_score(guess, secret)
            if b == secret.n:
                return depth + 1
            child = node["children"].get(str(b))
            assert child is not None and child != "solved"
            return play(child, secret, depth + 1)

        worst = max(play(tree, s, 0) for s in all_permutations(3))
        assert worst == value
        # consecutive guesses along every branch respect the locality
        def check_steps(node):
            guess = Permutation.from_one_line(node["guess"])
            for child in node["children"].values():
                if child == "solved":
                    continue
                nxt = Permutation.from_one_line(child["guess"])
                assert check_locality((guess, nxt), ell(2))
                check_steps(child)

        check_steps(tree)


class TestProbeGame:
    def test_n2_terminates_after_first_no(self):
        r = extra_generous_probe_game(row_scan_prober, 2)
        assert r.no_count >= 1
        assert r.probes <= 4

    def test_lower_bound_small(self):
        for n in (2, 3, 4):
            for prober in (row_scan_prober, column_scan_prober, diagonal_scan_prober):
                r = extra_generous_probe_game(prober, n)
                assert r.no_count >= n * (n - 1) // 2

    def test_row_scan_n4(self):
        r = extra_generous_probe_game(row_scan_prober, 4)
        assert r.no_count >= 6

    def test_random_prober(self):
        r = extra_generous_probe_game(random_prober(3), 5)
        assert r.no_count >= 10
        assert r.matching.n == 5
