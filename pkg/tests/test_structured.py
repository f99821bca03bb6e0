import random
from fractions import Fraction as F

import pytest

from bnpg.errors import GuardError, NotApplicableError
from bnpg.game import BNPGGame, invest_counts, is_stable, verify_psne
from bnpg.game import InputGraph
from bnpg.generate import random_clique_game, random_rank_game, random_tree_game
from bnpg.oracle import enumerate_psne
from bnpg.structured import (circuit_rank, components, solve_bounded_circuit_rank_psne, solve_clique_psne,
                             stability_sets)
from bnpg.tree import solve_tree_psne
from conftest import anti_coordination, linear_game

TRIANGLE = [(0, 1), (1, 2), (0, 2)]


def test_circuit_rank_examples():
    assert circuit_rank(InputGraph(5, [(0, 1), (1, 2), (2, 3), (2, 4)])) == 0
    assert circuit_rank(InputGraph(3, TRIANGLE)) == 1
    two = TRIANGLE + [(u + 3, v + 3) for u, v in TRIANGLE]
    assert circuit_rank(InputGraph(6, two)) == 2
    assert components(InputGraph(6, two)) == [[0, 1, 2], [3, 4, 5]]


def test_clique_examples():
    assert solve_clique_psne(linear_game(3, TRIANGLE)) == (1, 1, 1)
    assert solve_clique_psne(anti_coordination()) is None


def test_clique_preconditions():
    with pytest.raises(NotApplicableError):
        solve_clique_psne(linear_game(3, [(0, 1), (1, 2)]))


def test_stability_sets_match_is_stable():
    rng = random.Random(4)
    for _ in range(30):
        game = random_clique_game(rng, rng.randint(3, 6))
        for k in range(1, game.n):
            sets = stability_sets(game, k)
            profile = [1] * k + [0] * (game.n - k)
            for v in range(game.n):
                # An investor sees k-1 others; an abstainer sees k.
                probe = list(profile)
                probe[v] = 1
                if v >= k:
                    probe[k - 1] = 0
                assert (v in sets.R1) == is_stable(game, probe, v)
                probe = [1] * k + [0] * (game.n - k)
                probe[v] = 0
                if v < k:
                    probe[k] = 1
                assert (v in sets.R0) == is_stable(game, probe, v)


def test_clique_against_oracle():
    rng = random.Random(6)
    for _ in range(60):
        game = random_clique_game(rng, rng.randint(1, 7))
        witness = solve_clique_psne(game)
        assert (witness is not None) == bool(enumerate_psne(game))
        if witness is not None:
            assert verify_psne(game, witness)


def test_circuit_rank_examples_solver():
    rng = random.Random(1)
    for _ in range(10):
        game = random_tree_game(rng, 7)
        assert (solve_bounded_circuit_rank_psne(game) is None) == (solve_tree_psne(game) is None)
    assert solve_bounded_circuit_rank_psne(linear_game(3, TRIANGLE)) == (1, 1, 1)


def test_circuit_rank_guard():
    with pytest.raises(GuardError):
        solve_bounded_circuit_rank_psne(linear_game(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]), 2)


def test_circuit_rank_against_oracle():
    rng = random.Random(7)
    for _ in range(40):
        d = rng.randint(1, 2)
        game = random_rank_game(rng, rng.randint(2 + d, 8), d)
        witness = solve_bounded_circuit_rank_psne(game)
        assert (witness is not None) == bool(enumerate_psne(game))
        if witness is not None:
            assert verify_psne(game, witness)
