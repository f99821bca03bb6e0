import random
from fractions import Fraction as F

import pytest

from bnpg.errors import NotApplicableError
from bnpg.game import BNPGGame, verify_psne
from bnpg.generate import random_tree_game
from bnpg.oracle import enumerate_psne
from bnpg.tree import GreedySelectionInput, greedy_select, solve_tree_psne, solve_tree_psne_constrained
from conftest import anti_coordination, exhaustive_greedy, filtered_psne, linear_game

PATH = [(0, 1), (1, 2)]


def test_greedy_examples():
    assert greedy_select(GreedySelectionInput((5,), (1,), 1)) == ((1,), 5)
    assert greedy_select(GreedySelectionInput((5, 1), (1, 4), 1)) == ((1, 0), 9)
    assert greedy_select(GreedySelectionInput((5, 1), (1, 4), 1, maximize=False)) == ((0, 1), 2)


def test_greedy_matches_exhaustive():
    rng = random.Random(2)
    for _ in range(200):
        k = rng.randint(0, 8)
        y = tuple(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(k))
        z = tuple(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(k))
        quota = rng.randint(0, k)
        for maximize in (True, False):
            assign, value = greedy_select(GreedySelectionInput(y, z, quota, maximize))
            assert sum(assign) == quota
            assert value == sum(y[i] if assign[i] else z[i] for i in range(k))
            assert value == exhaustive_greedy(y, z, quota, maximize)


def test_greedy_bad_quota():
    with pytest.raises(ValueError):
        greedy_select(GreedySelectionInput((1,), (1,), 2))


def test_solve_tree_examples():
    assert solve_tree_psne(BNPGGame.create(1, [], [(0, 2)], [1])) == (1,)
    assert solve_tree_psne(linear_game(3, PATH)) == (1, 1, 1)
    assert solve_tree_psne(anti_coordination()) is None


def test_constrained_examples():
    game = linear_game(3, PATH)
    assert solve_tree_psne_constrained(game, {}) == solve_tree_psne(game)
    assert solve_tree_psne_constrained(game, {1: 1}, {1: 2}) == (1, 1, 1)
    assert solve_tree_psne_constrained(game, {1: 1}, {1: 0}) is None
    assert solve_tree_psne_constrained(game, {1: 1}, {1: 5}) is None


def test_cycle_rejected():
    with pytest.raises(NotApplicableError):
        solve_tree_psne(linear_game(3, [(0, 1), (1, 2), (0, 2)]))


def test_forest_and_altruism_against_oracle():
    rng = random.Random(8)
    for _ in range(80):
        game = random_tree_game(rng, rng.randint(1, 9))
        extra = rng.randint(1, 3)
        # Disjoint union with a second tree exercises the forest path.
        other = random_tree_game(rng, extra)
        n = game.n + extra
        forest = BNPGGame.create(n, list(game.graph.edges) + [(u + game.n, v + game.n) for u, v in other.graph.edges],
                                 list(game.g) + list(other.g), list(game.c) + list(other.c), game.a,
                                 list(game.altruism.edges) + [(u + game.n, v + game.n) for u, v in other.altruism.edges])
        found = enumerate_psne(forest)
        witness = solve_tree_psne(forest)
        assert (witness is not None) == bool(found)
        if witness is not None:
            assert verify_psne(forest, witness)


def test_constrained_against_oracle():
    rng = random.Random(9)
    for _ in range(60):
        game = random_tree_game(rng, rng.randint(2, 9))
        picked = rng.sample(range(game.n), rng.randint(1, min(3, game.n)))
        actions = {v: rng.randint(0, 1) for v in picked if rng.random() < 0.8}
        counts = {v: rng.randint(0, game.graph.degree(v)) for v in picked if rng.random() < 0.6}
        witness = solve_tree_psne_constrained(game, actions, counts)
        assert (witness is not None) == bool(filtered_psne(game, actions, counts))
