from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bnpg.errors import TableRangeError
from bnpg.game import (BNPGGame, deviation_gain, expected_utility, is_stable, marginal, utility, validate_game,
                       verify_eps_ne, verify_psne)
from bnpg.generate import random_rank_game, random_tree_game
from conftest import anti_coordination, linear_game


@pytest.mark.parametrize("table,x,expected", [((0, 1, 2), 0, 1), ((0, 5, 10), 1, 5), ((0, 1, 1), 1, 0)])
def test_marginal_examples(table, x, expected):
    assert marginal(table, x) == expected


def test_marginal_out_of_range():
    with pytest.raises(TableRangeError):
        marginal((0, 1), 1)


def test_utility_examples():
    lone = BNPGGame.create(1, [], [(0, 2)], [1])
    assert utility(lone, (1,), 0) == 1
    pair = BNPGGame.create(2, [(0, 1)], [(0, 1, 2)] * 2, [1, 1], a=1, altruism=[(0, 1)])
    assert utility(pair, (1, 1), 0) == 3
    assert utility(pair.__class__(pair.graph, pair.altruism, pair.g, pair.c, 0), (1, 1), 0) == 1


def test_is_stable_examples():
    lone = BNPGGame.create(1, [], [(0, 2)], [1])
    assert is_stable(lone, (1,), 0)
    assert not is_stable(lone, (0,), 0)
    pair = BNPGGame.create(2, [(0, 1)], [(0, 1, 1), (0, 1, 2)], [F(1, 2), F(1, 2)])
    assert not is_stable(pair, (1, 1), 0)


def test_verify_psne_examples():
    idle = BNPGGame.create(3, [], [(0, 0)] * 3, [0] * 3)
    assert all(verify_psne(idle, p) for p in product((0, 1), repeat=3))
    game = anti_coordination()
    verdicts = [verify_psne(game, p) for p in product((0, 1), repeat=2)]
    assert not any(verdicts)
    assert all(v.deviator is not None for v in verdicts)
    sym = linear_game(2, [(0, 1)], c=F(3, 2), a=1, altruism=[(0, 1)], directed=False)
    assert verify_psne(sym, (1, 1))


def test_verify_psne_reports_least_deviator():
    game = linear_game(3, [], c=F(1, 2))
    assert verify_psne(game, (1, 0, 0)).deviator == 1


def test_expected_utility_examples():
    game = BNPGGame.create(3, [(0, 1), (0, 2)], [(0, 1, 2, 3), (0, 1, 2), (0, 1, 2)], [0, 0, 0])
    assert expected_utility(game, (0, F(1, 2), F(1, 2)), 0, 0) == 1


def test_eps_ne_examples():
    game = anti_coordination()
    assert verify_eps_ne(game, (F(1, 2), F(1, 2)), 0)
    assert verify_eps_ne(game, (1, 0), F(1, 2))
    verdict = verify_eps_ne(game, (1, 0), F(1, 3))
    assert not verdict and verdict.witness is not None
    assert verify_eps_ne(linear_game(2, [(0, 1)]), (1, 1), 0)


def test_validate_game_examples():
    assert validate_game(linear_game(2, [(0, 1)])) == []
    stray = BNPGGame.create(3, [(0, 1)], [(0, 1, 2)] * 3, [1] * 3, altruism=[(0, 2)])
    assert len(validate_game(stray)) == 1
    falling = BNPGGame.create(1, [], [(0, 2, 1)], [1])
    assert len(validate_game(falling)) == 1


def test_float_inputs_rejected():
    with pytest.raises(TypeError):
        BNPGGame.create(1, [], [(0, 1)], [0.5])


def _flip(profile, v):
    out = list(profile)
    out[v] = 1 - out[v]
    return out


games = st.builds(lambda seed, n, kind: (random_tree_game if kind else
                                         lambda r, n: random_rank_game(r, max(n, 5), 1))(__import__("random").Random(seed), n),
                  st.integers(0, 10**6), st.integers(1, 8), st.booleans())


@settings(max_examples=60, deadline=None)
@given(games, st.data())
def test_stability_matches_utility_difference(game, data):
    profile = data.draw(st.lists(st.integers(0, 1), min_size=game.n, max_size=game.n))
    for v in range(game.n):
        by_utility = utility(game, profile, v) - utility(game, _flip(profile, v), v)
        assert deviation_gain(game, profile, v) == by_utility
        assert is_stable(game, profile, v) == (by_utility >= 0)


@settings(max_examples=40, deadline=None)
@given(games, st.data(), st.fractions(min_value=F(1, 5), max_value=5))
def test_scaling_preserves_verdicts(game, data, k):
    profile = data.draw(st.lists(st.integers(0, 1), min_size=game.n, max_size=game.n))
    scaled = BNPGGame(game.graph, game.altruism, tuple(tuple(k * x for x in t) for t in game.g),
                      tuple(k * c for c in game.c), game.a)
    assert bool(verify_psne(game, profile)) == bool(verify_psne(scaled, profile))


@settings(max_examples=40, deadline=None)
@given(games, st.data())
def test_zero_altruism_ignores_network(game, data):
    profile = data.draw(st.lists(st.integers(0, 1), min_size=game.n, max_size=game.n))
    plain = BNPGGame(game.graph, game.altruism, game.g, game.c, 0)
    bare = plain.with_altruism(())
    assert all(utility(plain, profile, v) == utility(bare, profile, v) for v in range(game.n))


@settings(max_examples=40, deadline=None)
@given(games, st.data())
def test_degenerate_mixed_equals_pure(game, data):
    profile = data.draw(st.lists(st.integers(0, 1), min_size=game.n, max_size=game.n))
    for v in range(game.n):
        assert expected_utility(game, profile, v, profile[v]) == utility(game, profile, v)
