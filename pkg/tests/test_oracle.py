from fractions import Fraction as F

import pytest

from bnpg.anm import ANMInstance, EditSet, apply_edits
from bnpg.errors import GuardError
from bnpg.game import BNPGGame, verify_psne
from bnpg.knapsack import KnapsackInstance
from bnpg.oracle import brute_anm, brute_max_knapsack, brute_min_knapsack, brute_sat, enumerate_psne
from bnpg.reductions import SatInstance
from conftest import anti_coordination, micro_gadget, linear_game


def test_enumerate_psne_examples():
    assert enumerate_psne(BNPGGame.create(1, [], [(0, 2)], [1])) == [(1,)]
    assert enumerate_psne(anti_coordination()) == []
    idle = BNPGGame.create(2, [], [(0, 0)] * 2, [0, 0])
    assert enumerate_psne(idle) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_enumerate_psne_is_exact(rng):
    from itertools import product
    from bnpg.generate import random_rank_game
    for _ in range(20):
        game = random_rank_game(rng, 6, 2)
        expected = [p for p in product((0, 1), repeat=6) if verify_psne(game, p)]
        assert enumerate_psne(game) == expected


def test_enumerate_psne_guard():
    with pytest.raises(GuardError):
        enumerate_psne(linear_game(26, []))


def test_brute_min_knapsack_examples():
    items = ((3, 2), (4, 3), (5, 4))
    assert brute_min_knapsack(KnapsackInstance(items, threshold=6)) == 5
    assert brute_min_knapsack(KnapsackInstance(items, threshold=0)) == 0
    assert brute_min_knapsack(KnapsackInstance(((1, 1),), threshold=2)) is None


def test_brute_max_knapsack():
    assert brute_max_knapsack(((3, 2), (4, 3), (5, 4)), 5) == 7
    assert brute_max_knapsack(((F(1, 2), 1), (F(1, 3), 1)), 2) == F(5, 6)


def test_brute_anm_examples():
    assert brute_anm(micro_gadget(3)) == EditSet(frozenset({(0, 1)}), frozenset(), F(3))
    assert brute_anm(micro_gadget(2)) is None
    stable = ANMInstance(linear_game(2, [(0, 1)]), (1, 1), {(0, 1): 5}, {}, 0)
    assert brute_anm(stable) == EditSet()


def test_brute_anm_result_verifies(rng):
    from bnpg.generate import random_anm
    for _ in range(20):
        anm = random_anm(rng, 6)
        edits = brute_anm(anm)
        if edits is not None:
            assert edits.total_cost <= anm.budget
            assert verify_psne(apply_edits(anm.game, edits), anm.target)


def test_brute_sat():
    assert brute_sat(SatInstance(2, ((1, 2), (1, -2), (-1, 2), (-1, -2)))) is None
    bits = brute_sat(SatInstance(1, ((1,), (1,))))
    assert bits == (True,)
