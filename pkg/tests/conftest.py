import random
from fractions import Fraction
from itertools import combinations

import pytest

from bnpg.anm import ANMInstance
from bnpg.game import BNPGGame, invest_counts
from bnpg.oracle import enumerate_psne

F = Fraction


def anti_coordination(edge=True):
    """Player 0 wants to invest only alone, player 1 only alongside 0: no PSNE."""
    return BNPGGame.create(2, [(0, 1)] if edge else [], [(0, 1, 1), (0, 0, 1)], [F(1, 2), F(1, 2)])


def micro_gadget(budget):
    """Player 0 gains nothing itself; buying the arc 0->1 makes investing worth 2 >= 1."""
    game = BNPGGame.create(2, [(0, 1)], [(0, 0, 0), (0, 2, 4)], [1, 1], a=1)
    return ANMInstance(game, (1, 1), {(0, 1): 3}, {}, budget)


def linear_game(n, edges, slope=1, c=F(1, 2), a=0, altruism=(), directed=True):
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return BNPGGame.create(n, edges, [[slope * x for x in range(d + 2)] for d in deg], [c] * n, a,
                           altruism, directed)


def filtered_psne(game, actions, counts):
    out = []
    for p in enumerate_psne(game):
        n = invest_counts(game, p)
        if all(p[v] == x for v, x in actions.items()) and all(n[v] == k for v, k in counts.items()):
            out.append(p)
    return out


def exhaustive_greedy(y, z, quota, maximize):
    best = None
    for ones in combinations(range(len(y)), quota):
        value = sum(y[i] if i in ones else z[i] for i in range(len(y)))
        if best is None or (value > best if maximize else value < best):
            best = value
    return best


@pytest.fixture
def rng():
    return random.Random(12345)
