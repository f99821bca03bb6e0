"""Altruistic Network Modification (ANM).

With asymmetric altruism a player's stability only depends on its own
out-edges, so the cheapest repair splits into one minimum-knapsack problem
per player:

* a target investor short of incentive buys addable out-edges, each worth
  ``a * dg_u(x_u + n_u - 1)``;
* a target free-rider with too much incentive drops existing out-edges, each
  worth ``a * dg_u(x_u + n_u)``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .game import BNPGGame, Edge, as_rational, invest_counts, validate_game, verify_psne
from .knapsack import solve_min_knapsack

INF = math.inf


def _cost_map(game: BNPGGame, costs) -> dict[Edge, Fraction]:
    items = costs.items() if hasattr(costs, "items") else costs
    return {game.altruism.normalize(*e): as_rational(c) for e, c in items}


@dataclass(frozen=True)
class ANMInstance:
    game: BNPGGame
    target: tuple
    add_cost: dict = field(default_factory=dict)
    delete_cost: dict = field(default_factory=dict)
    budget: Fraction | float = INF

    def __post_init__(self):
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "add_cost", _cost_map(self.game, self.add_cost))
        object.__setattr__(self, "delete_cost", _cost_map(self.game, self.delete_cost))
        if self.budget != INF:
            object.__setattr__(self, "budget", as_rational(self.budget))

    @property
    def directed(self) -> bool:
        return self.game.altruism.directed

    def edit_cost(self, kind: str, edge: Edge) -> Fraction:
        return (self.add_cost if kind == "add" else self.delete_cost)[edge]


def validate_anm(anm: ANMInstance) -> list[str]:
    game = anm.game
    problems = validate_game(game)
    if len(anm.target) != game.n or any(x not in (0, 1) for x in anm.target):
        problems.append(f"target profile must be {game.n} entries of 0/1")
    for e, cost in sorted(anm.add_cost.items()):
        if not game.graph.has_edge(*e):
            problems.append(f"addable edge {e} joins players that are not adjacent in the input graph")
        elif e in game.altruism:
            problems.append(f"addable edge {e} is already an altruism edge")
        if cost < 0:
            problems.append(f"cost of adding {e} is negative")
    for e, cost in sorted(anm.delete_cost.items()):
        if e not in game.altruism:
            problems.append(f"deletable edge {e} is not an altruism edge")
        if cost < 0:
            problems.append(f"cost of deleting {e} is negative")
    if anm.budget != INF and anm.budget < 0:
        problems.append("budget is negative")
    return problems


@dataclass(frozen=True)
class EditSet:
    additions: frozenset = frozenset()
    deletions: frozenset = frozenset()
    total_cost: Fraction = Fraction(0)

    @classmethod
    def from_edits(cls, anm: ANMInstance, edits: Iterable[tuple[str, Edge]]) -> "EditSet":
        adds, dels, cost = set(), set(), Fraction(0)
        for kind, e in edits:
            (adds if kind == "add" else dels).add(e)
            cost += anm.edit_cost(kind, e)
        return cls(frozenset(adds), frozenset(dels), cost)

    def __len__(self) -> int:
        return len(self.additions) + len(self.deletions)


def apply_edits(game: BNPGGame, edits: EditSet) -> BNPGGame:
    current = set(game.altruism.edges)
    return game.with_altruism((current - set(edits.deletions)) | set(edits.additions))


@dataclass(frozen=True)
class PlayerKnapsack:
    owner: int
    mode: str  # "raise" buys additions, "lower" buys deletions
    items: tuple  # ((edge, profit, weight), ...)
    threshold: Fraction


def _integral(value: Fraction, what: str) -> int:
    if as_rational(value).denominator != 1:
        raise ValueError(f"{what} has non-integral cost {value}; scale costs to integers first")
    return int(value)


def decompose_anm_asymmetric(anm: ANMInstance) -> list[PlayerKnapsack]:
    game, x = anm.game, anm.target
    if not game.altruism.directed:
        raise ValueError("the knapsack decomposition needs a directed (asymmetric) altruism network")
    for kind, costs in (("add", anm.add_cost), ("delete", anm.delete_cost)):
        for e, cost in costs.items():
            _integral(cost, f"{kind} {e}")
    counts = invest_counts(game, x)
    out = []
    for v in range(game.n):
        shift = -1 if x[v] else 0

        def worth(u: int) -> Fraction:
            return game.a * game.dg(u, x[u] + counts[u] + shift)

        existing = sum((worth(u) for u in game.out_neighbors(v)), Fraction(0))
        if x[v]:
            need = game.c[v] - game.dg(v, counts[v]) - existing
            candidates = [(v, u) for u in game.graph.neighbors(v) if (v, u) in anm.add_cost]
            mode = "raise"
        else:
            need = game.dg(v, counts[v]) + existing - game.c[v]
            candidates = [(v, u) for u in game.out_neighbors(v) if (v, u) in anm.delete_cost]
            mode = "lower"
        if need <= 0:
            continue
        costs = anm.add_cost if x[v] else anm.delete_cost
        items = tuple((e, worth(e[1]), int(costs[e])) for e in candidates)
        out.append(PlayerKnapsack(v, mode, items, need))
    return out


def default_workers() -> int:
    env = os.environ.get("BNPG_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _solve_player(ks: PlayerKnapsack):
    return solve_min_knapsack([(p, w) for _, p, w in ks.items], ks.threshold)


def solve_anm_asymmetric(anm: ANMInstance, workers: int | None = None) -> EditSet | None:
    """Cheapest edit set making the target a PSNE, or None if over budget/infeasible."""
    knapsacks = decompose_anm_asymmetric(anm)
    with ThreadPoolExecutor(max_workers=workers or default_workers()) as pool:
        results = list(pool.map(_solve_player, knapsacks))
    edits = []
    for ks, res in zip(knapsacks, results):
        if res is None:
            return None
        kind = "add" if ks.mode == "raise" else "delete"
        edits += [(kind, ks.items[i][0]) for i in res[1]]
    result = EditSet.from_edits(anm, edits)
    if result.total_cost > anm.budget:
        return None
    assert verify_psne(apply_edits(anm.game, result), anm.target), "decomposition produced a non-equilibrium"
    return result
