"""Exhaustive reference answers used as ground truth for every solver.

Nothing here reuses solver logic.  Size guards raise :class:`GuardError`
instead of letting an enumeration run for hours.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

import numpy as np

from .anm import ANMInstance, EditSet, apply_edits
from .errors import GuardError
from .game import BNPGGame, deviation_gain, utility, verify_psne
from .knapsack import KnapsackInstance

PSNE_MAX_PLAYERS = 25
KNAPSACK_MAX_ITEMS = 24
ANM_MAX_EDITS = 20


def enumerate_psne(game: BNPGGame) -> list[tuple[int, ...]]:
    """Every PSNE, in lexicographic order.

    Players are assigned in id order; a player's stability is tested as soon
    as every action it depends on is fixed, which prunes dead prefixes without
    skipping any profile that could still be an equilibrium.
    """
    n = game.n
    if n > PSNE_MAX_PLAYERS:
        raise GuardError(f"{n} players exceed the exhaustive PSNE guard of {PSNE_MAX_PLAYERS}")
    ready: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        deps = {v, *game.graph.neighbors(v)}
        for u in game.out_neighbors(v):
            deps.add(u)
            deps.update(game.graph.neighbors(u))
        ready[max(deps)].append(v)

    profile = [0] * n
    counts = [0] * n
    found = []

    def extend(k: int) -> None:
        if k == n:
            found.append(tuple(profile))
            return
        for x in (0, 1):
            profile[k] = x
            if x:
                for u in game.graph.neighbors(k):
                    counts[u] += 1
            if all(deviation_gain(game, profile, v, counts) >= 0 for v in ready[k]):
                extend(k + 1)
            if x:
                for u in game.graph.neighbors(k):
                    counts[u] -= 1
        profile[k] = 0

    extend(0)
    return found


def _scale(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * den) for v in values], den


def _int_array(values: Sequence[int], bound_terms: int) -> np.ndarray:
    big = max((abs(v) for v in values), default=0) * max(bound_terms, 1)
    return np.array(values, dtype=np.int64 if big < 2**62 else object)


def _subset_sums(values: Sequence[int]) -> np.ndarray:
    """Sums of all 2^k subsets; bit i of the index selects item i."""
    sums = _int_array([0], 1)
    arr = _int_array(list(values), len(values))
    for v in arr:
        sums = np.concatenate([sums, sums + v])
    return sums


def brute_max_knapsack(items: Sequence, capacity: int) -> Fraction:
    inst = KnapsackInstance(tuple(items))
    if len(inst.items) > KNAPSACK_MAX_ITEMS:
        raise GuardError(f"{len(inst.items)} items exceed the brute-force guard of {KNAPSACK_MAX_ITEMS}")
    profits, den = _scale(inst.profits)
    p, w = _subset_sums(profits), _subset_sums(inst.weights)
    return Fraction(int(p[w <= capacity].max()), den)


def brute_min_knapsack(inst: KnapsackInstance) -> int | None:
    """Least weight of a subset whose profit reaches the threshold; None if infeasible."""
    if inst.threshold is None:
        raise ValueError("minimum knapsack needs a profit threshold")
    if len(inst.items) > KNAPSACK_MAX_ITEMS:
        raise GuardError(f"{len(inst.items)} items exceed the brute-force guard of {KNAPSACK_MAX_ITEMS}")
    profits, den = _scale(list(inst.profits) + [inst.threshold])
    target = profits.pop()
    p, w = _subset_sums(profits), _subset_sums(inst.weights)
    ok = p >= target
    return int(w[ok].min()) if ok.any() else None


def _gain_by_definition(game: BNPGGame, profile: tuple[int, ...], v: int) -> Fraction:
    flipped = list(profile)
    flipped[v] = 1 - flipped[v]
    return utility(game, profile, v) - utility(game, flipped, v)


def brute_anm(anm: ANMInstance) -> EditSet | None:
    """Cheapest edit set making the target a PSNE, by exhaustive enumeration.

    Each candidate edit shifts every player's deviation gain by a fixed amount
    (utilities are linear in the altruism edge set), measured here straight
    from the utility function.  Edits costing more than the whole budget are
    dropped, and edits that touch disjoint sets of players are enumerated
    independently.  Ties go to the lexicographically smallest 0/1 indicator
    vector over the candidates in canonical order (adds by edge, then deletes).
    """
    game, x = anm.game, anm.target
    cands = [("add", e) for e in sorted(anm.add_cost)] + [("delete", e) for e in sorted(anm.delete_cost)]
    cands = [(k, e) for k, e in cands if anm.edit_cost(k, e) <= anm.budget]
    base = [_gain_by_definition(game, x, v) for v in range(game.n)]
    current = set(game.altruism.edges)
    delta: list[dict[int, Fraction]] = []
    for kind, e in cands:
        edited = game.with_altruism(current | {e} if kind == "add" else current - {e})
        shifts = {}
        for v in range(game.n):
            d = _gain_by_definition(edited, x, v) - base[v]
            if d:
                shifts[v] = d
        delta.append(shifts)

    touched = set().union(*delta) if delta else set()
    if any(base[v] < 0 and v not in touched for v in range(game.n)):
        return None

    # Union-find over candidates joined by a shared touched player.
    parent = list(range(len(cands)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, shifts in enumerate(delta):
        for v in shifts:
            if v in owner:
                parent[find(i)] = find(owner[v])
            else:
                owner[v] = i
    groups: dict[int, list[int]] = {}
    for i in range(len(cands)):
        if delta[i]:
            groups.setdefault(find(i), []).append(i)

    chosen: list[int] = []
    for members in groups.values():
        pick = _best_subset(anm, cands, members, delta, base)
        if pick is None:
            return None
        chosen += pick
    result = EditSet.from_edits(anm, [cands[i] for i in sorted(chosen)])
    if result.total_cost > anm.budget:
        return None
    assert verify_psne(apply_edits(game, result), x), "brute force picked a non-equilibrium edit set"
    return result


def _best_subset(anm, cands, members, delta, base) -> list[int] | None:
    k = len(members)
    if k > ANM_MAX_EDITS:
        raise GuardError(f"{k} interacting candidate edits exceed the brute-force guard of {ANM_MAX_EDITS}")
    players = sorted(set().union(*(delta[i] for i in members)))
    gains = [base[v] for v in players] + [delta[i].get(v, Fraction(0)) for i in members for v in players]
    gains, _ = _scale(gains)
    costs, _ = _scale([anm.edit_cost(*cands[i]) for i in members])
    width = len(players)
    base_arr = _int_array(gains[:width], k + 1)
    shift = _int_array(gains[width:], k + 1).reshape(k, width)
    cost = _int_array(costs, k)
    # Candidate j of the group is bit (k-1-j): numerically smaller masks are
    # lexicographically smaller indicator vectors.
    weights = [1 << (k - 1 - j) for j in range(k)]
    best = None
    chunk = 1 << min(k, 16)
    for start in range(0, 1 << k, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        bits = ((masks[:, None] >> np.array([k - 1 - j for j in range(k)], dtype=np.int64)) & 1)
        bits = bits.astype(shift.dtype)
        ok = np.all(base_arr + bits @ shift >= 0, axis=1)
        if not ok.any():
            continue
        total = bits[ok] @ cost
        lowest = total.min()
        mask = int(masks[ok][total == lowest].min())
        if best is None or (lowest, mask) < best:
            best = (lowest, mask)
    if best is None:
        return None
    mask = best[1]
    return [members[j] for j in range(k) if mask & weights[j]]


SAT_MAX_VARIABLES = 22


def brute_sat(sat) -> tuple[bool, ...] | None:
    """First satisfying assignment in binary counting order (x_1 most significant), or None."""
    if sat.n > SAT_MAX_VARIABLES:
        raise GuardError(f"{sat.n} variables exceed the brute-force guard of {SAT_MAX_VARIABLES}")
    for bits in product((False, True), repeat=sat.n):
        if sat.satisfied_by(bits):
            return bits
    return None
