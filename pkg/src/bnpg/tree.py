"""PSNE existence and construction on trees (and forests) with altruism.

Every node ``v`` with parent ``u`` keeps the set of valid configurations
``(x_u, n_u, x_v, n_v)``: parent action, parent's investing-neighbour count,
own action, own investing-neighbour count, such that some assignment of the
subtree below ``v`` keeps every subtree player stable.  Among the children
that could play either action, choosing which ones invest is a small
assignment ILP solved greedily (:func:`greedy_select`).

Each admitted configuration remembers the child configurations that made it
valid, so an equilibrium is rebuilt top-down once the root has an entry.
The root hangs below a virtual parent that never invests, has degree one and
is outside every altruism neighbourhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotApplicableError
from .game import BNPGGame, Profile, invest_counts, verify_psne

Config = tuple[int, int, int, int]


@dataclass(frozen=True)
class GreedySelectionInput:
    """Children free to play either action, with their payoff if investing (y) or not (z)."""

    y: tuple
    z: tuple
    quota: int
    maximize: bool = True


def greedy_select(inp: GreedySelectionInput) -> tuple[tuple[int, ...], Fraction]:
    """Pick exactly ``quota`` children to invest, optimising the summed payoff.

    Children are visited by decreasing ``|y - z|`` (ties by position) and each
    gets its preferred action until one side of the quota is exhausted.
    Returns the 0/1 assignment per child and the objective value.
    """
    k = len(inp.y)
    if not 0 <= inp.quota <= k:
        raise ValueError(f"quota {inp.quota} is infeasible for {k} free children")
    order = sorted(range(k), key=lambda i: -abs(inp.y[i] - inp.z[i]))
    assign = [0] * k
    ones = zeros = 0
    for i in order:
        if ones == inp.quota:
            pick = 0
        elif zeros == k - inp.quota:
            pick = 1
        elif inp.maximize:
            pick = 1 if inp.y[i] > inp.z[i] else 0
        else:
            pick = 0 if inp.y[i] > inp.z[i] else 1
        assign[i] = pick
        ones += pick
        zeros += 1 - pick
    value = sum((inp.y[i] if assign[i] else inp.z[i] for i in range(k)), Fraction(0))
    return tuple(assign), value


def _rooted_forest(game: BNPGGame) -> tuple[list[int], list[int], list[int]]:
    n = game.n
    parent = [-1] * n
    seen = [False] * n
    order, roots = [], []
    for r in range(n):
        if seen[r]:
            continue
        roots.append(r)
        seen[r] = True
        stack = [r]
        while stack:
            v = stack.pop()
            order.append(v)
            for w in game.graph.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    stack.append(w)
    if len(game.graph.edges) != n - len(roots):
        raise NotApplicableError("the input graph is not acyclic")
    return parent, order, roots


def _node_table(game: BNPGGame, v: int, parent: int, kids: Sequence[int],
                index: Mapping[int, dict], fixed_x: int | None, fixed_n: int | None) -> dict:
    a = game.a
    alt = set(game.out_neighbors(v))
    is_root = parent < 0
    parent_deg = 1 if is_root else game.graph.degree(parent)
    table: dict[Config, tuple] = {}
    for xv in (0, 1):
        if fixed_x is not None and xv != fixed_x:
            continue
        pick_best = max if xv else min
        for nv in range(game.graph.degree(v) + 1):
            if fixed_n is not None and nv != fixed_n:
                continue
            # Per child: best admissible count when it invests / abstains.
            both, only1, only0 = [], [], []
            y: dict[int, Fraction] = {}
            z: dict[int, Fraction] = {}
            pick: dict[tuple[int, int], int] = {}
            dead = False
            for w in kids:
                counts1 = index[w].get((xv, nv, 1), ())
                counts0 = index[w].get((xv, nv, 0), ())
                if not counts1 and not counts0:
                    dead = True
                    break
                for xw, counts, store in ((1, counts1, y), (0, counts0, z)):
                    if not counts:
                        continue
                    if w in alt:
                        # w's count as seen from v's stability test (x_w + n_w - 1 or x_w + n_w).
                        arg = xw - 1 if xv else xw
                        vals = {c: a * game.dg(w, c + arg) for c in counts}
                        val = pick_best(vals.values())
                        nw = min(c for c in counts if vals[c] == val)
                    else:
                        val, nw = Fraction(0), counts[0]
                    store[w] = val
                    pick[(w, xw)] = nw
                (both if counts1 and counts0 else only1 if counts1 else only0).append(w)
            if dead:
                continue
            forced = sum((y[w] for w in only1), Fraction(0)) + sum((z[w] for w in only0), Fraction(0))
            own = game.c[v] - game.dg(v, nv) - forced
            for xu in ((0,) if is_root else (0, 1)):
                quota = nv - xu - len(only1)
                if not 0 <= quota <= len(both):
                    continue
                assign, value = greedy_select(GreedySelectionInput(
                    tuple(y[w] for w in both), tuple(z[w] for w in both), quota, maximize=bool(xv)))
                chosen = dict(zip(both, assign))
                chosen.update({w: 1 for w in only1})
                chosen.update({w: 0 for w in only0})
                choice = tuple((w, chosen[w], pick[(w, chosen[w])]) for w in kids)
                for nu in range(xv, parent_deg + xv):
                    if not is_root and parent in alt:
                        y_parent = a * game.dg(parent, xu + nu - 1 if xv else xu + nu)
                    else:
                        y_parent = Fraction(0)
                    rhs = own - y_parent
                    if (value >= rhs) if xv else (value <= rhs):
                        table[(xu, nu, xv, nv)] = choice
    return table


def _solve(game: BNPGGame, actions: Mapping[int, int], counts: Mapping[int, int]) -> Profile | None:
    parent, order, roots = _rooted_forest(game)
    children: list[list[int]] = [[] for _ in range(game.n)]
    for v in order:
        if parent[v] >= 0:
            children[parent[v]].append(v)
    tables: dict[int, dict] = {}
    index: dict[int, dict] = {}
    for v in reversed(order):
        kids = sorted(children[v])
        table = _node_table(game, v, parent[v], kids, index, actions.get(v), counts.get(v))
        tables[v] = table
        idx: dict[tuple[int, int, int], list[int]] = {}
        for xu, nu, xv, nv in sorted(table):
            idx.setdefault((xu, nu, xv), []).append(nv)
        index[v] = idx
        for w in kids:
            del index[w]  # only the parent ever reads a child's index

    profile = [0] * game.n
    for r in roots:
        if not tables[r]:
            return None
        stack = [(r, min(tables[r]))]
        while stack:
            v, key = stack.pop()
            assert key in tables[v], f"back-pointer to a missing configuration at node {v}"
            _, _, xv, nv = key
            profile[v] = xv
            for w, xw, nw in tables[v][key]:
                stack.append((w, (xv, nv, xw, nw)))
    result = tuple(profile)
    realized = invest_counts(game, result)
    assert all(realized[v] == n for v, n in counts.items()), "witness violates a prescribed count"
    assert all(result[v] == x for v, x in actions.items()), "witness violates a prescribed action"
    assert verify_psne(game, result), "tree witness is not an equilibrium"
    return result


def solve_tree_psne(game: BNPGGame) -> Profile | None:
    """A PSNE of a game on a forest, or None if none exists."""
    return _solve(game, {}, {})


def solve_tree_psne_constrained(game: BNPGGame, actions: Mapping[int, int],
                                counts: Mapping[int, int] | None = None) -> Profile | None:
    """A PSNE with prescribed actions and investing-neighbour counts on some players.

    ``actions`` fixes x_v and ``counts`` fixes n_v; a player may appear in
    either mapping or both.
    """
    counts = dict(counts or {})
    for v, n_v in counts.items():
        if not 0 <= n_v <= game.graph.degree(v):
            return None
    return _solve(game, dict(actions), counts)
