"""Gadget constructions mapping classic hard problems onto BNPG / ANM instances.

Layouts are fixed so that certificates can be read off by index:

* homogenization keeps the original players as hubs ``0..n-1`` and appends
  padding leaves, so edit sets carry over edge for edge;
* knapsack gadgets use ``i`` for item nodes, ``n + i`` for their partners and
  ``2n`` for the hub;
* SAT gadgets use ``i`` for z_i, ``n + i`` for the negated literal node,
  ``2n + i`` for the bridge b_i and ``3n + j`` for clause j;
* the directed public goods translation uses ``u`` for u_in and ``n + u`` for u_out.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .anm import INF, ANMInstance, EditSet
from .errors import NotApplicableError
from .game import BNPGGame, as_rational
from .knapsack import KnapsackInstance


# ------------------------------------------------------------------ SAT

@dataclass(frozen=True)
class SatInstance:
    """CNF over variables ``1..n``; literal ``+i`` is x_i and ``-i`` its negation."""

    n: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(l) for l in c) for c in self.clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrences(self, literal: int) -> list[int]:
        """Clauses containing ``literal``, by ascending clause index."""
        return [j for j, clause in enumerate(self.clauses) if literal in clause]

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in clause) for clause in self.clauses)


def validate_sat(sat: SatInstance, strict: bool = True) -> list[str]:
    """Problems with the (3,B2) shape: every literal in exactly two clauses.

    ``strict=False`` also admits clauses of width two, which is the smallest
    relaxation that has unsatisfiable members at desk scale.
    """
    problems = []
    widths = (3,) if strict else (2, 3)
    for j, clause in enumerate(sat.clauses):
        if len(clause) not in widths:
            problems.append(f"clause {j} has {len(clause)} literals, expected {' or '.join(map(str, widths))}")
        if len(set(clause)) != len(clause):
            problems.append(f"clause {j} repeats a literal")
        if any(l == 0 or abs(l) > sat.n for l in clause):
            problems.append(f"clause {j} mentions a variable outside 1..{sat.n}")
    counts = Counter(l for clause in sat.clauses for l in clause)
    for i in range(1, sat.n + 1):
        for lit in (i, -i):
            if counts[lit] != 2:
                problems.append(f"literal {lit} occurs {counts[lit]} times, expected 2")
    return problems


def _require_sat(sat: SatInstance, strict: bool) -> None:
    problems = validate_sat(sat, strict)
    if problems:
        raise ValueError("; ".join(problems))


def sat_node(sat: SatInstance, literal: int) -> int:
    return literal - 1 if literal > 0 else sat.n - literal - 1


def sat_to_anm(sat: SatInstance, variant: str = "all-invest", strict: bool = True) -> ANMInstance:
    """Degree-3 symmetric-altruism ANM instance that is solvable iff ``sat`` is satisfiable.

    ``all-invest`` targets everyone investing under a tight budget;
    ``arbitrary-target`` has literal nodes abstaining and free edits.
    """
    _require_sat(sat, strict)
    n, m = sat.n, sat.m
    size = 3 * n + m
    clause_edges = [(sat_node(sat, l), 3 * n + j) for j, clause in enumerate(sat.clauses) for l in clause]
    bridge_edges = [(i, 2 * n + i) for i in range(n)] + [(n + i, 2 * n + i) for i in range(n)]
    edges = clause_edges + bridge_edges
    if variant == "all-invest":
        slopes = [200] * (2 * n) + [240] * n + [220] * m
        cost, a = 315, Fraction(1, 2)
        target = (1,) * size
        bridge_cost = 2 * n + 1
        add = {e: 1 for e in clause_edges} | {e: bridge_cost for e in bridge_edges}
        budget = n * (2 + bridge_cost)
    elif variant == "arbitrary-target":
        slopes = [10] * (2 * n) + [2] * n + [1] * m
        cost, a = 15, 2
        target = (0,) * (2 * n) + (1,) * (n + m)
        add = {e: 0 for e in edges}
        budget = INF
    else:
        raise ValueError(f"unknown SAT gadget variant {variant!r}")
    degree = Counter(v for e in edges for v in e)
    assert max(degree.values()) <= 3, "SAT gadget must have maximum degree 3"
    g = [[slopes[v] * x for x in range(degree[v] + 2)] for v in range(size)]
    game = BNPGGame.create(size, edges, g, [cost] * size, a, (), directed=False)
    return ANMInstance(game, target, add, {}, budget)


def assignment_to_edits(sat: SatInstance, anm: ANMInstance, assignment: Sequence[bool]) -> EditSet:
    """Edges a satisfying assignment buys: true literals befriend their clauses, false ones their bridge."""
    edits = []
    for i in range(sat.n):
        for lit in (i + 1, -(i + 1)):
            node = sat_node(sat, lit)
            if assignment[i] == (lit > 0):
                edits += [("add", (node, 3 * sat.n + j)) for j in sat.occurrences(lit)]
            else:
                edits.append(("add", (node, 2 * sat.n + i)))
    return EditSet.from_edits(anm, [(k, anm.game.altruism.normalize(*e)) for k, e in edits])


# ------------------------------------------------------------- knapsack

def knapsack_to_anm(ks: KnapsackInstance, symmetric: bool = False) -> ANMInstance:
    """Tree instance where buying hub edges of weight <= W must collect profit >= P."""
    if ks.threshold is None or ks.capacity is None:
        raise ValueError("the reduction needs a decision knapsack with both P and W")
    n = len(ks.items)
    P = ks.threshold
    hub = 2 * n
    edges = [(i, n + i) for i in range(n)] + [(i, hub) for i in range(n)]
    g = [[p * x for x in range(4)] for p in ks.profits]
    g += [[P * x for x in range(3)] for _ in range(n)]
    g += [[0] * (n + 2)]
    game = BNPGGame.create(2 * n + 1, edges, g, [P] * (2 * n + 1), 1, (), directed=not symmetric)
    if symmetric:
        add = {(i, hub): w for i, w in enumerate(ks.weights)} | {(i, n + i): 0 for i in range(n)}
    else:
        add = {}
        for i, w in enumerate(ks.weights):
            add[(hub, i)] = w
            add[(i, hub)] = 0
            add[(i, n + i)] = 0
            add[(n + i, i)] = 0
    return ANMInstance(game, (1,) * (2 * n + 1), add, {}, ks.capacity)


# ---------------------------------------------------------- homogenizing

@dataclass(frozen=True)
class Homogenized:
    anm: ANMInstance
    forward: Callable[[EditSet], EditSet]
    backward: Callable[[EditSet], EditSet]


def _uniform_cost(anm: ANMInstance) -> Fraction:
    costs = set(anm.game.c)
    if len(costs) != 1:
        raise NotApplicableError("homogenization needs every player to share one investment cost")
    return costs.pop()


def _stitched_table(c: Fraction, length: int, block: int, marginal: Callable[[int, int], Fraction]) -> list[Fraction]:
    """g(x) = c*x up to 2, then marginals copied from block f(x-1) at offset h(x-1)."""
    g = [c * x for x in range(min(3, length))]
    for x in range(3, length):
        y = x - 1
        f = 1 + (y - 2) // block
        h = y - (2 + block * (f - 1))
        g.append(g[-1] + marginal(f, h))
    return g


def _padded_marginal(table: Sequence[Fraction], h: int) -> Fraction:
    # Beyond the original table the count is unreachable; any non-negative value works.
    return table[h + 1] - table[h] if h + 1 < len(table) else Fraction(0)


def _homogeneous_instance(anm: ANMInstance, pad: list[int], block: int,
                          marginal: Callable[[int, int], Fraction]) -> Homogenized:
    game = anm.game
    c = _uniform_cost(anm)
    n = game.n
    edges = list(game.graph.edges)
    leaves: list[tuple[int, int]] = []
    nxt = n
    for i in range(n):
        for _ in range(pad[i]):
            leaves.append((i, nxt))
            nxt += 1
    edges += leaves
    size = nxt
    degree = Counter(v for e in edges for v in e)
    length = max(degree.values(), default=0) + 2
    g = _stitched_table(c, length, block, marginal)
    directed = game.altruism.directed
    out = BNPGGame.create(size, edges, [g] * size, [c] * size, game.a, game.altruism.edges, directed)
    add = dict(anm.add_cost)
    if anm.budget != INF:
        penalty = anm.budget + 1
        for hub, leaf in leaves:
            add[out.altruism.normalize(hub, leaf)] = penalty
            if directed:
                add[(leaf, hub)] = penalty
    target = tuple(anm.target) + (1,) * (size - n)
    result = ANMInstance(out, target, add, dict(anm.delete_cost), anm.budget)

    def forward(edits: EditSet) -> EditSet:
        return EditSet.from_edits(result, [("add", e) for e in sorted(edits.additions)]
                                  + [("delete", e) for e in sorted(edits.deletions)])

    def backward(edits: EditSet) -> EditSet:
        hubs = [e for e in sorted(edits.additions) if max(e) < n]
        return EditSet.from_edits(anm, [("add", e) for e in hubs]
                                  + [("delete", e) for e in sorted(edits.deletions)])

    return Homogenized(result, forward, backward)


def homogenize(anm: ANMInstance) -> Homogenized:
    """Fully homogeneous equivalent: hub i gets 2 + n(i-1) always-investing leaves (1-based i)."""
    game = anm.game
    n = game.n
    pad = [2 + n * i for i in range(n)]
    return _homogeneous_instance(anm, pad, n, lambda f, h: _padded_marginal(game.g[f - 1], h))


def externality_classes(game: BNPGGame, limit: int = 5) -> tuple[list[int], list[tuple]]:
    """Group players by externality function, in order of first appearance.

    Tables of different lengths belong to one class when they agree on their
    common prefix (up to ``limit`` entries, enough for degree-3 graphs).
    """
    reps: list[tuple] = []
    labels = []
    for v in range(game.n):
        table = game.g[v][:limit]
        for k, rep in enumerate(reps):
            common = min(len(rep), len(table))
            if rep[:common] == table[:common]:
                if len(table) > len(rep):
                    reps[k] = table
                labels.append(k)
                break
        else:
            reps.append(table)
            labels.append(len(reps) - 1)
    return labels, reps


def homogenize_bounded_degree(anm: ANMInstance) -> Homogenized:
    """Homogenization of a degree-3 game with three externality types, keeping degree <= 13.

    Each hub of type p (1-based) gets its own 2 + 4(p-1) padding leaves.
    """
    game = anm.game
    if game.n and game.graph.max_degree > 3:
        raise NotApplicableError("bounded-degree homogenization needs maximum degree 3")
    labels, reps = externality_classes(game)
    if len(reps) > 3:
        raise NotApplicableError(f"bounded-degree homogenization needs at most 3 externality types, found {len(reps)}")
    pad = [2 + 4 * labels[i] for i in range(game.n)]
    result = _homogeneous_instance(anm, pad, 4, lambda f, h: _padded_marginal(reps[f - 1], h))
    assert result.anm.game.graph.max_degree <= 13
    return result


# ------------------------------------------------- directed public goods

@dataclass(frozen=True)
class DirectedPGG:
    """Players invest at price p; each enjoys 1 if it or an in-neighbour invests."""

    n: int
    arcs: tuple
    price: Fraction

    def __post_init__(self):
        arcs = tuple(sorted({(int(u), int(v)) for u, v in self.arcs}))
        for u, v in arcs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"bad arc ({u}, {v})")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "price", as_rational(self.price))


def dpgg_to_bnpg(dg: DirectedPGG, eps) -> BNPGGame:
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = dg.n
    edges = [(u, n + u) for u in range(n)] + [(n + u, v) for u, v in dg.arcs]
    degree = Counter(x for e in edges for x in e)
    g = [[0] + [1] * (degree[u] + 1) for u in range(n)]
    g += [[0] * (degree[n + u] + 2) for u in range(n)]
    c = [1 + 2 * eps] * n + [dg.price] * n
    return BNPGGame.create(2 * n, edges, g, c, 1, [(u, n + u) for u in range(n)], directed=False)


def map_mixed_back(mixed: Sequence, dg: DirectedPGG) -> tuple[Fraction, ...]:
    """Project a profile of the constructed game onto the u_out players."""
    probs = [as_rational(q) for q in mixed]
    if len(probs) != 2 * dg.n:
        raise ValueError(f"expected {2 * dg.n} probabilities, got {len(probs)}")
    for u in range(dg.n):
        if probs[u] != 0:
            raise ValueError(f"u_in of player {u} invests with probability {probs[u]}; not an equilibrium image")
    return tuple(probs[dg.n:])
