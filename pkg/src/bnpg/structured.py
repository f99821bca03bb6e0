"""PSNE on complete graphs and on graphs of bounded circuit rank."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import GuardError, NotApplicableError
from .game import BNPGGame, InputGraph, Profile, verify_psne
from .tree import solve_tree_psne, solve_tree_psne_constrained


def components(graph: InputGraph) -> list[list[int]]:
    seen = [False] * graph.n
    out = []
    for r in range(graph.n):
        if seen[r]:
            continue
        seen[r] = True
        comp, queue = [], deque([r])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in graph.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(sorted(comp))
    return out


def circuit_rank(graph: InputGraph) -> int:
    return len(graph.edges) - graph.n + len(components(graph))


def is_complete(graph: InputGraph) -> bool:
    return len(graph.edges) == graph.n * (graph.n - 1) // 2


# ---------------------------------------------------------------- cliques

@dataclass(frozen=True)
class StabilitySets:
    """Players content to invest (R1) or abstain (R0) when exactly k players invest."""

    k: int
    R1: frozenset
    R0: frozenset


def stability_sets(game: BNPGGame, k: int) -> StabilitySets:
    a = game.a
    r1, r0 = set(), set()
    for v in range(game.n):
        alt = game.out_neighbors(v)
        if k >= 1 and game.dg(v, k - 1) + a * sum((game.dg(u, k - 1) for u in alt), Fraction(0)) >= game.c[v]:
            r1.add(v)
        if k < game.n and game.dg(v, k) + a * sum((game.dg(u, k) for u in alt), Fraction(0)) <= game.c[v]:
            r0.add(v)
    return StabilitySets(k, frozenset(r1), frozenset(r0))


def solve_clique_psne(game: BNPGGame) -> Profile | None:
    n = game.n
    if not is_complete(game.graph):
        raise NotApplicableError("the input graph is not complete")
    short = [v for v in range(n) if len(game.g[v]) < n + 1]
    if short:
        raise NotApplicableError(f"g_{short[0]} must cover counts 0..{n} on an {n}-clique")
    for boundary in ((0,) * n, (1,) * n):
        if verify_psne(game, boundary):
            return boundary
    everyone = frozenset(range(n))
    for k in range(1, n):
        sets = stability_sets(game, k)
        outside = everyone - sets.R1
        if len(sets.R1) < k or len(sets.R0) < n - k or len(sets.R0 - sets.R1) != len(outside):
            continue
        extra = sorted(sets.R1 & sets.R0)[: n - k - len(outside)]
        zeros = outside | set(extra)
        witness = tuple(0 if v in zeros else 1 for v in range(n))
        assert verify_psne(game, witness), f"clique witness for k={k} is not an equilibrium"
        return witness
    return None


# ---------------------------------------------------------- circuit rank

def _subgame(game: BNPGGame, nodes: list[int]) -> BNPGGame:
    pos = {v: i for i, v in enumerate(nodes)}
    edges = [(pos[u], pos[v]) for u, v in game.graph.edges if u in pos]
    alt = [(pos[u], pos[v]) for u, v in game.altruism.edges if u in pos]
    return BNPGGame.create(len(nodes), edges, [game.g[v] for v in nodes], [game.c[v] for v in nodes],
                           game.a, alt, game.altruism.directed)


def _bfs_tree(graph: InputGraph) -> set[tuple[int, int]]:
    tree, seen, queue = set(), {0}, deque([0])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w not in seen:
                seen.add(w)
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    return tree


def _solve_connected(game: BNPGGame) -> Profile | None:
    if circuit_rank(game.graph) == 0:
        return solve_tree_psne(game)
    n, a = game.n, game.a
    tree = _bfs_tree(game.graph)
    extra = sorted(game.graph.edges - tree)
    ports = sorted({v for e in extra for v in e})
    arcs = [(v, u) for v in range(n) for u in game.out_neighbors(v)]
    tree_arcs = [(v, u) for v, u in arcs if (min(u, v), max(u, v)) in tree]
    cross_arcs = [(v, u) for v, u in arcs if (min(u, v), max(u, v)) not in tree]
    assert all(v in ports and u in ports for v, u in cross_arcs)
    # Only heads of non-tree altruism arcs need their full count prescribed.
    heads = sorted({u for _, u in cross_arcs})
    tree_deg = [0] * n
    for u, v in tree:
        tree_deg[u] += 1
        tree_deg[v] += 1

    for bits in product((0, 1), repeat=len(ports)):
        t = dict(zip(ports, bits))
        extra_count = [0] * n
        for u, v in extra:
            extra_count[u] += t[v]
            extra_count[v] += t[u]
        g = [game.g[v][extra_count[v]:] if v in t else game.g[v] for v in range(n)]
        ranges = [range(extra_count[u], extra_count[u] + tree_deg[u] + 1) for u in heads]
        for counts in product(*ranges):
            full = dict(zip(heads, counts))
            c = list(game.c)
            for v, u in cross_arcs:
                shift = -1 if t[v] else 0
                c[v] -= a * game.dg(u, t[u] + full[u] + shift)
            derived = BNPGGame.create(n, tree, g, c, a, tree_arcs, directed=True)
            witness = solve_tree_psne_constrained(
                derived, t, {u: full[u] - extra_count[u] for u in heads})
            if witness is not None:
                assert verify_psne(game, witness), "tree witness does not lift to the original game"
                return witness
    return None


def solve_bounded_circuit_rank_psne(game: BNPGGame, max_rank: int = 3) -> Profile | None:
    """A PSNE via spanning-tree enumeration, exponential only in the circuit rank."""
    rank = circuit_rank(game.graph)
    if rank > max_rank:
        raise GuardError(f"circuit rank {rank} exceeds the configured bound {max_rank}")
    profile = [0] * game.n
    for comp in components(game.graph):
        witness = _solve_connected(_subgame(game, comp))
        if witness is None:
            return None
        for v, x in zip(comp, witness):
            profile[v] = x
    result = tuple(profile)
    assert verify_psne(game, result)
    return result
