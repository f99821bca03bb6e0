"""Seeded random instances for tests, benchmarks and the ``gen`` command.

A spec string looks like ``"tree,n=8,seed=1"``: the kind first, then
``key=value`` parameters.  The same spec always yields the same document.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .anm import INF, ANMInstance
from .game import BNPGGame
from .io import InstanceDocument
from .knapsack import KnapsackInstance
from .reductions import SatInstance, validate_sat
from .structured import solve_bounded_circuit_rank_psne

GENERATOR_KINDS = ("tree", "clique", "circuit-rank", "sat", "knapsack", "anm")
MAX_PLAYERS = 5000


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        kind, *rest = [part.strip() for part in text.split(",") if part.strip()]
        values = {}
        for part in rest:
            key, sep, value = part.partition("=")
            if not sep:
                raise ValueError(f"generator parameter {part!r} is not key=value")
            values[key.strip()] = value.strip()
        if "n" not in values:
            raise ValueError("generator spec needs n=<size>")
        n = int(values.pop("n"))
        seed = int(values.pop("seed", 0))
        return cls(kind, n, seed, values)

    def __str__(self) -> str:
        extra = "".join(f",{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind},n={self.n},seed={self.seed}{extra}"


def _tables(rng: random.Random, degrees, top: int = 6) -> list[list[int]]:
    """Non-decreasing tables in 0..top whose growth sits in one or two jumps at small counts.

    Step-shaped marginals make best responses flip between neighbours, so a
    useful fraction of games has no PSNE at all.
    """
    out = []
    for d in degrees:
        inc = [0] * (d + 1)
        for _ in range(rng.randint(1, 2)):
            inc[rng.randint(0, min(d, 2))] += rng.randint(1, 3)
        table = [rng.randint(0, 1)]
        for x in inc:
            table.append(min(top, table[-1] + x))
        out.append(table)
    return out


def _cost(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 5), rng.choice([1, 2]))


def _weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, 2), 4)


def random_tree_edges(rng: random.Random, n: int, max_degree: int | None = None) -> list[tuple[int, int]]:
    if max_degree is not None and max_degree < 2 and n > 2:
        raise ValueError("a tree on more than two nodes needs max_degree >= 2")
    labels = list(range(n))
    rng.shuffle(labels)
    degree = [0] * n
    edges = []
    for v in range(1, n):
        while True:
            u = rng.randrange(v)
            if max_degree is None or degree[u] < max_degree:
                break
        degree[u] += 1
        degree[v] += 1
        edges.append((labels[u], labels[v]))
    return edges


def random_altruism(rng: random.Random, n: int, edges, p: float = 0.5) -> list[tuple[int, int]]:
    arcs = []
    for u, v in edges:
        for arc in ((u, v), (v, u)):
            if rng.random() < p:
                arcs.append(arc)
    return arcs


def _game_on(rng: random.Random, n: int, edges, p_alt: float = 0.5) -> BNPGGame:
    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    return BNPGGame.create(n, edges, _tables(rng, degree), [_cost(rng) for _ in range(n)], _weight(rng),
                           random_altruism(rng, n, edges, p_alt))


def random_tree_game(rng: random.Random, n: int, max_degree: int | None = None) -> BNPGGame:
    return _game_on(rng, n, random_tree_edges(rng, n, max_degree))


def random_clique_game(rng: random.Random, n: int) -> BNPGGame:
    return _game_on(rng, n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def random_rank_edges(rng: random.Random, n: int, rank: int) -> list[tuple[int, int]]:
    if rank > n * (n - 1) // 2 - (n - 1):
        raise ValueError(f"a simple graph on {n} nodes cannot have circuit rank {rank}")
    edges = {tuple(sorted(e)) for e in random_tree_edges(rng, n)}
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    edges |= set(rng.sample(missing, rank))
    return sorted(edges)


def random_rank_game(rng: random.Random, n: int, rank: int) -> BNPGGame:
    return _game_on(rng, n, random_rank_edges(rng, n, rank))


def random_sat(rng: random.Random, n: int) -> SatInstance:
    """Uniform-ish (3,B2) formula: every literal twice, three distinct literals per clause."""
    if (4 * n) % 3:
        raise ValueError(f"(3,B2) formulas need 4n divisible by 3; n={n} is not")
    pool = [lit for i in range(1, n + 1) for lit in (i, i, -i, -i)]
    for _ in range(10_000):
        rng.shuffle(pool)
        clauses = tuple(tuple(pool[k:k + 3]) for k in range(0, len(pool), 3))
        sat = SatInstance(n, clauses)
        if not validate_sat(sat):
            return sat
    raise RuntimeError("could not draw a (3,B2) formula")


def random_knapsack(rng: random.Random, n: int) -> KnapsackInstance:
    items = tuple((rng.randint(1, 10), rng.randint(1, 10)) for _ in range(n))
    total_p = sum(p for p, _ in items)
    total_w = sum(w for _, w in items)
    return KnapsackInstance(items, threshold=rng.randint(1, total_p), capacity=rng.randint(0, total_w))


def random_anm(rng: random.Random, n: int, base: str = "tree", max_edits: int = 20,
               max_cost: int = 20, budget=None, planted: float = 0.75) -> ANMInstance:
    """Directed-altruism ANM with integer costs and at most ``max_edits`` candidate edits.

    With probability ``planted`` the target is a PSNE of a hidden altruism
    network, and the initial network is that network with some arcs flipped;
    the flips are always among the candidate edits, so enough budget repairs it.
    """
    if base == "tree":
        edges = random_tree_edges(rng, n)
    elif base == "graph":
        edges = random_rank_edges(rng, n, min(rng.randint(1, 3), (n - 1) * (n - 2) // 2))
    else:
        raise ValueError(f"unknown ANM base {base!r}")
    hidden = _game_on(rng, n, edges, p_alt=0.4)
    arcs = sorted(a for u, v in edges for a in ((u, v), (v, u)))
    target = None
    if rng.random() < planted:
        target = solve_bounded_circuit_rank_psne(hidden, max_rank=3)
    if target is None:
        target = tuple(rng.randint(0, 1) for _ in range(n))
    final = set(hidden.altruism.edges)
    flips = {a for a in arcs if rng.random() < 0.3}
    start = final ^ flips
    needed = sorted(flips)[:max_edits]
    rng.shuffle(needed)
    others = [a for a in arcs if a not in flips]
    rng.shuffle(others)
    chosen = needed + others[: rng.randint(0, max(0, max_edits - len(needed)))]
    adds = {a: rng.randint(0, max_cost) for a in chosen if a not in start}
    dels = {a: rng.randint(0, max_cost) for a in chosen if a in start}
    if budget is None:
        budget = INF if rng.random() < 0.25 else rng.randint(0, 3 * max_cost)
    return ANMInstance(hidden.with_altruism(start), target, adds, dels, budget)


def generate_instance(spec) -> InstanceDocument:
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    if not 1 <= spec.n <= MAX_PLAYERS:
        raise ValueError(f"n={spec.n} is outside the generator range 1..{MAX_PLAYERS}")
    rng = random.Random(spec.seed)
    p = spec.params
    if spec.kind == "tree":
        max_degree = int(p["max_degree"]) if "max_degree" in p else None
        doc = InstanceDocument("game", random_tree_game(rng, spec.n, max_degree))
    elif spec.kind == "clique":
        doc = InstanceDocument("game", random_clique_game(rng, spec.n))
    elif spec.kind == "circuit-rank":
        doc = InstanceDocument("game", random_rank_game(rng, spec.n, int(p.get("d", 1))))
    elif spec.kind == "sat":
        doc = InstanceDocument("sat", random_sat(rng, spec.n))
    elif spec.kind == "knapsack":
        doc = InstanceDocument("knapsack", random_knapsack(rng, spec.n))
    elif spec.kind == "anm":
        doc = InstanceDocument("anm", random_anm(rng, spec.n, p.get("base", "tree")))
    else:
        raise ValueError(f"unknown generator kind {spec.kind!r}; expected one of {', '.join(GENERATOR_KINDS)}")
    doc.metadata = {"generator": str(spec), "seed": spec.seed}
    return doc
