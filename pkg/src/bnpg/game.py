"""Exact BNPG games with altruism: utilities, stability and equilibrium checks.

All numbers are :class:`fractions.Fraction`.  Stability is the weak
inequality, so a player that is indifferent between investing and not
investing is stable at either action.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import TableRangeError

Edge = tuple[int, int]
Profile = tuple[int, ...]


def as_rational(value) -> Fraction:
    """Convert ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected on purpose: a float tie such as ``0.1 + 0.2 == 0.3``
    would silently flip a weak-inequality verdict.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def _undirected(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class InputGraph:
    """Simple undirected graph on players ``0..n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a game needs at least one player")
        raw = list(self.edges)
        normalized = set()
        for u, v in raw:
            if u == v:
                raise ValueError(f"self-loop on player {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            normalized.add(_undirected(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _undirected(u, v) in self.edges

    @property
    def max_degree(self) -> int:
        return max(len(a) for a in self._adj)


@dataclass(frozen=True)
class AltruismNetwork:
    """Directed (asymmetric) or undirected (symmetric) altruism edges.

    ``out_neighbors(v)`` is the set N_v whose welfare player ``v`` weighs.
    """

    directed: bool = True
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"altruism self-loop on player {u}")
            norm.add((u, v) if self.directed else _undirected(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        out: dict[int, list[int]] = {}
        for u, v in norm:
            out.setdefault(u, []).append(v)
            if not self.directed:
                out.setdefault(v, []).append(u)
        object.__setattr__(self, "_out", {k: tuple(sorted(vs)) for k, vs in out.items()})

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out.get(v, ())

    def normalize(self, u: int, v: int) -> Edge:
        return (u, v) if self.directed else _undirected(u, v)

    def __contains__(self, edge) -> bool:
        return self.normalize(*edge) in self.edges


@dataclass(frozen=True)
class BNPGGame:
    graph: InputGraph
    altruism: AltruismNetwork
    g: tuple
    c: tuple
    a: Fraction

    def __post_init__(self):
        g = tuple(tuple(as_rational(x) for x in table) for table in self.g)
        c = tuple(as_rational(x) for x in self.c)
        if len(g) != self.n or len(c) != self.n:
            raise ValueError(f"expected {self.n} externality tables and costs, got {len(g)} and {len(c)}")
        for u, v in self.altruism.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"altruism edge ({u}, {v}) has an endpoint outside [0, {self.n})")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "_dg", tuple(tuple(t[i + 1] - t[i] for i in range(len(t) - 1)) for t in g))

    @classmethod
    def create(cls, n: int, edges: Iterable[Edge], g: Sequence[Sequence], c: Sequence, a=0,
               altruism: Iterable[Edge] = (), directed: bool = True) -> "BNPGGame":
        return cls(InputGraph(n, frozenset(map(tuple, edges))),
                   AltruismNetwork(directed, frozenset(map(tuple, altruism))), tuple(g), tuple(c), a)

    @property
    def n(self) -> int:
        return self.graph.n

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.altruism.out_neighbors(v)

    def dg(self, v: int, x: int) -> Fraction:
        """Marginal gain of player ``v``'s externality at count ``x``."""
        table = self._dg[v]
        if not 0 <= x < len(table):
            raise TableRangeError(f"marginal of g_{v} at {x} is outside its table (length {len(self.g[v])})")
        return table[x]

    def ext(self, v: int, x: int) -> Fraction:
        table = self.g[v]
        if not 0 <= x < len(table):
            raise TableRangeError(f"g_{v}({x}) is outside its table (length {len(table)})")
        return table[x]

    def with_altruism(self, edges: Iterable[Edge]) -> "BNPGGame":
        return replace(self, altruism=AltruismNetwork(self.altruism.directed, frozenset(edges)))

    @property
    def fully_homogeneous(self) -> bool:
        return len(set(self.g)) == 1 and len(set(self.c)) == 1


def marginal(table: Sequence, x: int) -> Fraction:
    if not 0 <= x < len(table) - 1:
        raise TableRangeError(f"marginal at {x} outside a table of length {len(table)}")
    return as_rational(table[x + 1]) - as_rational(table[x])


def _check_profile(game: BNPGGame, profile: Sequence[int]) -> None:
    if len(profile) != game.n:
        raise ValueError(f"profile has length {len(profile)}, game has {game.n} players")
    if any(x not in (0, 1) for x in profile):
        raise ValueError("profile entries must be 0 or 1")


def invest_counts(game: BNPGGame, profile: Sequence[int]) -> list[int]:
    """n_v for every player: investing input-graph neighbours, never v itself."""
    return [sum(profile[u] for u in game.graph.neighbors(v)) for v in range(game.n)]


def utility(game: BNPGGame, profile: Sequence[int], v: int) -> Fraction:
    _check_profile(game, profile)
    counts = invest_counts(game, profile)
    total = game.ext(v, profile[v] + counts[v])
    total += game.a * sum((game.ext(u, profile[u] + counts[u]) for u in game.out_neighbors(v)), Fraction(0))
    return total - game.c[v] * profile[v]


def deviation_gain(game: BNPGGame, profile: Sequence[int], v: int, counts: Sequence[int] | None = None) -> Fraction:
    """How much ``v`` loses by flipping its action; non-negative iff stable."""
    if counts is None:
        counts = invest_counts(game, profile)
    # Investing raises u's count by one for every u in N_v, so the altruistic
    # term compares u's externality at x_u+n_u with one below (x_v=1) or above.
    shift = -1 if profile[v] else 0
    gain = game.dg(v, counts[v])
    for u in game.out_neighbors(v):
        gain += game.a * game.dg(u, profile[u] + counts[u] + shift)
    return gain - game.c[v] if profile[v] else game.c[v] - gain


def is_stable(game: BNPGGame, profile: Sequence[int], v: int, counts: Sequence[int] | None = None) -> bool:
    return deviation_gain(game, profile, v, counts) >= 0


@dataclass(frozen=True)
class PsneVerdict:
    is_psne: bool
    deviator: int | None = None

    def __bool__(self) -> bool:
        return self.is_psne


def verify_psne(game: BNPGGame, profile: Sequence[int]) -> PsneVerdict:
    _check_profile(game, profile)
    counts = invest_counts(game, profile)
    for v in range(game.n):
        if not is_stable(game, profile, v, counts):
            return PsneVerdict(False, v)
    return PsneVerdict(True)


def poisson_binomial_pmf(probabilities: Iterable[Fraction]) -> list[Fraction]:
    """Exact pmf of a sum of independent Bernoulli variables."""
    pmf = [Fraction(1)]
    for p in probabilities:
        nxt = [Fraction(0)] * (len(pmf) + 1)
        for k, mass in enumerate(pmf):
            if mass:
                nxt[k] += mass * (1 - p)
                nxt[k + 1] += mass * p
        pmf = nxt
    return pmf


def _expect(game: BNPGGame, w: int, pmf: Sequence[Fraction], offset: int) -> Fraction:
    return sum((mass * game.ext(w, k + offset) for k, mass in enumerate(pmf) if mass), Fraction(0))


def _check_mixed(game: BNPGGame, mixed: Sequence) -> tuple[Fraction, ...]:
    if len(mixed) != game.n:
        raise ValueError(f"mixed profile has length {len(mixed)}, game has {game.n} players")
    probs = tuple(as_rational(q) for q in mixed)
    if any(not 0 <= q <= 1 for q in probs):
        raise ValueError("investment probabilities must lie in [0, 1]")
    return probs


def expected_utility(game: BNPGGame, mixed: Sequence, v: int, action: int) -> Fraction:
    """E[U_v(action, x_-v)] when every other player invests independently."""
    probs = _check_mixed(game, mixed)
    own = poisson_binomial_pmf(probs[u] for u in game.graph.neighbors(v))
    total = _expect(game, v, own, action)
    for u in game.out_neighbors(v):
        # x_u + n_u: u's own coin plus its neighbours other than v, then v's fixed action.
        others = [probs[u]] + [probs[w] for w in game.graph.neighbors(u) if w != v]
        total += game.a * _expect(game, u, poisson_binomial_pmf(others), action)
    return total - game.c[v] * action


def support(q: Fraction) -> tuple[int, ...]:
    return tuple(x for x, mass in ((0, 1 - q), (1, q)) if mass > 0)


@dataclass(frozen=True)
class EpsVerdict:
    is_eps_ne: bool
    # (player, supported action, better alternative)
    witness: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_eps_ne


def verify_eps_ne(game: BNPGGame, mixed: Sequence, eps=0) -> EpsVerdict:
    eps = as_rational(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    probs = _check_mixed(game, mixed)
    for v in range(game.n):
        values = (expected_utility(game, probs, v, 0), expected_utility(game, probs, v, 1))
        for x, alt in product(support(probs[v]), (0, 1)):
            if values[x] < values[alt] - eps:
                return EpsVerdict(False, (v, x, alt))
    return EpsVerdict(True)


def validate_game(game: BNPGGame) -> list[str]:
    problems = []
    if game.a < 0:
        problems.append(f"altruism weight a={game.a} is negative")
    for v in range(game.n):
        table = game.g[v]
        need = game.graph.degree(v) + 2
        if len(table) < need:
            problems.append(f"g_{v} has {len(table)} entries, needs at least {need} (degree {need - 2} + 2)")
        if any(x < 0 for x in table):
            problems.append(f"g_{v} has a negative value")
        drops = [i for i in range(len(table) - 1) if table[i + 1] < table[i]]
        if drops:
            problems.append(f"g_{v} decreases at index {drops[0]}")
        if game.c[v] < 0:
            problems.append(f"c_{v}={game.c[v]} is negative")
    for u, v in sorted(game.altruism.edges):
        if not game.graph.has_edge(u, v):
            problems.append(f"altruism edge ({u}, {v}) joins players that are not adjacent in the input graph")
    return problems
