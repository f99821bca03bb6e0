"""JSON instance documents with exact rationals.

A document is ``{"kind": ..., "metadata": {...}, "body": {...}}``.  Rationals
are bare integers or ``"p/q"`` strings; floats are refused so that no value
is ever rounded.  Serialization is canonical (sorted keys, sorted edge
lists, reduced fractions), so ``serialize(parse(text))`` is byte-stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .anm import INF, ANMInstance, EditSet, validate_anm
from .errors import DocumentSyntaxError, InvariantError, SchemaError
from .game import BNPGGame, validate_game
from .knapsack import KnapsackInstance
from .reductions import DirectedPGG, SatInstance

KINDS = ("game", "anm", "knapsack", "sat", "dpgg", "profile", "mixed", "editset")

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


@dataclass
class InstanceDocument:
    kind: str
    body: Any
    metadata: dict = field(default_factory=dict)


# ---------------------------------------------------------------- reading

class _Reader:
    def __init__(self, path: str):
        self.path = path

    def at(self, key) -> "_Reader":
        return _Reader(f"{self.path}[{key}]" if isinstance(key, int) else f"{self.path}.{key}")

    def fail(self, message: str):
        raise SchemaError(f"{self.path}: {message}")

    def obj(self, value, required: tuple = (), optional: tuple = ()) -> dict:
        if not isinstance(value, dict):
            self.fail("expected an object")
        missing = [k for k in required if k not in value]
        if missing:
            self.fail(f"missing key {missing[0]!r}")
        extra = sorted(set(value) - set(required) - set(optional))
        if extra:
            self.fail(f"unexpected key {extra[0]!r}")
        return value

    def lst(self, value, length: int | None = None) -> list:
        if not isinstance(value, list):
            self.fail("expected a list")
        if length is not None and len(value) != length:
            self.fail(f"expected {length} entries, got {len(value)}")
        return value

    def integer(self, value, lo: int | None = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail("expected an integer")
        if lo is not None and value < lo:
            self.fail(f"expected an integer >= {lo}")
        return value

    def boolean(self, value) -> bool:
        if not isinstance(value, bool):
            self.fail("expected true or false")
        return value

    def rational(self, value) -> Fraction:
        if isinstance(value, bool) or isinstance(value, float):
            self.fail("rationals must be integers or \"p/q\" strings, not floats or booleans")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str) and _RATIONAL.fullmatch(value):
            num, _, den = value.partition("/")
            if den and int(den) == 0:
                self.fail(f"rational {value!r} has a zero denominator")
            return Fraction(int(num), int(den or 1))
        self.fail(f"{value!r} is not a rational")

    def budget(self, value):
        return INF if value == "inf" else self.rational(value)

    def pairs(self, value) -> list[tuple[int, int]]:
        return [tuple(self.at(i).integer(x, 0) for x in self.at(i).lst(e, 2)) for i, e in enumerate(self.lst(value))]

    def bits(self, value) -> tuple[int, ...]:
        out = []
        for i, x in enumerate(self.lst(value)):
            if self.at(i).integer(x) not in (0, 1):
                self.at(i).fail("expected 0 or 1")
            out.append(x)
        return tuple(out)


def _game(r: _Reader, body) -> BNPGGame:
    body = r.obj(body, ("n", "edges", "g", "c", "a"), ("altruism",))
    n = r.at("n").integer(body["n"], 1)
    alt = r.at("altruism").obj(body.get("altruism", {"directed": True, "edges": []}), ("directed", "edges"))
    g = [[r.at("g").at(i).at(k).rational(x) for k, x in enumerate(r.at("g").at(i).lst(t))]
         for i, t in enumerate(r.at("g").lst(body["g"], n))]
    c = [r.at("c").at(i).rational(x) for i, x in enumerate(r.at("c").lst(body["c"], n))]
    try:
        game = BNPGGame.create(n, r.at("edges").pairs(body["edges"]), g, c, r.at("a").rational(body["a"]),
                               r.at("altruism").at("edges").pairs(alt["edges"]),
                               r.at("altruism").at("directed").boolean(alt["directed"]))
    except ValueError as exc:
        raise InvariantError([str(exc)]) from exc
    return game


def _cost_list(r: _Reader, value) -> dict:
    out = {}
    for i, entry in enumerate(r.lst(value)):
        u, v, cost = r.at(i).lst(entry, 3)
        out[(r.at(i).integer(u, 0), r.at(i).integer(v, 0))] = r.at(i).rational(cost)
    return out


def _body(kind: str, r: _Reader, body):
    if kind == "game":
        return _game(r, body)
    if kind == "anm":
        body = r.obj(body, ("game", "target", "add_cost", "delete_cost", "budget"))
        game = _game(r.at("game"), body["game"])
        return ANMInstance(game, r.at("target").bits(body["target"]),
                           _cost_list(r.at("add_cost"), body["add_cost"]),
                           _cost_list(r.at("delete_cost"), body["delete_cost"]),
                           r.at("budget").budget(body["budget"]))
    if kind == "knapsack":
        body = r.obj(body, ("items",), ("threshold", "capacity"))
        items = []
        for i, entry in enumerate(r.at("items").lst(body["items"])):
            ri = r.at("items").at(i)
            p, w = ri.lst(entry, 2)
            items.append((ri.rational(p), ri.integer(w, 0)))
        threshold = body.get("threshold")
        capacity = body.get("capacity")
        return KnapsackInstance(tuple(items),
                                None if threshold is None else r.at("threshold").rational(threshold),
                                None if capacity is None else r.at("capacity").integer(capacity, 0))
    if kind == "sat":
        body = r.obj(body, ("n", "clauses"))
        clauses = [tuple(r.at("clauses").at(j).integer(l) for l in r.at("clauses").at(j).lst(cl))
                   for j, cl in enumerate(r.at("clauses").lst(body["clauses"]))]
        return SatInstance(r.at("n").integer(body["n"], 1), tuple(clauses))
    if kind == "dpgg":
        body = r.obj(body, ("n", "arcs", "price"))
        try:
            return DirectedPGG(r.at("n").integer(body["n"], 1), tuple(r.at("arcs").pairs(body["arcs"])),
                               r.at("price").rational(body["price"]))
        except ValueError as exc:
            raise InvariantError([str(exc)]) from exc
    if kind == "profile":
        return r.at("profile").bits(r.obj(body, ("profile",))["profile"])
    if kind == "mixed":
        probs = r.obj(body, ("probabilities",))["probabilities"]
        return tuple(r.at("probabilities").at(i).rational(q) for i, q in enumerate(r.at("probabilities").lst(probs)))
    if kind == "editset":
        body = r.obj(body, ("additions", "deletions", "total_cost"))
        return EditSet(frozenset(r.at("additions").pairs(body["additions"])),
                       frozenset(r.at("deletions").pairs(body["deletions"])),
                       r.at("total_cost").rational(body["total_cost"]))
    r.fail(f"unknown kind {kind!r}")


def _invariants(kind: str, body) -> list[str]:
    if kind == "game":
        return validate_game(body)
    if kind == "anm":
        return validate_anm(body)
    if kind == "knapsack":
        problems = []
        if any(p < 0 for p in body.profits):
            problems.append("knapsack profits must be non-negative")
        return problems
    if kind == "sat":
        return [f"clause {j} mentions a variable outside 1..{body.n}" for j, cl in enumerate(body.clauses)
                if any(l == 0 or abs(l) > body.n for l in cl)]
    if kind == "dpgg":
        return ["price must be non-negative"] if body.price < 0 else []
    if kind == "mixed":
        return [f"probability {q} outside [0, 1]" for q in body if not 0 <= q <= 1]
    return []


def parse_instance(text: str) -> InstanceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    root = _Reader("$")
    raw = root.obj(raw, ("kind", "body"), ("metadata",))
    kind = raw["kind"]
    if kind not in KINDS:
        root.at("kind").fail(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        root.at("metadata").fail("expected an object")
    try:
        body = _body(kind, root.at("body"), raw["body"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"$.body: {exc}") from exc
    problems = _invariants(kind, body)
    if problems:
        raise InvariantError(problems)
    return InstanceDocument(kind, body, metadata)


# ---------------------------------------------------------------- writing

def rational_out(q) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _game_out(game: BNPGGame) -> dict:
    return {
        "n": game.n,
        "edges": [list(e) for e in sorted(game.graph.edges)],
        "altruism": {"directed": game.altruism.directed, "edges": [list(e) for e in sorted(game.altruism.edges)]},
        "g": [[rational_out(x) for x in t] for t in game.g],
        "c": [rational_out(x) for x in game.c],
        "a": rational_out(game.a),
    }


def _body_out(kind: str, body) -> Any:
    if kind == "game":
        return _game_out(body)
    if kind == "anm":
        return {
            "game": _game_out(body.game),
            "target": list(body.target),
            "add_cost": [[u, v, rational_out(c)] for (u, v), c in sorted(body.add_cost.items())],
            "delete_cost": [[u, v, rational_out(c)] for (u, v), c in sorted(body.delete_cost.items())],
            "budget": "inf" if body.budget == INF else rational_out(body.budget),
        }
    if kind == "knapsack":
        out = {"items": [[rational_out(p), w] for p, w in body.items]}
        if body.threshold is not None:
            out["threshold"] = rational_out(body.threshold)
        if body.capacity is not None:
            out["capacity"] = body.capacity
        return out
    if kind == "sat":
        return {"n": body.n, "clauses": [list(c) for c in body.clauses]}
    if kind == "dpgg":
        return {"n": body.n, "arcs": [list(a) for a in body.arcs], "price": rational_out(body.price)}
    if kind == "profile":
        return {"profile": list(body)}
    if kind == "mixed":
        return {"probabilities": [rational_out(q) for q in body]}
    if kind == "editset":
        return {"additions": [list(e) for e in sorted(body.additions)],
                "deletions": [list(e) for e in sorted(body.deletions)],
                "total_cost": rational_out(body.total_cost)}
    raise ValueError(f"unknown kind {kind!r}")


def serialize_instance(doc: InstanceDocument) -> str:
    out = {"kind": doc.kind, "metadata": doc.metadata, "body": _body_out(doc.kind, doc.body)}
    return json.dumps(out, sort_keys=True, indent=2) + "\n"


def document(kind: str, body, **metadata) -> InstanceDocument:
    return InstanceDocument(kind, body, dict(metadata))
