import json
from fractions import Fraction as F

import pytest

from bnpg.errors import DocumentSyntaxError, InvariantError, SchemaError
from bnpg.generate import GENERATOR_KINDS, GeneratorSpec, generate_instance
from bnpg.io import document, parse_instance, rational_out, serialize_instance
from conftest import micro_gadget

GAME = {"n": 2, "edges": [[0, 1]], "altruism": {"directed": True, "edges": [[0, 1]]},
        "g": [[0, 1, 2], [0, "1/2", 1]], "c": ["3/2", 1], "a": "1/4"}


def _text(kind, body):
    return json.dumps({"kind": kind, "body": body})


def test_parse_game():
    game = parse_instance(_text("game", GAME)).body
    assert game.c == (F(3, 2), F(1)) and game.a == F(1, 4) and game.g[1][1] == F(1, 2)


@pytest.mark.parametrize("spec", [f"{k},n={n},seed=3" for k, n in
                                  (("tree", 9), ("clique", 5), ("circuit-rank", 7), ("sat", 6), ("knapsack", 8),
                                   ("anm", 7))])
def test_generated_round_trip_is_byte_stable(spec):
    text = serialize_instance(generate_instance(spec))
    assert serialize_instance(parse_instance(text)) == text
    assert text == serialize_instance(generate_instance(spec))


def test_all_generator_kinds_covered():
    assert set(GENERATOR_KINDS) == {"tree", "clique", "circuit-rank", "sat", "knapsack", "anm"}
    assert str(GeneratorSpec.parse("circuit-rank, n=7, d=2, seed=1")) == "circuit-rank,n=7,seed=1,d=2"


def test_round_trip_other_kinds():
    for kind, body in (("anm", micro_gadget(3)), ("profile", (1, 0)), ("mixed", (F(1, 3), 1))):
        text = serialize_instance(document(kind, body))
        assert serialize_instance(parse_instance(text)) == text
    inf = serialize_instance(document("anm", micro_gadget(float("inf"))))
    assert '"budget": "inf"' in inf and parse_instance(inf).body.budget == float("inf")


def test_syntax_error_has_position():
    with pytest.raises(DocumentSyntaxError, match="line 1"):
        parse_instance('{"kind": ')


@pytest.mark.parametrize("patch,path", [
    ({"c": [0.5, 1]}, "$.body.c[0]"),
    ({"c": ["3/0", 1]}, "$.body.c[0]"),
    ({"a": True}, "$.body.a"),
    ({"n": "2"}, "$.body.n"),
])
def test_schema_errors_name_the_path(patch, path):
    with pytest.raises(SchemaError) as info:
        parse_instance(_text("game", GAME | patch))
    assert path in str(info.value)


def test_unknown_kind_and_keys():
    with pytest.raises(SchemaError):
        parse_instance(_text("graph", GAME))
    with pytest.raises(SchemaError, match="unexpected key"):
        parse_instance(_text("game", GAME | {"extra": 1}))


def test_invariant_error_lists_violations():
    bad = GAME | {"altruism": {"directed": True, "edges": [[0, 1]]}, "edges": []}
    with pytest.raises(InvariantError) as info:
        parse_instance(_text("game", bad))
    assert "(0, 1)" in str(info.value)
    with pytest.raises(InvariantError):
        parse_instance(_text("game", GAME | {"g": [[0, 2, 1], [0, 1, 2]]}))


def test_rational_out():
    assert rational_out(F(4, 2)) == 2 and rational_out(F(-1, 3)) == "-1/3"
