"""Command-line front end: ``bnpg <command> ...``.

Exit codes: 0 solved or verified, 3 proven no solution, 1 bad input,
2 refused by a size guard or structural precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle
from .anm import solve_anm_asymmetric
from .errors import GuardError, InstanceError, NotApplicableError
from .game import BNPGGame, verify_eps_ne, verify_psne
from .generate import generate_instance
from .io import InstanceDocument, parse_instance, rational_out, serialize_instance
from .reductions import (dpgg_to_bnpg, homogenize, homogenize_bounded_degree, knapsack_to_anm,
                         sat_to_anm)
from .structured import circuit_rank, is_complete, solve_bounded_circuit_rank_psne, solve_clique_psne
from .tree import solve_tree_psne

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_NONE = 0, 1, 2, 3


class _Refusal(Exception):
    pass


def _load(path: str, *kinds: str) -> InstanceDocument:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    doc = parse_instance(text)
    if kinds and doc.kind not in kinds:
        raise InstanceError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind!r}")
    return doc


def _emit(kind: str, body, **metadata) -> None:
    sys.stdout.write(serialize_instance(InstanceDocument(kind, body, metadata)))


def _report(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def solve_game(game: BNPGGame, method: str = "auto", max_rank: int = 3):
    """Dispatch to the structural solver named by ``method``; returns (method used, witness)."""
    if method == "auto":
        rank = circuit_rank(game.graph)
        if rank == 0:
            method = "tree"
        elif is_complete(game.graph):
            method = "clique"
        elif rank <= max_rank:
            method = "circuit-rank"
        elif game.n <= oracle.PSNE_MAX_PLAYERS:
            method = "brute"
        else:
            raise _Refusal(f"no solver applies: circuit rank {rank} exceeds --max-rank {max_rank} "
                           f"and {game.n} players exceed the brute-force guard")
    if method == "tree":
        return method, solve_tree_psne(game)
    if method == "clique":
        return method, solve_clique_psne(game)
    if method == "circuit-rank":
        return method, solve_bounded_circuit_rank_psne(game, max_rank)
    if method == "brute":
        found = oracle.enumerate_psne(game)
        return method, found[0] if found else None
    raise ValueError(f"unknown method {method!r}")


def cmd_verify(args) -> int:
    game = _load(args.game, "game").body
    prof = _load(args.profile, "profile", "mixed")
    if prof.kind == "profile":
        verdict = verify_psne(game, prof.body)
        _report({"psne": verdict.is_psne, "deviator": verdict.deviator})
        return EXIT_OK if verdict else EXIT_NONE
    eps = Fraction(args.eps)
    verdict = verify_eps_ne(game, prof.body, eps)
    _report({"eps": rational_out(eps), "eps_ne": verdict.is_eps_ne,
             "witness": list(verdict.witness) if verdict.witness else None})
    return EXIT_OK if verdict else EXIT_NONE


def cmd_solve(args) -> int:
    game = _load(args.game, "game").body
    method, witness = solve_game(game, args.method, args.max_rank)
    if witness is None:
        print(f"no PSNE exists (method: {method})", file=sys.stderr)
        return EXIT_NONE
    _emit("profile", witness, method=method)
    return EXIT_OK


def cmd_anm(args) -> int:
    anm = _load(args.instance, "anm").body
    edits = solve_anm_asymmetric(anm, args.threads) if args.method == "asymmetric" else oracle.brute_anm(anm)
    if edits is None:
        print("no edit set within budget makes the target a PSNE", file=sys.stderr)
        return EXIT_NONE
    _emit("editset", edits, method=args.method)
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.kind in ("homogenize", "homogenize-deg13"):
        anm = _load(args.input, "anm").body
        out = (homogenize if args.kind == "homogenize" else homogenize_bounded_degree)(anm).anm
        _emit("anm", out, reduction=args.kind)
    elif args.kind == "knapsack-to-anm":
        _emit("anm", knapsack_to_anm(_load(args.input, "knapsack").body, args.symmetric), reduction=args.kind)
    elif args.kind == "sat-to-anm":
        sat = _load(args.input, "sat").body
        _emit("anm", sat_to_anm(sat, args.variant, strict=not args.relaxed), reduction=args.kind,
              variant=args.variant)
    elif args.kind == "dpgg-to-bnpg":
        _emit("game", dpgg_to_bnpg(_load(args.input, "dpgg").body, Fraction(args.eps)), reduction=args.kind,
              eps=args.eps)
    return EXIT_OK


def cmd_gen(args) -> int:
    sys.stdout.write(serialize_instance(generate_instance(args.spec)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = _load(args.input)
    if args.subproblem == "psne":
        found = oracle.enumerate_psne(_require(doc, "game"))
        _report({"count": len(found), "profiles": [list(p) for p in found]})
        return EXIT_OK if found else EXIT_NONE
    if args.subproblem == "knapsack":
        ks = _require(doc, "knapsack")
        result = {}
        if ks.capacity is not None:
            result["max_profit"] = rational_out(oracle.brute_max_knapsack(ks.items, ks.capacity))
        if ks.threshold is not None:
            best = oracle.brute_min_knapsack(ks)
            result["min_weight"] = best
            if ks.capacity is not None:
                result["feasible"] = best is not None and best <= ks.capacity
        _report(result)
        return EXIT_OK
    if args.subproblem == "anm":
        edits = oracle.brute_anm(_require(doc, "anm"))
        if edits is None:
            print("no edit set within budget makes the target a PSNE", file=sys.stderr)
            return EXIT_NONE
        _emit("editset", edits, method="brute")
        return EXIT_OK
    if args.subproblem == "sat":
        bits = oracle.brute_sat(_require(doc, "sat"))
        _report({"satisfiable": bits is not None, "assignment": list(bits) if bits else None})
        return EXIT_OK if bits else EXIT_NONE
    raise ValueError(f"unknown oracle subproblem {args.subproblem!r}")


def _require(doc: InstanceDocument, kind: str):
    if doc.kind != kind:
        raise InstanceError(f"expected a {kind} document, got {doc.kind!r}")
    return doc.body


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bnpg", description="Exact solvers for networked public goods games with altruism.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a pure profile (PSNE) or mixed profile (eps-NE)")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("--eps", default="0", help="tolerance for mixed profiles, e.g. 1/10")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="find a PSNE")
    p.add_argument("game")
    p.add_argument("--method", choices=("auto", "tree", "clique", "circuit-rank", "brute"), default="auto")
    p.add_argument("--max-rank", type=int, default=3)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("anm", help="cheapest altruism edits making the target a PSNE")
    p.add_argument("instance")
    p.add_argument("--method", choices=("asymmetric", "brute"), default="asymmetric")
    p.add_argument("--threads", type=int, default=None, help="defaults to BNPG_THREADS or the CPU count")
    p.set_defaults(func=cmd_anm)

    p = sub.add_parser("reduce", help="build a reduction gadget")
    p.add_argument("kind", choices=("homogenize", "homogenize-deg13", "knapsack-to-anm", "sat-to-anm", "dpgg-to-bnpg"))
    p.add_argument("input")
    p.add_argument("--symmetric", action="store_true", help="knapsack-to-anm: symmetric altruism")
    p.add_argument("--variant", choices=("all-invest", "arbitrary-target"), default="all-invest")
    p.add_argument("--relaxed", action="store_true", help="sat-to-anm: also accept width-2 clauses")
    p.add_argument("--eps", default="1/10", help="dpgg-to-bnpg: epsilon")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a random instance, e.g. 'tree,n=8,seed=1'")
    p.add_argument("spec")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive reference answers")
    p.add_argument("subproblem", choices=("psne", "knapsack", "anm", "sat"))
    p.add_argument("input")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GuardError, NotApplicableError, _Refusal) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InstanceError, ValueError, TypeError, OSError, ZeroDivisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
