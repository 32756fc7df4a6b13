"""Command-line front end: compute basis tables, verify identity suites, and
evaluate element-level utilities.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
Output is deterministic: fixed evaluation order regardless of the requested
parallelism width, scalars in canonical text form, JSON with sorted keys.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .algebra import Algebra
from .cartan import CartanError, get_datum
from .double import tri_to_obj
from .cartan import PRESETS
from .halves import PLUS, MINUS, half_from_obj, parse_word
from .scalar import RAT_ONE, format_scalar


class UsageError(ValueError):
    pass


def _algebra(args) -> Algebra:
    if args.preset in PRESETS:
        return Algebra.get(args.preset)
    try:
        return Algebra(get_datum(args.preset))
    except CartanError as exc:
        raise UsageError(str(exc)) from exc


def _load_user_tables(alg: Algebra, path: str):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    for block in payload:
        gamma = tuple(block["degree"])
        labeled = [
            (entry["label"], half_from_obj(alg.half, entry["element"]))
            for entry in block["elements"]
        ]
        alg.tables.load_user_table(gamma, labeled)


def _resolve_label(alg: Algebra, token: str, sign: int) -> str:
    if ":" in token:
        s, letters = parse_word(alg.half, token)
        elem = alg.half.word(s, [alg.datum.labels[i] for i in letters])
        return alg.label_of(sign, elem if s == sign else alg.half.flip(elem))
    return token


def cmd_basis(args) -> int:
    alg = _algebra(args)
    if args.tables:
        _load_user_tables(alg, args.tables)
    bound = tuple([args.height] * alg.datum.rank)
    def parse_filter(text):
        if text is None:
            return None
        return {alg.datum.index(tok) for tok in text.split(",") if tok}

    j_minus = parse_filter(args.j_minus)
    j_plus = parse_filter(args.j_plus)
    cache_dir = os.environ.get("QDOUBLE_CACHE_DIR")
    cache_file = None
    if cache_dir:
        key = hashlib.sha256(
            json.dumps([args.preset, args.height, args.j_minus, args.j_plus]).encode()
        ).hexdigest()[:16]
        cache_file = os.path.join(cache_dir, f"basis-{key}.json")
        if os.path.exists(cache_file):
            with open(cache_file, "r", encoding="utf-8") as fh:
                text = fh.read()
            _emit(args, text)
            return 0
    rows = alg.engine.enumerate_basis(bound, j_minus=j_minus, j_plus=j_plus)
    payload = []
    for row in rows:
        payload.append(
            {
                "K_minus": row["K_minus"],
                "K_plus": row["K_plus"],
                "b_minus": row["b_minus"],
                "b_plus": row["b_plus"],
                "element": tri_to_obj(row["element"]),
                "certificate": row["certificate"],
            }
        )
    text = json.dumps(payload, indent=1, sort_keys=True)
    if cache_file:
        os.makedirs(cache_dir, exist_ok=True)
        with open(cache_file, "w", encoding="utf-8") as fh:
            fh.write(text)
    _emit(args, text)
    return 0


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)


def cmd_verify(args) -> int:
    from . import checks

    if args.suite not in checks.CLI_SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(checks.CLI_SUITES)}")
    results = checks.run_suites(checks.CLI_SUITES[args.suite], seed=args.seed)
    failed = 0
    for name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f" -- {detail}"
        print(line)
        if not ok:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_pair(args) -> int:
    alg = _algebra(args)
    s1, w1 = parse_word(alg.half, args.left)
    s2, w2 = parse_word(alg.half, args.right)
    if {s1, s2} != {PLUS, MINUS}:
        raise UsageError("pair expects one E-side and one F-side word")
    plus = alg.half.element(PLUS, {(w1 if s1 == PLUS else w2): RAT_ONE})
    minus = alg.half.element(MINUS, {(w2 if s2 == MINUS else w1): RAT_ONE})
    print(format_scalar(alg.pair(plus, minus)))
    return 0


def cmd_braid(args) -> int:
    alg = _algebra(args)
    ops = []
    for token in args.word.split():
        if token.endswith("^-1"):
            ops.append((alg.datum.index(token[:-3]), True))
        else:
            ops.append((alg.datum.index(token), False))
    sign, letters = parse_word(alg.half, args.element)
    x = alg.ctx.from_halves(
        minus=alg.half.element(MINUS, {letters: RAT_ONE}) if sign == MINUS else None,
        plus=alg.half.element(PLUS, {letters: RAT_ONE}) if sign == PLUS else None,
        flavor="localized",
    )
    for i, inv in reversed(ops):
        x = alg.braid.T(i, x, inverse=inv)
    print(json.dumps(tri_to_obj(x), indent=1, sort_keys=True))
    return 0


def cmd_strconst(args) -> int:
    alg = _algebra(args)
    if args.tables:
        _load_user_tables(alg, args.tables)
    lm = _resolve_label(alg, args.b_minus, MINUS)
    lp = _resolve_label(alg, args.b_plus, PLUS)
    coeffs, report = alg.structure_constants(lm, lp)
    payload = {
        "coefficients": {
            f"K-{list(am)} K+{list(ap)} | {l1} | {l2}": format_scalar(c)
            for ((am, ap), l1, l2), c in sorted(coeffs.items(), key=repr)
        },
        "positive": report["positive"],
    }
    print(json.dumps(payload, indent=1, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdouble",
        description="Exact double canonical bases for quantized enveloping algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="emit the double canonical basis table within a bound")
    p.add_argument("--preset", required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--j-minus", default=None, help="comma-separated biparabolic filter (minus side)")
    p.add_argument("--j-plus", default=None)
    p.add_argument("--tables", default=None, help="user dual-basis table file")
    p.add_argument("--width", type=int, default=1, help="parallelism width (output is width-independent)")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", help="sl2 | rank2 | rank3 | braid | rst | all")
    p.add_argument("--seed", type=int, default=2026)
    p.add_argument("--width", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pair", help="pair an E-side word against an F-side word")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--preset", required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("braid", help="apply a braid word to an element")
    p.add_argument("--preset", required=True)
    p.add_argument("--word", required=True, help='e.g. "1 2 1" or "1^-1 2"')
    p.add_argument("--element", required=True, help='e.g. "E:2"')
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("strconst", help="expand d b- b+ over the double canonical basis")
    p.add_argument("b_minus")
    p.add_argument("b_plus")
    p.add_argument("--preset", required=True)
    p.add_argument("--tables", default=None)
    p.set_defaults(func=cmd_strconst)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "height", 0) < 0:
            raise UsageError("height bound must be nonnegative")
        if getattr(args, "width", 1) < 1:
            raise UsageError("parallelism width must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
