"""Command-line entry point.

One subcommand per workbench surface; ``--json`` switches every
command to a machine-readable report on stdout.  Exit codes: 0 for a
definite successful verdict, 2 when any verdict is "unknown" under the
given budgets, 1 for usage or input errors.  Reports contain no
timestamps or paths, so identical inputs and budgets produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import criteria
from .catalog import (
    Budget,
    Catalog,
    builtin_catalog,
    excludes_nine,
    includes,
    load_catalog,
    satisfies_variety,
    verify_fig1_bottom,
)
from .closure import oracle_holds, saturate
from .monoids import format_table, parse_table, satisfies
from .rees import build_rees
from .replay import run_replay_library
from .rewrite import derive, verify_trace
from .systems import Identity, parse_identity, parse_system
from .words import (
    canonical_renaming,
    decompose,
    h_table,
    letter_name,
    parse_word,
    rename,
    word_str,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _budget(args) -> Budget:
    return Budget(len_cap=args.len_cap, max_states=args.max_states, oracle_len=args.oracle_len)


def _catalog(args) -> Catalog:
    if args.catalog:
        return load_catalog(args.catalog)
    return builtin_catalog()


def cmd_decompose(args) -> int:
    w = parse_word(args.word)
    d = decompose(w)
    h = h_table(w)
    payload = {
        "word": word_str(w),
        "length": len(w),
        "dividers": [None] + [letter_name(x) for x in d.divider_letters()],
        "blocks": [word_str(b) for b in d.blocks],
        "h": {letter_name(x): h[x] for x in sorted(h)},
    }
    lines = [
        f"word:     {word_str(w) or '(empty)'}",
        f"dividers: {' '.join(['_'] + [letter_name(x) for x in d.divider_letters()])}",
        f"blocks:   {' '.join(word_str(b) or '_' for b in d.blocks)}",
    ] + [
        f"h({letter_name(x)}): {' '.join(map(str, h[x]))}" for x in sorted(h)
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_check(args) -> int:
    with open(args.table) as fh:
        m = parse_table(fh.read(), name=args.table)
    ident = parse_identity(args.identity)
    holds, counter = satisfies(m, ident)
    readable = (
        {word_str((x,)): m.label(v) for x, v in sorted(counter.items())}
        if counter
        else None
    )
    payload = {"identity": str(ident), "holds": holds, "counterexample": readable}
    lines = [f"{ident}: {'holds' if holds else 'fails'}"]
    if readable:
        lines.append(f"counterexample: {readable}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_derive(args) -> int:
    with open(args.system) as fh:
        sys_def = parse_system(fh.read())
    u, v = parse_word(getattr(args, "from")), parse_word(args.to)
    trace, stats = derive(u, v, sys_def, len_cap=args.len_cap, max_states=args.max_states)
    found = trace is not None
    payload = {
        "from": word_str(u),
        "to": word_str(v),
        "found": found,
        "status": stats.status,
        "states": stats.states,
        "trace": trace.render().splitlines() if found else None,
    }
    lines = [f"derive {word_str(u)} = {word_str(v)}: {stats.status} ({stats.states} states)"]
    if found:
        ok, i, why = verify_trace(trace, sys_def)
        lines.extend(trace.render().splitlines())
        lines.append(f"verified: {ok}")
        payload["verified"] = ok
    _emit(args, payload, lines)
    return EXIT_OK if found else EXIT_UNKNOWN


def cmd_rees(args) -> int:
    words = [parse_word(w) for w in args.words]
    s = build_rees(words)
    payload = {
        "source": [word_str(w) for w in s.source],
        "size": s.size,
        "zero": s.zero,
        "table": format_table(s.base).splitlines(),
    }
    _emit(args, payload, format_table(s.base).splitlines())
    return EXIT_OK


def cmd_free(args) -> int:
    with open(args.system) as fh:
        sys_def = parse_system(fh.read())
    bc = saturate(sys_def, args.letters, args.len)
    classes = bc.classes()
    payload = {"letters": args.letters, "len": args.len, "classes": len(classes)}
    lines = [f"{len(classes)} classes of words of length <= {args.len} over {args.letters} letters"]
    code = EXIT_OK
    if args.query:
        ident = parse_identity(args.query)
        mapping = canonical_renaming([ident.lhs, ident.rhs])
        if len(mapping) > args.letters:
            raise ValueError(
                f"query uses {len(mapping)} letters, closure has {args.letters}"
            )
        renamed = Identity(rename(ident.lhs, mapping), rename(ident.rhs, mapping))
        verdict = oracle_holds(bc, renamed)
        payload["query"] = {"identity": str(ident), "verdict": verdict}
        lines.append(f"{ident}: {verdict}")
        code = EXIT_OK if verdict == "holds" else EXIT_UNKNOWN
    _emit(args, payload, lines)
    return code


def cmd_catalog(args) -> int:
    cat = _catalog(args)
    budget = _budget(args)
    if args.catalog_cmd == "list":
        names = cat.names()
        _emit(args, {"varieties": names}, names)
        return EXIT_OK
    if args.catalog_cmd == "check":
        ident = parse_identity(args.identity)
        verdict = satisfies_variety(cat, args.variety, ident, budget)
        payload = {
            "variety": args.variety,
            "identity": str(ident),
            "verdict": verdict.to_json(),
        }
        lines = [f"{args.variety} |= {ident}: {verdict.value} (route: {verdict.route})"]
        if verdict.evidence:
            lines.append(f"evidence: {verdict.evidence}")
        _emit(args, payload, lines)
        return EXIT_OK if verdict.definite else EXIT_UNKNOWN
    if args.catalog_cmd == "includes":
        verdict = includes(cat, args.v, args.w, budget)
        payload = {"v": args.v, "w": args.w, "verdict": verdict.to_json()}
        lines = [f"{args.v} <= {args.w}: {verdict.value} (route: {verdict.route})"]
        _emit(args, payload, lines)
        return EXIT_OK if verdict.definite else EXIT_UNKNOWN
    if args.catalog_cmd == "excludes-nine":
        per, overall = excludes_nine(cat, args.variety, args.n, budget)
        payload = {
            "variety": args.variety,
            "n": args.n,
            "excluded": {w: v.to_json() for w, v in per.items()},
            "prediction": overall,
        }
        lines = [
            f"{w}: excluded={v.value} (route: {v.route})" for w, v in per.items()
        ] + [f"prediction: {overall}"]
        _emit(args, payload, lines)
        return EXIT_OK if overall != "unknown" else EXIT_UNKNOWN
    raise AssertionError(args.catalog_cmd)


def cmd_lattice(args) -> int:
    if args.target != "fig1":
        print(f"unknown lattice target {args.target!r}", file=sys.stderr)
        return EXIT_ERROR
    cat = _catalog(args)
    checks = verify_fig1_bottom(cat, _budget(args))
    ok = all(c["ok"] for c in checks)
    payload = {"checks": checks, "all_ok": ok}
    lines = [
        f"[{'PASS' if c['ok'] else 'FAIL'}] {c['check']}: expected {c['expected']}, got {c['verdict']} via {c['route']}"
        for c in checks
    ] + [f"all: {'PASS' if ok else 'FAIL'}"]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_UNKNOWN


def cmd_replay(args) -> int:
    results = run_replay_library()
    if args.item != "all":
        results = [r for r in results if r.name == args.item]
        if not results:
            print(f"unknown replay item {args.item!r}", file=sys.stderr)
            return EXIT_ERROR
    ok = all(r.passed for r in results)
    payload = {"results": [r.to_json() for r in results], "all_passed": ok}
    lines = [
        f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}" for r in results
    ] + [f"all: {'PASS' if ok else 'FAIL'}"]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_UNKNOWN


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--len-cap", type=int, default=12, help="derivation length cap")
    common.add_argument(
        "--max-states", type=int, default=200_000, help="derivation state cap"
    )
    common.add_argument(
        "--oracle-len", type=int, default=8, help="congruence closure length bound"
    )
    common.add_argument("--catalog", help="catalog definition file (defaults to builtin)")

    p = argparse.ArgumentParser(
        prog="monvar",
        description="equational reasoning workbench for monoid varieties",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser(
        "decompose", parents=[common], help="dividers, blocks, and h-indices of a word"
    )
    q.add_argument("word")
    q.set_defaults(func=cmd_decompose)

    q = sub.add_parser(
        "check", parents=[common], help="check an identity against a monoid table file"
    )
    q.add_argument("--table", required=True)
    q.add_argument("identity")
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("derive", parents=[common], help="bounded derivation search")
    q.add_argument("--system", required=True, help="identity system file")
    q.add_argument("--from", required=True)
    q.add_argument("--to", required=True)
    q.set_defaults(func=cmd_derive)

    q = sub.add_parser(
        "rees", parents=[common], help="build the factor-truncation monoid of words"
    )
    q.add_argument("words", nargs="+")
    q.set_defaults(func=cmd_rees)

    q = sub.add_parser(
        "free", parents=[common], help="bounded congruence closure of a system"
    )
    q.add_argument("--system", required=True)
    q.add_argument("--letters", type=int, required=True)
    q.add_argument("--len", type=int, required=True)
    q.add_argument("--query", help='identity "u = v" to test against the closure')
    q.set_defaults(func=cmd_free)

    q = sub.add_parser("catalog", help="variety catalog operations")
    qs = q.add_subparsers(dest="catalog_cmd", required=True)
    qq = qs.add_parser("list", parents=[common])
    qq.set_defaults(func=cmd_catalog)
    qq = qs.add_parser("check", parents=[common])
    qq.add_argument("variety")
    qq.add_argument("identity")
    qq.set_defaults(func=cmd_catalog)
    qq = qs.add_parser("includes", parents=[common])
    qq.add_argument("v")
    qq.add_argument("w")
    qq.set_defaults(func=cmd_catalog)
    qq = qs.add_parser("excludes-nine", parents=[common])
    qq.add_argument("variety")
    qq.add_argument("--n", type=int, default=2, help="aperiodicity exponent")
    qq.set_defaults(func=cmd_catalog)

    q = sub.add_parser("lattice", parents=[common], help="verify lattice facts")
    q.add_argument("verify", choices=["verify"])
    q.add_argument("target")
    q.set_defaults(func=cmd_lattice)

    q = sub.add_parser(
        "replay", parents=[common], help="replay the stored derivation chains"
    )
    q.add_argument("item", nargs="?", default="all")
    q.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
