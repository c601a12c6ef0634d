"""Command-line front end.

Exit codes: 0 when no claim failed, 1 when at least one failed, 2 on usage
or parse errors.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report as rpt
from .dsl import SpecParseError, parse, serialize
from .fixtures import emit_fixture, fixture_names, fixture_text
from .mod5 import mod5_document
from .refinement import ALGEBRA_LIMIT, Law, verify_algebra
from .runner import ClaimResult, RunSummary, Status, parse_expectations, run_document
from .search import EXHAUSTIVE_LIMIT, Lemma, exhaustive_preservation, random_preservation

USAGE_ERROR = 2


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        print(f"{path}: {exc.strerror}", file=sys.stderr)
        return None
    try:
        return parse(data)
    except SpecParseError as exc:
        for d in exc.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        return None


def _witness_lines(result: ClaimResult, verbose: bool) -> list[str]:
    out = []
    if result.message:
        out.append(result.message)
    body = rpt.to_dict(result) if result.report is not None else {}
    for pred in body.get("predicates", []):
        if verbose or not pred["holds"]:
            w = pred["witness"]
            tail = f"witness ({w[0]}, {w[1]})" if w else "ok"
            out.append(f"{pred['predicate']}: {tail}")
    for ax in body.get("axioms", []):
        if verbose or not ax["holds"]:
            w = ax["witness"]
            tail = "witness (" + ", ".join(map(str, w)) + ")" if w else "ok"
            out.append(f"{ax['axiom']}: {tail}")
    if "failedHypothesis" in body:
        out.append(f"hypothesis {body['failedHypothesis']} does not hold")
    if isinstance(body.get("witness"), int):
        out.append(f"{body['clause']}: witness tick {body['witness']}")
    if "classification" in body and result.status is Status.FAIL:
        out.append(f"classified {body['classification']}")
    return out


def _print_human(results: list[ClaimResult], summary: RunSummary, verbose: bool) -> None:
    for r in results:
        print(f"[{r.status.value.upper()}] {r.claim}")
        if r.status is not Status.PASS or verbose:
            for line in _witness_lines(r, verbose):
                print(f"    {line}")
    print(
        f"{summary.claims_total} claims: {summary.claims_passed} passed, "
        f"{summary.claims_failed} failed, {summary.claims_vacuous} vacuous"
    )


def cmd_check(args) -> int:
    doc = _load(args.file)
    if doc is None:
        return USAGE_ERROR
    expectations = []
    if args.expect:
        try:
            expectations = parse_expectations(Path(args.expect).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            print(f"{args.expect}: {exc}", file=sys.stderr)
            return USAGE_ERROR
    results, summary = run_document(doc, expectations)
    if args.json:
        print(rpt.emit_run(results, summary, args.file))
    else:
        _print_human(results, summary, args.witnesses)
    return summary.exit_code


def cmd_closure(args) -> int:
    doc = _load(args.file)
    if doc is None:
        return USAGE_ERROR
    if args.level not in doc.levels:
        print(f"{args.file}: unknown level {args.level!r}", file=sys.stderr)
        return USAGE_ERROR
    s = doc.structure(args.level)
    if args.json:
        print(rpt.emit_report(s, claim="closure", operands=[args.level]))
        return 0
    print(
        f"# closure of level {args.level} over {s.size} instants: "
        f"{len(s.coincidence)} coincidence pairs, {len(s.precedence)} precedence pairs"
    )
    for i, j in s.coincidence.pairs():
        print(f"coincide {i} {j};")
    for i, j in s.precedence.pairs():
        print(f"precede {i} {j};")
    return 0


def cmd_gen_mod5(args) -> int:
    if args.groups < 1:
        print("--groups must be at least 1", file=sys.stderr)
        return USAGE_ERROR
    text = serialize(mod5_document(args.groups))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    reports = []
    if args.law:
        if not 1 <= args.n <= ALGEBRA_LIMIT:
            print(f"--n must lie in 1..{ALGEBRA_LIMIT}", file=sys.stderr)
            return USAGE_ERROR
        reports.append(verify_algebra(args.n, Law(args.law)))
    else:
        if not 1 <= args.n <= EXHAUSTIVE_LIMIT:
            print(f"--n must lie in 1..{EXHAUSTIVE_LIMIT}", file=sys.stderr)
            return USAGE_ERROR
        lemma = Lemma(args.preservation)
        reports.append(exhaustive_preservation(lemma, args.n))
        if args.random:
            reports.append(
                random_preservation(lemma, args.random, n=args.random_size, seed=args.seed)
            )
    failed = sum(not r.holds for r in reports)
    if args.json:
        print(json.dumps({"schemaVersion": rpt.SCHEMA_VERSION, "results": [rpt.to_dict(r) for r in reports]}, indent=2))
    else:
        for r in reports:
            body = rpt.to_dict(r)
            name = body.get("law") or f"preservation-{body['lemma']} ({body['mode']})"
            verdict = "PASS" if r.holds else "FAIL"
            print(f"[{verdict}] {name}, n={body['n']}: {body['instancesChecked']} instances checked")
            if "outcomes" in body:
                print("    " + ", ".join(f"{k}={v}" for k, v in body["outcomes"].items()))
            if not r.holds:
                print("    counterexample:")
                for item in body["counterexample"]:
                    print("      " + json.dumps(item))
    return 1 if failed else 0


def cmd_fixtures(args) -> int:
    if args.list:
        for name in fixture_names():
            print(name)
        return 0
    if args.emit not in fixture_names():
        print(f"unknown fixture {args.emit!r}; try --list", file=sys.stderr)
        return USAGE_ERROR
    if args.out:
        for path in emit_fixture(args.emit, args.out):
            print(path)
    else:
        sys.stdout.write(fixture_text(args.emit))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronorefine",
        description="Check instant refinement and clock constraints on .chrono specifications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate every claim of a .chrono file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--witnesses", action="store_true", help="list every predicate, passing or not")
    p.add_argument("--expect", metavar="FILE", help="expected pair classifications to check too")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("closure", help="dump the closed relations of one level")
    p.add_argument("file")
    p.add_argument("--level", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("gen-mod5", help="generate the two-level switch-on example")
    p.add_argument("--groups", type=int, required=True, metavar="K")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen_mod5)

    p = sub.add_parser("oracle", help="exhaustive and randomized law checks")
    p.add_argument("--n", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--law", choices=[law.value for law in Law])
    which.add_argument("--preservation", choices=[lemma.value for lemma in Lemma])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="also check COUNT random instances (preservation only)")
    p.add_argument("--random-size", type=int, default=8, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fixtures", help="list or emit the bundled fixtures")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--list", action="store_true")
    which.add_argument("--emit", metavar="NAME")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
