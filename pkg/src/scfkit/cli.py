"""Command-line front end: evaluate rules, run axiom checks, search function
space, and verify the characterization and independence results.

Exit codes are a contract: 0 pass/complete, 1 axiom failure, 2 usage or parse
error, 3 resource truncation.  Reports are JSON with sorted keys, so byte
stability follows from deterministic witness selection.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .core import ProfileParseError, parse_profile
from .rules import RULES
from .axioms import AXIOM_IDS, CHECKERS
from .search import (
    SEARCH_AXIOMS,
    SearchInfeasibleError,
    SearchSpec,
    enumerate_functions,
    verify_independence,
    verify_theorem,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_TRUNCATED = 3

_CHECKABLE = tuple(ax for ax in AXIOM_IDS if ax in CHECKERS)


def _write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _parse_axioms(raw: str, allowed: tuple[str, ...], parser: argparse.ArgumentParser) -> list[str]:
    names = [tok.strip() for tok in raw.split(",") if tok.strip()]
    for name in names:
        if name not in allowed:
            parser.error(f"unknown axiom {name!r}; choose from {','.join(allowed)}")
    # canonical order, duplicates dropped: reports keep a stable field order
    return [ax for ax in allowed if ax in names]


def _tie_mode(args: argparse.Namespace) -> str:
    return "leaders" if args.pr_strict else "wins"


def _read_profile(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_profile(text)


def cmd_eval(args, parser) -> int:
    rule = RULES[args.rule]
    try:
        profile = _read_profile(args.profile)
    except OSError as exc:
        print(f"error: cannot read {args.profile}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ProfileParseError as exc:
        print(f"error: {args.profile}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    outcome = rule.evaluate(profile)
    print(outcome)
    print("tie/abstention" if outcome == 0 else f"candidate {outcome} wins")
    return EXIT_OK


def cmd_check(args, parser) -> int:
    axioms = _parse_axioms(args.axioms, _CHECKABLE, parser)
    rule = RULES[args.rule]
    tie = _tie_mode(args)
    results = []
    for ax in axioms:
        if ax == "PR":
            report = CHECKERS[ax](rule, args.m, args.n_max, tie_upgrade=tie, workers=args.workers)
        else:
            report = CHECKERS[ax](rule, args.m, args.n_max, workers=args.workers)
        results.append(report)
        if report.passed:
            print(f"{ax}: pass")
        else:
            w = report.witness
            print(f"{ax}: FAIL  profile [{' '.join(map(str, w.profile.ballots))}]"
                  f" actual={w.actual}" + (f" expected={w.expected}" if w.expected is not None else ""))
    all_pass = all(r.passed for r in results)
    doc = {
        "command": "check",
        "version": __version__,
        "rule": args.rule,
        "m": args.m,
        "n_max": args.n_max,
        "axioms": axioms,
        "pr_tie_upgrade": tie,
        "pass": all_pass,
        "results": [r.to_dict() for r in results],
    }
    if args.out:
        _write_json(args.out, doc)
    print(f"result: {'pass' if all_pass else 'FAIL'}")
    return EXIT_OK if all_pass else EXIT_FAILURE


def cmd_search(args, parser) -> int:
    axioms = _parse_axioms(args.axioms, SEARCH_AXIOMS, parser)
    spec = SearchSpec(
        m=args.m,
        n_max=args.n_max,
        axioms=frozenset(axioms),
        limit=args.max_solutions,
        max_nodes=args.max_nodes,
        pr_tie_upgrade=_tie_mode(args),
    )
    try:
        result = enumerate_functions(spec)
    except SearchInfeasibleError as exc:
        print(f"error: scope infeasible: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"solutions: {len(result.solutions)}")
    print(f"exhausted: {result.exhausted}")
    print(f"nodes_explored: {result.nodes_explored}")
    for ax in sorted(result.prune_counts):
        print(f"pruned[{ax}]: {result.prune_counts[ax]}")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        names = []
        for idx, solution in enumerate(result.solutions):
            name = f"solution_{idx:03d}.table"
            (out_dir / name).write_text(solution.to_text())
            names.append(name)
        _write_json(
            out_dir / "summary.json",
            {
                "command": "search",
                "version": __version__,
                "m": args.m,
                "n_max": args.n_max,
                "axioms": axioms,
                "pr_tie_upgrade": spec.pr_tie_upgrade,
                "max_nodes": args.max_nodes,
                "max_solutions": args.max_solutions,
                "exhausted": result.exhausted,
                "nodes_explored": result.nodes_explored,
                "prune_counts": dict(sorted(result.prune_counts.items())),
                "solution_count": len(result.solutions),
                "solutions": names,
            },
        )
    return EXIT_OK if result.exhausted else EXIT_TRUNCATED


def cmd_verify_theorem(args, parser) -> int:
    try:
        verdict = verify_theorem(
            args.m, args.n_max, include_dp=args.dp, max_nodes=args.max_nodes
        )
    except SearchInfeasibleError as exc:
        print(f"error: scope infeasible: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for key, value in verdict.to_dict().items():
        print(f"{key}: {value}")
    if args.out:
        _write_json(args.out, {"command": "verify-theorem", "version": __version__, **verdict.to_dict()})
    if not verdict.exhausted:
        return EXIT_TRUNCATED
    return EXIT_OK if verdict.passed else EXIT_FAILURE


def cmd_verify_independence(args, parser) -> int:
    verdict = verify_independence(args.m, args.n_max, workers=args.workers)
    for rule, fails in sorted(verdict.failures.items()):
        print(f"{rule}: fails {','.join(fails) if fails else '(none)'}")
    for note in verdict.mismatches:
        print(f"mismatch: {note}")
    print(f"result: {'pass' if verdict.passed else 'FAIL'}")
    if args.out:
        _write_json(args.out, {"command": "verify-independence", "version": __version__, **verdict.to_dict()})
    return EXIT_OK if verdict.passed else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scfkit",
        description="Axiom checking and exhaustive function-space search for "
        "choose-one voting with abstentions.",
    )
    parser.add_argument("--version", action="version", version=f"scfkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, n_max_default):
        p.add_argument("--m", type=int, default=2, help="candidate count (default 2)")
        p.add_argument("--n-max", type=int, default=n_max_default,
                       help=f"voter bound (default {n_max_default})")
        p.add_argument("--workers", type=int, default=1,
                       help="worker threads for axiom checking; results are "
                            "identical for any count (default 1)")
        p.add_argument("--out", help="write the machine-readable report here")

    p_eval = sub.add_parser("eval", help="evaluate a rule on one profile")
    p_eval.add_argument("--rule", required=True, choices=sorted(RULES))
    p_eval.add_argument("--profile", required=True, help="profile file, or - for stdin")
    p_eval.set_defaults(func=cmd_eval)

    p_check = sub.add_parser("check", help="run axiom checkers against a rule")
    p_check.add_argument("--rule", required=True, choices=sorted(RULES))
    add_common(p_check, n_max_default=4)
    p_check.add_argument("--axioms", default="A,N,DP,PO,RS",
                         help="comma list from A,N,DP,PO,RS,PR (default A,N,DP,PO,RS)")
    p_check.add_argument("--pr-strict", action=argparse.BooleanOptionalAction, default=True,
                         help="ties must upgrade to a win for a co-leading candidate "
                              "(--no-pr-strict only preserves existing wins)")
    p_check.set_defaults(func=cmd_check)

    p_search = sub.add_parser("search", help="enumerate anonymous functions satisfying axioms")
    add_common(p_search, n_max_default=3)
    p_search.add_argument("--axioms", default="N,DP,PO,RS",
                          help="comma list from N,DP,PO,RS,PR (default N,DP,PO,RS)")
    p_search.add_argument("--max-nodes", type=int, default=None)
    p_search.add_argument("--max-solutions", type=int, default=None)
    p_search.add_argument("--pr-strict", action=argparse.BooleanOptionalAction, default=True)
    p_search.set_defaults(func=cmd_search)

    p_thm = sub.add_parser("verify-theorem",
                           help="verify majority rule is the unique solution of the axiom set")
    add_common(p_thm, n_max_default=3)
    p_thm.add_argument("--dp", action=argparse.BooleanOptionalAction, default=True,
                       help="include the duel property (drop with --no-dp for m >= 4)")
    p_thm.add_argument("--max-nodes", type=int, default=None)
    p_thm.set_defaults(func=cmd_verify_theorem)

    p_ind = sub.add_parser("verify-independence",
                           help="verify each axiom drop admits its documented counterexample")
    add_common(p_ind, n_max_default=3)
    p_ind.set_defaults(func=cmd_verify_independence)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    if getattr(args, "m", 2) < 2:
        parser.error("--m must be >= 2")
    if getattr(args, "n_max", 1) < 1:
        parser.error("--n-max must be >= 1")
    return args.func(args, parser)


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
