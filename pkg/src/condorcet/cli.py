"""Command line entry point.

Exit codes: 0 success, 1 a checked property fails, 2 usage or parse error,
3 search stopped by its time limit (census written, rerun with ``--resume``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import analysis, formats, search
from .domain import (
    ResourceLimitError,
    are_isomorphic,
    domain_from_rules,
    is_condorcet,
    is_maximal,
)
from .fishburn import VARIANTS, alternating_scheme_rules
from .orders import IDENTITY_LAWS, InputError, NeverLaw, Triple

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3

log = logging.getLogger("condorcet")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    rules = formats.read_rules(args.rules)
    d = domain_from_rules(rules, work_limit=args.work_limit)
    _emit(formats.render_domain(d), args.out)
    print(f"{len(d)} orders", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    d = formats.read_domain(args.input)
    check = is_condorcet(d)
    report = {"size": len(d), "is_condorcet": bool(check)}
    if not check:
        report["violating_triple"] = list(check.triple)
        report["witness"] = [list(o.seq) for o in check.witness]
    elif args.maximal:
        maximal = is_maximal(d)
        report["is_maximal"] = bool(maximal)
        if not maximal:
            report["addable"] = list(maximal.witness[0].seq)
    ok = report["is_condorcet"] and report.get("is_maximal", True)
    if args.json:
        print(json.dumps(report))
    else:
        print(f"size {len(d)}: {'Condorcet' if check else 'NOT Condorcet'}")
        if not check:
            print(f"violating triple {check.triple}: " + ", ".join(str(o) for o in check.witness))
        elif "is_maximal" in report:
            print("maximal" if report["is_maximal"] else f"not maximal; can add {maximal.witness[0]}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze(args) -> int:
    report = analysis.analyze(formats.read_domain(args.input))
    if args.text:
        sys.stdout.write(report.as_text())
    else:
        print(json.dumps(report.as_dict(), indent=2))
    return EXIT_OK


def _triple_order(text: str, n: int):
    if text.startswith("file:"):
        order = []
        for line in Path(text[5:]).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                a, b, c = (int(tok) for tok in line.replace(",", " ").split())
                order.append(Triple(a, b, c))
        return tuple(order)
    return search.triple_schedule(n, text)


def _law_order(text: str):
    if text == "default":
        return IDENTITY_LAWS
    if text.startswith("file:"):
        return tuple(NeverLaw.parse(tok) for tok in Path(text[5:]).read_text().split())
    return tuple(NeverLaw.parse(tok) for tok in text.replace(",", " ").split())


def _write_search_output(result: search.SearchResult, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("domain_*.domain"):
        old.unlink()
    width = max(4, len(str(len(result.domains))))
    for i, d in enumerate(result.domains, start=1):
        (out / f"domain_{i:0{width}d}.domain").write_text(formats.render_domain(d))
    (out / "stats.json").write_text(json.dumps(result.stats.as_dict(), indent=2) + "\n")


def cmd_search(args) -> int:
    config = search.SearchConfig(
        n=args.n,
        cutoff=args.cutoff,
        triple_order=_triple_order(args.triple_order, args.n),
        law_order=_law_order(args.law_order),
        split_depth=args.split_depth,
        jobs=args.jobs,
        disabled=frozenset(args.no_prune or ()),
        time_limit=args.time_limit,
        literal=args.literal_prunes,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    census_path = out / "census.json"
    census = search.load_census(census_path) if args.resume and census_path.exists() else None
    try:
        result = search.search_max(config, census)
    except search.SearchIncomplete as exc:
        _write_search_output(exc.result, out)
        search.save_census(exc.result.census, census_path)
        print(str(exc), file=sys.stderr)
        return EXIT_INCOMPLETE
    _write_search_output(result, out)
    search.save_census(result.census, census_path)
    print(f"{len(result.domains)} domains, max size {result.max_size}", file=sys.stderr)
    return EXIT_OK


def cmd_fishburn(args) -> int:
    rules = alternating_scheme_rules(args.n, args.variant)
    if args.emit == "rules":
        _emit(formats.render_rules(rules, f"Fishburn alternating scheme, variant {args.variant}"), args.out)
    else:
        _emit(formats.render_domain(domain_from_rules(rules)), args.out)
    return EXIT_OK


def cmd_isomorphic(args) -> int:
    a, b = formats.read_domain(args.first), formats.read_domain(args.second)
    if a.n != b.n:
        raise UsageError("domains have different n")
    witness = are_isomorphic(a, b, allow_reversal=args.allow_reversal)
    if args.json:
        print(json.dumps(None if witness is None else {"g": list(witness.g.seq), "direction": witness.direction}))
    elif witness is None:
        print("not isomorphic")
    else:
        print(f"isomorphic: g = {witness.g} ({witness.direction})")
    return EXIT_OK if witness is not None else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="condorcet", description="Condorcet domain toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="domain of all orders obeying a rules file")
    g.add_argument("--rules", required=True)
    g.add_argument("--out")
    g.add_argument("--work-limit", type=int, default=10**7)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check the Condorcet property (and maximality)")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--maximal", action="store_true")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="structural property report")
    a.add_argument("--in", dest="input", required=True)
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--text", action="store_true")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", help="all unitary maximal domains of size >= cutoff")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cutoff", type=int, default=1)
    s.add_argument("--triple-order", default="lex", help="lex, colex or file:PATH")
    s.add_argument("--law-order", default="default", help="default, file:PATH or six comma-separated laws")
    s.add_argument("--split-depth", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-prune", action="append", choices=search.PRUNE_KINDS)
    s.add_argument("--literal-prunes", action="store_true",
                   help="use the looser duplicate/containment rules (incomplete from n=5)")
    s.add_argument("--time-limit", type=float)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("fishburn", help="Fishburn alternating-scheme rules or domain")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--variant", choices=VARIANTS, default="a")
    f.add_argument("--emit", choices=("rules", "domain"), default="rules")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fishburn)

    i = sub.add_parser("isomorphic", help="find a relabeling between two domains")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--allow-reversal", action="store_true")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_isomorphic)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc} (progress {exc.progress})", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
