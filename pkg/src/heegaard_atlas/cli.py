"""Command-line entry point: ``heegaard-atlas <command> ...``.

Exit status is 0 when every requested check passes, 1 when one fails and 2
for usage errors (unknown record, bad flags, unreadable input).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import diagram
from .atlas import AtlasError, load_atlas, run_atlas
from .groupcalc import Index, homology_h1, todd_coxeter
from .presentation import Presentation, certificate_to_json, simplify_greedy
from .words import WordError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message format
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load_presentation(path: str) -> Presentation:
    try:
        return Presentation.from_json(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, KeyError, WordError, ValueError) as exc:
        raise UsageError(f"cannot read presentation {path}: {exc}") from exc


def _atlas(args):
    try:
        return load_atlas(args.atlas)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read atlas: {exc}") from exc


def cmd_verify(args) -> int:
    records = _atlas(args)
    names = [r.name for r in records]
    if args.all:
        chosen = None
    elif args.name:
        unknown = [n for n in args.name if n not in names]
        if unknown:
            raise UsageError(f"unknown record(s) {', '.join(unknown)}; known: {', '.join(names)}")
        chosen = args.name
    else:
        raise UsageError("give record names or --all")
    report = run_atlas(records, chosen)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_report(args) -> int:
    args.all, args.name = True, None
    return cmd_verify(args)


def cmd_h1(args) -> int:
    print(homology_h1(_load_presentation(args.file)))
    return EXIT_OK


def cmd_tc(args) -> int:
    p = _load_presentation(args.file)
    try:
        subgroup = [p.word(w) for w in args.subgroup]
    except WordError as exc:
        raise UsageError(str(exc)) from exc
    result = todd_coxeter(p, subgroup, args.max_cosets, strategy=args.strategy)
    if isinstance(result, Index):
        print(f"index {result.n}")
        return EXIT_OK
    print(f"exhausted after {result.max_cosets} cosets")
    return EXIT_FAIL


def cmd_simplify(args) -> int:
    p = _load_presentation(args.file)
    result, cert = simplify_greedy(p)
    print(result)
    if args.certificate:
        Path(args.certificate).write_text(json.dumps(certificate_to_json(cert), indent=2) + "\n")
    return EXIT_OK


def cmd_realize(args) -> int:
    p = _load_presentation(args.file)
    if len(p.generators) != 2 or len(p.relators) != 2:
        raise UsageError("realize needs two generators and two relators")
    r1, r2 = p.relators
    result = diagram.realize(r1, r2, args.budget)
    if isinstance(result, diagram.Realizable):
        enc = diagram.encoding_from_witness(r1, r2, result.witness)
        print(f"realizable ({result.nodes} nodes)")
        print(json.dumps({"handle_orders": result.witness.to_json(), "encoding": enc.to_json()}, indent=2))
        return EXIT_OK
    if isinstance(result, diagram.NotRealizable):
        print(f"not realizable ({result.nodes} nodes searched)")
    else:
        print(f"exhausted (budget {result.budget})")
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="heegaard-atlas", description="Check group and diagram claims for genus-2 Heegaard diagrams.")
    ap.add_argument("--atlas", default=None, help="atlas JSON file (default: the shipped one)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the checks of some or all atlas records")
    v.add_argument("name", nargs="*")
    v.add_argument("--all", action="store_true")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="run every check and print the report")
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.set_defaults(func=cmd_report)

    h = sub.add_parser("h1", help="first homology of a presented group")
    h.add_argument("file")
    h.set_defaults(func=cmd_h1)

    t = sub.add_parser("tc", help="index of a subgroup by coset enumeration")
    t.add_argument("file")
    t.add_argument("--subgroup", action="append", default=[], metavar="W")
    t.add_argument("--max-cosets", type=int, default=200_000)
    t.add_argument("--strategy", choices=("hlt", "felsch"), default="hlt")
    t.set_defaults(func=cmd_tc)

    s = sub.add_parser("simplify", help="eliminate generators greedily")
    s.add_argument("file")
    s.add_argument("--certificate", metavar="OUT", help="write the Tietze certificate here")
    s.set_defaults(func=cmd_simplify)

    z = sub.add_parser("realize", help="search for a genus-2 diagram realizing a relator pair")
    z.add_argument("file")
    z.add_argument("--budget", type=int, default=diagram.DEFAULT_BUDGET)
    z.set_defaults(func=cmd_realize)
    return ap


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_cosets", 1) < 1 or getattr(args, "budget", 1) < 1:
            raise UsageError("limits must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AtlasError as exc:
        print(f"atlas error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())
