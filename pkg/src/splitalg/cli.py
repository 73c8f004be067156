"""Command-line entry point for the splitalg workbench.

Exit status is 2 for malformed input and 0 otherwise; absent witnesses and
failed certificates are reported as data.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reports
from .algebra import AlgebraError, algebra_to_dict, builtin, load_algebra
from .clone import DEFAULT_CAP
from .corpus import write_corpus
from .terms import ParseError

INPUT_ERRORS = (AlgebraError, ParseError, json.JSONDecodeError, OSError, KeyError, ValueError)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-clone", type=int, default=DEFAULT_CAP,
                   help="maximum clone size per arity (default %(default)s)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--limit-homs", type=int, default=None,
                   help="truncate homomorphism and split-epi enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="search every witness class on one algebra")
    p.add_argument("algebra", help="algebra JSON file or builtin:FAMILY:N[:pointed]")
    p.add_argument("--proto-n", type=int, nargs="+", default=[1])
    p.add_argument("--require-bijective", action="store_true",
                   help="also require s_i(p(x_1,...,x_n,y),y)=x_i")
    _common(p)

    p = sub.add_parser("decompose", help="split epis A -> B with phi/psi certificates")
    p.add_argument("algebra_a")
    p.add_argument("algebra_b")
    for flag in ("--plus", "--minus", "--p", "--q"):
        p.add_argument(flag, default=None, help="witness term (default: searched)")
    _common(p)

    p = sub.add_parser("translate", help="run a term translation from a JSON spec file")
    p.add_argument("spec")
    _common(p)

    p = sub.add_parser("verify-naturality", help="naturality sweep over a corpus directory")
    p.add_argument("corpus_dir")
    p.add_argument("--plus", default=None)
    p.add_argument("--minus", default=None)
    _common(p)

    p = sub.add_parser("corpus", help="write the standard corpus as JSON files")
    p.add_argument("directory")

    p = sub.add_parser("builtin", help="print a builtin algebra as JSON")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("--pointed", action="store_true")
    return parser


def run(args: argparse.Namespace) -> dict | None:
    if args.command == "classify":
        A = reports.resolve_algebra(args.algebra)
        return reports.classify(A, args.max_clone, args.proto_n, args.require_bijective)
    if args.command == "decompose":
        A = reports.resolve_algebra(args.algebra_a)
        B = reports.resolve_algebra(args.algebra_b)
        return reports.decompose(A, B, args.max_clone, args.plus, args.minus, args.p, args.q,
                                 args.limit_homs)
    if args.command == "translate":
        spec = json.loads(Path(args.spec).read_text())
        return reports.translate(spec, Path(args.spec).parent)
    if args.command == "verify-naturality":
        paths = sorted(Path(args.corpus_dir).glob("*.json"))
        if not paths:
            raise AlgebraError(f"no algebra files in {args.corpus_dir}")
        algebras = [load_algebra(p) for p in paths]
        return reports.verify_naturality(algebras, args.limit_homs, args.max_clone,
                                         args.plus, args.minus)
    if args.command == "corpus":
        for path in write_corpus(args.directory):
            print(path)
        return None
    if args.command == "builtin":
        options = {"pointed": True} if args.pointed else {}
        print(json.dumps(algebra_to_dict(builtin(args.family, args.n, **options))))
        return None
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except INPUT_ERRORS as exc:
        print(f"splitalg: error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        out = reports.to_text(report) if args.format == "text" else reports.to_json(report)
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
