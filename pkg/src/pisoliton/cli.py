"""Command-line front end.

Exit codes: 0 when every requested check passes or fits, 1 when at least one
fails or has no fit, 2 on input or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .fixtures import example_spec_path
from .report import CHECKS, SuiteOptions, emit, run_suite
from .scalar import ParseError
from .specfile import SpecError, load_spec

BUILTIN = "builtin"


class _UsageError(Exception):
    pass


def _substitution(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or not name.isidentifier():
        raise argparse.ArgumentTypeError(f"expected NAME=RATIONAL, got {text!r}")
    try:
        return name, Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{value.strip()!r} is not a rational number") from None


def _load(path: str):
    return load_spec(example_spec_path() if path == BUILTIN else path)


def _options(args, checks=None) -> SuiteOptions:
    subs = {}
    for name, value in args.set or []:
        if name in subs:
            raise _UsageError(f"parameter {name!r} assigned twice")
        subs[name] = value
    return SuiteOptions(checks=checks, substitutions=subs)


def _write(args, payload: bytes):
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def _cmd_validate(args) -> int:
    spec = _load(args.spec)
    frame, structure = spec.build(_options(args).substitutions)
    print(f"{spec.source}: ok ({spec.name}, dim {spec.dim}, params [{', '.join(spec.params)}])")
    return 0


def _run(args, checks) -> int:
    spec = _load(args.spec)
    fmt = "structured" if args.format == "json" else "text"
    report = run_suite(spec, _options(args, checks))
    _write(args, emit(report, fmt))
    return report.exit_code


def _cmd_run(args) -> int:
    return _run(args, None)


def _cmd_check(args) -> int:
    unknown = [n for n in args.names if n not in CHECKS]
    if unknown:
        raise _UsageError(f"unknown check(s): {', '.join(unknown)}; available: {', '.join(CHECKS)}")
    return _run(args, args.names)


def _cmd_list(args) -> int:
    for name, (needs, _) in CHECKS.items():
        print(f"{name}" + (f"  (needs {', '.join(needs)})" if needs else ""))
    return 0


def _cmd_example(args) -> int:
    text = example_spec_path().read_bytes()
    _write(args, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pisoliton", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_args(p, fmt=True):
        p.add_argument("spec", help=f"path to a .pis file, or '{BUILTIN}' for the shipped 5-dimensional example")
        p.add_argument("--set", action="append", type=_substitution, metavar="NAME=Q",
                       help="substitute a rational value for a parameter (repeatable)")
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")
            p.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = sub.add_parser("validate", help="parse and validate a manifold file")
    spec_args(p, fmt=False)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("run", help="run the full check suite")
    spec_args(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("check", help="run named checks only")
    spec_args(p)
    p.add_argument("names", nargs="+", metavar="CHECK")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("list-checks", help="list available checks in execution order")
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("example", help="print the shipped example file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (SpecError, ParseError, _UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
