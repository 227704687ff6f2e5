"""riskseed command line.

Exit codes: 0 success, 1 validation errors, 2 unreadable or malformed input,
3 usage errors. Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .ingest import parse_catalog, parse_model
from .model import Diagnostic, Severity, error, natural_sorted
from .needs import asset_needs, personal_connection_lint
from .report import render_needs, render_register
from .risks import assess

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_USAGE = 3

_PARSE_CODES = {"E-PARSE", "E-SCHEMA"}


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.format_usage()}{self.prog}: error: {message}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strict", action="store_true", help="treat warnings as errors")
    p.add_argument("--quiet", action="store_true", help="do not print warnings")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="riskseed", description="Long-term risk identification for smart devices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("validate", help="check a model file")
    p.add_argument("model")
    _common(p)

    p = sub.add_parser("needs", help="protection needs of data, assets and use cases")
    p.add_argument("model")
    p.add_argument("--format", choices=["md", "csv"], default="md")
    _common(p)

    p = sub.add_parser("risks", help="consolidated long-term risk register")
    p.add_argument("model")
    p.add_argument("catalog")
    p.add_argument("--format", choices=["md", "csv"], default="md")
    _common(p)

    p = sub.add_parser("impact", help="use cases impacted by one risk")
    p.add_argument("model")
    p.add_argument("catalog")
    p.add_argument("--risk", required=True, metavar="ID")
    _common(p)
    return parser


def _styled(text: str, severity: Severity, stream) -> str:
    if os.environ.get("RISKSEED_NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    colour = "31" if severity is Severity.ERROR else "33"
    return f"\033[{colour}m{text}\033[0m"


class _Session:
    def __init__(self, args, stderr):
        self.strict = args.strict
        self.quiet = args.quiet
        self.stderr = stderr
        self.failed_parse = False
        self.failed = False

    def report(self, diagnostics: list[Diagnostic]) -> None:
        for d in diagnostics:
            if d.severity is Severity.WARNING and self.strict:
                d = replace(d, severity=Severity.ERROR)
            if d.is_error:
                self.failed = True
                if d.code in _PARSE_CODES:
                    self.failed_parse = True
            elif self.quiet:
                continue
            print(_styled(str(d), d.severity, self.stderr), file=self.stderr)

    def exit_code(self) -> int:
        if self.failed_parse:
            return EXIT_PARSE
        return EXIT_INVALID if self.failed else EXIT_OK

    def load(self, path: str, parse):
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            self.report([error("E-PARSE", (), f"cannot read {path}: {exc.strerror or exc}")])
            return None
        value, diagnostics = parse(raw)
        self.report(diagnostics)
        return value

    def load_model(self, path: str):
        model = self.load(path, parse_model)
        if model is not None:
            self.report(personal_connection_lint(model, asset_needs(model)))
        return model


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE

    session = _Session(args, stderr)
    model = session.load_model(args.model)
    catalog = None
    if args.command in ("risks", "impact"):
        catalog = session.load(args.catalog, parse_catalog)
    if session.failed or model is None or (args.command in ("risks", "impact") and catalog is None):
        return session.exit_code() or EXIT_INVALID

    if args.command == "needs":
        stdout.write(render_needs(asset_needs(model), args.format))
    elif args.command == "risks":
        stdout.write(render_register(assess(model, catalog), args.format))
    elif args.command == "impact":
        if not any(rule.id == args.risk for rule in catalog):
            print(f"riskseed: error: no rule with id {args.risk!r} in {args.catalog}", file=stderr)
            return EXIT_USAGE
        entry = assess(model, catalog).get(args.risk)
        for uc_id in natural_sorted(entry.impacted_use_cases if entry else ()):
            print(uc_id, file=stdout)
    return session.exit_code()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
