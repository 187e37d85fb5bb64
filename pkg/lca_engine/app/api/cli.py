# app/api/cli.py
"""Command line entry: ``lca {check-axioms,solve,triple-hom,report} FILE ...``.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 flag error or unknown name,
4 precondition failure.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

from app.api import dependencies
from app.config import AppConfig
from app.domain.entities import EquationKind
from app.domain.errors import PRECONDITION_ERRORS, LcaError, UnknownNameError
from app.infrastructure import schemas
from app.infrastructure.dsl_parser import DslSyntaxError, SourceFile
from app.main import Application, create

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_PARSE = 2
EXIT_FLAGS = 3
EXIT_PRECONDITION = 4

SPACES = [k.value for k in EquationKind if k != EquationKind.CINN_MEMBER]


class FlagError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise FlagError(message)


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("degree bounds must be non-negative")
    return value


def build_parser(config: AppConfig) -> ArgumentParser:
    parser = ArgumentParser(prog=config.PROJECT_NAME, description=config.PROJECT_DESCRIPTION)
    common = ArgumentParser(add_help=False)
    common.add_argument("file", help="input .lca file")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--text", action="store_true", help="human-readable rendering of the report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    axioms = sub.add_parser("check-axioms", parents=[common], help="check skew-symmetry and Jacobi")
    axioms.add_argument("--algebra", required=True)
    axioms.set_defaults(handler=cmd_check_axioms)

    solve = sub.add_parser("solve", parents=[common], help="solve for a bounded derivation-like space")
    solve.add_argument("--algebra", required=True)
    solve.add_argument("--space", required=True, choices=SPACES)
    solve.add_argument("--deg-d", type=_non_negative, default=config.DEG_DEFAULT)
    solve.add_argument("--deg-x", type=_non_negative, default=config.DEG_DEFAULT)
    solve.add_argument("--format", choices=["json"], default="json")
    solve.set_defaults(handler=cmd_solve)

    triple = sub.add_parser("triple-hom", parents=[common], help="classify a module map")
    triple.add_argument("--map", required=True)
    triple.add_argument("--decompose", action="store_true")
    triple.set_defaults(handler=cmd_triple_hom)

    report = sub.add_parser("report", parents=[common], help="run the verification ledger")
    report.set_defaults(handler=cmd_report)
    return parser


def cmd_check_axioms(application: Application, gateway, source: SourceFile, args, report: schemas.Report) -> int:
    result = dependencies.get_axiom_interactor(application, gateway).check(source, args.algebra)
    report.results.append(result)
    return EXIT_OK if result.skew and result.jacobi else EXIT_VERIFICATION


def cmd_solve(application: Application, gateway, source: SourceFile, args, report: schemas.Report) -> int:
    interactor = dependencies.get_solve_interactor(application, gateway)
    report.results.append(interactor.solve(source, args.algebra, EquationKind(args.space), args.deg_d, args.deg_x))
    return EXIT_OK


def cmd_triple_hom(application: Application, gateway, source: SourceFile, args, report: schemas.Report) -> int:
    interactor = dependencies.get_triple_hom_interactor(application, gateway)
    report.results.append(interactor.run(source, args.map, args.decompose))
    return EXIT_OK


def cmd_report(application: Application, gateway, source: SourceFile, args, report: schemas.Report) -> int:
    interactor = dependencies.get_report_interactor(application, gateway)
    report.results.extend(interactor.run(source))
    return EXIT_VERIFICATION if application.ledger.failed else EXIT_OK


def _error(exc: LcaError) -> schemas.ErrorOut:
    witness = None
    if isinstance(exc.witness, (tuple, list)):
        witness = [str(w) for w in exc.witness]
    return schemas.ErrorOut(error=exc.code, detail=exc.detail, witness=witness)


def render_text(tree: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(tree, dict):
        for key in sorted(tree):
            value = tree[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(tree, list):
        for item in tree:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(tree)}")
    return lines


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return "none"
    return str(value)


def dump(report: schemas.Report, text: bool) -> str:
    tree = report.model_dump()
    if text:
        return "\n".join(render_text(tree)) + "\n"
    return json.dumps(tree, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    application = create()
    logger = application.logger
    parser = build_parser(application.config)
    try:
        args = parser.parse_args(argv)
    except FlagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS

    gateway = dependencies.get_source_gateway(application)
    try:
        source = gateway.load(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_FLAGS
    except DslSyntaxError as exc:
        for diagnostic in exc.diagnostics:
            print(f"{args.file}:{diagnostic.format()}", file=sys.stderr)
        return EXIT_PARSE

    config = application.config
    report = schemas.Report(
        schema_version=config.REPORT_SCHEMA_VERSION,
        tool_version=config.PROJECT_VERSION,
        input_digest=gateway.digest,
        command=args.command,
    )
    try:
        code = args.handler(application, gateway, source, args, report)
    except UnknownNameError as exc:
        report.results.append(_error(exc))
        code = EXIT_FLAGS
    except PRECONDITION_ERRORS as exc:
        report.results.append(_error(exc))
        code = EXIT_PRECONDITION
    except LcaError as exc:
        logger.error("%s", exc)
        report.results.append(_error(exc))
        code = EXIT_VERIFICATION
    report.ledger = application.ledger.take()

    output = dump(report, args.text)
    if args.output:
        Path(args.output).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return code
