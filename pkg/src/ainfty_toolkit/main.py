#!/usr/bin/env python
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError
from sqlalchemy.exc import SQLAlchemyError

from ainfty_toolkit.errors import AInftyToolkitError, InfeasibleSizeError, ParseError
from ainfty_toolkit.routers import (
    category_router,
    functor_router,
    localization_router,
    nerve_router,
    reports_router,
    verify_router,
)
from ainfty_toolkit.routers.reports_router import store_run
from ainfty_toolkit.utils.database import get_session, init_db
from ainfty_toolkit.utils.reports import EXIT_FAILED, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, Report, render, write_report
from ainfty_toolkit.utils.settings import RunOptions, Settings, load_settings

logger = logging.getLogger(__name__)

ROUTERS = (category_router, localization_router, nerve_router, functor_router, verify_router, reports_router)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default=None, help="F<p>, Z or Q")
    common.add_argument("--L", dest="truncation", type=int, default=None, help="word length truncation")
    common.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), default=None,
                        help="cohomological degrees to report")
    common.add_argument("--arity", type=int, default=None, help="arity bound for relations and cochains")
    common.add_argument("--dim", dest="nerve_dimension", type=int, default=None, help="nerve dimension bound")
    common.add_argument("--format", dest="output_format", default="text", help="text or json")
    common.add_argument("--output", default=None, help="also write the JSON report to this path")
    common.add_argument("--store", action="store_true", help="record the run in the run history")
    common.add_argument("--lemma", default=None, help="verify-paper: run one lemma only")
    common.add_argument("--invert", nargs="+", default=[], metavar="SRC->TGT:LABEL",
                        help="morphisms to invert (default: the recorded units)")

    parser = argparse.ArgumentParser(prog="ainfty", description="Exact computations with A∞-categories")
    subparsers = parser.add_subparsers(dest="verb", required=True)
    for router in ROUTERS:
        router.register(subparsers, [common])
    return parser


def configure_logging(level: str):
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _pick(value, default):
    return default if value is None else value


def run_options(args: argparse.Namespace, settings: Settings) -> RunOptions:
    """Flags over settings; verify-paper falls back to its own window, truncation and arity."""
    verify = args.verb == "verify-paper"
    return RunOptions(
        ring=_pick(args.ring, settings.ring),
        truncation=_pick(args.truncation, settings.verify.truncation if verify else settings.truncation),
        window=tuple(args.window) if args.window else (settings.verify.window if verify else settings.window),
        arity=_pick(args.arity, settings.verify.relation_arity if verify else settings.arity),
        nerve_dimension=_pick(args.nerve_dimension, settings.nerve_dimension),
        max_arity=settings.max_arity,
        output_format=args.output_format,
        invert=args.invert,
        lemma=args.lemma,
    )


def _inputs(args: argparse.Namespace) -> List[str]:
    return [str(v) for v in (getattr(args, "category", None), getattr(args, "functor", None),
                             getattr(args, "target", None)) if v]


def persist(args: argparse.Namespace, report: Report):
    try:
        init_db()
        session = next(get_session())
        try:
            record = store_run(session, _inputs(args), report)
            logger.info("stored run %s", record.id)
        finally:
            session.close()
    except SQLAlchemyError as exc:
        logger.error("could not store the run: %s", exc)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse the command line, validate the options, dispatch to the verb and print the report.
    Returns the exit status.
    """
    settings = load_settings()
    configure_logging(settings.log_level)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        options = run_options(args, settings)
    except ValidationError as exc:
        sys.stderr.write(f"invalid options: {exc}\n")
        return EXIT_USAGE

    sections, error = {}, None
    try:
        passed, sections = args.handler(args, options)
        exit_code = EXIT_OK if passed else EXIT_FAILED
    except ParseError as exc:
        exit_code, error = EXIT_USAGE, str(exc)
        sections = {"location": exc.location}
    except InfeasibleSizeError as exc:
        exit_code, error = EXIT_INFEASIBLE, str(exc)
        sections = {"estimate": exc.estimate}
    except AInftyToolkitError as exc:
        exit_code, error = EXIT_USAGE, str(exc)
    if error:
        logger.error(error)

    report = Report(
        schema_version=settings.report_schema_version,
        verb=args.verb,
        options=options.model_dump(mode="json"),
        passed=exit_code == EXIT_OK,
        exit_code=exit_code,
        sections=sections,
        error=error,
    )
    sys.stdout.write(render(report, options.output_format))
    if args.output:
        write_report(report, Path(args.output))
    if args.store and args.verb != "reports":
        persist(args, report)
    return exit_code


if __name__ == "__main__":
    sys.exit(run())
