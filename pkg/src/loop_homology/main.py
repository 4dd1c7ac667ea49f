import argparse
import logging
import sys
from typing import Optional, Sequence, Tuple

from .arithmetic import bockstein_exponents
from .cli import parse_arguments
from .cobar import cotor
from .errors import ComputationError, InputError
from .fixture_parser import load_fixture
from .logging_utils import setup_logging
from .output_formatter import (
    format_cotor_machine,
    format_cotor_text,
    format_nu2_machine,
    format_nu2_text,
    format_report_machine,
    format_report_text,
    write_output,
)
from .registry import coalgebra_of
from .suites import run_suite, verify_fixture

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def run_verify(args: argparse.Namespace) -> Tuple[str, bool]:
    if args.fixture:
        logging.info(f"Verifying fixture file {args.fixture}")
        report = verify_fixture(args.fixture, args.maxdeg)
    else:
        report = run_suite(args.suite, args.maxdeg, args.jobs)
    content = format_report_machine(report) if args.format == "machine" else format_report_text(report)
    return content, report.passed


def run_cotor(args: argparse.Namespace) -> Tuple[str, bool]:
    fixture = load_fixture(args.coalgebra)
    dims = cotor(coalgebra_of(fixture, args.maxdeg + 2), args.maxdeg)
    logging.info(f"Cotor of {fixture.name}: {dims}")
    if args.format == "machine":
        return format_cotor_machine(fixture.name, dims), True
    return format_cotor_text(fixture.name, dims), True


def run_nu2(args: argparse.Namespace) -> Tuple[str, bool]:
    exponents = bockstein_exponents(args.q)
    passed = not exponents.identity_failures()
    if args.format == "machine":
        return format_nu2_machine(exponents), passed
    return format_nu2_text(exponents), passed


COMMANDS = {"verify": run_verify, "cotor": run_cotor, "nu2": run_nu2}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns 0 when every check passes, 1 on a failed check or computation, 2 on bad input."""
    args = parse_arguments(argv)

    setup_logging(args.log_level)
    logging.info(f"Starting loophom {args.command}")

    try:
        content, passed = COMMANDS[args.command](args)
    except (InputError, OSError) as err:
        logging.fatal(f"{type(err).__name__}: {err}")
        return EXIT_INPUT
    except ComputationError as err:
        logging.error(f"{type(err).__name__}: {err}")
        return EXIT_FAIL

    write_output(content, args.output, args.format)

    if not passed:
        logging.warning("Some checks failed")
        return EXIT_FAIL
    logging.info("All checks passed")
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
