import argparse
from typing import Optional, Sequence

from .logging_utils import LOG_LEVELS


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=["text", "machine"],
        default="text",
        help="Report format: ASCII tables or JSON Lines (default: text)",
    )
    parser.add_argument(
        "--output",
        "-o",
        default="-",
        help="Output file path, '-' for stdout (default: '-')",
    )


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _degree(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a degree >= 0, got {value}")
    return number


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(
        prog="loophom",
        description="Verify mod-2 loop space homology computations over GF(2).",
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        default="info",
        help="Set logging level (default: info)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a verification suite or check a fixture file")
    verify.add_argument("--suite", default="all", help="Suite name (default: all)")
    verify.add_argument(
        "--maxdeg",
        type=_degree,
        help="Cap every check at this degree (default: each check's own ceiling)",
    )
    verify.add_argument("--jobs", type=_positive, default=1, help="Worker processes (default: 1)")
    verify.add_argument("--fixture", help="Verify this fixture file instead of a registered suite")
    _add_output_options(verify)

    cotor = commands.add_parser("cotor", help="Cotor dimensions of a coalgebra fixture")
    cotor.add_argument("--coalgebra", required=True, help="Path to an algebra or ring fixture")
    cotor.add_argument("--maxdeg", type=_degree, default=12, help="Top degree (default: 12)")
    _add_output_options(cotor)

    nu2 = commands.add_parser("nu2", help="Bockstein exponents r2, r4, r6, r14 for an odd q")
    nu2.add_argument("--q", type=int, required=True, help="Odd integer q >= 3")
    _add_output_options(nu2)

    return parser.parse_args(argv)
