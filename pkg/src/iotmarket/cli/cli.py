"""
iotmarket CLI
-------------
Unified command-line interface for:
• init
• validate
• solve
• verify
• simulate
• report
• diagnose

Exit status: 0 success, 1 audit failure or assumption violation,
2 input error, 3 numerical failure. Every failure prints one line
`error: <kind>: <message>` to stderr.
"""

from __future__ import annotations
from typing import Callable, Dict, List, Optional
import argparse
import logging
import sys

from pydantic import ValidationError

from ..config import settings
from ..exprlang import ExprError
from ..logging_setup import configure_logging
from ..market import MarketError
from ..numerics import NumericsError
from ..solver import SolverError
from ..telemetry import span
from ..verification import VerificationError
from .cli_exceptions import CliError, UsageError
from .commands.diagnose_cmd import cmd_diagnose
from .commands.init_cmd import cmd_init
from .commands.report_cmd import cmd_report
from .commands.simulate_cmd import cmd_simulate
from .commands.solve_cmd import cmd_solve
from .commands.validate_cmd import cmd_validate
from .commands.verify_cmd import cmd_verify

logger = logging.getLogger("iotmarket.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

INPUT_ERRORS = (ExprError, MarketError, CliError, ValidationError, VerificationError)
NUMERIC_ERRORS = (NumericsError, SolverError)

COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "init": cmd_init,
    "validate": cmd_validate,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "report": cmd_report,
    "diagnose": cmd_diagnose,
}


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors go through the same one-line path as every other input error."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _market_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--market", required=True, help="Market file path or bundled market name.")
    p.add_argument("--grid-n", dest="grid_n", type=int, default=None, help="Cut-off grid size (default 512).")


def _run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--objective", choices=("welfare", "revenue"), default=None)
    p.add_argument("--audit-n", dest="audit_n", type=int, default=None)
    p.add_argument("--out-dir", dest="out_dir", default=None)
    p.add_argument("--quad-abs", dest="quad_abs", type=float, default=None)
    p.add_argument("--quad-rel", dest="quad_rel", type=float, default=None)
    p.add_argument("--root-x", dest="root_x", type=float, default=None)
    p.add_argument("--max-depth", dest="max_depth", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="iotmarket",
        description="Mechanism design engine for two-sided IoT data markets",
    )
    parser.add_argument("--log-level", dest="log_level", default=None,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"), type=str.upper)
    parser.add_argument("--log-format", dest="log_format", default=None, choices=("json", "text"))
    sub = parser.add_subparsers(dest="command", required=True)

    # init
    init_p = sub.add_parser("init", help="Write the bundled example market to a directory.")
    init_p.add_argument("--dir", default=".", help="Output directory.")

    # validate
    validate_p = sub.add_parser("validate", help="Check the standing assumptions on a sampled grid.")
    _market_args(validate_p)

    # solve / verify / report
    for name, text in (
        ("solve", "Solve the optimal cut-off mechanism."),
        ("verify", "Solve and audit the mechanism."),
        ("report", "Compare both objectives and sweep block rules."),
    ):
        p = sub.add_parser(name, help=text)
        _market_args(p)
        _run_args(p)
        if name == "report":
            p.add_argument("--sweep-n", dest="sweep_n", type=int, default=None)

    # simulate
    sim_p = sub.add_parser("simulate", help="Monte-Carlo realisation of the solved mechanism.")
    _market_args(sim_p)
    _run_args(sim_p)
    sim_p.add_argument("--seed", type=int, default=None)
    sim_p.add_argument("--n-sellers", dest="n_sellers", type=int, default=None)
    sim_p.add_argument("--n-buyers", dest="n_buyers", type=int, default=None)

    # diagnose
    sub.add_parser("diagnose", help="Print interpreter, library and host facts.")
    return parser


def _fail(exc: BaseException, status: int) -> int:
    message = " ".join(str(exc).split()) or type(exc).__name__
    print(f"error: {type(exc).__name__}: {message}", file=sys.stderr)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(exc, EXIT_INPUT)
    configure_logging(args.log_level or settings.LOG_LEVEL, args.log_format or settings.LOG_FORMAT)

    try:
        with span("cli.command", command=args.command) as result:
            status = COMMANDS[args.command](args)
            result["status"] = status
        return status
    except INPUT_ERRORS as exc:
        logger.debug({"event": "cli.input_error", "command": args.command}, exc_info=True)
        return _fail(exc, EXIT_INPUT)
    except NUMERIC_ERRORS as exc:
        logger.debug({"event": "cli.numeric_error", "command": args.command}, exc_info=True)
        return _fail(exc, EXIT_NUMERIC)
    except Exception as exc:
        logger.error({"event": "cli.unexpected_error", "command": args.command}, exc_info=True)
        return _fail(exc, EXIT_NUMERIC)


if __name__ == "__main__":
    sys.exit(main())
