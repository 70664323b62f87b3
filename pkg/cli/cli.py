import argparse
import logging
import os
import sys
from typing import IO, List, Optional

import numpy as np

from numerics.config import SolverConfig
from numerics.errors import AlgebraValidationError, AmbiguityError, ChartExitError, InvalidInputError
from . import handlers
from .output import emit

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_INPUT = 3

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as InvalidInputError instead of exiting with status 2."""

    def error(self, message):
        raise InvalidInputError(f"{self.prog}: {message}")


def configure_logging(verbose: bool = False):
    level = logging.INFO if verbose else getattr(logging, os.getenv("LIEFORGE_LOG_LEVEL", "WARNING").upper(), None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    """Builds the command-line parser; each subcommand carries its handler."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--verbose", action="store_true", help="log progress to standard error")
    common.add_argument("--param", action="append", metavar="NAME=VALUE",
                        help="bind a catalog or subalgebra parameter (repeatable)")

    parser = _Parser(prog="lieforge", description="Numerical Lie group engine driven by structure constants.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def command(name, handler, help_text, algebra=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if algebra:
            p.add_argument("algebra", help="algebra JSON file or catalog key")
        p.set_defaults(handler=handler)
        return p

    command("validate", handlers.validate, "check antisymmetry and the Jacobi identity")

    p = command("frame", handlers.frame, "invariant frames and Ad at a point")
    p.add_argument("--point", required=True)
    p.add_argument("--chart", choices=["second", "first"], default="second")

    p = command("compose", handlers.compose_points, "composition function z = Φ(x, y)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--method", choices=["adjoint", "ode", "rep"], default="adjoint")
    p.add_argument("--side", choices=["left", "right"], default="left", help="invariance equation for --method ode")
    p.add_argument("--rep", help="matrix representation JSON file for --method rep")

    p = command("inverse", handlers.inverse, "coordinates of the inverse element")
    p.add_argument("--point", required=True)

    p = command("coords", handlers.coords, "transition between first and second canonical coordinates")
    p.add_argument("--to", choices=["first", "second"], required=True)
    p.add_argument("--point", required=True)

    p = command("subgroup", handlers.subgroup, "point on a one-parameter subgroup exp(tY)")
    p.add_argument("--direction", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--method", choices=["quadrature", "ode"], default="quadrature")
    p.add_argument("--side", choices=["left", "right"], default="left")

    p = command("generators", handlers.generator_fields, "generators of the action on the coset space")
    p.add_argument("--subalgebra", required=True, help="basis indices (4,5) or vector rows (0,0,1,b;...)")
    p.add_argument("--point", required=True, help="coset coordinates q")

    p = command("action", handlers.act, "action function Ψ(q, z) on the coset space")
    p.add_argument("--subalgebra", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--z-chart", dest="z_chart", choices=["source", "adapted"], default="source")

    catalog = sub.add_parser("catalog", help="built-in algebras")
    catalog_sub = catalog.add_subparsers(dest="catalog_command", parser_class=_Parser)
    catalog_sub.required = True
    p = catalog_sub.add_parser("list", parents=[common], help="list catalog keys")
    p.set_defaults(handler=handlers.catalog_list)
    return parser


def run_command(argv: Optional[List[str]] = None, stdout: Optional[IO[str]] = None) -> int:
    """Runs one subcommand and returns its exit code; the payload goes to stdout."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except InvalidInputError as exc:
        configure_logging()
        log.error("%s", exc)
        return EXIT_INPUT
    configure_logging(args.verbose)

    try:
        cfg = SolverConfig.from_env()
        payload = args.handler(args, cfg)
    except AlgebraValidationError as exc:
        log.error("Invalid structure constants: %s", exc)
        report = exc.report
        emit({"valid": False, "total": report.total, "violations": [v.as_dict() for v in report.violations]},
             args.format, stdout)
        return EXIT_VALIDATION
    except (ChartExitError, AmbiguityError, np.linalg.LinAlgError) as exc:
        log.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (InvalidInputError, OSError, ValueError) as exc:
        log.error("Invalid input: %s", exc)
        return EXIT_INPUT

    emit(payload, args.format, stdout)
    return EXIT_OK
