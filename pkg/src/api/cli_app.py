"""Command Line Interface application."""

import sys
import argparse
import logging
from typing import List, Optional

from ..config.settings import RunConfig, get_settings
from ..core.services import VerificationService
from ..domain.errors import FamilyError, PolyEigError, SolverError, TheoremViolation
from ..domain.reports import VerificationReport
from ..infrastructure.report_writer import FORMATS, ReportWriter

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3

# commands whose second word picks the target
TARGETS = {
    "bounds": ("cauchy",),
    "verify": ("ds", "schur", "unit-circle", "unitary"),
    "extremal": ("inf", "sup", "schur-sup"),
    "example": ("mass-spring",),
}


class PolyEigCLI:
    """Command line interface for eigenvalue computation and theorem checks."""

    def __init__(self, verbose: bool = False):
        self.settings = get_settings()
        self.verbose = verbose
        self.service = VerificationService(self.settings)
        self.writer = ReportWriter(indent=self.settings.output.json_indent)
        self.logger = logging.getLogger(__name__)

    def configure_logging(self) -> None:
        # stdout carries the report; logs go to stderr
        logging.basicConfig(
            level=logging.DEBUG if self.verbose else getattr(logging, self.settings.logging.level),
            format=self.settings.logging.format,
            stream=sys.stderr,
        )

    def run(self, config: RunConfig) -> int:
        """Run one command, write its report and return the exit status."""
        try:
            report = self.service.run(config)
        except TheoremViolation as e:
            self.logger.error(f"Theorem violation: {e}")
            return EXIT_FAIL
        except SolverError as e:
            self.logger.error(f"Solver failure: {e}")
            if e.partial is not None:
                self.logger.info(f"Partial spectrum had {e.partial.count} eigenvalue(s)")
            return EXIT_SOLVER
        except FamilyError as e:
            self.logger.error(f"Hypothesis not met: {e}")
            return EXIT_USAGE
        except (PolyEigError, ValueError) as e:
            self.logger.error(f"{type(e).__name__}: {e}")
            return EXIT_USAGE
        except OSError as e:
            self.logger.error(f"Cannot read input: {e}")
            return EXIT_USAGE

        return self.emit(report, config)

    def emit(self, report: VerificationReport, config: RunConfig) -> int:
        try:
            self.writer.write(report, config.output_path, config.output_format)
        except OSError as e:
            self.logger.error(f"Cannot write report: {e}")
            return EXIT_USAGE
        return EXIT_PASS if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per theorem family."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--input', dest='input_path', help='MatrixPolynomial JSON document')
    common.add_argument('--n', type=int, help='Coefficient size (or n_param for witnesses)')
    common.add_argument('--m', type=int, help='Polynomial degree')
    common.add_argument('--r', type=float, help='Spectral radius bound or witness radius')
    common.add_argument('--k', type=int, help='Birkhoff terms per doubly stochastic coefficient')
    common.add_argument('--trials', type=int, help='Number of random instances')
    common.add_argument('--seed', type=int, default=0, help='Base seed (trial t uses seed + t)')
    common.add_argument('--tol', type=float, help='Override the command tolerance')
    common.add_argument('--output', dest='output_path', help='Report path (default: stdout)')
    common.add_argument('--format', dest='output_format', choices=FORMATS,
                        default=get_settings().output.default_format, help='Report format')
    common.add_argument('--emit', dest='emit_path', help='Also save the generated polynomial')
    common.add_argument('--workers', type=int, help='Threads for independent trials')
    common.add_argument('--timing', action='store_true', help='Record runtime in the summary')
    common.add_argument('-v', '--verbose', action='store_true', help='Verbose output')

    parser = argparse.ArgumentParser(
        description="Matrix polynomial eigenvalues and eigenvalue-location checks"
    )
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('eig', parents=[common], help='Eigenvalues of a polynomial file')
    for name, targets in TARGETS.items():
        sub = commands.add_parser(name, parents=[common], help=f"{name} {'|'.join(targets)}")
        sub.add_argument('target', choices=targets)
        if name == 'example':
            sub.add_argument('--size', type=int, help='Number of masses')

    counter = commands.add_parser('counterexample', parents=[common],
                                  help='Polynomials outside a theorem hypothesis')
    counter.add_argument('--kind', choices=('noncommuting', 'ds-endpoint'), default='noncommuting')

    sweep = commands.add_parser('sweep', parents=[common], help='Inf/sup sweep of a family')
    sweep.add_argument('--family', choices=('D', 'S_r', 'U'), default='D')

    return parser


def to_run_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    if getattr(args, 'target', None):
        command = f"{command} {args.target}"
    return RunConfig(
        command=command,
        input_path=args.input_path,
        n=args.n,
        m=args.m,
        r=args.r,
        k=args.k,
        trials=args.trials,
        size=getattr(args, 'size', None),
        family=getattr(args, 'family', None),
        kind=getattr(args, 'kind', None),
        seed=args.seed,
        tol=args.tol,
        output_path=args.output_path,
        output_format=args.output_format,
        emit_path=args.emit_path,
        workers=args.workers,
        timing=args.timing,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)

    cli = PolyEigCLI(verbose=args.verbose)
    cli.configure_logging()

    return cli.run(to_run_config(args))


if __name__ == "__main__":
    sys.exit(main())
