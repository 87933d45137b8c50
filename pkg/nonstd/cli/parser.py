"""
Argument parser of the ``nonstd`` command.
"""

import argparse
from typing import NoReturn

from nonstd.errors import UsageError

GRAMMAR_HINT = (
    "expressions use x, rationals p/q, + - * / ^int, parentheses and "
    "sin cos exp ln sqrt abs, e.g. \"x^2*sin(1/x)\""
)


class Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    common = Parser(add_help=False)
    common.add_argument('--json', action='store_true', help="Print the report as JSON")
    common.add_argument('--trunc-order', dest='trunc_order', help="Levi-Civita truncation order, p/q")
    common.add_argument('--prec', type=int, help="Bits for transcendental enclosures")
    common.add_argument('--probes', help="Comma separated infinitesimal probes, e.g. 'eps, -eps, eps^2'")
    common.add_argument('--pairs', help="Probe pairs for two-point criteria, e.g. '0, eps; eps, 2*eps'")
    common.add_argument('--extend-zero', dest='extend_zero', action='store_true',
                        help="Take f(a) = 0 where f is undefined at a")
    common.add_argument('--verbose', action='store_true', help="Log at DEBUG level to stderr")
    common.add_argument('--store', metavar='URL', help="Persist the report to this database URL")
    return common


def _schedule() -> argparse.ArgumentParser:
    schedule = Parser(add_help=False)
    schedule.add_argument('--eps', dest='schedule', help="Descending eps schedule, e.g. 1/10,1/1000")
    return schedule


def build_parser() -> argparse.ArgumentParser:
    """The full parser with one sub-command per check."""
    common, schedule = _common(), _schedule()
    parser = Parser(prog='nonstd', description="Non-standard and classical analysis checks with exact rationals.",
                    epilog=GRAMMAR_HINT)
    commands = parser.add_subparsers(dest='command', required=True, metavar='command')

    limit = commands.add_parser('limit', parents=[common, schedule], help="Limit of f at a")
    limit.add_argument('expression')
    limit.add_argument('--at', required=True)
    limit.add_argument('--L')
    limit.add_argument('--criterion', choices=('nsa', 'classical'))

    continuity = commands.add_parser('continuity', parents=[common, schedule], help="Continuity of f at a")
    continuity.add_argument('expression')
    continuity.add_argument('--at', required=True)
    continuity.add_argument('--criterion', choices=('nsa', 'classical'))

    derivative = commands.add_parser('derivative', parents=[common, schedule], help="Derivative of f at a")
    derivative.add_argument('expression')
    derivative.add_argument('--at', required=True)
    derivative.add_argument('--criterion', choices=('nsa', 'two-point', 'eq1', 'classical'))
    derivative.add_argument('--fprime', help="Expression for f'")
    derivative.add_argument('--value', help="Claimed f'(a), p/q")

    integrate = commands.add_parser('integrate', parents=[common, schedule], help="Riemann integral over [a, b]")
    integrate.add_argument('expression')
    integrate.add_argument('--from', dest='from_', required=True)
    integrate.add_argument('--to', required=True)
    integrate.add_argument('--criterion', choices=('nsa', 'classical'))
    integrate.add_argument('--csv', metavar='FILE', help="Write the Darboux cell table")
    integrate.add_argument('--cells', type=int, default=64, help="Uniform cells of the CSV table")

    ftc = commands.add_parser('ftc', parents=[common, schedule], help="Integral of F' against F(b) - F(a)")
    ftc.add_argument('expression')
    ftc.add_argument('--from', dest='from_', required=True)
    ftc.add_argument('--to', required=True)

    series = commands.add_parser('series', parents=[common, schedule], help="Convergence of a series")
    series.add_argument('expression', help="Term a_n (or S_n with --closed-form), the index spelled x")
    series.add_argument('--sum-to', dest='sum_to', type=int)
    series.add_argument('--L')
    series.add_argument('--diverges', action='store_true')
    series.add_argument('--bounded', action='store_true', help="Non-negative boundedness criterion")
    series.add_argument('--bounds', help="Ascending B values for --diverges")
    series.add_argument('--offset', type=int, default=0)
    series.add_argument('--ratio', help="Geometric factor: a_n = ratio^n * term(n)")
    series.add_argument('--head', help="Explicit leading terms, comma separated")
    series.add_argument('--closed-form', dest='closed_form', action='store_true')
    series.add_argument('--criterion', choices=('nsa', 'classical'))
    series.add_argument('--csv', metavar='FILE', help="Write the partial sums up to --sum-to")

    gap = commands.add_parser('gap', parents=[common], help="((x + e)^n - x^n) / e - n x^(n-1), exactly")
    gap.add_argument('--n', type=int, required=True)
    gap.add_argument('--x', required=True)
    gap.add_argument('--eps', required=True)

    xcheck = commands.add_parser('xcheck', parents=[common], help="Agreement of the two checker families")
    xcheck.add_argument('--corpus')
    xcheck.add_argument('--seed', type=int, default=0)
    xcheck.add_argument('--jobs', type=int)

    serve = commands.add_parser('serve', parents=[common], help="Start the HTTP API")
    serve.add_argument('--host', default='0.0.0.0')
    serve.add_argument('--port', type=int, default=8000)

    runs = commands.add_parser('runs', parents=[common], help="List stored runs")
    runs.add_argument('--limit', type=int, default=20)
    return parser
