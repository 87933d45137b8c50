"""
Entry point of the ``nonstd`` command.

Exit codes: 0 PROVED or computed, 1 REFUTED, 2 UNDECIDED, 3 usage or domain error.
"""

import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from pydantic import ValidationError

from nonstd.cli.commands import execute
from nonstd.cli.parser import GRAMMAR_HINT, build_parser
from nonstd.config import configure_logging
from nonstd.errors import ExprSyntaxError, NonstdError
from nonstd.models.report import EXIT_ERROR, CheckReport, RunConfig

logger = logging.getLogger(__name__)

# Parser destinations that are not RunConfig fields
_OUTPUT_FLAGS = ('json', 'verbose', 'store', 'csv', 'cells', 'host', 'port', 'limit')


def _config(args) -> RunConfig:
    values = {key: value for key, value in vars(args).items()
              if key not in _OUTPUT_FLAGS and value is not None and value is not False}
    return RunConfig(**values)


def _format_text(report: CheckReport) -> str:
    lines = [report.status]
    if report.value is not None:
        lines.append(f"value: {report.value}")
    if report.enclosure is not None:
        lines.append(f"enclosure: [{report.enclosure[0]}, {report.enclosure[1]}]")
    if report.witness:
        lines.append(f"witness: {json.dumps(report.witness, sort_keys=True)}")
    if report.command == "xcheck" and isinstance(report.certificate, dict):
        for row in report.certificate.get("rows", []):
            lines.append(f"  {row['entry']} [{row['notion']}] nsa={row['nsa']} classical={row['classical']}"
                         f"{' eq1=' + row['eq1'] if 'eq1' in row else ''} -> {row['outcome']}")
        lines.append(json.dumps(report.certificate.get("counts", {}), sort_keys=True))
    if report.note:
        lines.append(f"note: {report.note}")
    return "\n".join(lines)


def _write_tables(args, config: RunConfig) -> None:
    """The optional CSV side outputs of integrate and series."""
    if getattr(args, 'csv', None) is None:
        return
    with Path(args.csv).open('w', encoding='utf-8', newline='') as stream:
        if config.command == "integrate":
            from nonstd.core.rational import parse_rat
            from nonstd.expr import parse
            from nonstd.riemann import Partition, cells_to_csv, darboux_bounds
            P = Partition.uniform(parse_rat(config.from_), parse_rat(config.to), args.cells)
            cells_to_csv(darboux_bounds(parse(config.expression), P, config.prec), stream)
        elif config.command == "series" and config.sum_to is not None:
            from nonstd.cli.commands import CommandContext, _sequence
            from nonstd.series import partial_sums, trace_to_csv
            trace_to_csv(partial_sums(_sequence(CommandContext(config)), config.sum_to, config.prec), stream)


def _serve(args) -> int:
    import uvicorn
    from nonstd.api import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _runs(args, out: TextIO) -> int:
    from nonstd.database import get_runs
    for run in get_runs(args.store, limit=args.limit):
        print(json.dumps(run, sort_keys=True), file=out)
    return 0


def main(argv: Optional[List[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    """
    Parse argv, run the command and print its report.

    Args:
        argv (Optional[List[str]]): Arguments without the program name
        out (TextIO): Stream for reports
        err (TextIO): Stream for error messages

    Returns:
        int: The exit code
    """
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            configure_logging("DEBUG")
        if args.command == "serve":
            return _serve(args)
        if args.command == "runs":
            return _runs(args, out)
        config = _config(args)
        report = execute(config)
        _write_tables(args, config)
    except ExprSyntaxError as e:
        print(f"error: {e}\nhint: {GRAMMAR_HINT}", file=err)
        return EXIT_ERROR
    except ValidationError as e:
        messages = "; ".join(error['msg'] for error in e.errors())
        print(f"error: {messages}", file=err)
        return EXIT_ERROR
    except (NonstdError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_ERROR
    if args.store:
        from nonstd.database import save_run
        save_run(report, args.store)
    print(report.to_json() if args.json else _format_text(report), file=out)
    return report.exit_code
