"""
fdhom command line.

    fdhom run FILE [--json PATH] [--seed N] [--cap-paths N] [--cap-degree N] [--parallel] [--verbose]
    fdhom print FILE

Exit codes: 0 when every task is ok, 1 when a task errors or misses its
expected verdict, 2 when the document cannot be read or parsed.
"""

import argparse
import logging
import sys
from typing import List, Optional

from cli.parser import format_document, parse
from cli.report import build_report, render_table, write_json
from cli.runner import RunOptions, exit_code, run
from common import get_settings
from common.errors import ParseError, ResolutionError
from linalg.field import Field

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TASK_FAILURE = 1
EXIT_PARSE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fdhom', description='Homological computations over bound quiver algebras')
    commands = parser.add_subparsers(dest='command', required=True)

    run_cmd = commands.add_parser('run', help='Run the task blocks of a document')
    run_cmd.add_argument('file', help='Input document (.fdh)')
    run_cmd.add_argument('--json', metavar='PATH', help='Write the structured report to PATH')
    run_cmd.add_argument('--seed', type=int, help='Seed of the randomized searches (default FDHOM_SEED)')
    run_cmd.add_argument('--cap-paths', type=int, help='Path length cap for finite dimensionality')
    run_cmd.add_argument('--cap-degree', type=int, default=6, help='Default top degree of tasks without upto')
    run_cmd.add_argument('--parallel', action='store_true', help='Run tasks concurrently')
    run_cmd.add_argument('--verbose', action='store_true', help='Debug logging, witnesses and timings')

    print_cmd = commands.add_parser('print', help='Print a document in canonical form')
    print_cmd.add_argument('file', help='Input document (.fdh)')
    return parser


def _load(path: str):
    """
    Raises:
        ParseError, ResolutionError: From the parser
        OSError: If the file cannot be read
    """
    with open(path, encoding='utf-8') as handle:
        return parse(handle.read())


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    verbose = getattr(args, 'verbose', False)
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, get_settings().log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        document = _load(args.file)
    except (ParseError, ResolutionError) as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except OSError as exc:
        print(f"{args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE_ERROR

    if args.command == 'print':
        sys.stdout.write(format_document(document))
        return EXIT_OK

    options = RunOptions(
        seed=args.seed,
        cap_degree=args.cap_degree,
        cap_paths=args.cap_paths,
        parallel=args.parallel,
        verbose=args.verbose,
    )
    reports = run(document, options)
    print(render_table(reports))
    if args.json:
        field = Field.parse(document.field_name or get_settings().field).name
        write_json(args.json, build_report(reports, options, field))
    code = exit_code(reports)
    logger.info(f"{len(reports)} tasks, exit code {code}")
    return code


if __name__ == '__main__':
    sys.exit(main())
