"""
mcat: decomposition of processes in monoidal categories
Command-line entry point

  python -m src decompose-par doc.json --morphism f
  python -m src check-laws doc.json --seed 3 --format json
  cat doc.json | python -m src solve - --morphism M --vector b

Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or input error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Union

from pydantic import ValidationError

from src.cli.document import parse
from src.cli.queries import Options
from src.cli.report import to_json, to_text
from src.cli.runner import run
from src.config import settings
from src.enums import EXIT_USAGE, Command, DecompositionMode, DiagramOf, OutputFormat, Policy
from src.errors import McatError

# ============================================================
# LOGGING
# ============================================================
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.WARNING),
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


# ============================================================
# ARGUMENTS
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Sequential and parallel decomposition of processes in monoidal categories",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("document", help="JSON document path, or - for stdin")
    common.add_argument("--morphism", help="name of the morphism to analyse")
    common.add_argument("--vector", help="name of a vector (entangled, solve)")
    common.add_argument("--split", help="split name, or inline dimensions such as 2,2,2,2")
    common.add_argument("--factors", help="FIRST,SECOND morphisms to verify a sequential witness")
    common.add_argument("--policy", type=Policy.parse, default=Policy.parse(settings.default_policy),
                        help="paper-literal | nondegenerate | essential")
    common.add_argument("--mode", type=DecompositionMode.parse, help="fixed | up-to-iso | search")
    common.add_argument("--seed", type=int, default=settings.default_seed)
    common.add_argument("--trials", type=int, default=settings.default_trials)
    common.add_argument("--exhaustive", action="store_true",
                        help="check-laws: enumerate every input over sets of size ≤ 2")
    common.add_argument("--tolerance", type=float, help="overrides MCAT_TOLERANCE and the document")
    common.add_argument("--timing", action="store_true", help="add elapsed milliseconds to the report")
    common.add_argument("--of", type=DiagramOf, default=DiagramOf.MORPHISM,
                        help="diagram: morphism | decompose-seq | decompose-par")
    common.add_argument("--format", type=OutputFormat, default=OutputFormat.TEXT, help="text | json")
    common.add_argument("--out", help="write the report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub.add_parser(command.value, parents=[common])
    return parser


def _read(path: str) -> Union[str, bytes]:
    if path == "-":
        return getattr(sys.stdin, "buffer", sys.stdin).read()
    return Path(path).read_bytes()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return int(e.code or 0)

    options = Options(**{k: v for k, v in vars(args).items()
                         if k in Options.model_fields and v is not None})
    try:
        doc = parse(_read(args.document))
        report, code = run(Command(args.command), doc, options)
    except (McatError, ValidationError, OSError) as e:
        print(f"{settings.app_name}: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if report.command == Command.DIAGRAM.value:
        output = report.dot
    elif options.format is OutputFormat.JSON:
        output = to_json(report)
    else:
        output = to_text(report)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
