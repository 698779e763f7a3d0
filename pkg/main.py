# Import necessary libraries
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

# Import our custom modules
import config
from commands import EXIT_BUDGET, EXIT_USAGE, chain, classify, decompose, embed, family, oracle, rebuild, recognize
from errors import BudgetExceededError, CographToolkitError
from schemas import ErrorResponse

logger: logging.Logger = logging.getLogger(__name__)

COMMANDS = (recognize, decompose, rebuild, classify, embed, chain, family, oracle)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subcommand per operation.

    Returns:
        The configured parser
    """
    parser = argparse.ArgumentParser(
        prog="cograph",
        description="Cograph recognition, modular decomposition, chain embedding and sibling classification",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def _fail(code: int, detail: str) -> int:
    sys.stderr.write(ErrorResponse(detail=detail).model_dump_json() + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and map failures to exit codes.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        0 for an affirmative result, 1 for a negative one, 2 for invalid input,
        3 when a search exhausted its budget
    """
    logging.basicConfig(level=config.LOG_LEVEL)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code is None else int(e.code)

    try:
        return args.handler(args)
    except BudgetExceededError as e:
        logger.warning(f"{args.command}: {str(e)}")
        return _fail(EXIT_BUDGET, str(e))
    except ValidationError as e:
        logger.warning(f"{args.command}: rejected input document")
        return _fail(EXIT_USAGE, f"invalid document: {e.error_count()} validation error(s): {str(e)}")
    except CographToolkitError as e:
        logger.warning(f"{args.command}: {str(e)}")
        return _fail(EXIT_USAGE, str(e))
    except UnicodeDecodeError as e:
        logger.warning(f"{args.command}: input is not UTF-8: {str(e)}")
        return _fail(EXIT_USAGE, f"cannot decode input as UTF-8: {str(e)}")
    except OSError as e:
        logger.warning(f"{args.command}: cannot read input: {str(e)}")
        return _fail(EXIT_USAGE, f"cannot read input: {str(e)}")


if __name__ == "__main__":
    sys.exit(main())
