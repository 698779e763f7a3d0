"""
Oracle command: cross-check production algorithms against brute force on seeded instances.
"""

import argparse

import config
from commands import EXIT_NEGATIVE, EXIT_OK, add_output_argument, write_output
from services import OracleService


def run(args: argparse.Namespace) -> int:
    agreed, reports = OracleService.run(args.seed, args.count)
    write_output(OracleService.render(reports), args.output)
    return EXIT_OK if agreed else EXIT_NEGATIVE


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("oracle", help="Emit oracle cross-check reports as JSON lines")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="Random seed")
    parser.add_argument("--count", type=int, default=20, help="Instances of each kind (default: 20)")
    add_output_argument(parser)
    parser.set_defaults(handler=run)
