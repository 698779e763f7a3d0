"""
Chain command: operations on labelled chains over a finite quasi-order.
"""

import argparse

from commands import EXIT_NEGATIVE, EXIT_OK, add_output_argument, read_input, write_output
from services import CHAIN_OPERATIONS, ChainService


def run(args: argparse.Namespace) -> int:
    result, text = ChainService.run(args.op, read_input(args.input), args.factor)
    write_output(text, args.output)
    return EXIT_OK if result else EXIT_NEGATIVE


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("chain", help="Embed, sum, multiply or decompose labelled chains")
    parser.add_argument("input", help="Chain document JSON (order, chain, optional target)")
    parser.add_argument("--op", choices=CHAIN_OPERATIONS, default="embed", help="Operation (default: embed)")
    parser.add_argument("--factor", type=int, default=2, help="Multiplier for --op product (default: 2)")
    add_output_argument(parser)
    parser.set_defaults(handler=run)
