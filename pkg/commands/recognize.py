"""
Recognize command: is the input graph a cograph?
"""

import argparse

from commands import EXIT_NEGATIVE, EXIT_OK, add_graph_input, add_input_format, add_output_argument, read_input, write_output
from services import GraphService


def run(args: argparse.Namespace) -> int:
    g = GraphService.load_graph(read_input(args.input), args.input_format)
    witness = GraphService.recognize(g)
    if witness is None:
        write_output("cograph\n", args.output)
        return EXIT_OK
    write_output("not a cograph\n" + " ".join(str(v) for v in witness) + "\n", args.output)
    return EXIT_NEGATIVE


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("recognize", help="Test for an induced P4; print one when found")
    add_graph_input(parser)
    add_input_format(parser)
    add_output_argument(parser)
    parser.set_defaults(handler=run)
