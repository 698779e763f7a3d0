"""
Rebuild command: the cograph described by a JSON decomposition tree.
"""

import argparse

from commands import EXIT_OK, add_output_argument, read_input, write_output
from services import GraphService


def run(args: argparse.Namespace) -> int:
    g = GraphService.rebuild(read_input(args.input))
    write_output(GraphService.render_graph(g, args.format), args.output)
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("rebuild", help="Rebuild a cograph from its tree")
    parser.add_argument("input", help="Tree JSON file, or - for stdin")
    parser.add_argument(
        "--format", choices=("edgelist", "json", "dot"), default="edgelist", help="Graph format (default: edgelist)"
    )
    add_output_argument(parser)
    parser.set_defaults(handler=run)
