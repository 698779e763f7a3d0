"""
Decompose command: decomposition tree of a cograph, or the strong-module family of any graph.
"""

import argparse

from commands import EXIT_OK, add_graph_input, add_input_format, add_output_argument, read_input, write_output
from services import GraphService


def run(args: argparse.Namespace) -> int:
    g = GraphService.load_graph(read_input(args.input), args.input_format)
    if args.family:
        text = GraphService.strong_family(g).model_dump_json(by_alias=True) + "\n"
    else:
        text = GraphService.decompose(g, args.format)
    write_output(text, args.output)
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("decompose", help="Print the decomposition tree of a cograph")
    add_graph_input(parser)
    add_input_format(parser)
    parser.add_argument("--format", choices=("json", "dot"), default="json", help="Tree format (default: json)")
    parser.add_argument(
        "--family",
        action="store_true",
        help="Print the strong-module family as JSON instead (works for any graph)",
    )
    add_output_argument(parser)
    parser.set_defaults(handler=run)
