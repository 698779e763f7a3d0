"""
Embed command: does the pattern embed as an induced subgraph of the target?
"""

import argparse

from commands import EXIT_NEGATIVE, EXIT_OK, add_input_format, add_output_argument, read_input, write_output
from services import GraphService, TermService


def run(args: argparse.Namespace) -> int:
    if args.terms:
        result = TermService.embed(
            TermService.load_term(read_input(args.pattern)), TermService.load_term(read_input(args.target))
        )
    else:
        result = GraphService.embed(
            GraphService.load_graph(read_input(args.pattern), args.input_format),
            GraphService.load_graph(read_input(args.target), args.input_format),
        )
    write_output("embeds\n" if result else "does not embed\n", args.output)
    return EXIT_OK if result else EXIT_NEGATIVE


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("embed", help="Test induced embeddability")
    parser.add_argument("pattern", help="Pattern file")
    parser.add_argument("target", help="Target file")
    parser.add_argument("--terms", action="store_true", help="Inputs are cograph term JSON documents")
    add_input_format(parser)
    add_output_argument(parser)
    parser.set_defaults(handler=run)
