"""
Classify command: one sibling or infinitely many, for a cograph term.

Terms cover direct and complete sums with multiplicities up to omega; chains
with no first element are not term-representable and are out of reach here.
"""

import argparse

from commands import EXIT_OK, add_output_argument, read_input, write_output
from services import TermService


def run(args: argparse.Namespace) -> int:
    response = TermService.classify(TermService.load_term(read_input(args.input)))
    if args.json:
        text = response.model_dump_json(by_alias=True) + "\n"
    else:
        headline = response.verdict if response.reason is None else f"{response.verdict}: {response.reason}"
        text = f"{headline}\nclasses: {response.class_count}\n"
    write_output(text, args.output)
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("classify", help="Classify a cograph term by its siblings")
    parser.add_argument("input", help="Term JSON file, or - for stdin")
    parser.add_argument("--json", action="store_true", help="Print the verdict as JSON")
    add_output_argument(parser)
    parser.set_defaults(handler=run)
