"""
Family command: the coded prefix for a bit word on a repeated anchor base.
"""

import argparse

import config
from commands import EXIT_OK, add_output_argument, write_output
from services import FamilyService


def run(args: argparse.Namespace) -> int:
    write_output(FamilyService.build(args.anchors, args.f, args.emit, args.cap), args.output)
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("family", help="Build a coded family member")
    parser.add_argument("--anchors", type=int, required=True, help="Number of anchor blocks in the base")
    parser.add_argument("--f", default="", help="Bit word to code, e.g. 1011")
    parser.add_argument("--emit", choices=("json", "dot", "graph"), default="json", help="Output (default: json)")
    parser.add_argument("--cap", type=int, default=config.OMEGA_CAP, help="Truncation of omega for --emit graph")
    add_output_argument(parser)
    parser.set_defaults(handler=run)
