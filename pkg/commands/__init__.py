"""
Subcommands of the cograph toolkit command line.
Each module registers one subparser whose handler returns the process exit code.
"""

import argparse
import sys
from typing import Optional

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def read_input(path: str) -> str:
    """Read a whole document from a file, or from stdin for "-"."""
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def write_output(text: str, path: Optional[str] = None) -> None:
    """Write to a file, or to stdout when no path (or "-") is given."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", default=None, help="Write the result here instead of stdout")


def add_graph_input(parser: argparse.ArgumentParser, name: str = "input") -> None:
    parser.add_argument(name, help="Graph file, or - for stdin")


def add_input_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input-format",
        choices=("edgelist", "json"),
        default="edgelist",
        help="Format of graph inputs (default: edgelist)",
    )
