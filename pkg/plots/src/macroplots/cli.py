"""Command line front end.

    render --figure <id> --in <csv ...> --out <file>

Exit codes: 0 success, 2 usage error (argparse), 1 runtime failure
(bad schema, unreadable input, unwritable output).
"""

import argparse
import sys

from . import __version__
from .draw import render
from .figures import FIGURE_IDS, FigureSpec
from .schema import SchemaError


def _axis_range(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'low,high', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'low,high', got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a figure from macrolab CSV output.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS)
    parser.add_argument(
        "--in",
        dest="inputs",
        nargs="+",
        required=True,
        metavar="CSV",
        help="input CSV file(s), concatenated when several are given",
    )
    parser.add_argument("--out", required=True, help="output image (.svg or .png)")
    parser.add_argument("--xlim", type=_axis_range, help="x axis range as 'low,high'")
    parser.add_argument("--ylim", type=_axis_range, help="y axis range as 'low,high'")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            figure=args.figure,
            inputs=tuple(args.inputs),
            output=args.out,
            xlim=args.xlim,
            ylim=args.ylim,
        )
        path = render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
