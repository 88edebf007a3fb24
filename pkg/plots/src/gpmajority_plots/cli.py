"""Command line for rendering benchmark box-plot figures.

Exit codes: 0 success, 1 bad arguments or figure errors, 2 I/O errors.
"""

import argparse
import sys

from .figures import FigureError, FigureSpec, Overlay, render_boxplot


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):  # argparse uses 2; we use 1
        if message:
            sys.stderr.write(message)
        raise SystemExit(1 if status else 0)


def _parse_overlay(text: str) -> Overlay:
    head, sep, label = text.partition(":")
    try:
        w = float(head)
    except ValueError:
        raise FigureError(f"bad overlay {text!r}; expected W or W:LABEL") from None
    return Overlay(w, label if sep else f"{w:g} n ln n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpmajority-plots",
                     description="Render box plots from gpmajority benchmark "
                                 "CSVs; prints the same per-group statistics "
                                 "as `gpmajority summarize`.")
    parser.add_argument("--csv", required=True, help="harness CSV to read")
    parser.add_argument("--output", required=True, help="image file to write")
    parser.add_argument("--group-by", action="append", metavar="COLUMN",
                        help="CSV column to split plotted groups on "
                             "(repeatable; default: algorithm, bloat_control)")
    parser.add_argument("--overlay", action="append", default=[],
                        metavar="W[:LABEL]",
                        help="draw the curve W*n*ln(n) (repeatable)")
    parser.add_argument("--only", action="append", default=[],
                        metavar="COLUMN=TEXT",
                        help="keep only rows whose column matches the CSV "
                             "text exactly (repeatable)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            csv_path=args.csv,
            output_path=args.output,
            group_keys=(tuple(args.group_by) if args.group_by
                        else ("algorithm", "bloat_control")),
            overlays=tuple(_parse_overlay(t) for t in args.overlay),
            only=tuple(args.only),
        )
        render_boxplot(spec)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
