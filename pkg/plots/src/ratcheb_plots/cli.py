"""Command line front end: ratcheb-plots render."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import ParseError, PlotJob, render

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratcheb-plots",
        description="Render fit artifacts (error curve CSV, extrema JSON) to a figure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    render_cmd = sub.add_parser("render", help="render one fit's artifacts to an image")
    render_cmd.add_argument("--curve", required=True, help="error_curve.csv from a fit")
    render_cmd.add_argument("--extrema", required=True, help="extrema.json from a fit")
    render_cmd.add_argument("--out", required=True, help="output image path (format by suffix)")
    render_cmd.add_argument("--target", default=None, help="target.csv to overlay f and F")
    render_cmd.add_argument("--title", default=None, help="figure title")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(
        curve_path=Path(args.curve),
        extrema_path=Path(args.extrema),
        out_path=Path(args.out),
        target_path=Path(args.target) if args.target is not None else None,
        title=args.title,
    )
    try:
        summary = render(job)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {summary['out_path']} ({summary['marker_count']} extrema marked)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
