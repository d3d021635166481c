"""Command line for rendering relaylab CSVs: one figure per invocation."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureSpec, RenderError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="relaylab-figures",
        description="Render a relaylab sweep CSV into a PNG or SVG figure.",
    )
    parser.add_argument("figure", help="|".join(FIGURE_IDS))
    parser.add_argument("--csv", required=True, help="input CSV path")
    parser.add_argument("--out", default=None,
                        help="output image (default <figure>.png)")
    args = parser.parse_args(argv)
    out = args.out or f"{args.figure}.png"
    try:
        result = render(FigureSpec(args.csv, args.figure, out))
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    counts = result.point_counts()
    print(f"wrote {out} ({sum(counts.values())} points, {len(counts)} curves)")
    for name, (x, y) in sorted(result.annotations.items()):
        print(f"max {name}: {y:.4f} at x={x:.4g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
