"""Batch figure rendering: eie-fig --csv FILE --kind KIND --out FILE.svg"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import KINDS, FigureError, FigureJob, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eie-fig", description="Render a sweep CSV into a plot.")
    parser.add_argument("--csv", required=True, help="sweep CSV input")
    parser.add_argument("--kind", required=True, choices=sorted(KINDS),
                        help="which quantity/axis pairing to draw")
    parser.add_argument("--out", required=True,
                        help="output image (SVG recommended)")
    args = parser.parse_args(argv)

    job = FigureJob(input_csv=Path(args.csv), output_image=Path(args.out),
                    kind=args.kind)
    try:
        written = render(job)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
