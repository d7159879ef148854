"""Command-line interface: single-point reports and parameter sweeps.

Exit codes: 0 on success, 1 for configuration problems, 2 for numerical
failures (including sweeps with any failed point).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, EIEError
from .sweep import emit_csv, load_config, point_report, run_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eie",
        description="Pump-probe fluctuation propagation through a three-level "
                    "lambda medium: inseparability V12 and probe absorption.")
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate one working point, emit JSON")
    point.add_argument("--config", required=True, help="INI config file")
    point.add_argument("--out", help="output JSON path (default: stdout)")
    point.add_argument("--omega", type=float, default=None,
                       help="override analysis frequency (rad/us, numerically MHz)")
    point.add_argument("--quiet", action="store_true", help="suppress status output")

    sweep = sub.add_parser("sweep", help="run a parameter sweep, emit CSV")
    sweep.add_argument("--config", required=True, help="INI config file with [sweep]")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    sweep.add_argument("--omega", type=float, default=None,
                       help="override analysis frequency (rad/us, numerically MHz)")
    sweep.add_argument("--quiet", action="store_true", help="suppress status output")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        params, spec = load_config(args.config)
        if args.omega is not None:
            params = params.replace(omega=args.omega)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    if args.command == "point":
        try:
            report = point_report(params)
        except EIEError as exc:
            print(f"evaluation failed: {exc}", file=sys.stderr)
            return 2
        payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
        if args.out:
            try:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(payload)
            except OSError as exc:
                print(f"cannot write {args.out}: {exc}", file=sys.stderr)
                return 1
            if not args.quiet:
                print(f"wrote {args.out}")
        else:
            sys.stdout.write(payload)
        return 0

    # sweep
    if spec is None:
        print("config error: no [sweep] section", file=sys.stderr)
        return 1
    try:
        rows = run_sweep(spec, params, jobs=max(1, args.jobs))
    except EIEError as exc:
        print(f"sweep failed: {exc}", file=sys.stderr)
        return 2
    try:
        with open(args.out, "wb") as fh:
            fh.write(emit_csv(rows))
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    failed = sum(1 for r in rows if r.v12 is None)
    if not args.quiet:
        print(f"wrote {args.out} ({len(rows)} points, {failed} failed)")
    return 0 if failed == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
