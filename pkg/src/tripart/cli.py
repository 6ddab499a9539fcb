"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 I/O error.
Canonical results go to stdout (or files); timing and errors go to
stderr so byte-level reproducibility of the outputs is preserved.
"""

from __future__ import annotations

import argparse
import sys

from .geometry import GeometryError, Point, Triangle, _signed_area
from .masspart import MassPartitionError
from .partition import SolverError, verify_partition
from .problem import (
    InputError,
    ProblemSpec,
    canonical_json,
    parse_spec,
    report_json,
    run,
    sweep_csv,
)
from .svg import emit_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripart",
        description="Equal-area triangle partition and convex mass partition solver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve the problem described by a JSON spec")
    solve.add_argument("--input", required=True, help="path of the JSON problem spec")
    solve.add_argument("--output", help="also write the JSON report to this path")
    solve.add_argument("--svg", help="write an SVG figure of a triangle solution to this path")
    solve.add_argument("--tol", type=float, help="override the relative area tolerance")

    sweep = sub.add_parser("sweep", help="classify a grid of triangle shapes to CSV")
    sweep.add_argument("--resolution", type=int, default=100, help="angle grid resolution (default 100)")
    sweep.add_argument("--output", required=True, help="path of the CSV to write")

    verify = sub.add_parser("verify", help="check a claimed equal-area point")
    verify.add_argument("--input", required=True, help="path of a triangle-mode JSON spec")
    verify.add_argument("--point", required=True, help="claimed point as 'x,y'")
    verify.add_argument("--tol", type=float, default=1e-9, help="relative area tolerance (default 1e-9)")
    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _parse_point(raw: str) -> Point:
    parts = raw.split(",")
    if len(parts) != 2:
        raise InputError("invalid-value", f"--point must be 'x,y', got {raw!r}")
    try:
        return Point(float(parts[0]), float(parts[1]))
    except (ValueError, GeometryError) as exc:
        raise InputError("invalid-value", f"--point must be two finite numbers: {exc}") from exc


def _cmd_solve(args) -> int:
    spec = parse_spec(_read(args.input))
    if spec.mode == "sweep":
        raise InputError("invalid-value", "sweep specs run with the 'sweep' command")
    report = run(spec, tol=args.tol)
    text = report_json(report) + "\n"
    sys.stdout.write(text)
    if args.output:
        _write(args.output, text)
    if args.svg:
        if report.mode != "triangle":
            raise InputError("invalid-value", "--svg applies only to triangle mode")
        _write(args.svg, emit_svg(report))
    sys.stderr.write(f"solved in {report.timing_s:.3f}s via {report.method}\n")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = ProblemSpec(mode="sweep", resolution=args.resolution)
    if args.resolution < 2:
        raise InputError("invalid-value", "--resolution must be at least 2")
    report = run(spec)
    _write(args.output, sweep_csv(report))
    sys.stderr.write(
        f"classified {len(report.sweep_rows)} shapes in {report.timing_s:.3f}s\n"
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = parse_spec(_read(args.input))
    if spec.mode != "triangle":
        raise InputError("invalid-value", "verify needs a triangle-mode spec")
    tri = Triangle.from_coords(spec.triangle)
    point = _parse_point(args.point)
    if not (args.tol > 0.0):
        raise InputError("invalid-value", "--tol must be positive")
    vr = verify_partition(tri, point, tol=args.tol)
    # normalization swaps b and c for clockwise input; report in input labels
    order = (0, 2, 1) if _signed_area(spec.triangle) < 0.0 else (0, 1, 2)
    areas = vr.areas.as_tuple()
    payload = {
        "mode": "verify",
        "point": [vr.point.x, vr.point.y],
        "areas": {
            "at_a": areas[order[0]],
            "at_b": areas[order[1]],
            "at_c": areas[order[2]],
        },
        "max_deviation": vr.max_deviation,
        "deviation_rel": vr.deviation_rel,
        "location": vr.location,
        "region_vertex_counts": [vr.region_vertex_counts[i] for i in order],
        "ok": vr.ok,
    }
    sys.stdout.write(canonical_json(payload) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_verify(args)
    except InputError as exc:
        sys.stderr.write(canonical_json({"error": {"code": exc.code, "message": str(exc)}}) + "\n")
        return EXIT_INPUT
    except (MassPartitionError, GeometryError) as exc:
        sys.stderr.write(canonical_json({"error": {"code": "invalid-value", "message": str(exc)}}) + "\n")
        return EXIT_INPUT
    except SolverError as exc:
        payload = {
            "error": {
                "code": "solver-failure",
                "message": str(exc),
                "report": {
                    "method": exc.report.method,
                    "iterations": exc.report.iterations,
                    "residual": exc.report.residual,
                    "best_point": list(exc.report.best_point),
                    "residual_history": list(exc.report.residual_history),
                    "converged": exc.report.converged,
                },
            }
        }
        sys.stderr.write(canonical_json(payload) + "\n")
        return EXIT_SOLVER
    except OSError as exc:
        sys.stderr.write(f"tripart: i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
