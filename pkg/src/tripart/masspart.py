"""Three-ray fans and area partition of convex polygons by translation.

A fan of three rays from a common apex, with consecutive gaps each below
pi, splits the plane into three convex sectors.  For any convex polygon
and any positive target areas summing to the polygon's area there is a
position of the apex realizing the targets; `solve_translation` finds it.
The perpendicular-wedge partition of a triangle is the special case where
the rays are the outward side normals, so the triangle solvers can be
cross-checked against this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    CLIP_SNAP_REL,
    ConvexPolygon,
    Point,
    Triangle,
    Vec,
    _coord_scale,
    _signed_area,
    _wedge_area,
    outward_normal,
)
from .partition import SolverConfig, SolverError, SolverReport
from .rootfind import newton2d

GAP_MIN = 1e-9  # smallest allowed angle between consecutive rays
GAP_GUARD = 1e-9  # each gap must stay below pi by this margin

SECTOR_VERTEX_ORDER = ("b", "c", "a")  # triangle regions hit by sectors 0, 1, 2


class MassPartitionError(ValueError):
    """Invalid fan configuration or target areas."""


@dataclass(frozen=True)
class SectorConfig:
    """Three unit ray directions in CCW order; sector i lies between ray i
    and ray i+1 (indices mod 3)."""

    directions: tuple[Vec, Vec, Vec]

    @classmethod
    def from_angles_deg(cls, angles: tuple[float, float, float]) -> "SectorConfig":
        dirs = tuple(
            (math.cos(math.radians(a)), math.sin(math.radians(a))) for a in angles
        )
        return validate_config(cls(dirs))

    @classmethod
    def from_triangle(cls, tri: Triangle) -> "SectorConfig":
        """Fan of the triangle's outward side normals.  Its sectors coincide
        with the perpendicular wedges: sectors 0, 1, 2 reproduce the regions
        at vertices b, c, a."""
        dirs = (outward_normal(tri, "ab"), outward_normal(tri, "bc"), outward_normal(tri, "ca"))
        return validate_config(cls(dirs))

    def gaps(self) -> tuple[float, float, float]:
        """CCW angles between consecutive rays; they always sum to 2 pi."""
        ang = [math.atan2(dy, dx) for dx, dy in self.directions]
        out = []
        for i in range(3):
            g = (ang[(i + 1) % 3] - ang[i]) % (2.0 * math.pi)
            out.append(g)
        return tuple(out)


def validate_config(cfg: SectorConfig) -> SectorConfig:
    """Normalize the ray directions to unit length and enforce the fan
    invariants: no coincident rays, CCW order, every gap below pi (so each
    sector is convex)."""
    dirs = []
    for dx, dy in cfg.directions:
        h = math.hypot(dx, dy)
        if h == 0.0 or not math.isfinite(h):
            raise MassPartitionError(f"ray direction ({dx}, {dy}) is not usable")
        # keep vectors that are already unit length bit-for-bit, so fans
        # built from triangle normals reproduce the wedge areas exactly
        if abs(h - 1.0) > 1e-12:
            dx, dy = dx / h, dy / h
        dirs.append((dx, dy))
    out = SectorConfig(tuple(dirs))
    for g in out.gaps():
        if g < GAP_MIN:
            raise MassPartitionError("two rays coincide")
        if g > math.pi - GAP_GUARD:
            raise MassPartitionError(
                "rays must be in counter-clockwise order with every gap below pi"
            )
    return out


@dataclass(frozen=True)
class Targets:
    """Positive target areas for the three sectors."""

    values: tuple[float, float, float]

    @classmethod
    def fractions(cls, fracs: tuple[float, float, float], total: float) -> "Targets":
        return cls(tuple(f * total for f in fracs))


@dataclass(frozen=True)
class TranslationSolution:
    apex: Point
    translation: Vec
    achieved: tuple[float, float, float]
    targets: tuple[float, float, float]
    residual: float
    iterations: int
    method: str = "newton"


def _sector_normals(cfg: SectorConfig):
    """Per sector, the two half-plane normals (<= form, apex at origin).
    The bounding ray i+1 is clipped first, then ray i; this matches the
    clip order of the triangle wedges so the special case is bit-exact."""
    out = []
    for i in range(3):
        d1x, d1y = cfg.directions[i]
        d2x, d2y = cfg.directions[(i + 1) % 3]
        out.append((-d2y, d2x, d1y, -d1x))
    return out


def sector_areas(poly: ConvexPolygon, cfg: SectorConfig, apex: Point) -> tuple[float, float, float]:
    """Areas of the polygon pieces cut by the fan placed at `apex`.  The
    three values sum to the polygon area for every apex position."""
    cfg = validate_config(cfg)
    if poly.is_empty():
        return (0.0, 0.0, 0.0)
    pts = poly.coords
    eps = CLIP_SNAP_REL * _coord_scale(pts)
    out = []
    for n1x, n1y, n2x, n2y in _sector_normals(cfg):
        out.append(
            _wedge_area(
                pts,
                n1x, n1y, n1x * apex.x + n1y * apex.y,
                n2x, n2y, n2x * apex.x + n2y * apex.y,
                eps,
            )
        )
    return tuple(out)


def _polygon_diameter(pts) -> float:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def solve_translation(poly, cfg: SectorConfig, targets: Targets, solver_cfg=None) -> TranslationSolution:
    """Place the fan so its sectors cut the polygon into the target areas.

    The polygon stays fixed and the apex moves; `translation` is the
    vector that would instead move the polygon onto a fan anchored at the
    origin, i.e. the negated apex.  Solved with the same damped Newton
    engine as the triangle problem.  Raises SolverError on failure and
    MassPartitionError for invalid targets."""
    cfg = validate_config(cfg)
    solver_cfg = solver_cfg or SolverConfig()
    if isinstance(poly, Triangle):
        poly = poly.as_polygon()
    total = abs(_signed_area(poly.coords))
    vals = targets.values
    if len(vals) != 3 or any(not (v > 0.0 and math.isfinite(v)) for v in vals):
        raise MassPartitionError(f"targets must be three positive areas, got {vals!r}")
    if abs(sum(vals) - total) > 1e-12 * total:
        raise MassPartitionError(
            f"targets sum to {sum(vals)!r} but the polygon area is {total!r}"
        )
    pts = poly.coords
    eps = CLIP_SNAP_REL * _coord_scale(pts)
    normals = _sector_normals(cfg)
    t1, t2, t3 = vals

    def fun(x: float, y: float):
        n1x, n1y, n2x, n2y = normals[0]
        a1 = _wedge_area(pts, n1x, n1y, n1x * x + n1y * y, n2x, n2y, n2x * x + n2y * y, eps)
        n1x, n1y, n2x, n2y = normals[1]
        a2 = _wedge_area(pts, n1x, n1y, n1x * x + n1y * y, n2x, n2y, n2x * x + n2y * y, eps)
        a3 = total - a1 - a2
        g1 = a1 - t1
        g2 = a2 - t2
        merit = max(abs(g1), abs(g2), abs(a3 - t3))
        return g1, g2, merit

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx = sum(xs) / len(xs)
    cy = sum(ys) / len(ys)
    diam = _polygon_diameter(pts)
    box = (min(xs) - 2.0 * diam, max(xs) + 2.0 * diam, min(ys) - 2.0 * diam, max(ys) + 2.0 * diam)
    res = newton2d(
        fun,
        (cx, cy),
        tol=solver_cfg.area_tol_rel * total,
        fd_step=solver_cfg.fd_step_rel * diam,
        max_iters=solver_cfg.max_iters,
        restart_box=box,
    )
    if not res.converged:
        report = SolverReport(
            method="newton",
            iterations=res.iterations,
            residual=res.residual,
            best_point=(res.x, res.y),
            residual_history=res.residual_history,
            converged=False,
            message="translation search did not reach the area tolerance",
        )
        raise SolverError(report.message, report)
    apex = Point(res.x, res.y)
    achieved = sector_areas(poly, cfg, apex)
    residual = max(abs(a - t) for a, t in zip(achieved, vals))
    return TranslationSolution(
        apex=apex,
        translation=(-apex.x, -apex.y),
        achieved=achieved,
        targets=vals,
        residual=residual,
        iterations=res.iterations,
    )
