"""Equal-area partition of a triangle by perpendiculars through one point.

For any triangle there is exactly one point X0 whose three perpendicular
wedges (see `tripart.geometry`) cut the triangle into equal areas.  X0 sits
inside the triangle when it is acute or right; for an obtuse triangle a
closed-form criterion on the two acute angles decides whether X0 is inside,
on the side opposite the widest angle, or outside entirely.

This module classifies triangles by that criterion and locates X0 four
ways: a damped Newton iteration on the area system, a maximin pattern
search (the minimum region area peaks exactly at X0), a combinatorial
zoom on a fully-labeled grid cell of the argmin labeling, and, for the
outside case, a direct construction intersecting two area-splitting cut
lines.  The independent routes agree to high accuracy, which is the basis
of the verification tooling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    SIDE_IDS,
    VERTEX_IDS,
    ConvexPolygon,
    GeometryError,
    Point,
    RegionAreas,
    Triangle,
    Vec,
    _clip,
    _region_area_fast,
    _signed_area,
    foot_of_perpendicular,
    region_areas,
    region_polygon,
)
from .rootfind import newton2d

ACUTE = "acute"
RIGHT = "right"
OBTUSE_INTERIOR = "obtuse-interior"
OBTUSE_BOUNDARY = "obtuse-boundary"
OBTUSE_EXTERIOR = "obtuse-exterior"
KINDS = (ACUTE, RIGHT, OBTUSE_INTERIOR, OBTUSE_BOUNDARY, OBTUSE_EXTERIOR)
INTERIOR_KINDS = (ACUTE, RIGHT, OBTUSE_INTERIOR)

CLASSIFY_TOL = 1e-9          # default band for right angles (rad) and criterion margin
MAXIMIN_STEP_FRACTION = 0.25  # initial pattern-search step, fraction of diameter
MAXIMIN_STOP_REL = 1e-12      # stop once step < this fraction of diameter
MAXIMIN_AREA_TOL_REL = 1e-8   # acceptance band on area deviation at the optimum
KKM_EXPAND = 2.0              # cell blow-up factor between zoom levels
KKM_REFINE_GRID = 8           # grid resolution used after the first level
KKM_GRID_RETRIES = 5          # resolution doublings tried before giving up
CROSS_CHECK_DIST_REL = 1e-6   # max solver disagreement, fraction of diameter

_OPPOSITE_VERTEX = {"ab": "c", "bc": "a", "ca": "b"}


class PartitionError(ValueError):
    """A precondition of a solver or construction does not hold."""


class SolverError(RuntimeError):
    """An iterative solver failed to converge; carries its SolverReport."""

    def __init__(self, message: str, report: "SolverReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class SolverConfig:
    """Tunable solver knobs; the defaults satisfy the acceptance grades."""

    area_tol_rel: float = 1e-12
    max_iters: int = 100
    fd_step_rel: float = 1e-7
    kkm_initial_grid: int = 64
    kkm_target_diam_rel: float = 1e-10

    def __post_init__(self):
        if not (self.area_tol_rel > 0.0 and math.isfinite(self.area_tol_rel)):
            raise PartitionError("area_tol_rel must be a positive finite number")
        if not (self.fd_step_rel > 0.0 and math.isfinite(self.fd_step_rel)):
            raise PartitionError("fd_step_rel must be a positive finite number")
        if not (self.kkm_target_diam_rel > 0.0 and math.isfinite(self.kkm_target_diam_rel)):
            raise PartitionError("kkm_target_diam_rel must be a positive finite number")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise PartitionError("max_iters must be a positive integer")
        if int(self.kkm_initial_grid) != self.kkm_initial_grid or self.kkm_initial_grid < 2:
            raise PartitionError("kkm_initial_grid must be an integer >= 2")


@dataclass(frozen=True)
class SolverReport:
    """Progress record surfaced with failures and diagnostics."""

    method: str
    iterations: int
    residual: float
    best_point: Vec
    residual_history: tuple[float, ...]
    converged: bool
    message: str = ""


@dataclass(frozen=True)
class Classification:
    """Where the equal-area point lies relative to the triangle.

    `obtuse_vertex` names the widest-angle vertex for the obtuse kinds and
    is None otherwise; `criterion_margin` is the signed slack of the
    interior criterion (positive inside, zero on the boundary case),
    None when the triangle is not obtuse.
    """

    kind: str
    obtuse_vertex: str | None = None
    criterion_margin: float | None = None


@dataclass(frozen=True)
class PartitionSolution:
    point: Point
    areas: RegionAreas
    regions: tuple[ConvexPolygon, ConvexPolygon, ConvexPolygon]
    classification: Classification
    method: str
    residual: float


@dataclass(frozen=True)
class VerifyReport:
    point: Point
    areas: RegionAreas
    max_deviation: float
    deviation_rel: float
    location: str
    region_vertex_counts: tuple[int, int, int]
    ok: bool


class LabelSets:
    """The three argmin label sets of the region areas.

    label(x) names the vertex whose region at x has the smallest area;
    exact ties break to the earliest vertex id, so every point gets
    exactly one label and the three sets partition the plane.
    """

    def __init__(self, tri: Triangle):
        self.triangle = tri

    def _label(self, xx: float, xy: float) -> str:
        tri = self.triangle
        ra = _region_area_fast(tri, "a", xx, xy)
        rb = _region_area_fast(tri, "b", xx, xy)
        rc = tri.area - ra - rb
        if ra <= rb:
            return "a" if ra <= rc else "c"
        return "b" if rb <= rc else "c"

    def label(self, x: Point) -> str:
        return self._label(x.x, x.y)

    def members(self, x: Point, tie_tol_rel: float = 1e-12) -> tuple[str, ...]:
        """All labels whose region area is within tie_tol_rel * |T| of the min."""
        areas = region_areas(self.triangle, x).as_tuple()
        lo = min(areas) + tie_tol_rel * self.triangle.area
        return tuple(v for v, a in zip(VERTEX_IDS, areas) if a <= lo)


def _relabel_widest_last(tri: Triangle) -> tuple[Triangle, tuple[str, str, str]]:
    """Cyclic relabeling putting the widest-angle vertex in slot c.

    Returns the rotated triangle and the original vertex ids now occupying
    slots (a, b, c).  Rotation preserves orientation, so the rotated
    triangle is the same point set.
    """
    angles = tri.angles
    i = max(range(3), key=lambda k: angles[k])
    order = (VERTEX_IDS[(i + 1) % 3], VERTEX_IDS[(i + 2) % 3], VERTEX_IDS[i])
    rotated = Triangle(tri.vertex(order[0]), tri.vertex(order[1]), tri.vertex(order[2]))
    return rotated, order


def _criterion_margin(rel: Triangle) -> float:
    """Signed slack of the interior criterion for a triangle whose widest
    (obtuse) angle sits at slot c: positive means the equal-area point is
    interior, zero puts it on side ab, negative pushes it outside."""
    ta = math.tan(rel.angle("a"))
    tb = math.tan(rel.angle("b"))
    lhs = math.sqrt((1.0 + ta * ta) * tb) + math.sqrt((1.0 + tb * tb) * ta)
    return lhs - math.sqrt(3.0 * (ta + tb))


def classify(tri: Triangle, tol: float = CLASSIFY_TOL) -> Classification:
    """Classify where the equal-area point lies.

    `tol` doubles as the half-width of the right-angle band (radians) and
    of the criterion-margin band around zero.
    """
    rel, order = _relabel_widest_last(tri)
    widest = rel.angle("c")
    if widest <= 0.5 * math.pi + tol:
        kind = RIGHT if abs(widest - 0.5 * math.pi) <= tol else ACUTE
        return Classification(kind)
    margin = _criterion_margin(rel)
    if margin > tol:
        kind = OBTUSE_INTERIOR
    elif margin < -tol:
        kind = OBTUSE_EXTERIOR
    else:
        kind = OBTUSE_BOUNDARY
    return Classification(kind, obtuse_vertex=order[2], criterion_margin=margin)


def boundary_point_closed_form(tri: Triangle) -> Point:
    """Equal-area point of an obtuse triangle in the boundary case, computed
    in closed form: the point lies on the side opposite the widest angle at
    distance |AB| * sqrt((1 + tan^2 A) tan B / (3 (tan A + tan B))) from A,
    where A and B are the acute vertices.  The formula is evaluated for any
    obtuse triangle; it equals the equal-area point exactly when the
    criterion margin vanishes."""
    rel, _ = _relabel_widest_last(tri)
    if rel.angle("c") <= 0.5 * math.pi:
        raise PartitionError("closed form needs an obtuse widest angle")
    ta = math.tan(rel.angle("a"))
    tb = math.tan(rel.angle("b"))
    frac = math.sqrt((1.0 + ta * ta) * tb / (3.0 * (ta + tb)))
    ux, uy = rel.side_unit("ab")
    length = rel.a.distance_to(rel.b)
    return Point(rel.a.x + frac * length * ux, rel.a.y + frac * length * uy)


def cut_line_offset(tri: Triangle, side: str, target_area: float) -> float:
    """Offset d of the cut perpendicular to a directed side such that
    area(T intersect {p : u . p <= d}) == target_area, with u the unit
    vector along the side.  The retained piece lies at the first
    endpoint's end of the side.  Found by bisection, so d is accurate to
    floating-point adjacency."""
    if not (0.0 < target_area < tri.area) or not math.isfinite(target_area):
        raise PartitionError(
            f"target area must lie strictly between 0 and the triangle area, got {target_area!r}"
        )
    ux, uy = tri.side_unit(side)
    pts = tri.points
    eps = tri._snap
    projs = [ux * px + uy * py for px, py in pts]
    lo, hi = min(projs), max(projs)

    def piece(d: float) -> float:
        return _signed_area(_clip(list(pts), ux, uy, d, eps))

    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        if piece(mid) < target_area:
            lo = mid
        else:
            hi = mid


def _area_system(tri: Triangle):
    """Residual callback for the solvers: areas at a and b minus the target,
    plus the max absolute deviation over all three regions."""
    s = tri.area / 3.0
    total = tri.area

    def fun(x: float, y: float):
        ra = _region_area_fast(tri, "a", x, y)
        rb = _region_area_fast(tri, "b", x, y)
        rc = total - ra - rb
        da = ra - s
        db = rb - s
        merit = max(abs(da), abs(db), abs(rc - s))
        return da, db, merit

    return fun


def _solution(tri: Triangle, point: Point, cls: Classification, method: str) -> PartitionSolution:
    areas = region_areas(tri, point)
    s = tri.area / 3.0
    residual = max(abs(areas.at_a - s), abs(areas.at_b - s), abs(areas.at_c - s))
    regions = tuple(region_polygon(tri, v, point) for v in VERTEX_IDS)
    return PartitionSolution(
        point=point,
        areas=areas,
        regions=regions,
        classification=cls,
        method=method,
        residual=residual,
    )


def solve_newton(tri: Triangle, cfg: SolverConfig | None = None, seed: Point | None = None) -> PartitionSolution:
    """Locate the equal-area point by damped Newton iteration on the area
    system, reseeding from a grid scan over the expanded bounding box if
    the iteration stalls.  Raises SolverError (with the best iterate in
    its report) when the residual cannot be driven below tolerance."""
    cfg = cfg or SolverConfig()
    fun = _area_system(tri)
    start = seed if seed is not None else tri.centroid
    d = tri.diameter
    xs = [p[0] for p in tri.points]
    ys = [p[1] for p in tri.points]
    box = (min(xs) - d, max(xs) + d, min(ys) - d, max(ys) + d)
    res = newton2d(
        fun,
        (start.x, start.y),
        tol=cfg.area_tol_rel * tri.area,
        fd_step=cfg.fd_step_rel * d,
        max_iters=cfg.max_iters,
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
            message="newton iteration did not reach the area tolerance",
        )
        raise SolverError(report.message, report)
    return _solution(tri, Point(res.x, res.y), classify(tri), "newton")


def solve_maximin(tri: Triangle, cfg: SolverConfig | None = None) -> PartitionSolution:
    """Locate the equal-area point by maximizing the smallest region area
    with a compass pattern search constrained to the closed triangle.

    The minimum region area never exceeds |T| / 3 and attains it only at
    the equal-area point, so the maximizer is the solution whenever the
    point is not outside the triangle; other kinds are rejected."""
    cls = classify(tri)
    if cls.kind not in INTERIOR_KINDS:
        raise PartitionError(f"maximin search needs the solution inside the triangle, not {cls.kind}")
    total = tri.area
    diam = tri.diameter

    def f(xx: float, xy: float) -> float:
        ra = _region_area_fast(tri, "a", xx, xy)
        rb = _region_area_fast(tri, "b", xx, xy)
        return min(ra, rb, total - ra - rb)

    inward = []
    pts = tri.points
    for i in range(3):
        sx, sy = pts[i]
        ex, ey = pts[(i + 1) % 3]
        dx, dy = ex - sx, ey - sy
        h = math.hypot(dx, dy)
        nx, ny = -dy / h, dx / h
        inward.append((nx, ny, nx * sx + ny * sy))
    edge_tol = 1e-15 * diam

    def inside(xx: float, xy: float) -> bool:
        return all(nx * xx + ny * xy - off >= -edge_tol for nx, ny, off in inward)

    # the objective is a pointwise min, so its improving cone at a ridge can
    # be narrow; probe 16 directions and a half-spacing rotation of them
    # before conceding a step size
    base = tuple(
        (math.cos(k * math.pi / 8.0), math.sin(k * math.pi / 8.0)) for k in range(16)
    )
    turned = tuple(
        (math.cos((k + 0.5) * math.pi / 8.0), math.sin((k + 0.5) * math.pi / 8.0))
        for k in range(16)
    )
    x, y = tri.centroid.x, tri.centroid.y
    fx = f(x, y)
    step = MAXIMIN_STEP_FRACTION * diam
    floor = MAXIMIN_STOP_REL * diam
    evals = 1
    rounds = 0
    while step >= floor and rounds < 100000:
        rounds += 1
        moved = False
        for dirs in (base, turned):
            bx = by = 0.0
            bf = fx
            for dx, dy in dirs:
                nx, ny = x + step * dx, y + step * dy
                if not inside(nx, ny):
                    continue
                fn = f(nx, ny)
                evals += 1
                if fn > bf:
                    bx, by, bf = nx, ny, fn
                    moved = True
            if moved:
                x, y, fx = bx, by, bf
                break
        if not moved:
            step *= 0.5
    point = Point(x, y)
    sol = _solution(tri, point, cls, "maximin")
    if sol.residual > MAXIMIN_AREA_TOL_REL * total:
        report = SolverReport(
            method="maximin",
            iterations=rounds,
            residual=sol.residual,
            best_point=(x, y),
            residual_history=(sol.residual,),
            converged=False,
            message="pattern search stalled before equalizing the areas",
        )
        raise SolverError(report.message, report)
    return sol


def _fully_labeled_cell(labeler: LabelSets, p1: Vec, p2: Vec, p3: Vec, n: int):
    """First fully-labeled small cell of the barycentric n-grid over the
    triangle (p1, p2, p3), scanning rows deterministically; None if the
    grid has no such cell."""
    e1x, e1y = (p2[0] - p1[0]) / n, (p2[1] - p1[1]) / n
    e2x, e2y = (p3[0] - p1[0]) / n, (p3[1] - p1[1]) / n

    def corner(i: int, j: int) -> Vec:
        return (p1[0] + i * e1x + j * e2x, p1[1] + i * e1y + j * e2y)

    rows = []
    for j in range(n + 1):
        row = []
        for i in range(n + 1 - j):
            x, y = corner(i, j)
            row.append(labeler._label(x, y))
        rows.append(row)
    for j in range(n):
        for i in range(n - j):
            up = {rows[j][i], rows[j][i + 1], rows[j + 1][i]}
            if len(up) == 3:
                return (corner(i, j), corner(i + 1, j), corner(i, j + 1))
            if i + 1 <= n - (j + 1):
                down = {rows[j][i + 1], rows[j + 1][i], rows[j + 1][i + 1]}
                if len(down) == 3:
                    return (corner(i + 1, j), corner(i, j + 1), corner(i + 1, j + 1))
    return None


def solve_kkm(tri: Triangle, cfg: SolverConfig | None = None) -> PartitionSolution:
    """Locate the equal-area point combinatorially: grid the triangle, label
    every node by its argmin region, find a cell carrying all three labels
    (one exists because each side excludes the opposite label), then zoom by
    regridding a blown-up copy of that cell until its diameter is below
    kkm_target_diam_rel * diameter.  Restricted to acute and right triangles,
    where the boundary labeling argument applies."""
    cfg = cfg or SolverConfig()
    cls = classify(tri)
    if cls.kind not in (ACUTE, RIGHT):
        raise PartitionError(f"grid labeling zoom needs an acute or right triangle, not {cls.kind}")
    labeler = LabelSets(tri)
    target = cfg.kkm_target_diam_rel * tri.diameter
    domain = tri.points
    n = cfg.kkm_initial_grid
    history = []
    for _ in range(200):
        cell = None
        nn = n
        for _ in range(KKM_GRID_RETRIES):
            cell = _fully_labeled_cell(labeler, *domain, nn)
            if cell is not None:
                break
            nn *= 2
        if cell is None:
            # The domain may have contracted past the point where the three
            # label sets meet (a labeled cell need not contain that point, it
            # only has to sit near it).  Grow the domain and rescan; give up
            # only once it has ballooned well past the whole triangle.
            cx = (domain[0][0] + domain[1][0] + domain[2][0]) / 3.0
            cy = (domain[0][1] + domain[1][1] + domain[2][1]) / 3.0
            dom_diam = max(
                math.dist(domain[0], domain[1]),
                math.dist(domain[1], domain[2]),
                math.dist(domain[2], domain[0]),
            )
            if dom_diam > 8.0 * tri.diameter:
                report = SolverReport(
                    method="kkm",
                    iterations=len(history),
                    residual=math.inf,
                    best_point=(cx, cy),
                    residual_history=tuple(history),
                    converged=False,
                    message="no fully-labeled cell at any retry resolution",
                )
                raise SolverError(report.message, report)
            domain = tuple(
                (cx + KKM_EXPAND * (qx - cx), cy + KKM_EXPAND * (qy - cy)) for qx, qy in domain
            )
            history.append(dom_diam)
            continue
        q1, q2, q3 = cell
        diam = max(math.dist(q1, q2), math.dist(q2, q3), math.dist(q3, q1))
        history.append(diam)
        cx = (q1[0] + q2[0] + q3[0]) / 3.0
        cy = (q1[1] + q2[1] + q3[1]) / 3.0
        if diam < target:
            return _solution(tri, Point(cx, cy), cls, "kkm")
        domain = tuple(
            (cx + KKM_EXPAND * (qx - cx), cy + KKM_EXPAND * (qy - cy)) for qx, qy in cell
        )
        n = KKM_REFINE_GRID
    report = SolverReport(
        method="kkm",
        iterations=len(history),
        residual=math.inf,
        best_point=(cx, cy),
        residual_history=tuple(history),
        converged=False,
        message="zoom failed to contract to the target diameter",
    )
    raise SolverError(report.message, report)


def solve_exterior(tri: Triangle, cfg: SolverConfig | None = None) -> PartitionSolution:
    """Equal-area point of a triangle in the exterior case, by direct
    construction: one cut perpendicular to each of the two long sides
    splits off a third of the area toward the respective acute vertex,
    and the point is the intersection of the two cut lines.  Falls back
    to Newton seeded at the constructed point if the construction's
    residual misses the tolerance (possible only in the noisy band right
    at the boundary case)."""
    cfg = cfg or SolverConfig()
    cls = classify(tri)
    if cls.kind != OBTUSE_EXTERIOR:
        raise PartitionError(f"exterior construction applies only to {OBTUSE_EXTERIOR}, not {cls.kind}")
    rel, _ = _relabel_widest_last(tri)
    s = tri.area / 3.0
    da = cut_line_offset(rel, "ac", s)
    db = cut_line_offset(rel, "bc", s)
    uax, uay = rel.side_unit("ac")
    ubx, uby = rel.side_unit("bc")
    det = uax * uby - uay * ubx
    x = (da * uby - uay * db) / det
    y = (uax * db - da * ubx) / det
    point = Point(x, y)
    sol = _solution(tri, point, cls, "exterior-construction")
    if sol.residual > cfg.area_tol_rel * tri.area:
        return solve_newton(tri, cfg, seed=point)
    return sol


def equal_partition(tri: Triangle, cfg: SolverConfig | None = None, cross_check: bool = False) -> PartitionSolution:
    """Solve the equal-area partition, dispatching on the classification:
    closed form for the boundary case, cut-line construction for the
    exterior case, Newton otherwise.  With cross_check=True an interior
    solution is recomputed by the maximin search and the two points must
    agree within 1e-6 * diameter."""
    cfg = cfg or SolverConfig()
    cls = classify(tri)
    if cls.kind == OBTUSE_BOUNDARY:
        sol = _solution(tri, boundary_point_closed_form(tri), cls, "closed-form")
    elif cls.kind == OBTUSE_EXTERIOR:
        sol = solve_exterior(tri, cfg)
    else:
        sol = solve_newton(tri, cfg)
    if cross_check and cls.kind in INTERIOR_KINDS:
        alt = solve_maximin(tri, cfg)
        gap = sol.point.distance_to(alt.point)
        if gap > CROSS_CHECK_DIST_REL * tri.diameter:
            report = SolverReport(
                method=sol.method,
                iterations=0,
                residual=sol.residual,
                best_point=sol.point.as_tuple(),
                residual_history=(sol.residual,),
                converged=False,
                message=f"independent solvers disagree by {gap:.3e}",
            )
            raise SolverError(report.message, report)
    return sol


def verify_partition(tri: Triangle, x: Point, tol: float = 1e-9) -> VerifyReport:
    """Check a claimed equal-area point: deviations of the three region
    areas from |T| / 3, the point's location (tol * diameter boundary
    band), and the region vertex counts.  ok means the worst deviation is
    within tol * |T|."""
    areas = region_areas(tri, x)
    s = tri.area / 3.0
    dev = max(abs(areas.at_a - s), abs(areas.at_b - s), abs(areas.at_c - s))
    sd = tri.signed_distance(x)
    band = tol * tri.diameter
    if sd > band:
        location = "interior"
    elif sd < -band:
        location = "exterior"
    else:
        location = "boundary"
    counts = tuple(len(region_polygon(tri, v, x)) for v in VERTEX_IDS)
    return VerifyReport(
        point=x,
        areas=areas,
        max_deviation=dev,
        deviation_rel=dev / tri.area,
        location=location,
        region_vertex_counts=counts,
        ok=dev <= tol * tri.area,
    )


def lemma_check(tri: Triangle, x: Point) -> bool:
    """For x on the triangle boundary, test the strict inequality that the
    region at the vertex opposite the containing side is larger than the
    smaller of the other two regions.  This is what keeps boundary grid
    nodes from ever taking the opposite label in the grid solver."""
    band = 1e-12 * tri.diameter
    side = None
    for s in SIDE_IDS:
        p, q = tri.side(s)
        dx, dy = q.x - p.x, q.y - p.y
        t = ((x.x - p.x) * dx + (x.y - p.y) * dy) / (dx * dx + dy * dy)
        t = min(1.0, max(0.0, t))
        if math.hypot(p.x + t * dx - x.x, p.y + t * dy - x.y) <= band:
            side = s
            break
    if side is None:
        raise PartitionError("point is not on the triangle boundary")
    opp = _OPPOSITE_VERTEX[side]
    areas = region_areas(tri, x)
    others = min(a for v, a in zip(VERTEX_IDS, areas.as_tuple()) if v != opp)
    return areas.at(opp) > others
