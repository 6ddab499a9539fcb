"""Planar geometry primitives.

Double-precision points, triangles and convex polygons, half-plane
clipping, and the perpendicular-wedge machinery that splits the plane
around a movable point X into three angular regions, one per triangle
vertex: the region at vertex V is bounded by the two lines through X
perpendicular to the sides meeting at V and opens toward V.  The three
wedges tile the plane for every X, so the three region areas always sum
to the triangle area.

All types are immutable after construction and all operations are pure
functions, so everything here is safe to use concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

Vec = tuple[float, float]

VERTEX_IDS = ("a", "b", "c")
SIDE_IDS = ("ab", "bc", "ca")

DEGENERACY_REL = 1e-12  # min |signed area| / diameter**2 for a usable triangle
CLIP_SNAP_REL = 1e-14   # on-line band for clipping, relative to coordinate scale


class GeometryError(ValueError):
    """Invalid geometric input: non-finite, degenerate or non-convex."""


# ---------------------------------------------------------------------------
# Low-level helpers on raw coordinate tuples.  These are the hot paths; they
# deliberately avoid constructing wrapper objects.
# ---------------------------------------------------------------------------


def _signed_area(pts) -> float:
    n = len(pts)
    if n < 3:
        return 0.0
    total = 0.0
    x0, y0 = pts[-1]
    for x1, y1 in pts:
        total += x0 * y1 - x1 * y0
        x0, y0 = x1, y1
    return 0.5 * total


def _coord_scale(pts) -> float:
    m = 1.0
    for x, y in pts:
        ax = abs(x)
        if ax > m:
            m = ax
        ay = abs(y)
        if ay > m:
            m = ay
    return m


def _clip(pts, nx: float, ny: float, off: float, eps: float):
    """Clip a convex CCW polygon against {p : n.p <= off}.

    Vertices within eps of the cut line are kept as-is and no intersection
    vertex is generated for their edges, which avoids sliver pairs.
    """
    if not pts:
        return []
    out = []
    sx, sy = pts[-1]
    ds = nx * sx + ny * sy - off
    for p in pts:
        ex, ey = p
        de = nx * ex + ny * ey - off
        if de <= eps:
            if ds > eps and de < -eps:
                t = ds / (ds - de)
                out.append((sx + t * (ex - sx), sy + t * (ey - sy)))
            out.append(p)
        elif ds < -eps:
            t = ds / (ds - de)
            out.append((sx + t * (ex - sx), sy + t * (ey - sy)))
        sx, sy = ex, ey
        ds = de
    return out


def _wedge_area(pts, n1x, n1y, o1, n2x, n2y, o2, eps) -> float:
    """Area of a convex CCW polygon clipped by two half-planes (<= form)."""
    for nx, ny, off in ((n1x, n1y, o1), (n2x, n2y, o2)):
        if not pts:
            return 0.0
        out = []
        sx, sy = pts[-1]
        ds = nx * sx + ny * sy - off
        for p in pts:
            ex, ey = p
            de = nx * ex + ny * ey - off
            if de <= eps:
                if ds > eps and de < -eps:
                    t = ds / (ds - de)
                    out.append((sx + t * (ex - sx), sy + t * (ey - sy)))
                out.append(p)
            elif ds < -eps:
                t = ds / (ds - de)
                out.append((sx + t * (ex - sx), sy + t * (ey - sy)))
            sx, sy = ex, ey
            ds = de
        pts = out
    if len(pts) < 3:
        return 0.0
    total = 0.0
    x0, y0 = pts[-1]
    for x1, y1 in pts:
        total += x0 * y1 - x1 * y0
        x0, y0 = x1, y1
    return 0.5 * total


def _dedupe_ring(pts, tol: float):
    """Drop consecutive vertices (cyclically) closer than tol."""
    out = []
    for p in pts:
        if out:
            qx, qy = out[-1]
            if abs(p[0] - qx) <= tol and abs(p[1] - qy) <= tol:
                continue
        out.append(p)
    while len(out) > 1:
        px, py = out[0]
        qx, qy = out[-1]
        if abs(px - qx) <= tol and abs(py - qy) <= tol:
            out.pop()
        else:
            break
    return out


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    """A point in the plane; coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def as_tuple(self) -> Vec:
        return (self.x, self.y)

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class HalfPlane:
    """The closed half-plane {p : normal . p <= offset}, |normal| = 1."""

    normal: Vec
    offset: float

    def __post_init__(self):
        nx, ny = self.normal
        if not (math.isfinite(nx) and math.isfinite(ny) and math.isfinite(self.offset)):
            raise GeometryError("non-finite half-plane")
        if abs(math.hypot(nx, ny) - 1.0) > 1e-12:
            raise GeometryError(f"half-plane normal must be unit, got |n| = {math.hypot(nx, ny)!r}")

    @classmethod
    def through(cls, point: Point, normal: Vec) -> "HalfPlane":
        """Half-plane whose boundary passes through `point`, normalizing `normal`."""
        nx, ny = normal
        h = math.hypot(nx, ny)
        if h == 0.0 or not math.isfinite(h):
            raise GeometryError("half-plane normal must be nonzero")
        nx, ny = nx / h, ny / h
        return cls((nx, ny), nx * point.x + ny * point.y)

    def signed_distance(self, p: Point) -> float:
        return self.normal[0] * p.x + self.normal[1] * p.y - self.offset

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return self.signed_distance(p) <= tol

    def flipped(self) -> "HalfPlane":
        return HalfPlane((-self.normal[0], -self.normal[1]), -self.offset)


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with CCW vertices; may be empty.

    Consecutive near-duplicate vertices are merged at construction.  Input
    given clockwise is reversed.
    """

    vertices: tuple[Point, ...] = ()

    def __post_init__(self):
        pts = [(p.x, p.y) for p in self.vertices]
        if not pts:
            return
        scale = _coord_scale(pts)
        pts = _dedupe_ring(pts, CLIP_SNAP_REL * scale)
        if len(pts) < 3:
            if len(pts) < len(self.vertices):
                object.__setattr__(self, "vertices", ())
                return
            raise GeometryError("polygon needs at least 3 distinct vertices (or none)")
        if _signed_area(pts) < 0.0:
            pts.reverse()
        cross_tol = -1e-9 * scale * scale
        n = len(pts)
        for i in range(n):
            ax, ay = pts[i - 1]
            bx, by = pts[i]
            cx, cy = pts[(i + 1) % n]
            cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            if cross < cross_tol:
                raise GeometryError(f"polygon is not convex (cross product {cross:.3e} at vertex {i})")
        object.__setattr__(self, "vertices", tuple(Point(x, y) for x, y in pts))

    @classmethod
    def from_coords(cls, coords) -> "ConvexPolygon":
        return cls(tuple(Point(float(x), float(y)) for x, y in coords))

    @classmethod
    def empty(cls) -> "ConvexPolygon":
        return cls(())

    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def coords(self) -> tuple[Vec, ...]:
        return tuple((p.x, p.y) for p in self.vertices)

    @cached_property
    def area(self) -> float:
        return abs(_signed_area(self.coords)) if self.vertices else 0.0

    def translated(self, dx: float, dy: float) -> "ConvexPolygon":
        return ConvexPolygon(tuple(Point(p.x + dx, p.y + dy) for p in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Triangle:
    """Non-degenerate triangle, normalized to CCW vertex order."""

    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        pts = ((self.a.x, self.a.y), (self.b.x, self.b.y), (self.c.x, self.c.y))
        signed = _signed_area(pts)
        d01 = math.dist(pts[0], pts[1])
        d12 = math.dist(pts[1], pts[2])
        d20 = math.dist(pts[2], pts[0])
        diam = max(d01, d12, d20)
        if abs(signed) < DEGENERACY_REL * diam * diam:
            raise GeometryError(f"degenerate triangle: |signed area| = {abs(signed):.3e}")
        if signed < 0.0:
            b, c = self.b, self.c
            object.__setattr__(self, "b", c)
            object.__setattr__(self, "c", b)

    @classmethod
    def from_coords(cls, coords) -> "Triangle":
        (ax, ay), (bx, by), (cx, cy) = coords
        return cls(Point(float(ax), float(ay)), Point(float(bx), float(by)), Point(float(cx), float(cy)))

    @cached_property
    def points(self) -> tuple[Vec, Vec, Vec]:
        return ((self.a.x, self.a.y), (self.b.x, self.b.y), (self.c.x, self.c.y))

    @cached_property
    def area(self) -> float:
        return _signed_area(self.points)

    @cached_property
    def diameter(self) -> float:
        p, q, r = self.points
        return max(math.dist(p, q), math.dist(q, r), math.dist(r, p))

    @cached_property
    def centroid(self) -> Point:
        return Point(
            (self.a.x + self.b.x + self.c.x) / 3.0,
            (self.a.y + self.b.y + self.c.y) / 3.0,
        )

    def vertex(self, v: str) -> Point:
        v = v.lower()
        if v == "a":
            return self.a
        if v == "b":
            return self.b
        if v == "c":
            return self.c
        raise GeometryError(f"unknown vertex id {v!r}")

    def side(self, side: str) -> tuple[Point, Point]:
        """Directed side, e.g. 'ab' is a -> b and 'ba' is b -> a."""
        side = side.lower()
        if len(side) != 2 or side[0] == side[1]:
            raise GeometryError(f"unknown side id {side!r}")
        return self.vertex(side[0]), self.vertex(side[1])

    def side_unit(self, side: str) -> Vec:
        p, q = self.side(side)
        dx, dy = q.x - p.x, q.y - p.y
        h = math.hypot(dx, dy)
        return (dx / h, dy / h)

    def angle(self, v: str) -> float:
        """Interior angle at vertex v, in (0, pi)."""
        idx = VERTEX_IDS.index(v.lower())
        p = self.points[idx]
        q = self.points[(idx + 1) % 3]
        r = self.points[(idx + 2) % 3]
        ux, uy = q[0] - p[0], q[1] - p[1]
        wx, wy = r[0] - p[0], r[1] - p[1]
        return math.atan2(abs(ux * wy - uy * wx), ux * wx + uy * wy)

    @cached_property
    def angles(self) -> tuple[float, float, float]:
        return (self.angle("a"), self.angle("b"), self.angle("c"))

    def as_polygon(self) -> ConvexPolygon:
        return ConvexPolygon((self.a, self.b, self.c))

    def signed_distance(self, p: Point) -> float:
        """Distance to the boundary, positive inside, negative outside."""
        best = math.inf
        pts = self.points
        for i in range(3):
            sx, sy = pts[i]
            ex, ey = pts[(i + 1) % 3]
            dx, dy = ex - sx, ey - sy
            h = math.hypot(dx, dy)
            d = ((p.x - sx) * -dy + (p.y - sy) * dx) / h
            if d < best:
                best = d
        return best

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return self.signed_distance(p) >= -tol

    # Wedge constraints in <= form: region at v is
    # {p : n1.(p - x) <= 0} & {p : n2.(p - x) <= 0} where n1 is the unit
    # direction of the CCW side leaving v and n2 the negated unit direction
    # of the CCW side arriving at v.
    @cached_property
    def _wedges(self) -> dict:
        u = {s: self.side_unit(s) for s in SIDE_IDS}
        nxt = {"a": "ab", "b": "bc", "c": "ca"}
        prv = {"a": "ca", "b": "ab", "c": "bc"}
        out = {}
        for v in VERTEX_IDS:
            n1 = u[nxt[v]]
            p2 = u[prv[v]]
            out[v] = (n1[0], n1[1], -p2[0], -p2[1])
        return out

    @cached_property
    def _snap(self) -> float:
        return CLIP_SNAP_REL * _coord_scale(self.points)


@dataclass(frozen=True)
class Sector:
    """Angular region at an apex: intersection of two closed half-planes
    whose boundary lines both pass through the apex; width in (0, pi)."""

    apex: Point
    left: HalfPlane
    right: HalfPlane

    def __post_init__(self):
        scale = max(1.0, abs(self.apex.x), abs(self.apex.y))
        for h in (self.left, self.right):
            if abs(h.signed_distance(self.apex)) > 1e-9 * scale:
                raise GeometryError("sector apex must lie on both boundary lines")
        w = self.width
        if not 0.0 < w < math.pi:
            raise GeometryError(f"sector width must be in (0, pi), got {w!r}")

    @property
    def width(self) -> float:
        n1x, n1y = self.left.normal
        n2x, n2y = self.right.normal
        return math.pi - math.atan2(abs(n1x * n2y - n1y * n2x), n1x * n2x + n1y * n2y)

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return self.left.contains(p, tol) and self.right.contains(p, tol)


@dataclass(frozen=True)
class RegionAreas:
    """The three region areas at a point, keyed by triangle vertex."""

    at_a: float
    at_b: float
    at_c: float

    def at(self, v: str) -> float:
        return {"a": self.at_a, "b": self.at_b, "c": self.at_c}[v.lower()]

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.at_a, self.at_b, self.at_c)

    def total(self) -> float:
        return self.at_a + self.at_b + self.at_c


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def polygon_area(poly: ConvexPolygon) -> float:
    """Area of a convex polygon; the empty polygon has area 0."""
    if poly.is_empty():
        return 0.0
    return abs(_signed_area(poly.coords))


def clip_halfplane(poly: ConvexPolygon, h: HalfPlane) -> ConvexPolygon:
    """Intersection of a convex polygon with a closed half-plane.

    Vertices on the boundary line are retained; a fully clipped polygon
    comes back empty.
    """
    if poly.is_empty():
        return ConvexPolygon.empty()
    eps = CLIP_SNAP_REL * _coord_scale(poly.coords)
    out = _clip(list(poly.coords), h.normal[0], h.normal[1], h.offset, eps)
    if len(out) < 3:
        return ConvexPolygon.empty()
    return ConvexPolygon(tuple(Point(x, y) for x, y in out))


def outward_normal(tri: Triangle, side: str) -> Vec:
    """Unit normal of a side, pointing away from the opposite vertex."""
    side = side.lower()
    key = side if side in SIDE_IDS else side[::-1]
    if key not in SIDE_IDS:
        raise GeometryError(f"unknown side id {side!r}")
    ux, uy = tri.side_unit(key)
    return (uy, -ux)


def foot_of_perpendicular(x: Point, seg: tuple[Point, Point]) -> Point:
    """Orthogonal projection of x onto the supporting line of a segment."""
    p, q = seg
    dx, dy = q.x - p.x, q.y - p.y
    den = dx * dx + dy * dy
    if den == 0.0:
        raise GeometryError("cannot project onto a degenerate segment")
    t = ((x.x - p.x) * dx + (x.y - p.y) * dy) / den
    return Point(p.x + t * dx, p.y + t * dy)


def sector_at_vertex(tri: Triangle, v: str, x: Point) -> Sector:
    """The wedge at x bounded by the perpendiculars to the two sides
    meeting at vertex v, opening toward v.  Its width is pi minus the
    interior angle at v, so the three wedges tile the plane."""
    n1x, n1y, n2x, n2y = tri._wedges[v.lower()]
    left = HalfPlane((n1x, n1y), n1x * x.x + n1y * x.y)
    right = HalfPlane((n2x, n2y), n2x * x.x + n2y * x.y)
    return Sector(x, left, right)


def _region_area_fast(tri: Triangle, v: str, xx: float, xy: float) -> float:
    n1x, n1y, n2x, n2y = tri._wedges[v]
    return _wedge_area(
        tri.points,
        n1x, n1y, n1x * xx + n1y * xy,
        n2x, n2y, n2x * xx + n2y * xy,
        tri._snap,
    )


def region_area(tri: Triangle, v: str, x: Point) -> float:
    """Area of the triangle cut by the wedge at x opening toward vertex v.

    Defined and continuous for every x in the plane, not just inside the
    triangle.
    """
    return _region_area_fast(tri, v.lower(), x.x, x.y)


def region_areas(tri: Triangle, x: Point) -> RegionAreas:
    """All three region areas at x; they sum to the triangle area."""
    return RegionAreas(
        _region_area_fast(tri, "a", x.x, x.y),
        _region_area_fast(tri, "b", x.x, x.y),
        _region_area_fast(tri, "c", x.x, x.y),
    )


def region_polygon(tri: Triangle, v: str, x: Point) -> ConvexPolygon:
    """The region at vertex v as a polygon (empty if the wedge misses the
    triangle).  Consecutive vertices closer than 1e-12 * diameter are
    merged so degenerate slivers do not inflate the vertex count."""
    n1x, n1y, n2x, n2y = tri._wedges[v.lower()]
    pts = _clip(list(tri.points), n1x, n1y, n1x * x.x + n1y * x.y, tri._snap)
    pts = _clip(pts, n2x, n2y, n2x * x.x + n2y * x.y, tri._snap)
    pts = _dedupe_ring(pts, 1e-12 * tri.diameter)
    if len(pts) < 3:
        return ConvexPolygon.empty()
    return ConvexPolygon(tuple(Point(px, py) for px, py in pts))


def min_area_f(tri: Triangle, x: Point) -> float:
    """Minimum of the three region areas at x.  Vanishes at the vertices
    and never exceeds a third of the triangle area."""
    return min(region_areas(tri, x).as_tuple())
