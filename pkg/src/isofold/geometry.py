"""Exact planar geometry: points, lines, convex polygons, predicates.

Every predicate is decided exactly through ExactNumber signs; rational
inputs take a fast path on the underlying rational backend.  Degenerate
results (empty or lower-dimensional clips, flat hulls) are first-class
values, not errors, so callers can branch on them without try/except.
"""

from __future__ import annotations

from enum import Enum
from functools import cmp_to_key

from .exactreal import EQ, ExactNumber, compare, _coerce

__all__ = [
    "Point",
    "Segment",
    "Line",
    "Triangle",
    "ConvexPolygon",
    "DegenerateHull",
    "Empty",
    "EMPTY",
    "LowerDimensional",
    "Location",
    "CoincidentPoints",
    "ApexOutside",
    "orientation",
    "squared_distance",
    "convex_hull",
    "perpendicular_bisector",
    "clip_polygon_halfplane",
    "triangulate_fan",
    "point_in_polygon",
    "segment_intersection",
]


class CoincidentPoints(ValueError):
    """Two points required to be distinct are equal."""


class ApexOutside(ValueError):
    """Fan apex is neither a vertex nor strictly inside the polygon."""


class Point:
    """An exact point of the plane."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = _coerce(x)
        self.y = _coerce(y)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return compare(self.x, other.x) == EQ and compare(self.y, other.y) == EQ

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    @property
    def is_rational(self) -> bool:
        return self.x.is_rational and self.y.is_rational

    def __repr__(self):
        return f"Point({self.x!r}, {self.y!r})"


def _sign_of(v: ExactNumber) -> int:
    from .exactreal import sign

    return sign(v)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the turn p->q->r: +1 counterclockwise, -1 clockwise, 0 flat."""
    ax, ay = p.x._rat, p.y._rat
    bx, by = q.x._rat, q.y._rat
    cx, cy = r.x._rat, r.y._rat
    if ax is not None and ay is not None and bx is not None and by is not None \
            and cx is not None and cy is not None:
        v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        return -1 if v < 0 else (0 if v == 0 else 1)
    cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return _sign_of(cross)


def squared_distance(p: Point, q: Point) -> ExactNumber:
    dx = q.x - p.x
    dy = q.y - p.y
    return dx * dx + dy * dy


class Segment:
    """A closed segment; may be degenerate only where an op allows it."""

    __slots__ = ("p", "q")

    def __init__(self, p: Point, q: Point):
        self.p = p
        self.q = q

    def __eq__(self, other):
        if not isinstance(other, Segment):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    __hash__ = None

    def __repr__(self):
        return f"Segment({self.p!r}, {self.q!r})"


class Line:
    """The locus a*x + b*y = c with (a, b) != (0, 0)."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        self.a = _coerce(a)
        self.b = _coerce(b)
        self.c = _coerce(c)
        if _sign_of(self.a) == 0 and _sign_of(self.b) == 0:
            raise ValueError("line coefficients (a, b) must not both be zero")

    def value(self, p: Point) -> ExactNumber:
        return self.a * p.x + self.b * p.y - self.c

    def side(self, p: Point) -> int:
        """Sign of a*x + b*y - c at p; 0 means p lies on the line."""
        a, b, c = self.a._rat, self.b._rat, self.c._rat
        x, y = p.x._rat, p.y._rat
        if a is not None and b is not None and c is not None \
                and x is not None and y is not None:
            v = a * x + b * y - c
            return -1 if v < 0 else (0 if v == 0 else 1)
        return _sign_of(self.value(p))

    def contains(self, p: Point) -> bool:
        return self.side(p) == 0

    def __eq__(self, other):
        # Same locus, up to scaling of the coefficients.
        if not isinstance(other, Line):
            return NotImplemented
        from .exactreal import equals

        if not equals(self.a * other.b, self.b * other.a):
            return False
        return equals(self.a * other.c, self.c * other.a) and equals(
            self.b * other.c, self.c * other.b
        )

    __hash__ = None

    def __repr__(self):
        return f"Line({self.a!r}, {self.b!r}, {self.c!r})"


def perpendicular_bisector(p: Point, q: Point) -> Line:
    """Locus of points equidistant from p and q."""
    if p == q:
        raise CoincidentPoints("bisector of coincident points")
    a = (q.x - p.x) * 2
    b = (q.y - p.y) * 2
    c = (q.x * q.x + q.y * q.y) - (p.x * p.x + p.y * p.y)
    return Line(a, b, c)


class Triangle:
    """A non-degenerate triangle; vertex order is not constrained here."""

    __slots__ = ("v0", "v1", "v2")

    def __init__(self, v0: Point, v1: Point, v2: Point):
        if orientation(v0, v1, v2) == 0:
            raise ValueError("degenerate triangle")
        self.v0 = v0
        self.v1 = v1
        self.v2 = v2

    @property
    def vertices(self):
        return (self.v0, self.v1, self.v2)

    def area2(self) -> ExactNumber:
        """Twice the signed area (positive for counterclockwise order)."""
        return (self.v1.x - self.v0.x) * (self.v2.y - self.v0.y) - (
            self.v1.y - self.v0.y
        ) * (self.v2.x - self.v0.x)

    def __eq__(self, other):
        if not isinstance(other, Triangle):
            return NotImplemented
        return self.v0 == other.v0 and self.v1 == other.v1 and self.v2 == other.v2

    __hash__ = None

    def __repr__(self):
        return f"Triangle({self.v0!r}, {self.v1!r}, {self.v2!r})"


class ConvexPolygon:
    """Strictly convex polygon, vertices counterclockwise, no repeats.

    Strict convexity means every consecutive vertex triple turns left,
    which also rules out repeated and collinear vertices.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(vertices)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        n = len(vs)
        for i in range(n):
            if orientation(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) != 1:
                raise ValueError(
                    "vertices must be strictly convex in counterclockwise order"
                )
        self.vertices = vs

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def edges(self):
        vs = self.vertices
        n = len(vs)
        return [Segment(vs[i], vs[(i + 1) % n]) for i in range(n)]

    def area2(self) -> ExactNumber:
        vs = self.vertices
        total = _coerce(0)
        for i in range(1, len(vs) - 1):
            total = total + Triangle(vs[0], vs[i], vs[i + 1]).area2()
        return total

    def __eq__(self, other):
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(a == b for a, b in zip(self.vertices, other.vertices))

    __hash__ = None

    def __repr__(self):
        return f"ConvexPolygon({list(self.vertices)!r})"


class DegenerateHull:
    """Hull of points that do not span the plane.

    dimension 0: all points equal (payload: the point);
    dimension 1: all points collinear (payload: the extreme points).
    """

    __slots__ = ("dimension", "points")

    def __init__(self, dimension: int, points):
        self.dimension = dimension
        self.points = tuple(points)

    def __repr__(self):
        return f"DegenerateHull(dim={self.dimension}, points={list(self.points)!r})"


class Empty:
    """Empty intersection result."""

    __slots__ = ()

    def __repr__(self):
        return "EMPTY"


EMPTY = Empty()


class LowerDimensional:
    """A clip result that collapsed to a point or a segment."""

    __slots__ = ("geometry",)

    def __init__(self, geometry):
        self.geometry = geometry

    def __repr__(self):
        return f"LowerDimensional({self.geometry!r})"


class Location(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _cmp_points(p: Point, q: Point) -> int:
    c = compare(p.x, q.x)
    if c != 0:
        return c
    return compare(p.y, q.y)


def convex_hull(points):
    """Convex hull as a ConvexPolygon, or a DegenerateHull value.

    Monotone chain with exact comparisons; collinear boundary points are
    dropped so the result is strictly convex.
    """
    pts = list(points)
    if not pts:
        raise ValueError("hull of no points")
    pts.sort(key=cmp_to_key(_cmp_points))
    dedup = [pts[0]]
    for p in pts[1:]:
        if p != dedup[-1]:
            dedup.append(p)
    pts = dedup
    if len(pts) == 1:
        return DegenerateHull(0, pts)
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return DegenerateHull(1, (pts[0], pts[-1]))
    return ConvexPolygon(hull)


def clip_polygon_halfplane(poly: ConvexPolygon, line: Line, keep_side: int):
    """Intersection of poly with the closed half-plane side(x) == keep_side.

    Returns a ConvexPolygon when the intersection has interior, EMPTY
    when nothing of poly lies on the closed side, and LowerDimensional
    when the intersection is a single point or segment.
    """
    if keep_side not in (-1, 1):
        raise ValueError("keep_side must be +1 or -1")
    vs = poly.vertices
    n = len(vs)
    sides = [line.side(v) for v in vs]
    if not any(s == keep_side for s in sides):
        on_line = [v for v, s in zip(vs, sides) if s == 0]
        if not on_line:
            return EMPTY
        if len(on_line) == 1:
            return LowerDimensional(on_line[0])
        return LowerDimensional(Segment(on_line[0], on_line[1]))
    out: list[Point] = []
    for i in range(n):
        j = (i + 1) % n
        if sides[i] == keep_side or sides[i] == 0:
            out.append(vs[i])
        if sides[i] * sides[j] < 0:
            vp = line.value(vs[i])
            vq = line.value(vs[j])
            t = vp / (vp - vq)
            out.append(
                Point(vs[i].x + t * (vs[j].x - vs[i].x), vs[i].y + t * (vs[j].y - vs[i].y))
            )
    cleaned: list[Point] = []
    for p in out:
        if not cleaned or p != cleaned[-1]:
            cleaned.append(p)
    if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    return ConvexPolygon(cleaned)


def triangulate_fan(poly: ConvexPolygon, apex: Point):
    """Fan triangles covering poly from apex, counterclockwise.

    The apex must be a vertex of poly or strictly inside it.
    """
    vs = poly.vertices
    n = len(vs)
    for i, v in enumerate(vs):
        if v == apex:
            return [
                Triangle(apex, vs[(i + k) % n], vs[(i + k + 1) % n])
                for k in range(1, n - 1)
            ]
    if point_in_polygon(apex, poly) is not Location.INSIDE:
        raise ApexOutside("fan apex must be a vertex or strictly inside")
    return [Triangle(apex, vs[i], vs[(i + 1) % n]) for i in range(n)]


def point_in_polygon(p: Point, poly: ConvexPolygon) -> Location:
    vs = poly.vertices
    n = len(vs)
    on_edge = False
    for i in range(n):
        s = orientation(vs[i], vs[(i + 1) % n], p)
        if s < 0:
            return Location.OUTSIDE
        if s == 0:
            on_edge = True
    return Location.BOUNDARY if on_edge else Location.INSIDE


def _on_segment_collinear(p: Point, s: Segment) -> bool:
    # p collinear with s assumed; checks the box extent exactly.
    lo_x, hi_x = (s.p.x, s.q.x) if compare(s.p.x, s.q.x) != 1 else (s.q.x, s.p.x)
    lo_y, hi_y = (s.p.y, s.q.y) if compare(s.p.y, s.q.y) != 1 else (s.q.y, s.p.y)
    return (
        compare(lo_x, p.x) != 1
        and compare(p.x, hi_x) != 1
        and compare(lo_y, p.y) != 1
        and compare(p.y, hi_y) != 1
    )


def point_on_segment(p: Point, s: Segment) -> bool:
    if s.p == s.q:
        return p == s.p
    if orientation(s.p, s.q, p) != 0:
        return False
    return _on_segment_collinear(p, s)


def segment_intersection(s1: Segment, s2: Segment):
    """Exact intersection: None, a Point, or an overlap Segment."""
    if s1.p == s1.q:
        if point_on_segment(s1.p, s2):
            return Point(s1.p.x, s1.p.y)
        return None
    if s2.p == s2.q:
        if point_on_segment(s2.p, s1):
            return Point(s2.p.x, s2.p.y)
        return None
    d1 = orientation(s2.p, s2.q, s1.p)
    d2 = orientation(s2.p, s2.q, s1.q)
    d3 = orientation(s1.p, s1.q, s2.p)
    d4 = orientation(s1.p, s1.q, s2.q)
    if d1 == 0 and d2 == 0:
        # Collinear: project on the longer axis of s1 and intersect ranges.
        dx = s1.q.x - s1.p.x
        use_x = _sign_of(dx) != 0

        def key(pt: Point) -> ExactNumber:
            return pt.x if use_x else pt.y

        a, b = (s1.p, s1.q) if compare(key(s1.p), key(s1.q)) != 1 else (s1.q, s1.p)
        c, d = (s2.p, s2.q) if compare(key(s2.p), key(s2.q)) != 1 else (s2.q, s2.p)
        lo = a if compare(key(a), key(c)) != -1 else c
        hi = b if compare(key(b), key(d)) != 1 else d
        cmp_ends = compare(key(lo), key(hi))
        if cmp_ends == 1:
            return None
        if cmp_ends == 0:
            return Point(lo.x, lo.y)
        return Segment(Point(lo.x, lo.y), Point(hi.x, hi.y))
    if d1 * d2 < 0 and d3 * d4 < 0:
        # Proper crossing: parameter along s1 against the line of s2.
        la = s2.q.y - s2.p.y
        lb = s2.p.x - s2.q.x
        line = Line(la, lb, la * s2.p.x + lb * s2.p.y)
        vp = line.value(s1.p)
        vq = line.value(s1.q)
        t = vp / (vp - vq)
        return Point(s1.p.x + t * (s1.q.x - s1.p.x), s1.p.y + t * (s1.q.y - s1.p.y))
    # Touching: at most one shared endpoint-on-segment point.
    for cand in (s1.p, s1.q):
        if point_on_segment(cand, s2):
            return Point(cand.x, cand.y)
    for cand in (s2.p, s2.q):
        if point_on_segment(cand, s1):
            return Point(cand.x, cand.y)
    return None
