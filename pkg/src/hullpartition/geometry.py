"""Exact planar geometry kernel.

Coordinates are exact rationals (``int`` or ``Fraction``), never floats:
every combinatorial decision in this package (orientation, ordering,
crossing and intersection tests) is made with exact arithmetic, so no
epsilon can flip a branch.  Floating point appears only where a length
or perimeter is actually measured.

Float inputs are accepted at construction time and converted to the
exact rational value of the float, so predicates stay exact with
respect to the values the caller handed over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import DegenerateInput

# Orientation of an ordered point triple (sign of the cross product).
CW = -1
COLLINEAR = 0
CCW = 1

Coordinate = Union[int, Fraction]


def exact(value) -> Coordinate:
    """Coerce a coordinate to an exact rational.

    ints and Fractions pass through; floats and Decimals are converted
    to their exact rational value; decimal strings are parsed exactly.
    """
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DegenerateInput(f"coordinate is not finite: {value!r}")
        as_fraction = Fraction(value)
        return as_fraction.numerator if as_fraction.denominator == 1 else as_fraction
    if isinstance(value, (Decimal, str)):
        try:
            as_fraction = Fraction(value)
        except (ValueError, ArithmeticError) as exc:
            raise DegenerateInput(f"cannot parse coordinate {value!r}") from exc
        return as_fraction.numerator if as_fraction.denominator == 1 else as_fraction
    raise TypeError(f"unsupported coordinate type: {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class Point:
    """An exact point in the plane."""

    x: Coordinate
    y: Coordinate

    def __post_init__(self):
        object.__setattr__(self, "x", exact(self.x))
        object.__setattr__(self, "y", exact(self.y))

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def __iter__(self) -> Iterator[Coordinate]:
        return iter((self.x, self.y))


@dataclass(frozen=True, slots=True)
class Segment:
    """A line segment between two distinct points."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise DegenerateInput(f"segment endpoints coincide: {self.a}")

    @property
    def length(self) -> float:
        return math.hypot(
            float(self.b.x - self.a.x), float(self.b.y - self.a.y)
        )


def orientation(a: Point, b: Point, c: Point) -> int:
    """Turn direction of the path a -> b -> c.

    Returns CCW (+1) for a left turn, CW (-1) for a right turn and
    COLLINEAR (0) when the three points are on one line.  Exact.
    """
    cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
    if cross > 0:
        return CCW
    if cross < 0:
        return CW
    return COLLINEAR


def point_lt(u: Point, v: Point) -> bool:
    """Strict "lower-left" order: smaller x first, ties by smaller y."""
    return (u.x, u.y) < (v.x, v.y)


def _angle_phase(dx, dy) -> int:
    # Clockwise sweep from the +y direction: phase 0 covers [0, pi)
    # (straight up through straight right, exclusive of straight down),
    # phase 1 covers [pi, 2*pi).
    if dx > 0 or (dx == 0 and dy > 0):
        return 0
    return 1


def _angle_cmp(dx1, dy1, dx2, dy2) -> int:
    """Compare two nonzero direction vectors by clockwise angle from +y."""
    p1 = _angle_phase(dx1, dy1)
    p2 = _angle_phase(dx2, dy2)
    if p1 != p2:
        return -1 if p1 < p2 else 1
    cross = dx1 * dy2 - dy1 * dx2
    if cross < 0:
        return -1
    if cross > 0:
        return 1
    return 0


def angle_less(anchor: Point, a: Point, b: Point) -> bool:
    """Order two points by clockwise angle around ``anchor`` from +y.

    Ties in angle are broken by distance to the anchor (nearer first).
    Neither point may equal the anchor: the angle is undefined there.
    """
    if a == anchor or b == anchor:
        raise ValueError("angle is undefined for the anchor itself")
    cmp = _angle_cmp(a.x - anchor.x, a.y - anchor.y, b.x - anchor.x, b.y - anchor.y)
    if cmp != 0:
        return cmp < 0
    da = (a.x - anchor.x) ** 2 + (a.y - anchor.y) ** 2
    db = (b.x - anchor.x) ** 2 + (b.y - anchor.y) ** 2
    return da < db


def _strict_hull(coords: Sequence[tuple]) -> list[tuple]:
    """Strictly convex clockwise hull of coordinate pairs.

    Duplicates are tolerated; collinear boundary points are dropped.
    The first output vertex is the lexicographic minimum.  Raises
    DegenerateInput when the points do not span two dimensions.
    """
    pts = sorted(set(coords))
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 distinct points for a hull")

    # Upper chain left-to-right, then lower chain right-to-left, gives a
    # clockwise cycle starting at the lexicographic minimum.  Popping on
    # cross >= 0 keeps only strict right turns, which removes collinear
    # runs.
    def chain(points):
        out = []
        for px, py in points:
            while len(out) >= 2:
                ax, ay = out[-2]
                bx, by = out[-1]
                if (bx - ax) * (py - by) - (by - ay) * (px - bx) >= 0:
                    out.pop()
                else:
                    break
            out.append((px, py))
        return out

    upper = chain(pts)
    lower = chain(reversed(pts))
    hull = upper[:-1] + lower[:-1]
    if len(hull) < 3:
        raise DegenerateInput("points are collinear")
    return hull


class ConvexPolygon:
    """A strictly convex polygon: a clockwise vertex cycle with no three
    consecutive vertices collinear.

    Construction validates the invariants and caches the perimeter, the
    minimum vertex, the bounding box, clockwise prefix edge lengths and
    the split of the cycle into its two x-monotone chains.
    """

    __slots__ = (
        "vertices",
        "perimeter",
        "min_vertex",
        "min_index",
        "max_index",
        "_coords",
        "_bbox",
        "_prefix",
        "_centroid_sums",
    )

    def __init__(self, vertices: Iterable[Point]):
        verts = tuple(
            v if isinstance(v, Point) else Point(v[0], v[1]) for v in vertices
        )
        if len(verts) < 3:
            raise DegenerateInput("polygon needs at least 3 vertices")
        coords = tuple((v.x, v.y) for v in verts)
        if len(set(coords)) != len(coords):
            raise DegenerateInput("polygon has repeated vertices")
        m = len(coords)
        for i in range(m):
            ax, ay = coords[i - 2]
            bx, by = coords[i - 1]
            cx, cy = coords[i]
            cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
            if cross >= 0:
                raise DegenerateInput(
                    "vertices must form a strictly convex clockwise cycle"
                )
        self.vertices = verts
        self._coords = coords

        min_i = min(range(m), key=lambda i: coords[i])
        max_i = max(range(m), key=lambda i: coords[i])
        self.min_index = min_i
        self.max_index = max_i
        self.min_vertex = verts[min_i]

        xs = [c[0] for c in coords]
        ys = [c[1] for c in coords]
        self._bbox = (min(xs), min(ys), max(xs), max(ys))
        self._centroid_sums = (sum(xs), sum(ys), m)

        prefix = [0.0]
        for i in range(m):
            ax, ay = coords[i]
            bx, by = coords[(i + 1) % m]
            prefix.append(prefix[-1] + math.hypot(float(bx - ax), float(by - ay)))
        self._prefix = tuple(prefix)
        self.perimeter = prefix[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self) -> int:
        return hash(self._coords)

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(self.vertices)!r})"

    def edges(self) -> Iterator[Segment]:
        verts = self.vertices
        for i, v in enumerate(verts):
            yield Segment(v, verts[(i + 1) % len(verts)])

    def arc_length(self, start: int, end: int) -> float:
        """Clockwise boundary length from vertex ``start`` to vertex
        ``end``; zero when they coincide."""
        m = len(self._coords)
        total = self.perimeter
        if start == end:
            return 0.0
        if start < end:
            return self._prefix[end] - self._prefix[start]
        return total - (self._prefix[start] - self._prefix[end])


def convex_hull(points: Iterable) -> ConvexPolygon:
    """Strictly convex clockwise hull of a point collection.

    Duplicate points are tolerated and collinear hull points removed.
    The resulting cycle starts at the minimum vertex.
    """
    pts = [p if isinstance(p, Point) else Point(p[0], p[1]) for p in points]
    hull_coords = _strict_hull([(p.x, p.y) for p in pts])
    return ConvexPolygon([Point(x, y) for x, y in hull_coords])


def perimeter(polygon: ConvexPolygon) -> float:
    """Sum of Euclidean edge lengths."""
    return polygon.perimeter


def interior_point(polygon: ConvexPolygon) -> Point:
    """The vertex centroid; strictly interior for a strictly convex polygon."""
    sx, sy, m = polygon._centroid_sums
    return Point(Fraction(sx, m), Fraction(sy, m))


def _ray_cross(ax, ay, bx, by, ox, oy) -> int:
    """Signed crossing of the directed segment a->b with the upward
    vertical ray from (ox, oy).

    +1 when the segment crosses left to right (x increasing), -1 right
    to left, 0 otherwise.  A crossing requires min(ax,bx) <= ox <
    max(ax,bx) (half-open, so shared endpoints are counted once) and
    the intersection ordinate strictly above oy.
    """
    if ax == bx:
        return 0
    if ax < bx:
        if not (ax <= ox < bx):
            return 0
        sign = 1
    else:
        if not (bx <= ox < ax):
            return 0
        sign = -1
    # Intersection ordinate above oy:  ay + (by-ay)*(ox-ax)/(bx-ax) > oy,
    # cross-multiplied by (bx-ax) with its sign folded into the test.
    dx = bx - ax
    lhs = ay * dx + (by - ay) * (ox - ax)
    rhs = oy * dx
    return sign if (lhs > rhs if dx > 0 else lhs < rhs) else 0


def ray_crossing_sign(segment: Segment, origin: Point) -> int:
    """Signed crossing of a directed segment with the upward ray from
    ``origin`` (non-zero rule convention)."""
    return _ray_cross(
        segment.a.x, segment.a.y, segment.b.x, segment.b.y, origin.x, origin.y
    )


def _on_boundary(qx, qy, coords) -> bool:
    m = len(coords)
    for i in range(m):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        if (bx - ax) * (qy - by) - (by - ay) * (qx - bx) != 0:
            continue
        if min(ax, bx) <= qx <= max(ax, bx) and min(ay, by) <= qy <= max(ay, by):
            return True
    return False


def _winding(qx, qy, coords) -> int:
    m = len(coords)
    total = 0
    for i in range(m):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        total += _ray_cross(ax, ay, bx, by, qx, qy)
    return total


def point_in_polygon(q: Point, polygon: ConvexPolygon) -> bool:
    """Non-zero-rule membership test; boundary points count as inside."""
    coords = polygon._coords
    x0, y0, x1, y1 = polygon._bbox
    if not (x0 <= q.x <= x1 and y0 <= q.y <= y1):
        return False
    if _on_boundary(q.x, q.y, coords):
        return True
    return _winding(q.x, q.y, coords) == 1


def _strictly_inside(qx, qy, coords) -> bool:
    """Strict interior test: strictly right of every clockwise edge."""
    m = len(coords)
    for i in range(m):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        if (bx - ax) * (qy - by) - (by - ay) * (qx - bx) >= 0:
            return False
    return True


def _segment_hits_interior(ux, uy, vx, vy, coords, bbox=None) -> bool:
    """Whether the closed segment u-v meets the open interior of a
    strictly convex clockwise polygon.

    Clips the segment against the polygon's half-planes with exact
    rational parameters; when the clipped interval has positive length
    its midpoint is tested strictly, which correctly rejects segments
    that only run along the boundary.
    """
    if bbox is not None:
        x0, y0, x1, y1 = bbox
        if max(ux, vx) < x0 or min(ux, vx) > x1:
            return False
        if max(uy, vy) < y0 or min(uy, vy) > y1:
            return False
    dx = vx - ux
    dy = vy - uy
    # Parameter interval [t0, t1] = [t0n/t0d, t1n/t1d], denominators > 0.
    t0n, t0d = 0, 1
    t1n, t1d = 1, 1
    m = len(coords)
    for i in range(m):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        ex = bx - ax
        ey = by - ay
        # s(t) = cross(e, u + t*d - b); the closed polygon is s <= 0.
        s0 = ex * (uy - by) - ey * (ux - bx)
        sd = ex * dy - ey * dx
        if sd == 0:
            if s0 > 0:
                return False
            continue
        if sd > 0:
            # s grows with t: need t <= -s0/sd.
            if -s0 * t1d < t1n * sd:
                t1n, t1d = -s0, sd
        else:
            # s falls with t: need t >= s0/(-sd).
            if s0 * t0d > t0n * (-sd):
                t0n, t0d = s0, -sd
        if t0n * t1d > t1n * t0d:
            return False
    if t0n * t1d >= t1n * t0d:
        # Interval collapsed to a point: boundary contact only.
        return False
    # Midpoint of the clipped interval, tested strictly.
    mn = t0n * t1d + t1n * t0d
    md = 2 * t0d * t1d
    qx = ux * md + dx * mn
    qy = uy * md + dy * mn
    for i in range(m):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        if (bx - ax) * (qy - by * md) - (by - ay) * (qx - bx * md) >= 0:
            return False
    return True


def segment_intersects_interior(segment: Segment, polygon: ConvexPolygon) -> bool:
    """Whether a segment shares at least one point with the polygon's
    open interior (boundary contact does not count)."""
    return _segment_hits_interior(
        segment.a.x,
        segment.a.y,
        segment.b.x,
        segment.b.y,
        polygon._coords,
        polygon._bbox,
    )


def _minkowski_sum_reflected(a_coords, b_coords):
    """Vertex chain of A + (-B) built by merging edge vectors in
    clockwise angular order.  Collinear chain vertices are kept."""

    def edge_stream(coords, negate):
        m = len(coords)
        if negate:
            pts = [(-x, -y) for x, y in coords]
        else:
            pts = list(coords)
        start = min(range(m), key=lambda i: pts[i])
        return pts[start], [
            (
                pts[(start + i + 1) % m][0] - pts[(start + i) % m][0],
                pts[(start + i + 1) % m][1] - pts[(start + i) % m][1],
            )
            for i in range(m)
        ]

    a_start, a_edges = edge_stream(a_coords, False)
    b_start, b_edges = edge_stream(b_coords, True)

    merged = []
    i = j = 0
    while i < len(a_edges) or j < len(b_edges):
        if i == len(a_edges):
            merged.append(b_edges[j])
            j += 1
        elif j == len(b_edges):
            merged.append(a_edges[i])
            i += 1
        elif _angle_cmp(*a_edges[i], *b_edges[j]) <= 0:
            merged.append(a_edges[i])
            i += 1
        else:
            merged.append(b_edges[j])
            j += 1

    chain = [(a_start[0] + b_start[0], a_start[1] + b_start[1])]
    for ex, ey in merged[:-1]:
        px, py = chain[-1]
        chain.append((px + ex, py + ey))
    return chain


def interiors_overlap(a: ConvexPolygon, b: ConvexPolygon) -> bool:
    """Whether the open interiors of two convex polygons intersect.

    Touching boundaries do not count.  Runs in O(|a| + |b|) using the
    Minkowski difference: the interiors meet exactly when the origin is
    strictly inside A + (-B).
    """
    ax0, ay0, ax1, ay1 = a._bbox
    bx0, by0, bx1, by1 = b._bbox
    if ax1 <= bx0 or bx1 <= ax0 or ay1 <= by0 or by1 <= ay0:
        return False
    chain = _minkowski_sum_reflected(a._coords, b._coords)
    m = len(chain)
    for i in range(m):
        px, py = chain[i]
        qx, qy = chain[(i + 1) % m]
        ex = qx - px
        ey = qy - py
        if ex == 0 and ey == 0:
            continue
        # Origin must be strictly right of every (clockwise) edge.
        if ex * (0 - qy) - ey * (0 - qx) >= 0:
            return False
    return True
