"""Minimum-total-perimeter partitioning of convex polygons.

The solver maintains a working set of merged hulls that is optimal at
all times: polygons are swept in decreasing order of their minimum
vertex, and after each insertion the cheapest merge is found with a
dynamic program over the working vertices sorted by angle around the
sweep anchor.  A merge is applied while its perimeter change is
non-positive; the surviving hulls define the optimal partition.

Edge costs for the dynamic program come from a signed-crossing argument:
the cost of a transition u -> v is the segment length minus the
perimeter of every polygon whose upward interior-point ray the segment
crosses (signed by crossing direction).  Summed around a closed
clockwise curve this telescopes to (curve length) - (perimeter mass
enclosed), exactly the change caused by merging what the curve
encloses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .errors import DegenerateInput, OrderViolation
from .geometry import (
    ConvexPolygon,
    Point,
    _angle_cmp,
    _ray_cross,
    _segment_hits_interior,
    convex_hull,
    point_lt,
)

# Above this many working vertices the quadratic lookup tables are not
# materialized and the DP evaluates costs and feasibility on demand.
TABLE_VERTEX_LIMIT = 1000


@dataclass(frozen=True)
class WorkingElement:
    """One element of the working set: a hull and the input indices it
    was merged from."""

    hull: ConvexPolygon
    members: frozenset[int]


@dataclass(frozen=True)
class MergeEvent:
    """One merge performed by the solver, for optional tracing."""

    merged: tuple[tuple[int, ...], ...]
    result: tuple[int, ...]
    delta: float


@dataclass(frozen=True)
class Partition:
    """A grouping of input polygon indices with the hull and the summed
    hull perimeter of each component."""

    components: tuple[tuple[int, ...], ...]
    hulls: tuple[ConvexPolygon, ...]
    total: float
    mode: str = "general"
    merge_trace: Optional[tuple[MergeEvent, ...]] = None

    @property
    def labels(self) -> list[int]:
        """Component index for every input polygon."""
        n = sum(len(c) for c in self.components)
        out = [-1] * n
        for label, comp in enumerate(self.components):
            for i in comp:
                out[i] = label
        return out


@dataclass
class DPState:
    """State of one angular-sweep dynamic program run: the vertex
    sequence ``p`` (anchor first and last), best costs ``f`` and
    predecessors ``r``."""

    p: list[Point]
    f: list[float]
    r: list[int]


@dataclass
class FindMinResult:
    elements: tuple[WorkingElement, ...]
    delta: float
    curve: list[Point]
    dp: DPState


class WorkingSet:
    """The live collection of merged hulls, with incrementally
    maintained lookup tables.

    ``gamma_table`` maps a vertex-id pair (lo, hi) to ``[length, y]``
    where ``y`` is the signed perimeter pickup of the directed segment
    lo -> hi, so the DP edge cost is ``length - y`` (or ``length + y``
    when traversed hi -> lo).  ``free_table`` maps the same keys to
    whether the segment avoids every element's open interior.

    With ``naive_gamma`` the DP ignores the tables and evaluates every
    transition from scratch; results must be identical, which the test
    suite uses to cross-check the incremental maintenance.
    """

    def __init__(self, *, use_tables: bool = True, naive_gamma: bool = False):
        self.use_tables = use_tables
        self.naive_gamma = naive_gamma
        self.elements: dict[int, WorkingElement] = {}
        self.element_order: list[int] = []
        self.anchor: Optional[Point] = None
        self.gamma_table: dict[tuple[int, int], list[float]] = {}
        self.free_table: dict[tuple[int, int], bool] = {}
        self._anchor_vid: Optional[int] = None
        self._next_eid = 0
        self._next_vid = 0
        self._vertex_point: dict[int, tuple] = {}
        self._vertex_elem: dict[int, int] = {}
        self._elem_vids: dict[int, tuple[int, ...]] = {}
        self._rays: dict[int, tuple] = {}

    # -- inspection -----------------------------------------------------

    @property
    def vertices(self) -> list[tuple[Point, WorkingElement]]:
        """Flat list of (vertex, owning element), oldest vertex first."""
        out = []
        for vid in sorted(self._vertex_point):
            x, y = self._vertex_point[vid]
            out.append((Point(x, y), self.elements[self._vertex_elem[vid]]))
        return out

    def elements_in_order(self) -> list[WorkingElement]:
        return [self.elements[eid] for eid in self.element_order]

    # -- ray / cost helpers ----------------------------------------------

    @staticmethod
    def _ray_of(polygon: ConvexPolygon) -> tuple:
        sx, sy, m = polygon._centroid_sums
        return (Fraction(sx, m), Fraction(sy, m))

    def _segment_y(self, ax, ay, bx, by) -> float:
        """Signed perimeter pickup of the directed segment a -> b."""
        y = 0.0
        for eid, element in self.elements.items():
            ox, oy = self._rays[eid]
            sign = _ray_cross(ax, ay, bx, by, ox, oy)
            if sign:
                y += sign * element.hull.perimeter
        return y

    def _segment_free(self, ax, ay, bx, by) -> bool:
        for element in self.elements.values():
            hull = element.hull
            if _segment_hits_interior(ax, ay, bx, by, hull._coords, hull._bbox):
                return False
        return True

    def gamma(self, u: Point, v: Point) -> float:
        """Cost of traversing the segment u -> v: length minus the
        signed perimeter pickup of the interior rays it crosses."""
        if u == v:
            raise DegenerateInput("gamma is undefined for a zero-length segment")
        length = math.hypot(float(v.x - u.x), float(v.y - u.y))
        return length - self._segment_y(u.x, u.y, v.x, v.y)

    # -- mutation ---------------------------------------------------------

    def add_polygon(self, polygon: ConvexPolygon, index: int) -> WorkingElement:
        """Append an input polygon as a singleton element and move the
        anchor to its minimum vertex."""
        new_min = polygon.min_vertex
        if self.anchor is not None and point_lt(self.anchor, new_min):
            raise OrderViolation(
                f"polygon {index} breaks the decreasing-minimum-vertex order"
            )
        element = WorkingElement(hull=polygon, members=frozenset([index]))
        eid = self._next_eid
        self._next_eid += 1
        self.elements[eid] = element
        self.element_order.append(eid)
        self._rays[eid] = self._ray_of(polygon)

        new_vids = []
        for vert in polygon.vertices:
            vid = self._next_vid
            self._next_vid += 1
            self._vertex_point[vid] = (vert.x, vert.y)
            self._vertex_elem[vid] = eid
            new_vids.append(vid)
        self._elem_vids[eid] = tuple(new_vids)

        self.anchor = new_min
        self._anchor_vid = new_vids[polygon.min_index]

        if self.use_tables:
            self._tables_after_add(eid, new_vids)
        return element

    def _tables_after_add(self, eid: int, new_vids: list[int]) -> None:
        hull = self.elements[eid].hull
        coords = hull._coords
        bbox = hull._bbox
        perim = hull.perimeter
        ox, oy = self._rays[eid]
        vp = self._vertex_point

        # Existing entries pick up the new element's ray and obstacle.
        for (lo, hi), rec in self.gamma_table.items():
            ax, ay = vp[lo]
            bx, by = vp[hi]
            sign = _ray_cross(ax, ay, bx, by, ox, oy)
            if sign:
                rec[1] += sign * perim
        for key, ok in self.free_table.items():
            if ok:
                lo, hi = key
                ax, ay = vp[lo]
                bx, by = vp[hi]
                if _segment_hits_interior(ax, ay, bx, by, coords, bbox):
                    self.free_table[key] = False

        # Entries for pairs that involve a new vertex, from scratch.
        new_set = set(new_vids)
        old_vids = [v for v in vp if v not in new_set]
        for pos, vid in enumerate(new_vids):
            for other in old_vids + new_vids[:pos]:
                key = (other, vid) if other < vid else (vid, other)
                lo, hi = key
                lx, ly = vp[lo]
                hx, hy = vp[hi]
                if (lx, ly) == (hx, hy):
                    continue
                length = math.hypot(float(hx - lx), float(hy - ly))
                self.gamma_table[key] = [length, self._segment_y(lx, ly, hx, hy)]
                self.free_table[key] = self._segment_free(lx, ly, hx, hy)

    def apply_merge(self, group: Iterable[WorkingElement]) -> WorkingElement:
        """Replace the elements of ``group`` with a single element whose
        hull is the convex hull of their union."""
        wanted = list(group)
        if len(wanted) < 2:
            raise DegenerateInput("a merge needs at least two elements")
        by_identity = {id(self.elements[eid]): eid for eid in self.elements}
        eids = []
        for element in wanted:
            eid = by_identity.get(id(element))
            if eid is None:
                raise DegenerateInput("element is not part of this working set")
            eids.append(eid)

        points: list[Point] = []
        members: set[int] = set()
        for eid in eids:
            points.extend(self.elements[eid].hull.vertices)
            members |= self.elements[eid].members
        merged_hull = convex_hull(points)
        merged = WorkingElement(hull=merged_hull, members=frozenset(members))

        # Bind each merged-hull vertex to a surviving vertex id so that
        # table entries between survivors stay valid.
        coord_to_vid: dict[tuple, int] = {}
        for eid in eids:
            for vid in self._elem_vids[eid]:
                pt = self._vertex_point[vid]
                if pt not in coord_to_vid or vid < coord_to_vid[pt]:
                    coord_to_vid[pt] = vid
        kept_vids = [coord_to_vid[(v.x, v.y)] for v in merged_hull.vertices]
        kept_set = set(kept_vids)
        dropped = {
            vid
            for eid in eids
            for vid in self._elem_vids[eid]
            if vid not in kept_set
        }

        old_rays = [
            (self._rays[eid], self.elements[eid].hull.perimeter) for eid in eids
        ]
        eid_set = set(eids)
        insert_at = min(self.element_order.index(e) for e in eids)
        for eid in eids:
            del self.elements[eid]
            del self._rays[eid]
            del self._elem_vids[eid]
        self.element_order = [e for e in self.element_order if e not in eid_set]

        new_eid = self._next_eid
        self._next_eid += 1
        self.element_order.insert(insert_at, new_eid)
        self.elements[new_eid] = merged
        self._rays[new_eid] = self._ray_of(merged_hull)
        self._elem_vids[new_eid] = tuple(kept_vids)
        for vid in kept_vids:
            self._vertex_elem[vid] = new_eid
        for vid in dropped:
            del self._vertex_point[vid]
            del self._vertex_elem[vid]

        if self.use_tables:
            self._tables_after_merge(new_eid, old_rays, dropped)
        return merged

    def _tables_after_merge(self, new_eid, old_rays, dropped: set[int]) -> None:
        vp = self._vertex_point
        merged_hull = self.elements[new_eid].hull
        coords = merged_hull._coords
        bbox = merged_hull._bbox
        perim = merged_hull.perimeter
        ox, oy = self._rays[new_eid]

        if dropped:
            stale = [
                k for k in self.gamma_table if k[0] in dropped or k[1] in dropped
            ]
            for key in stale:
                del self.gamma_table[key]
                del self.free_table[key]

        for (lo, hi), rec in self.gamma_table.items():
            ax, ay = vp[lo]
            bx, by = vp[hi]
            adjust = 0.0
            for (rx, ry), rperim in old_rays:
                sign = _ray_cross(ax, ay, bx, by, rx, ry)
                if sign:
                    adjust -= sign * rperim
            sign = _ray_cross(ax, ay, bx, by, ox, oy)
            if sign:
                adjust += sign * perim
            if adjust:
                rec[1] += adjust
        # A segment blocked before stays blocked: the merged hull covers
        # its members.  Free segments only need testing against the new
        # hull.
        for key, ok in self.free_table.items():
            if ok:
                lo, hi = key
                ax, ay = vp[lo]
                bx, by = vp[hi]
                if _segment_hits_interior(ax, ay, bx, by, coords, bbox):
                    self.free_table[key] = False

    def recompute_tables(self):
        """Fresh tables from the current state, for consistency checks."""
        gamma: dict[tuple[int, int], list[float]] = {}
        free: dict[tuple[int, int], bool] = {}
        vids = sorted(self._vertex_point)
        for i, lo in enumerate(vids):
            ax, ay = self._vertex_point[lo]
            for hi in vids[i + 1 :]:
                bx, by = self._vertex_point[hi]
                if (ax, ay) == (bx, by):
                    continue
                length = math.hypot(float(bx - ax), float(by - ay))
                gamma[(lo, hi)] = [length, self._segment_y(ax, ay, bx, by)]
                free[(lo, hi)] = self._segment_free(ax, ay, bx, by)
        return gamma, free

    # -- the angular-sweep dynamic program --------------------------------

    def find_min(self) -> FindMinResult:
        """Find the group of elements whose merge changes the summed
        perimeter the least, together with that change.

        When no enclosing curve beats staying put, the anchor's own
        element is returned as a singleton with delta 0.
        """
        if not self.elements:
            raise DegenerateInput("working set is empty")
        anchor = self.anchor
        anchor_vid = self._anchor_vid
        anchor_eid = self._vertex_elem[anchor_vid]
        if len(self.elements) == 1:
            only = self.elements[anchor_eid]
            state = DPState(p=[anchor, anchor], f=[0.0, 0.0], r=[-1, 0])
            return FindMinResult((only,), 0.0, [], state)

        ax, ay = anchor.x, anchor.y
        entries = []
        for vid, (px, py) in self._vertex_point.items():
            if vid == anchor_vid or (px == ax and py == ay):
                continue
            entries.append((vid, px, py))

        def compare(e1, e2):
            cmp = _angle_cmp(e1[1] - ax, e1[2] - ay, e2[1] - ax, e2[2] - ay)
            if cmp:
                return cmp
            d1 = (e1[1] - ax) ** 2 + (e1[2] - ay) ** 2
            d2 = (e2[1] - ax) ** 2 + (e2[2] - ay) ** 2
            if d1 != d2:
                return -1 if d1 < d2 else 1
            return -1 if e1[0] < e2[0] else 1

        entries.sort(key=cmp_to_key(compare))

        seq = [(anchor_vid, ax, ay)] + entries + [(anchor_vid, ax, ay)]
        K = len(seq) - 1
        INF = math.inf
        f = [INF] * (K + 1)
        r = [-1] * (K + 1)
        f[0] = 0.0

        use_tables = self.use_tables and not self.naive_gamma
        gamma_table = self.gamma_table
        free_table = self.free_table

        for i in range(1, K + 1):
            vi, xi, yi = seq[i]
            best = INF
            best_j = -1
            for j in range(i):
                fj = f[j]
                if fj == INF:
                    continue
                vj, xj, yj = seq[j]
                if xi == xj and yi == yj:
                    continue
                if use_tables:
                    if vj < vi:
                        key = (vj, vi)
                        if not free_table[key]:
                            continue
                        length, y = gamma_table[key]
                        cost = fj + length - y
                    else:
                        key = (vi, vj)
                        if not free_table[key]:
                            continue
                        length, y = gamma_table[key]
                        cost = fj + length + y
                else:
                    if not self._segment_free(xj, yj, xi, yi):
                        continue
                    length = math.hypot(float(xi - xj), float(yi - yj))
                    cost = fj + length - self._segment_y(xj, yj, xi, yi)
                if cost < best:
                    best = cost
                    best_j = j
            f[i] = best
            r[i] = best_j

        state = DPState(p=[Point(x, y) for _, x, y in seq], f=f, r=r)

        if math.isinf(f[K]):
            only = self.elements[anchor_eid]
            return FindMinResult((only,), 0.0, [], state)

        idxs = []
        i = K
        while i != -1:
            idxs.append(i)
            i = r[i]
        idxs.reverse()
        curve = [state.p[i] for i in idxs]

        enclosed = []
        for eid in self.element_order:
            ox, oy = self._rays[eid]
            wind = 0
            for a, b in zip(idxs, idxs[1:]):
                _, xa, ya = seq[a]
                _, xb, yb = seq[b]
                wind += _ray_cross(xa, ya, xb, yb, ox, oy)
            if wind == 1:
                enclosed.append(self.elements[eid])

        if not enclosed:
            only = self.elements[anchor_eid]
            return FindMinResult((only,), 0.0, curve, state)
        return FindMinResult(tuple(enclosed), f[K], curve, state)


# -- module-level operations -------------------------------------------------


def delta(group: Iterable) -> float:
    """Perimeter change caused by merging a group of elements or
    polygons: hull-of-union perimeter minus the sum of the members'."""
    hulls = [g.hull if isinstance(g, WorkingElement) else g for g in group]
    if not hulls:
        raise DegenerateInput("delta of an empty group is undefined")
    if len(hulls) == 1:
        return 0.0
    points: list[Point] = []
    for hull in hulls:
        points.extend(hull.vertices)
    merged = convex_hull(points)
    return merged.perimeter - sum(h.perimeter for h in hulls)


def gamma(u: Point, v: Point, working_set: WorkingSet) -> float:
    """Transition cost between two vertices in a working set."""
    return working_set.gamma(u, v)


def add_polygon(working_set: WorkingSet, polygon: ConvexPolygon, index: int) -> WorkingSet:
    """Add a polygon to the working set (sweep order is enforced)."""
    working_set.add_polygon(polygon, index)
    return working_set


def apply_merge(working_set: WorkingSet, group: Iterable[WorkingElement]) -> WorkingSet:
    """Merge a group of working elements into their convex hull."""
    working_set.apply_merge(group)
    return working_set


def find_min(working_set: WorkingSet) -> tuple[tuple[WorkingElement, ...], float]:
    """The cheapest merge group and its perimeter change."""
    result = working_set.find_min()
    return result.elements, result.delta


# -- instance-wide exact rescaling -------------------------------------------


def _common_denominator(polys: Sequence[ConvexPolygon]) -> int:
    lcm = 1
    for poly in polys:
        for x, y in poly._coords:
            if isinstance(x, Fraction):
                lcm = math.lcm(lcm, x.denominator)
            if isinstance(y, Fraction):
                lcm = math.lcm(lcm, y.denominator)
    return lcm


def scale_to_integers(
    polys: Sequence[ConvexPolygon],
) -> tuple[list[ConvexPolygon], int]:
    """Rescale an instance so every coordinate is an integer.

    Exact: the scale is the least common denominator of all coordinates.
    Predicate-heavy inner loops run much faster on plain ints than on
    Fractions.
    """
    denom = _common_denominator(polys)
    if denom == 1:
        return list(polys), 1
    scaled = []
    for poly in polys:
        scaled.append(
            ConvexPolygon(
                [Point(int(x * denom), int(y * denom)) for x, y in poly._coords]
            )
        )
    return scaled, denom


def unscale_polygon(poly: ConvexPolygon, denom: int) -> ConvexPolygon:
    if denom == 1:
        return poly
    return ConvexPolygon(
        [Point(Fraction(x, denom), Fraction(y, denom)) for x, y in poly._coords]
    )


def instance_diameter(polys: Sequence[ConvexPolygon]) -> float:
    """Diagonal of the joint bounding box; the scale used for merge
    tolerances."""
    xs0 = min(p._bbox[0] for p in polys)
    ys0 = min(p._bbox[1] for p in polys)
    xs1 = max(p._bbox[2] for p in polys)
    ys1 = max(p._bbox[3] for p in polys)
    return math.hypot(float(xs1 - xs0), float(ys1 - ys0))


def sweep_order(polys: Sequence[ConvexPolygon]) -> list[int]:
    """Input indices in decreasing order of minimum vertex (ties keep
    input order)."""
    return sorted(
        range(len(polys)),
        key=lambda i: (polys[i].min_vertex.x, polys[i].min_vertex.y, -i),
        reverse=True,
    )


def solve(
    polys: Sequence[ConvexPolygon],
    *,
    merge_tolerance: float = 1e-9,
    trace: bool = False,
    naive_gamma: bool = False,
    use_tables: Optional[bool] = None,
) -> Partition:
    """Optimal partition of the input polygons.

    ``merge_tolerance`` is relative: it is multiplied by the instance
    diameter to get the absolute slack used when comparing perimeter
    changes against zero.  Zero-cost merges of two or more elements are
    taken (they only shrink the working set); singletons never merge.
    """
    polys = list(polys)
    if not polys:
        raise DegenerateInput("cannot partition an empty instance")
    for poly in polys:
        if not isinstance(poly, ConvexPolygon):
            raise TypeError("solve expects ConvexPolygon instances")

    scaled, denom = scale_to_integers(polys)
    eps = merge_tolerance * instance_diameter(scaled)

    if use_tables is None:
        total_vertices = sum(len(p) for p in scaled)
        use_tables = total_vertices <= TABLE_VERTEX_LIMIT

    ws = WorkingSet(use_tables=use_tables, naive_gamma=naive_gamma)
    events: list[MergeEvent] = []
    merges = 0
    n = len(polys)
    for index in sweep_order(scaled):
        ws.add_polygon(scaled[index], index)
        while len(ws.elements) > 1:
            result = ws.find_min()
            if len(result.elements) >= 2 and result.delta <= eps:
                merged_from = tuple(
                    sorted(tuple(sorted(e.members)) for e in result.elements)
                )
                merged = ws.apply_merge(result.elements)
                merges += 1
                if merges > n - 1:
                    raise AssertionError("more merges than elements")
                if trace:
                    events.append(
                        MergeEvent(
                            merged=merged_from,
                            result=tuple(sorted(merged.members)),
                            delta=result.delta / denom,
                        )
                    )
            else:
                break

    pairs = sorted(
        (
            (tuple(sorted(e.members)), unscale_polygon(e.hull, denom))
            for e in ws.elements_in_order()
        ),
        key=lambda item: item[0][0],
    )
    components = tuple(item[0] for item in pairs)
    hulls = tuple(item[1] for item in pairs)
    total = sum(h.perimeter for h in hulls)
    return Partition(
        components=components,
        hulls=hulls,
        total=total,
        mode="general",
        merge_trace=tuple(events) if trace else None,
    )
