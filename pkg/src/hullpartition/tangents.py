"""Fast path for pairwise interior-disjoint inputs.

When no two input polygons share interior points, every candidate hull
boundary consists of common outer tangents between polygons and of
boundary arcs between tangent endpoints.  Restricting the angular-sweep
dynamic program to those O(n^2) interest points (instead of all N
vertices) makes the solver nearly independent of per-polygon vertex
count: arcs are measured with precomputed prefix sums and their ray
crossings are found by binary search over the two x-monotone chains of
each polygon.

Tangents are found with a binary-search style climb over each polygon
(targeting O(log m) per query) whose result is validated exactly; any
degeneracy falls back to an O(m) merged-hull sweep, so both methods
always return identical tangents.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .engine import (
    Partition,
    MergeEvent,
    instance_diameter,
    scale_to_integers,
    solve,
    sweep_order,
    unscale_polygon,
)
from .errors import DegenerateInput, NotDisjoint
from .geometry import (
    ConvexPolygon,
    Point,
    _angle_cmp,
    _ray_cross,
    _segment_hits_interior,
    convex_hull,
    interiors_overlap,
)


@dataclass(frozen=True)
class Tangent:
    """A common outer tangent segment; endpoints are (polygon id,
    vertex index) pairs."""

    a: tuple[int, int]
    b: tuple[int, int]
    length: float


@dataclass(frozen=True)
class Arc:
    """A clockwise run of boundary edges of one polygon between two of
    its interest vertices."""

    poly: int
    start: int
    end: int
    length: float
    full_cycle: bool = False


@dataclass
class TangentGraph:
    """Interest points and edges (tangents and arcs) with their sweep
    costs; the restricted search space of the disjoint-mode DP."""

    polygons: list[ConvexPolygon]
    nodes: list[tuple[int, int]]
    tangents: list[Tangent]
    tangent_y: list[float]
    tangent_free: list[bool]
    tangent_crossings: list[tuple[tuple[int, int], ...]]
    arcs: list[Arc]
    arc_gamma: list[float]
    arc_crossings: list[tuple[tuple[int, int], ...]]
    prefix_lengths: dict[int, tuple[float, ...]]


class _NeedsFallback(Exception):
    """Internal: the fast tangent search hit a degeneracy."""


def _ray_of(polygon: ConvexPolygon) -> tuple:
    sx, sy, m = polygon._centroid_sums
    return (Fraction(sx, m), Fraction(sy, m))


# -- tangents between convex polygons ----------------------------------------


def _extreme_seen_from(coords, qx, qy, want: int) -> int:
    """Index of the angular extreme of a convex vertex cycle as seen
    from the outside point q.

    ``want`` +1 finds the vertex no other vertex is counterclockwise
    of; -1 the clockwise counterpart.  Binary-search style climb with
    halving steps; the result is validated by the caller.
    """
    m = len(coords)

    def better(j, i):
        ix, iy = coords[i]
        jx, jy = coords[j]
        cross = (ix - qx) * (jy - qy) - (iy - qy) * (jx - qx)
        return want * cross > 0

    best = 0
    budget = 4 * (m.bit_length() + 2)
    step = 1 << m.bit_length()
    while step:
        moved = True
        while moved:
            moved = False
            for cand in ((best + step) % m, (best - step) % m):
                if better(cand, best):
                    best = cand
                    moved = True
                    budget -= 1
                    if budget < 0:
                        raise _NeedsFallback("tangent climb did not converge")
                    break
        step //= 2
    for neighbour in ((best + 1) % m, (best - 1) % m):
        if better(neighbour, best):
            raise _NeedsFallback("tangent climb stopped off the extreme")
    return best


def _pair_tangent_climb(p: ConvexPolygon, q: ConvexPolygon, side: int):
    """One outer tangent by alternating point-tangent climbs.

    ``side`` +1 yields the tangent with both polygons weakly to the
    right of the directed line (u on p) -> (v on q); -1 the left one.
    Raises _NeedsFallback on any degeneracy.
    """
    pc = p._coords
    qc = q._coords
    ui = p.min_index
    vi = _extreme_seen_from(qc, *pc[ui], side)
    for _ in range(64):
        new_ui = _extreme_seen_from(pc, *qc[vi], -side)
        new_vi = _extreme_seen_from(qc, *pc[new_ui], side)
        if new_ui == ui and new_vi == vi:
            break
        ui, vi = new_ui, new_vi
    else:
        raise _NeedsFallback("tangent alternation did not stabilize")

    ux, uy = pc[ui]
    vx, vy = qc[vi]
    if (ux, uy) == (vx, vy):
        raise _NeedsFallback("polygons touch at the tangent point")
    # Exact support check at both contacts: every neighbour must be
    # weakly on the required side of the line u -> v.
    for coords, idx in ((pc, ui), (qc, vi)):
        m = len(coords)
        for nb in ((idx + 1) % m, (idx - 1) % m):
            wx, wy = coords[nb]
            cross = (vx - ux) * (wy - uy) - (vy - uy) * (wx - ux)
            if side * cross > 0:
                raise _NeedsFallback("support validation failed")
    return ui, vi


def _contact_run(coords, idx, ux, uy, vx, vy):
    """Vertices of one polygon lying on the tangent line, as cycle
    indices.  At most two for a strictly convex polygon."""
    m = len(coords)
    run = [idx]
    for nb in ((idx + 1) % m, (idx - 1) % m):
        wx, wy = coords[nb]
        if (vx - ux) * (wy - uy) - (vy - uy) * (wx - ux) == 0:
            run.append(nb)
    return run


def _finalize_tangent(p, q, ui, vi) -> tuple[int, int]:
    """Snap a supporting pair to the canonical endpoints: among the
    vertices on the tangent line, the two facing each other (nearest
    across the gap), ties to the smaller index."""
    pc, qc = p._coords, q._coords
    ux, uy = pc[ui]
    vx, vy = qc[vi]
    best = None
    for i in _contact_run(pc, ui, ux, uy, vx, vy):
        ix, iy = pc[i]
        for j in _contact_run(qc, vi, ux, uy, vx, vy):
            jx, jy = qc[j]
            d2 = (ix - jx) ** 2 + (iy - jy) ** 2
            cand = (d2, i, j)
            if best is None or cand < best:
                best = cand
    return best[1], best[2]


def _tangents_linear(p: ConvexPolygon, q: ConvexPolygon):
    """Both outer tangents via the merged hull of the labeled vertex
    sets, keeping collinear hull points so that collinear contact runs
    resolve to the nearest facing vertices.  O(|p| + |q|) after the
    sort."""
    labeled = [(x, y, 0, i) for i, (x, y) in enumerate(p._coords)]
    labeled += [(x, y, 1, i) for i, (x, y) in enumerate(q._coords)]
    labeled.sort()

    def chain(points):
        out = []
        for pt in points:
            # Pop only on strictly concave turns: collinear points stay.
            while len(out) >= 2:
                ax, ay = out[-2][0], out[-2][1]
                bx, by = out[-1][0], out[-1][1]
                if (bx - ax) * (pt[1] - by) - (by - ay) * (pt[0] - bx) > 0:
                    out.pop()
                else:
                    break
            out.append(pt)
        return out

    upper = chain(labeled)
    lower = chain(reversed(labeled))
    cycle = upper[:-1] + lower[:-1]
    bridges = []
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if a[2] != b[2]:
            first, second = (a, b) if a[2] == 0 else (b, a)
            bridges.append((first[3], second[3]))
    if len(bridges) != 2:
        raise NotDisjoint("polygons do not admit two outer tangents")
    return bridges


def _pair_tangents(p: ConvexPolygon, q: ConvexPolygon, method: str):
    """Both outer tangents of an interior-disjoint pair as canonical
    ((i on p), (j on q)) index pairs, sorted."""
    if method == "binary":
        try:
            pairs = [
                _pair_tangent_climb(p, q, +1),
                _pair_tangent_climb(p, q, -1),
            ]
            pairs = [_finalize_tangent(p, q, ui, vi) for ui, vi in pairs]
        except _NeedsFallback:
            pairs = [_finalize_tangent(p, q, ui, vi) for ui, vi in _tangents_linear(p, q)]
    elif method == "linear":
        pairs = [_finalize_tangent(p, q, ui, vi) for ui, vi in _tangents_linear(p, q)]
    else:
        raise ValueError(f"unknown tangent method: {method!r}")
    pairs.sort()
    if pairs[0] == pairs[1]:
        raise NotDisjoint("polygons do not admit two distinct outer tangents")
    return pairs


def common_outer_tangents(
    p: ConvexPolygon,
    q: ConvexPolygon,
    *,
    method: str = "binary",
    validate: bool = True,
) -> tuple[Tangent, Tangent]:
    """The two common outer tangents of an interior-disjoint pair.

    Endpoints are (polygon id, vertex index) with id 0 for ``p`` and 1
    for ``q``.  When a tangent line contains whole edges, the endpoints
    are the facing vertices nearest the other polygon.
    """
    if validate and interiors_overlap(p, q):
        raise NotDisjoint("polygon interiors overlap")
    out = []
    for i, j in _pair_tangents(p, q, method):
        ix, iy = p._coords[i]
        jx, jy = q._coords[j]
        length = math.hypot(float(jx - ix), float(jy - iy))
        out.append(Tangent(a=(0, i), b=(1, j), length=length))
    return out[0], out[1]


# -- ray/arc queries -----------------------------------------------------------


def _arc_ray_crossings(poly: ConvexPolygon, start: int, end: int, ox, oy,
                       full_cycle: bool = False) -> int:
    """Net signed crossings of the clockwise arc start..end with the
    upward ray from (ox, oy), by binary search over the polygon's two
    x-monotone chains."""
    coords = poly._coords
    m = len(coords)
    steps = m if full_cycle else (end - start) % m
    if steps == 0:
        return 0
    imin = poly.min_index
    imax = poly.max_index
    k1 = (imax - imin) % m  # run 1: offsets [0, k1] are x-non-decreasing

    a = (start - imin) % m
    b = a + steps

    def x_at(offset):
        return coords[(imin + offset) % m][0]

    total = 0
    # Run pieces in offset space: rising [0,k1], falling [k1,m], and the
    # same shifted by m for arcs that wrap past the minimum vertex.
    for lo, hi, rising in (
        (0, k1, True),
        (k1, m, False),
        (m, m + k1, True),
        (m + k1, 2 * m, False),
    ):
        lo = max(lo, a)
        hi = min(hi, b)
        if lo >= hi:
            continue
        # Exactly one edge of an x-monotone run can straddle ox.
        if rising:
            if not (x_at(lo) <= ox and ox < x_at(hi)):
                continue
            # Last offset j in [lo, hi) with x_at(j) <= ox.
            low, high = lo, hi - 1
            while low < high:
                mid = (low + high + 1) // 2
                if x_at(mid) <= ox:
                    low = mid
                else:
                    high = mid - 1
        else:
            if not (x_at(hi) <= ox and ox < x_at(lo)):
                continue
            # First offset j in [lo, hi) with x_at(j+1) <= ox.
            low, high = lo, hi - 1
            while low < high:
                mid = (low + high) // 2
                if x_at(mid + 1) <= ox:
                    high = mid
                else:
                    low = mid + 1
        i = (imin + low) % m
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        total += _ray_cross(ax, ay, bx, by, ox, oy)
    return total


def arc_length(graph: TangentGraph, arc: Arc) -> float:
    """Clockwise boundary length of an arc; zero when start equals end
    (unless the arc is a full cycle)."""
    poly = graph.polygons[arc.poly]
    if arc.full_cycle:
        return poly.perimeter
    return poly.arc_length(arc.start, arc.end)


def ray_arc_crossings(graph: TangentGraph, arc: Arc, origin: Point) -> int:
    """Net signed crossings of an arc with the upward ray from
    ``origin``, via binary search; equals the edge-by-edge sum."""
    poly = graph.polygons[arc.poly]
    return _arc_ray_crossings(
        poly, arc.start, arc.end, origin.x, origin.y, arc.full_cycle
    )


# -- graph construction ---------------------------------------------------------


def _segment_free(ax, ay, bx, by, polygons, skip=()) -> bool:
    for pid, poly in enumerate(polygons):
        if pid in skip:
            continue
        if _segment_hits_interior(ax, ay, bx, by, poly._coords, poly._bbox):
            return False
    return True


def _segment_crossings(ax, ay, bx, by, rays, perims):
    crossings = []
    y = 0.0
    for pid, (ox, oy) in enumerate(rays):
        sign = _ray_cross(ax, ay, bx, by, ox, oy)
        if sign:
            crossings.append((pid, sign))
            y += sign * perims[pid]
    return tuple(crossings), y


def build_tangent_graph(
    polys: Sequence[ConvexPolygon],
    *,
    method: str = "binary",
    validate: bool = True,
) -> TangentGraph:
    """Interest points, tangent and arc edges, and their sweep costs for
    the current working polygons (which must be pairwise interior-
    disjoint)."""
    polys = list(polys)
    n = len(polys)
    if n == 0:
        raise DegenerateInput("no polygons")
    rays = [_ray_of(p) for p in polys]
    perims = [p.perimeter for p in polys]

    interest: list[set[int]] = [set() for _ in range(n)]
    for pid, poly in enumerate(polys):
        interest[pid].add(poly.min_index)

    raw_tangents = []
    for i in range(n):
        for j in range(i + 1, n):
            if validate and interiors_overlap(polys[i], polys[j]):
                raise NotDisjoint(f"polygons {i} and {j} overlap")
            for vi, vj in _pair_tangents(polys[i], polys[j], method):
                raw_tangents.append(((i, vi), (j, vj)))
                interest[i].add(vi)
                interest[j].add(vj)

    tangents = []
    tangent_y = []
    tangent_free = []
    tangent_crossings = []
    for (i, vi), (j, vj) in raw_tangents:
        ax, ay = polys[i]._coords[vi]
        bx, by = polys[j]._coords[vj]
        length = math.hypot(float(bx - ax), float(by - ay))
        tangents.append(Tangent(a=(i, vi), b=(j, vj), length=length))
        crossings, y = _segment_crossings(ax, ay, bx, by, rays, perims)
        tangent_crossings.append(crossings)
        tangent_y.append(y)
        if (ax, ay) == (bx, by):
            tangent_free.append(True)
        else:
            tangent_free.append(
                _segment_free(ax, ay, bx, by, polys, skip={i, j})
            )

    nodes = []
    arcs = []
    arc_gamma = []
    arc_crossings = []
    for pid, poly in enumerate(polys):
        m = len(poly)
        order = sorted(interest[pid], key=lambda v: (v - poly.min_index) % m)
        for v in order:
            nodes.append((pid, v))
        if len(order) == 1:
            seq = [(order[0], order[0], True)]
        else:
            seq = [
                (order[k], order[(k + 1) % len(order)], False)
                for k in range(len(order))
            ]
        for start, end, full in seq:
            length = poly.perimeter if full else poly.arc_length(start, end)
            crossings = []
            y = 0.0
            for rid, (ox, oy) in enumerate(rays):
                sign = _arc_ray_crossings(poly, start, end, ox, oy, full)
                if sign:
                    crossings.append((rid, sign))
                    y += sign * perims[rid]
            arcs.append(Arc(pid, start, end, length, full))
            arc_gamma.append(length - y)
            arc_crossings.append(tuple(crossings))

    return TangentGraph(
        polygons=polys,
        nodes=nodes,
        tangents=tangents,
        tangent_y=tangent_y,
        tangent_free=tangent_free,
        tangent_crossings=tangent_crossings,
        arcs=arcs,
        arc_gamma=arc_gamma,
        arc_crossings=arc_crossings,
        prefix_lengths={pid: poly._prefix for pid, poly in enumerate(polys)},
    )


# -- the restricted dynamic program ---------------------------------------------


class _DisjointDP:
    """One angular sweep over a tangent graph."""

    def __init__(self, graph: TangentGraph, anchor_pid: int):
        self.graph = graph
        self.anchor_pid = anchor_pid
        poly = graph.polygons[anchor_pid]
        self.anchor_node = (anchor_pid, poly.min_index)
        self.anchor_point = poly._coords[poly.min_index]

    def run(self):
        graph = self.graph
        polys = graph.polygons
        ax, ay = self.anchor_point

        mids = []
        for node in graph.nodes:
            if node == self.anchor_node:
                continue
            px, py = polys[node[0]]._coords[node[1]]
            if (px, py) == (ax, ay):
                raise NotDisjoint(
                    "another polygon touches the sweep anchor point"
                )
            mids.append((node, px, py))

        def compare(e1, e2):
            cmp = _angle_cmp(e1[1] - ax, e1[2] - ay, e2[1] - ax, e2[2] - ay)
            if cmp:
                return cmp
            d1 = (e1[1] - ax) ** 2 + (e1[2] - ay) ** 2
            d2 = (e2[1] - ax) ** 2 + (e2[2] - ay) ** 2
            if d1 != d2:
                return -1 if d1 < d2 else 1
            return -1 if e1[0] < e2[0] else 1

        mids.sort(key=cmp_to_key(compare))

        K = len(mids) + 1
        pos = {self.anchor_node: 0}
        for idx, (node, _, _) in enumerate(mids, start=1):
            pos[node] = idx

        # incoming[i] = list of (j, gamma, crossings)
        incoming: list[list] = [[] for _ in range(K + 1)]

        def add_edge(u, v, gamma, crossings):
            j = pos[u]
            i = K if v == self.anchor_node else pos[v]
            if j == 0 and i == K:
                incoming[i].append((0, gamma, crossings))
                return
            if v == self.anchor_node:
                incoming[K].append((j, gamma, crossings))
            elif u == self.anchor_node:
                incoming[i].append((0, gamma, crossings))
            elif j < i:
                incoming[i].append((j, gamma, crossings))

        for t, tang in enumerate(graph.tangents):
            if not graph.tangent_free[t]:
                continue
            y = graph.tangent_y[t]
            crossings = graph.tangent_crossings[t]
            neg = tuple((pid, -s) for pid, s in crossings)
            add_edge(tang.a, tang.b, tang.length - y, crossings)
            add_edge(tang.b, tang.a, tang.length + y, neg)
        for a, arc in enumerate(graph.arcs):
            u = (arc.poly, arc.start)
            v = (arc.poly, arc.end)
            add_edge(u, v, graph.arc_gamma[a], graph.arc_crossings[a])

        # Closing chords: when several nodes share the anchor's sweep
        # angle, a hull boundary may return to the anchor straight
        # through the nearer ones; the combined straight run is a valid
        # single transition with the same cost.
        rays = [_ray_of(p) for p in polys]
        perims = [p.perimeter for p in polys]
        for idx, (node, px, py) in enumerate(mids, start=1):
            same_angle = False
            for other_idx in (idx - 1, idx + 1):
                if 1 <= other_idx <= len(mids):
                    q = mids[other_idx - 1]
                    if _angle_cmp(px - ax, py - ay, q[1] - ax, q[2] - ay) == 0:
                        same_angle = True
            if not same_angle:
                continue
            if not _segment_free(px, py, ax, ay, polys):
                continue
            length = math.hypot(float(ax - px), float(ay - py))
            crossings, y = _segment_crossings(px, py, ax, ay, rays, perims)
            incoming[K].append((idx, length - y, crossings))

        INF = math.inf
        f = [INF] * (K + 1)
        back: list = [None] * (K + 1)
        f[0] = 0.0
        for i in range(1, K + 1):
            best = INF
            best_edge = None
            for j, gamma, crossings in incoming[i]:
                if f[j] == INF:
                    continue
                cost = f[j] + gamma
                if cost < best:
                    best = cost
                    best_edge = (j, crossings)
            f[i] = best
            back[i] = best_edge

        if math.isinf(f[K]):
            return None, 0.0

        winding = [0] * len(polys)
        i = K
        while i != 0:
            j, crossings = back[i]
            for pid, sign in crossings:
                winding[pid] += sign
            i = j
        enclosed = [pid for pid, w in enumerate(winding) if w == 1]
        return enclosed, f[K]


# -- the disjoint-mode solver ----------------------------------------------------


def solve_disjoint(
    polys: Sequence[ConvexPolygon],
    *,
    merge_tolerance: float = 1e-9,
    trace: bool = False,
    tangent_method: str = "binary",
    fallback: bool = True,
) -> Partition:
    """Optimal partition for pairwise interior-disjoint polygons.

    Produces the same partition as the general solver, restricted to
    the tangent/arc search space.  Inputs that are not interior-disjoint
    either fall back to the general solver with a warning (default) or
    raise NotDisjoint when ``fallback`` is off.
    """
    polys = list(polys)
    if not polys:
        raise DegenerateInput("cannot partition an empty instance")

    scaled, denom = scale_to_integers(polys)

    overlapping = False
    for i in range(len(scaled)):
        for j in range(i + 1, len(scaled)):
            if interiors_overlap(scaled[i], scaled[j]):
                overlapping = True
                break
        if overlapping:
            break
    if overlapping:
        if not fallback:
            raise NotDisjoint("input polygons are not pairwise interior-disjoint")
        warnings.warn(
            "inputs are not interior-disjoint; falling back to the general solver",
            stacklevel=2,
        )
        return solve(polys, merge_tolerance=merge_tolerance, trace=trace)

    eps = merge_tolerance * instance_diameter(scaled)
    order = sweep_order(scaled)

    try:
        live: list[tuple[ConvexPolygon, frozenset[int]]] = []
        events: list[MergeEvent] = []
        for index in order:
            live.append((scaled[index], frozenset([index])))
            anchor_pid = len(live) - 1
            while len(live) > 1:
                graph = build_tangent_graph(
                    [hull for hull, _ in live],
                    method=tangent_method,
                    validate=False,
                )
                enclosed, dvalue = _DisjointDP(graph, anchor_pid).run()
                if enclosed is None or len(enclosed) < 2 or dvalue > eps:
                    break
                merged_points = []
                merged_members: set[int] = set()
                for pid in enclosed:
                    merged_points.extend(live[pid][0].vertices)
                    merged_members |= live[pid][1]
                merged_hull = convex_hull(merged_points)
                if trace:
                    events.append(
                        MergeEvent(
                            merged=tuple(
                                sorted(tuple(sorted(live[pid][1])) for pid in enclosed)
                            ),
                            result=tuple(sorted(merged_members)),
                            delta=dvalue / denom,
                        )
                    )
                enclosed_set = set(enclosed)
                new_live = [
                    item for pid, item in enumerate(live) if pid not in enclosed_set
                ]
                new_live.append((merged_hull, frozenset(merged_members)))
                live = new_live
                anchor_pid = len(live) - 1
    except NotDisjoint:
        # Degenerate contact at the sweep anchor; the general solver
        # handles it without the interest-point restriction.
        if not fallback:
            raise
        warnings.warn(
            "degenerate contact at the sweep anchor; using the general solver",
            stacklevel=2,
        )
        return solve(polys, merge_tolerance=merge_tolerance, trace=trace)

    pairs = sorted(
        ((tuple(sorted(members)), unscale_polygon(hull, denom)) for hull, members in live),
        key=lambda item: item[0][0],
    )
    components = tuple(item[0] for item in pairs)
    hulls = tuple(item[1] for item in pairs)
    total = sum(h.perimeter for h in hulls)
    return Partition(
        components=components,
        hulls=hulls,
        total=total,
        mode="disjoint",
        merge_trace=tuple(events) if trace else None,
    )
