"""Shared helpers: random geometry factories and independent oracles.

The oracles here are deliberately primitive (edge-by-edge sums, float
winding angles, all-pairs scans, shapely) so that agreement with the
package's exact fast paths is meaningful.
"""

from __future__ import annotations

import math
import pathlib
import random
from fractions import Fraction

from hullpartition import ConvexPolygon, DegenerateInput, convex_hull
from hullpartition.geometry import _ray_cross

DATA = pathlib.Path(__file__).parent / "data"


def load_fixture(name: str) -> bytes:
    return (DATA / name).read_bytes()


def random_convex_polygon(
    rng: random.Random,
    cx: float = 0.0,
    cy: float = 0.0,
    radius: float = 5.0,
    max_vertices: int = 8,
    decimals: int = 6,
) -> ConvexPolygon:
    """Points on a random ellipse, rounded to exact decimals, hulled."""
    grid = 10**decimals
    while True:
        a = rng.uniform(0.3, 1.0) * radius
        b = rng.uniform(0.3, 1.0) * radius
        theta = rng.uniform(0.0, math.pi)
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        points = []
        for _ in range(max_vertices):
            phi = rng.uniform(0.0, 2.0 * math.pi)
            ex, ey = a * math.cos(phi), b * math.sin(phi)
            x = cx + ex * cos_t - ey * sin_t
            y = cy + ex * sin_t + ey * cos_t
            points.append((Fraction(round(x * grid), grid), Fraction(round(y * grid), grid)))
        try:
            return convex_hull(points)
        except DegenerateInput:
            continue


def random_instance(rng: random.Random, n: int, m: int) -> list[ConvexPolygon]:
    """Mixed instance: centers in a box whose size controls how likely
    overlaps are."""
    spread = rng.uniform(3.0, 9.0) * math.sqrt(n)
    return [
        random_convex_polygon(
            rng,
            cx=rng.uniform(0.0, spread),
            cy=rng.uniform(0.0, spread),
            radius=rng.uniform(1.0, 4.0),
            max_vertices=m,
        )
        for _ in range(n)
    ]


def random_disjoint_instance(rng: random.Random, n: int, m: int) -> list[ConvexPolygon]:
    """One polygon per grid cell; interiors pairwise disjoint by
    construction."""
    cells = math.isqrt(n - 1) + 1
    size = 12.0
    polys = []
    for i in range(n):
        cx = (i % cells + 0.5) * size
        cy = (i // cells + 0.5) * size
        polys.append(
            random_convex_polygon(
                rng, cx=cx, cy=cy, radius=rng.uniform(1.5, size / 2 - 1.5), max_vertices=m
            )
        )
    return polys


# -- independent oracles ------------------------------------------------------


def winding_angle_inside(qx: float, qy: float, poly: ConvexPolygon) -> bool:
    """Float winding-angle membership test, independent of ray casting."""
    total = 0.0
    coords = [v.as_floats() for v in poly.vertices]
    m = len(coords)
    for i in range(m):
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        a1 = math.atan2(ay - qy, ax - qx)
        a2 = math.atan2(by - qy, bx - qx)
        d = a2 - a1
        while d > math.pi:
            d -= 2.0 * math.pi
        while d < -math.pi:
            d += 2.0 * math.pi
        total += d
    return abs(total) > math.pi


def brute_arc_crossings(poly: ConvexPolygon, start: int, end: int, origin, full=False) -> int:
    """Edge-by-edge signed crossing sum along a clockwise arc."""
    coords = poly._coords
    m = len(coords)
    steps = m if full else (end - start) % m
    total = 0
    for k in range(steps):
        i = (start + k) % m
        ax, ay = coords[i]
        bx, by = coords[(i + 1) % m]
        total += _ray_cross(ax, ay, bx, by, origin.x, origin.y)
    return total


def brute_outer_tangents(p: ConvexPolygon, q: ConvexPolygon):
    """All-pairs supporting-line scan: for each side, every (i, j) whose
    line leaves both polygons weakly on that side, reduced to the
    nearest facing pair.  O(m^2 (m+m)) — for small polygons only."""
    pc, qc = p._coords, q._coords
    best = {1: None, -1: None}
    for i, (ux, uy) in enumerate(pc):
        for j, (vx, vy) in enumerate(qc):
            if (ux, uy) == (vx, vy):
                signs = {0}
            else:
                signs = set()
                for wx, wy in list(pc) + list(qc):
                    cross = (vx - ux) * (wy - uy) - (vy - uy) * (wx - ux)
                    if cross > 0:
                        signs.add(1)
                    elif cross < 0:
                        signs.add(-1)
            for side in (1, -1):
                if -side not in signs:
                    d2 = (ux - vx) ** 2 + (uy - vy) ** 2
                    cand = (d2, i, j)
                    if best[side] is None or cand < best[side]:
                        best[side] = cand
    pairs = sorted((b[1], b[2]) for b in best.values() if b is not None)
    return pairs


def dist_point_segment(px, py, ax, ay, bx, by) -> float:
    vx, vy = bx - ax, by - ay
    wx, wy = px - ax, py - ay
    seg2 = vx * vx + vy * vy
    if seg2 == 0:
        return math.hypot(wx, wy)
    t = max(0.0, min(1.0, (wx * vx + wy * vy) / seg2))
    return math.hypot(wx - t * vx, wy - t * vy)


def min_boundary_distance(qx: float, qy: float, poly: ConvexPolygon) -> float:
    coords = [v.as_floats() for v in poly.vertices]
    m = len(coords)
    return min(
        dist_point_segment(qx, qy, *coords[i], *coords[(i + 1) % m]) for i in range(m)
    )
