"""Brute-force ground truth by exhaustive set-partition enumeration.

Deliberately independent of the incremental solver: every component
hull is recomputed from raw member vertices, so agreement between the
two is meaningful evidence of correctness.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .engine import Partition
from .errors import TooLarge
from .geometry import ConvexPolygon, convex_hull

MAX_ORACLE_SIZE = 12  # Bell(12) = 4,213,597 partitions


def enumerate_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of {0..n-1} as restricted growth strings.

    A restricted growth string assigns block label a[i] to element i
    with a[0] = 0 and a[i] <= max(a[0..i-1]) + 1, which yields every
    partition exactly once, in lexicographic order.
    """
    if not 1 <= n <= MAX_ORACLE_SIZE:
        raise TooLarge(f"partition enumeration supports 1..{MAX_ORACLE_SIZE}, got {n}")
    assignment = [0] * n
    maxes = [0] * n
    while True:
        yield tuple(assignment)
        # Advance to the next restricted growth string.
        i = n - 1
        while i > 0 and assignment[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        assignment[i] += 1
        maxes[i] = max(maxes[i - 1], assignment[i])
        for j in range(i + 1, n):
            assignment[j] = 0
            maxes[j] = maxes[i]


def score_partition(
    polys: Sequence[ConvexPolygon], assignment: Sequence[int]
) -> float:
    """Summed hull perimeter of the partition given by block labels."""
    blocks: dict[int, list] = {}
    for index, label in enumerate(assignment):
        blocks.setdefault(label, []).append(index)
    total = 0.0
    # Hulls are rebuilt from raw vertices every time, on purpose: the
    # oracle shares no cached state with the solver it checks.
    for members in blocks.values():
        points = [v for i in members for v in polys[i].vertices]
        total += convex_hull(points).perimeter
    return total


def brute_force_optimal(polys: Sequence[ConvexPolygon]) -> Partition:
    """The partition minimizing the summed hull perimeters, by trying
    every set partition.

    Exact-equal totals are broken toward fewer components, then toward
    the lexicographically smallest assignment (which enumeration order
    provides for free).
    """
    n = len(polys)
    if n > MAX_ORACLE_SIZE:
        raise TooLarge(f"brute force supports up to {MAX_ORACLE_SIZE} polygons, got {n}")
    best_total = None
    best_assignment = None
    best_blocks = None
    for assignment in enumerate_partitions(n):
        total = score_partition(polys, assignment)
        n_blocks = max(assignment) + 1
        if (
            best_total is None
            or total < best_total
            or (total == best_total and n_blocks < best_blocks)
        ):
            best_total = total
            best_assignment = assignment
            best_blocks = n_blocks

    components: dict[int, list[int]] = {}
    for index, label in enumerate(best_assignment):
        components.setdefault(label, []).append(index)
    comps = sorted((tuple(sorted(m)) for m in components.values()), key=lambda c: c[0])
    hulls = []
    for comp in comps:
        points = [v for i in comp for v in polys[i].vertices]
        hulls.append(convex_hull(points))
    total = sum(h.perimeter for h in hulls)
    return Partition(
        components=tuple(comps),
        hulls=tuple(hulls),
        total=total,
        mode="oracle",
    )
