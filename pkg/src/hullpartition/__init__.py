"""Minimum-total-perimeter convex hull partitions of convex polygons.

Given a set of convex polygons, find the partition of the set whose
per-component convex hulls minimize the summed perimeters.  The package
provides the incremental general solver, a tangent-based fast path for
pairwise interior-disjoint inputs, a brute-force oracle, instance I/O
with SVG rendering, a command line, and a scikit-learn style estimator
wrapper.
"""

from .engine import (
    DPState,
    MergeEvent,
    Partition,
    WorkingElement,
    WorkingSet,
    add_polygon,
    apply_merge,
    delta,
    find_min,
    gamma,
    solve,
)
from .errors import (
    DegenerateInput,
    HullPartitionError,
    NotDisjoint,
    OrderViolation,
    ParseError,
    TooLarge,
)
from .geometry import (
    CCW,
    COLLINEAR,
    CW,
    ConvexPolygon,
    Point,
    Segment,
    angle_less,
    convex_hull,
    interior_point,
    interiors_overlap,
    orientation,
    perimeter,
    point_in_polygon,
    point_lt,
    ray_crossing_sign,
    segment_intersects_interior,
)
from .instances import (
    InstanceFile,
    generate_instance,
    parse_instance,
    write_instance,
    write_result,
)
from .oracle import brute_force_optimal, enumerate_partitions, score_partition
from .partitioner import PerimeterPartitioner, check_polygons, pairwise_disjoint
from .svg import render_svg
from .tangents import (
    Arc,
    Tangent,
    TangentGraph,
    arc_length,
    build_tangent_graph,
    common_outer_tangents,
    ray_arc_crossings,
    solve_disjoint,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "CCW",
    "COLLINEAR",
    "CW",
    "ConvexPolygon",
    "DPState",
    "DegenerateInput",
    "HullPartitionError",
    "InstanceFile",
    "MergeEvent",
    "NotDisjoint",
    "OrderViolation",
    "ParseError",
    "Partition",
    "PerimeterPartitioner",
    "Point",
    "Segment",
    "Tangent",
    "TangentGraph",
    "TooLarge",
    "WorkingElement",
    "WorkingSet",
    "add_polygon",
    "angle_less",
    "apply_merge",
    "arc_length",
    "brute_force_optimal",
    "build_tangent_graph",
    "check_polygons",
    "common_outer_tangents",
    "convex_hull",
    "delta",
    "enumerate_partitions",
    "find_min",
    "gamma",
    "generate_instance",
    "interior_point",
    "interiors_overlap",
    "orientation",
    "pairwise_disjoint",
    "parse_instance",
    "perimeter",
    "point_in_polygon",
    "point_lt",
    "ray_arc_crossings",
    "ray_crossing_sign",
    "render_svg",
    "score_partition",
    "segment_intersects_interior",
    "solve",
    "solve_disjoint",
    "write_instance",
    "write_result",
]
