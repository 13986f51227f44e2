"""Scikit-learn style estimator around the partition solvers.

The problem is a clustering of the input polygons, so the wrapper
follows the clusterer conventions: ``fit`` ingests a list of polygons,
fitted results land in trailing-underscore attributes (``labels_``,
``total_perimeter_``, ...), and ``get_params``/``set_params`` make the
estimator compose with model-selection tooling.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .engine import Partition, solve
from .errors import DegenerateInput
from .geometry import ConvexPolygon, convex_hull, interiors_overlap
from .tangents import solve_disjoint


def check_polygons(X) -> list[ConvexPolygon]:
    """Validate and normalize estimator input.

    Accepts ConvexPolygon instances or sequences of (x, y) coordinate
    pairs; every polygon is normalized to its strictly convex hull.
    Raises DegenerateInput (a ValueError) when a polygon collapses and
    TypeError for structurally wrong input.
    """
    if isinstance(X, (ConvexPolygon, str, bytes)) or not isinstance(X, Iterable):
        raise TypeError("expected an iterable of polygons")
    polys = []
    for i, item in enumerate(X):
        if isinstance(item, ConvexPolygon):
            polys.append(convex_hull(item.vertices))
            continue
        try:
            points = [(p[0], p[1]) for p in item]
        except (TypeError, IndexError) as exc:
            raise TypeError(f"polygon {i} is not a sequence of points") from exc
        if len(points) < 3:
            raise DegenerateInput(f"polygon {i} has fewer than 3 vertices")
        try:
            polys.append(convex_hull(points))
        except DegenerateInput as exc:
            raise DegenerateInput(f"polygon {i} is degenerate: {exc}") from exc
    if not polys:
        raise DegenerateInput("need at least one polygon")
    return polys


def pairwise_disjoint(polys: Sequence[ConvexPolygon]) -> bool:
    """Whether no two polygons share interior points."""
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if interiors_overlap(polys[i], polys[j]):
                return False
    return True


class PerimeterPartitioner:
    """Group convex polygons so the summed perimeter of per-group
    convex hulls is minimal.

    Parameters
    ----------
    mode : "auto", "general" or "disjoint"
        "disjoint" runs the tangent-restricted fast path and requires
        pairwise interior-disjoint inputs; "auto" picks it when the
        inputs qualify.
    tangent_method : "binary" or "linear"
        Tangent search used by the disjoint fast path.
    merge_tolerance : float
        Relative slack (times the instance diameter) for treating a
        perimeter change as non-positive.
    keep_trace : bool
        Record the merge events of the solve in ``merge_trace_``.
    """

    _param_names = ("mode", "tangent_method", "merge_tolerance", "keep_trace")

    def __init__(
        self,
        mode: str = "auto",
        tangent_method: str = "binary",
        merge_tolerance: float = 1e-9,
        keep_trace: bool = False,
    ):
        self.mode = mode
        self.tangent_method = tangent_method
        self.merge_tolerance = merge_tolerance
        self.keep_trace = keep_trace

    # -- sklearn plumbing -------------------------------------------------

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names}

    def set_params(self, **params) -> "PerimeterPartitioner":
        for name, value in params.items():
            if name not in self._param_names:
                raise ValueError(
                    f"invalid parameter {name!r} for PerimeterPartitioner"
                )
            setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"PerimeterPartitioner({args})"

    # -- fitting -----------------------------------------------------------

    def fit(self, X, y=None) -> "PerimeterPartitioner":
        """Solve the partition problem for a list of polygons."""
        if self.mode not in ("auto", "general", "disjoint"):
            raise ValueError(f"unknown mode: {self.mode!r}")
        polys = check_polygons(X)

        if self.mode == "general":
            result = solve(
                polys, merge_tolerance=self.merge_tolerance, trace=self.keep_trace
            )
        elif self.mode == "disjoint":
            result = solve_disjoint(
                polys,
                merge_tolerance=self.merge_tolerance,
                trace=self.keep_trace,
                tangent_method=self.tangent_method,
                fallback=False,
            )
        else:
            if pairwise_disjoint(polys):
                result = solve_disjoint(
                    polys,
                    merge_tolerance=self.merge_tolerance,
                    trace=self.keep_trace,
                    tangent_method=self.tangent_method,
                    fallback=True,
                )
            else:
                result = solve(
                    polys,
                    merge_tolerance=self.merge_tolerance,
                    trace=self.keep_trace,
                )

        self.partition_: Partition = result
        self.labels_ = np.asarray(result.labels, dtype=np.intp)
        self.components_ = result.components
        self.hulls_ = result.hulls
        self.total_perimeter_ = result.total
        self.n_components_ = len(result.components)
        self.mode_used_ = result.mode
        self.merge_trace_ = result.merge_trace
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        """Fit and return the component label of every input polygon."""
        return self.fit(X, y).labels_
