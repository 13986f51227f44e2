"""Instance and result file I/O, and seeded random instance generation.

Instance files are JSON: ``{"polygons": [[[x, y], ...], ...], "meta": {...}}``.
Coordinates are read as exact decimals (never through binary floats) and
written back as exact decimals, so parse -> write -> parse is lossless.
Result files are canonical JSON with 12-significant-digit reals, sorted
keys and sorted component lists, byte-stable across runs.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .engine import Partition
from .errors import DegenerateInput, ParseError
from .geometry import ConvexPolygon, convex_hull, interiors_overlap


@dataclass
class InstanceFile:
    """A parsed problem instance: normalized polygons in input order."""

    polygons: list[ConvexPolygon]
    meta: dict = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InstanceFile):
            return NotImplemented
        return self.polygons == other.polygons and self.meta == other.meta


def parse_instance(data: bytes | str) -> InstanceFile:
    """Parse an instance file.

    Every polygon is normalized to its strictly convex hull (which does
    not change the answer); the input order is preserved.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"instance file is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"instance file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "polygons" not in doc:
        raise ParseError('instance file must be an object with a "polygons" key')
    raw_polys = doc["polygons"]
    if not isinstance(raw_polys, list) or not raw_polys:
        raise ParseError('"polygons" must be a non-empty list')
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise ParseError('"meta" must be an object')

    polygons = []
    for pi, raw in enumerate(raw_polys):
        if not isinstance(raw, list) or len(raw) < 3:
            raise ParseError(f"polygon {pi} must be a list of at least 3 vertices")
        points = []
        for vertex in raw:
            if (
                not isinstance(vertex, list)
                or len(vertex) != 2
                or not all(isinstance(c, (int, Fraction)) for c in vertex)
            ):
                raise ParseError(f"polygon {pi} has a malformed vertex: {vertex!r}")
            points.append((vertex[0], vertex[1]))
        try:
            polygons.append(convex_hull(points))
        except DegenerateInput as exc:
            raise DegenerateInput(f"polygon {pi} is degenerate: {exc}") from exc
    return InstanceFile(polygons=polygons, meta=meta)


def _decimal_text(value) -> str:
    """Exact decimal representation of an int or a Fraction whose
    denominator divides a power of ten."""
    if isinstance(value, int):
        return str(value)
    num, den = value.numerator, value.denominator
    scale = 0
    while den % 2 == 0:
        den //= 2
        scale += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ParseError(f"coordinate {value} has no finite decimal form")
    digits = max(scale, fives)
    scaled = num * 10**digits // value.denominator
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    whole, frac = text[:-digits] if digits else text, text[-digits:] if digits else ""
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def write_instance(instance: InstanceFile) -> bytes:
    """Serialize an instance with exact decimal coordinates."""
    poly_texts = []
    for poly in instance.polygons:
        vertex_texts = [
            f"[{_decimal_text(v.x)}, {_decimal_text(v.y)}]" for v in poly.vertices
        ]
        poly_texts.append("[" + ", ".join(vertex_texts) + "]")
    body = "[" + ", ".join(poly_texts) + "]"
    meta = json.dumps(instance.meta, sort_keys=True)
    return f'{{"meta": {meta}, "polygons": {body}}}\n'.encode("utf-8")


def _real(value: float) -> str:
    """A JSON number with 12 significant digits."""
    return f"{value:.12g}"


def write_result(partition: Partition, mode: Optional[str] = None) -> bytes:
    """Canonical result JSON for a partition; byte-stable."""
    mode = mode if mode is not None else partition.mode
    parts = []
    comps = "[" + ", ".join(
        "[" + ", ".join(str(i) for i in comp) + "]" for comp in partition.components
    ) + "]"
    parts.append(f'"components": {comps}')
    hulls = "[" + ", ".join(
        "["
        + ", ".join(
            f"[{_real(float(v.x))}, {_real(float(v.y))}]" for v in hull.vertices
        )
        + "]"
        for hull in partition.hulls
    ) + "]"
    parts.append(f'"hulls": {hulls}')
    if partition.merge_trace is not None:
        events = []
        for event in partition.merge_trace:
            merged = "[" + ", ".join(
                "[" + ", ".join(str(i) for i in grp) + "]" for grp in event.merged
            ) + "]"
            result = "[" + ", ".join(str(i) for i in event.result) + "]"
            events.append(
                f'{{"delta": {_real(event.delta)}, "merged": {merged}, '
                f'"result": {result}}}'
            )
        parts.append('"merge_trace": [' + ", ".join(events) + "]")
    parts.append(f'"mode": "{mode}"')
    parts.append(f'"total_perimeter": {_real(partition.total)}')
    return ("{" + ", ".join(parts) + "}\n").encode("utf-8")


def _round6(value: float) -> Fraction:
    return Fraction(round(value * 10**6), 10**6)


def generate_instance(
    n: int, m: int, mode: str = "general", seed: int = 0
) -> InstanceFile:
    """A deterministic random instance: ``n`` convex polygons with at
    most ``m`` vertices each, sampled on random ellipses and hulled.

    ``disjoint`` mode places each polygon in its own grid cell so the
    interiors are pairwise disjoint (asserted).  Coordinates carry six
    decimal places, so files round-trip exactly.
    """
    if n < 1:
        raise DegenerateInput("n must be at least 1")
    if m < 3:
        raise DegenerateInput("m must be at least 3")
    if mode not in ("general", "disjoint"):
        raise DegenerateInput(f"unknown instance mode: {mode!r}")
    rng = random.Random(seed)
    polygons: list[ConvexPolygon] = []

    if mode == "disjoint":
        cells = math.isqrt(n - 1) + 1
        cell_size = 12.0
        centers = [
            ((i % cells + 0.5) * cell_size, (i // cells + 0.5) * cell_size)
            for i in range(n)
        ]
        max_radius = cell_size / 2 - 1.5
    else:
        spread = rng.uniform(3.0, 9.0) * math.sqrt(n)
        centers = [
            (rng.uniform(0.0, spread), rng.uniform(0.0, spread)) for _ in range(n)
        ]
        max_radius = None

    for cx, cy in centers:
        while True:
            if max_radius is None:
                a = rng.uniform(0.8, 4.0)
                b = rng.uniform(0.8, 4.0)
            else:
                a = rng.uniform(1.0, max_radius)
                b = rng.uniform(1.0, max_radius)
            theta = rng.uniform(0.0, math.pi)
            cos_t, sin_t = math.cos(theta), math.sin(theta)
            points = []
            for _ in range(m):
                phi = rng.uniform(0.0, 2.0 * math.pi)
                ex, ey = a * math.cos(phi), b * math.sin(phi)
                points.append(
                    (
                        _round6(cx + ex * cos_t - ey * sin_t),
                        _round6(cy + ex * sin_t + ey * cos_t),
                    )
                )
            try:
                polygons.append(convex_hull(points))
                break
            except DegenerateInput:
                continue  # rounded sample collapsed; redraw

    if mode == "disjoint":
        for i in range(n):
            for j in range(i + 1, n):
                assert not interiors_overlap(polygons[i], polygons[j])

    meta = {"mode": mode, "name": f"gen-n{n}-m{m}-{mode}-s{seed}", "seed": seed}
    return InstanceFile(polygons=polygons, meta=meta)
