"""PL Lagrangian-projection diagrams with exact rational coordinates.

A diagram is a list of closed polylines in the (p, q) plane, one per link
component, plus a u-offset per component.  The u coordinate along a component
is recovered from du = p dq, so each component must satisfy the exact closure
condition that p dq integrates to zero around it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DiagramFormatError,
    NotClosable,
    TangentialContact,
    TripleIntersection,
    VertexOnStrand,
)
from .exact import (
    Point,
    cross,
    dot,
    fmt_rational,
    parse_rational,
    pdq_integral,
    segment_hit,
    sub,
)


@dataclass(frozen=True)
class Diagram:
    """Closed PL curves with per-component u-offsets and optional label hints
    (generator name -> nearby plane point) used to name crossings."""

    components: tuple[tuple[Point, ...], ...]
    u_offsets: tuple[Fraction, ...]
    label_hints: tuple[tuple[str, Point], ...] = field(default=())

    def __post_init__(self):
        if len(self.components) != len(self.u_offsets):
            raise DiagramFormatError("one u-offset per component required")
        for poly in self.components:
            if len(poly) < 3:
                raise DiagramFormatError("component with fewer than 3 points")
            for i in range(len(poly)):
                if poly[i] == poly[(i + 1) % len(poly)]:
                    raise DiagramFormatError(
                        f"duplicate consecutive point {fmt_point(poly[i])}"
                    )
            total = pdq_integral(poly)
            if total != 0:
                raise NotClosable(
                    f"component integral of p dq is {fmt_rational(total)}, not 0"
                )

    def segments(self):
        """All (component, segment index, start point, end point) tuples."""
        out = []
        for ci, poly in enumerate(self.components):
            n = len(poly)
            for si in range(n):
                out.append((ci, si, poly[si], poly[(si + 1) % n]))
        return out

    def edge_count(self) -> int:
        return sum(len(poly) for poly in self.components)


def fmt_point(pt: Point) -> str:
    return f"({fmt_rational(pt[0])}, {fmt_rational(pt[1])})"


def _parse_point(raw) -> Point:
    if not isinstance(raw, list) or len(raw) != 2:
        raise DiagramFormatError(f"point must be a 2-element array, got {raw!r}")
    try:
        return (parse_rational(raw[0]), parse_rational(raw[1]))
    except ValueError as exc:
        raise DiagramFormatError(str(exc)) from exc


def parse_diagram(text: str) -> Diagram:
    """Parse diagram-file content (UTF-8 JSON, rational strings only)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DiagramFormatError("top level must be an object")
    unknown = set(doc) - {"components", "labels"}
    if unknown:
        raise DiagramFormatError(f"unknown top-level keys {sorted(unknown)}")
    if "components" not in doc or not isinstance(doc["components"], list):
        raise DiagramFormatError("missing components array")
    comps: list[tuple[Point, ...]] = []
    offsets: list[Fraction] = []
    for entry in doc["components"]:
        if not isinstance(entry, dict):
            raise DiagramFormatError("component must be an object")
        extra = set(entry) - {"points", "u0"}
        if extra:
            raise DiagramFormatError(f"unknown component keys {sorted(extra)}")
        pts_raw = entry.get("points")
        if not isinstance(pts_raw, list):
            raise DiagramFormatError("component missing points array")
        comps.append(tuple(_parse_point(p) for p in pts_raw))
        u0 = entry.get("u0", "0")
        try:
            offsets.append(parse_rational(u0))
        except ValueError as exc:
            raise DiagramFormatError(str(exc)) from exc
    hints: list[tuple[str, Point]] = []
    for name, raw in (doc.get("labels") or {}).items():
        if not isinstance(name, str) or not name:
            raise DiagramFormatError("label names must be nonempty strings")
        hints.append((name, _parse_point(raw)))
    return Diagram(tuple(comps), tuple(offsets), tuple(hints))


def dump_diagram(d: Diagram) -> str:
    """Serialize back to the .dgm format (exact round trip of coordinates)."""
    doc = {
        "components": [
            {
                "points": [[fmt_rational(p), fmt_rational(q)] for p, q in poly],
                **({"u0": fmt_rational(u0)} if u0 != 0 else {}),
            }
            for poly, u0 in zip(d.components, d.u_offsets)
        ]
    }
    if d.label_hints:
        doc["labels"] = {
            name: [fmt_rational(pt[0]), fmt_rational(pt[1])]
            for name, pt in d.label_hints
        }
    return json.dumps(doc, indent=1)


def _adjacent(ci, si, cj, sj, ncomp_i) -> bool:
    """Whether two segments of the same component share an endpoint."""
    if ci != cj:
        return False
    return (si - sj) % ncomp_i in (1, ncomp_i - 1)


def validate_genericity(d: Diagram) -> None:
    """Accept iff all intersections are transverse interior double points.

    Raises TangentialContact for collinear overlaps (including backtracking
    at a vertex), VertexOnStrand when a vertex lies on any non-adjacent
    segment, and TripleIntersection when two crossings coincide.
    """
    # Backtracking at a vertex makes consecutive segments overlap.
    for ci, poly in enumerate(d.components):
        n = len(poly)
        for i in range(n):
            u = sub(poly[(i + 1) % n], poly[i])
            v = sub(poly[(i + 2) % n], poly[(i + 1) % n])
            if cross(u, v) == 0 and dot(u, v) < 0:
                raise TangentialContact(
                    f"backtracking at vertex {fmt_point(poly[(i + 1) % n])}"
                )

    segs = d.segments()
    seen: dict[Point, tuple] = {}
    for i in range(len(segs)):
        ci, si, a, b = segs[i]
        for j in range(i + 1, len(segs)):
            cj, sj, c, e = segs[j]
            if _adjacent(ci, si, cj, sj, len(d.components[ci])):
                hit = segment_hit(a, b, c, e)
                if hit is not None and hit[0] == "overlap":
                    raise TangentialContact(
                        f"collinear overlap at {fmt_point(a)}"
                    )
                continue
            hit = segment_hit(a, b, c, e)
            if hit is None:
                continue
            if hit[0] == "overlap":
                raise TangentialContact(f"collinear overlap at {fmt_point(a)}")
            _, t, u, pt = hit
            if t == 0 or t == 1 or u == 0 or u == 1:
                raise VertexOnStrand(f"vertex on strand at {fmt_point(pt)}")
            prev = seen.get(pt)
            if prev is not None:
                raise TripleIntersection(
                    f"three strands through {fmt_point(pt)}"
                )
            seen[pt] = (i, j)
