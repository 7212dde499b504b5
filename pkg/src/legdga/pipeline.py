"""Convenience wiring: diagram file -> planar map -> disks -> algebra."""

from __future__ import annotations

from pathlib import Path

from .algebra import FreeDGA
from .diagram import Diagram, parse_diagram
from .disks import differential_from_disks, enumerate_disks
from .planar import PlanarMap, build_planar_map


def load_diagram(path) -> Diagram:
    return parse_diagram(Path(path).read_text(encoding="utf-8"))


def diagram_dga(source, graded: bool = False) -> FreeDGA:
    """DGA of a diagram (path, Diagram, or PlanarMap); optionally graded."""
    pm = as_planar_map(source)
    disks = enumerate_disks(pm)
    dga = differential_from_disks(disks, pm.generator_names())
    if graded:
        degrees = pm.degrees()
        return FreeDGA(dga.generators, dga.diff, pm.grading_modulus(), degrees)
    return dga


def as_planar_map(source) -> PlanarMap:
    if isinstance(source, PlanarMap):
        return source
    if isinstance(source, Diagram):
        return build_planar_map(source)
    return build_planar_map(load_diagram(source))
