"""Planar map of a validated diagram: crossings with u-data, arcs, faces,
quadrant signs, classical invariants and the crossing grading.

Conventions.  The disk-facing structure (rotation system, face tracing,
signed areas, quadrant marks) lives in the plane orientation in which
counterclockwise loops have positive area.  Classical invariants and the
grading measure rotation in the opposite orientation (the one fixed by the
contact volume form they are defined with); those computations mirror all
direction vectors first.  Quadrant rule: a sector at a crossing is positive
iff a boundary traversal through it keeping the disk interior on the left
enters along the branch with the larger u and leaves along the other one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, validate_genericity
from .errors import (
    LinkGradingUnsupported,
    TripleIntersection,
    UnsupportedDiagram,
    ZeroHeight,
)
from .exact import (
    Point,
    Vec,
    angle_lt,
    cross,
    dot,
    mirror,
    open_turn_class,
    pick_reference,
    segment_hit,
    sub,
    turning_number,
)


@dataclass(frozen=True)
class Pass:
    """One strand running through a crossing (collinear in and out arcs)."""

    crossing: int
    component: int
    in_arc: int
    out_arc: int
    direction: Vec
    u: Fraction


@dataclass(frozen=True)
class Crossing:
    index: int
    name: str
    point: Point
    over: Pass
    under: Pass
    height: Fraction

    @property
    def u_over(self) -> Fraction:
        return self.over.u

    @property
    def u_under(self) -> Fraction:
        return self.under.u


@dataclass(frozen=True)
class Arc:
    """Maximal diagram piece between consecutive crossing incidences."""

    index: int
    name: str
    component: int
    points: tuple[Point, ...]
    tail: int  # crossing index the arc leaves
    head: int  # crossing index the arc enters
    shoelace2: Fraction  # twice the signed area term of a forward traversal

    @property
    def tail_ray(self) -> Vec:
        return sub(self.points[1], self.points[0])

    @property
    def head_ray(self) -> Vec:
        return sub(self.points[-2], self.points[-1])

    def dirs(self, forward: bool = True) -> list[Vec]:
        pts = self.points
        if forward:
            return [sub(pts[i + 1], pts[i]) for i in range(len(pts) - 1)]
        return [sub(pts[i - 1], pts[i]) for i in range(len(pts) - 1, 0, -1)]


# A directed arc side is (arc index, +1 | -1); +1 runs tail -> head.
Side = tuple[int, int]


@dataclass(frozen=True)
class End:
    """An arc end incident to a crossing."""

    index: int
    crossing: int
    arc: int
    is_tail: bool

    @property
    def side_out(self) -> Side:
        return (self.arc, 1 if self.is_tail else -1)


@dataclass(frozen=True)
class Sector:
    """One of the four sectors at a crossing, between two outgoing rays.

    The sector spans counterclockwise from the ray of exit_end to the ray of
    entry_end; an interior-on-the-left corner through it arrives along the
    entry ray and leaves along the exit ray.
    """

    crossing: int
    index: int
    entry_end: int
    exit_end: int
    cycle: int
    positive: bool


class PlanarMap:
    """Combinatorial scaffold for the disk search.

    `cycles` are the boundary orbits of the rotation system traced with the
    face on the left: bounded ones have positive area, and each connected
    complex has exactly one outer cycle of negative area.  `faces` merge the
    outer cycle of a nested complex into the bounded cycle containing it, so
    they are the actual components of the plane complement.
    """

    def __init__(self, diagram: Diagram):
        validate_genericity(diagram)
        self.diagram = diagram
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        d = self.diagram
        segs = d.segments()
        hits: dict[Point, bool] = {}
        events: dict[int, list] = {ci: [] for ci in range(len(d.components))}
        for i in range(len(segs)):
            ci, si, a, b = segs[i]
            for j in range(i + 1, len(segs)):
                cj, sj, c, e = segs[j]
                if ci == cj and (si - sj) % len(d.components[ci]) in (
                    1,
                    len(d.components[ci]) - 1,
                ):
                    continue
                hit = segment_hit(a, b, c, e)
                if hit is None:
                    continue
                _, t, u, pt = hit
                if pt in hits:
                    raise TripleIntersection(f"crossings coincide at {pt}")
                hits[pt] = True
                events[ci].append((si, t, pt))
                events[cj].append((sj, u, pt))

        points = sorted(hits, key=lambda pt: (pt[1], pt[0]))
        self.crossing_points = points
        index_of_point = {pt: k for k, pt in enumerate(points)}
        n = len(points)

        arcs: list[Arc] = []
        passes_at: dict[int, list[Pass]] = {k: [] for k in range(n)}
        for ci, poly in enumerate(d.components):
            evs = sorted(events[ci])
            if not evs:
                raise UnsupportedDiagram(
                    f"component {ci} has no crossings; faces are not defined here"
                )
            m = len(poly)
            prefix = [Fraction(0)] * (m + 1)
            for si in range(m):
                a, b = poly[si], poly[(si + 1) % m]
                prefix[si + 1] = prefix[si] + (a[0] + b[0]) * (b[1] - a[1]) / 2
            ev_data = []
            for si, t, pt in evs:
                a, b = poly[si], poly[(si + 1) % m]
                partial = (b[1] - a[1]) * (a[0] * t + (b[0] - a[0]) * t * t / 2)
                ev_data.append((si, t, pt, d.u_offsets[ci] + prefix[si] + partial))

            ne = len(ev_data)
            first_arc = len(arcs)
            for k in range(ne):
                si1, t1, p1, _ = ev_data[k]
                si2, t2, p2, _ = ev_data[(k + 1) % ne]
                pts: list[Point] = [p1]
                if (si1, t1) < (si2, t2):
                    si = si1
                    while si != si2:
                        si = (si + 1) % m
                        pts.append(poly[si])
                else:
                    si = si1
                    while True:
                        si = (si + 1) % m
                        pts.append(poly[si])
                        if si == si2:
                            break
                pts.append(p2)
                area2 = Fraction(0)
                for ii in range(len(pts) - 1):
                    a2, b2 = pts[ii], pts[ii + 1]
                    area2 += a2[0] * b2[1] - b2[0] * a2[1]
                arcs.append(
                    Arc(
                        index=len(arcs),
                        name=f"e{len(arcs) + 1}",
                        component=ci,
                        points=tuple(pts),
                        tail=index_of_point[p1],
                        head=index_of_point[p2],
                        shoelace2=area2,
                    )
                )
            for k in range(ne):
                in_arc = first_arc + (k - 1) % ne
                out_arc = first_arc + k
                _, _, pt, u_val = ev_data[k]
                direction = arcs[out_arc].tail_ray
                back = arcs[in_arc].head_ray
                assert cross(direction, back) == 0 and dot(direction, back) < 0
                passes_at[index_of_point[pt]].append(
                    Pass(
                        crossing=index_of_point[pt],
                        component=ci,
                        in_arc=in_arc,
                        out_arc=out_arc,
                        direction=direction,
                        u=u_val,
                    )
                )

        self.arcs = arcs
        names = self._crossing_names(points)
        self.crossings: list[Crossing] = []
        for k, pt in enumerate(points):
            pp = passes_at[k]
            assert len(pp) == 2
            if pp[0].u == pp[1].u:
                raise ZeroHeight(f"equal strand u at crossing {names[k]}")
            over, under = (pp[0], pp[1]) if pp[0].u > pp[1].u else (pp[1], pp[0])
            self.crossings.append(
                Crossing(k, names[k], pt, over, under, over.u - under.u)
            )

        self._build_ends()
        self._build_cycles()
        self._build_faces()
        self._build_sectors()
        self._euler_check()

    def _crossing_names(self, points: list[Point]) -> list[str]:
        d = self.diagram
        names = [f"a{k + 1}" for k in range(len(points))]
        if not d.label_hints:
            return names
        taken: dict[int, str] = {}
        used = set()
        for label, hint in d.label_hints:
            best, best_d2 = None, None
            for k, pt in enumerate(points):
                v = sub(pt, hint)
                d2 = dot(v, v)
                if best_d2 is None or d2 < best_d2:
                    best, best_d2 = k, d2
            if best in taken:
                raise UnsupportedDiagram(
                    f"labels {taken[best]!r} and {label!r} hint the same crossing"
                )
            taken[best] = label
            used.add(label)
        fill = 1
        out = []
        for k in range(len(points)):
            if k in taken:
                out.append(taken[k])
            else:
                while f"a{fill}" in used:
                    fill += 1
                out.append(f"a{fill}")
                used.add(f"a{fill}")
        return out

    def _build_ends(self):
        self.ends: list[End] = []
        ends_at: dict[int, list[int]] = {k: [] for k in range(len(self.crossings))}
        for arc in self.arcs:
            e1 = End(2 * arc.index, arc.tail, arc.index, True)
            e2 = End(2 * arc.index + 1, arc.head, arc.index, False)
            self.ends.extend((e1, e2))
            ends_at[arc.tail].append(e1.index)
            ends_at[arc.head].append(e2.index)
        self.ccw_ends: dict[int, list[int]] = {}
        for k, end_ids in ends_at.items():
            assert len(end_ids) == 4
            rho = pick_reference([self.end_ray(e) for e in end_ids])
            order = end_ids[:]
            # simple insertion sort under the exact angular order
            for i in range(1, 4):
                j = i
                while j > 0 and angle_lt(
                    rho, self.end_ray(order[j]), self.end_ray(order[j - 1])
                ):
                    order[j], order[j - 1] = order[j - 1], order[j]
                    j -= 1
            self.ccw_ends[k] = order

    def end_ray(self, end_id: int) -> Vec:
        end = self.ends[end_id]
        arc = self.arcs[end.arc]
        return arc.tail_ray if end.is_tail else arc.head_ray

    def arrival_end(self, side: Side) -> int:
        arc, sgn = side
        return 2 * arc + 1 if sgn == 1 else 2 * arc

    def depart_end(self, side: Side) -> int:
        arc, sgn = side
        return 2 * arc if sgn == 1 else 2 * arc + 1

    def side_from_end(self, end_id: int) -> Side:
        return self.ends[end_id].side_out

    def cw_next_end(self, end_id: int) -> int:
        order = self.ccw_ends[self.ends[end_id].crossing]
        return order[(order.index(end_id) - 1) % 4]

    def ccw_next_end(self, end_id: int) -> int:
        order = self.ccw_ends[self.ends[end_id].crossing]
        return order[(order.index(end_id) + 1) % 4]

    def opposite_end(self, end_id: int) -> int:
        """The other ray of the same strand pass (collinear, reversed)."""
        ray = self.end_ray(end_id)
        for other in self.ccw_ends[self.ends[end_id].crossing]:
            if other != end_id and cross(ray, self.end_ray(other)) == 0:
                return other
        raise AssertionError("no opposite ray found")

    def next_in_face(self, side: Side) -> Side:
        return self.side_from_end(self.cw_next_end(self.arrival_end(side)))

    def _build_cycles(self):
        sides: list[Side] = []
        for arc in self.arcs:
            sides.append((arc.index, 1))
            sides.append((arc.index, -1))
        self.cycle_of_side: dict[Side, int] = {}
        self.cycles: list[list[Side]] = []
        for s in sides:
            if s in self.cycle_of_side:
                continue
            cyc = []
            cur = s
            while cur not in self.cycle_of_side:
                self.cycle_of_side[cur] = len(self.cycles)
                cyc.append(cur)
                cur = self.next_in_face(cur)
            assert cur == s
            self.cycles.append(cyc)
        self.cycle_area2 = [
            sum((self.arcs[a].shoelace2 * sgn for a, sgn in cyc), Fraction(0))
            for cyc in self.cycles
        ]

        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for arc in self.arcs:
            ra, rb = find(arc.tail), find(arc.head)
            if ra != rb:
                parent[ra] = rb
        self.complex_of_crossing = [find(k) for k in range(len(self.crossings))]
        self.complexes = sorted(set(self.complex_of_crossing))
        self.cycle_complex = [
            self.complex_of_crossing[self.arcs[cyc[0][0]].tail] for cyc in self.cycles
        ]

    def _cycle_containing_in_complex(self, z: Point, complex_id: int):
        """Bounded cycle of the given complex whose region contains z, else
        None.  Exact ray cast; retries with a new direction on degeneracy."""
        arcs = [a for a in self.arcs if self.complex_of_crossing[a.tail] == complex_id]
        dirs = [
            sub(a.points[i + 1], a.points[i])
            for a in arcs
            for i in range(len(a.points) - 1)
        ]
        rho = pick_reference(dirs)
        attempt = 0
        while True:
            hits: list[tuple[Fraction, int, int]] = []
            ok = True
            for a in arcs:
                for i in range(len(a.points) - 1):
                    x, y = a.points[i], a.points[i + 1]
                    w = sub(y, x)
                    denom = cross(rho, w)
                    xz = sub(x, z)
                    if denom == 0:
                        if cross(xz, w) == 0 and dot(sub(y, z), sub(x, z)) <= 0:
                            ok = False
                        continue
                    t = cross(xz, w) / denom
                    s = cross(xz, rho) / denom
                    if t <= 0:
                        continue
                    if s == 0 or s == 1:
                        ok = False
                        continue
                    if 0 < s < 1:
                        hits.append((t, a.index, i))
            if ok:
                break
            attempt += 1
            rho = (rho[0], rho[1] + Fraction(1, 7 + attempt))
        if not hits:
            return None
        _, arc_i, i = min(hits)
        a = self.arcs[arc_i]
        w = sub(a.points[i + 1], a.points[i])
        side: Side = (arc_i, 1) if cross(w, rho) < 0 else (arc_i, -1)
        cyc = self.cycle_of_side[side]
        return cyc if self.cycle_area2[cyc] > 0 else None

    def _build_faces(self):
        ncyc = len(self.cycles)
        inf = ncyc
        parent = list(range(ncyc + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for ci in self.complexes:
            outs = [
                k
                for k in range(ncyc)
                if self.cycle_complex[k] == ci and self.cycle_area2[k] <= 0
            ]
            assert len(outs) == 1, "complex must have exactly one outer cycle"
            probe = self.crossings[self.complex_of_crossing.index(ci)].point
            containers = []
            for cj in self.complexes:
                if cj == ci:
                    continue
                cyc = self._cycle_containing_in_complex(probe, cj)
                if cyc is not None:
                    containers.append(cyc)
            if containers:
                innermost = min(containers, key=lambda c: self.cycle_area2[c])
                union(outs[0], innermost)
            else:
                union(outs[0], inf)

        groups: dict[int, list[int]] = {}
        for k in range(ncyc):
            groups.setdefault(find(k), []).append(k)
        unbounded_root = find(inf)
        bounded = [(r, cs) for r, cs in groups.items() if r != unbounded_root]
        bounded.sort(
            key=lambda kv: (sum(self.cycle_area2[c] for c in kv[1]), min(kv[1]))
        )
        unb = [(r, cs) for r, cs in groups.items() if r == unbounded_root]
        self.faces: list[dict] = []
        self.face_of_cycle: dict[int, int] = {}
        for r, cycs in unb:
            self._add_face("outer", cycs, True)
        for i, (r, cycs) in enumerate(bounded):
            self._add_face(f"f{i + 1}", cycs, False)

    def _add_face(self, name: str, cycs: list[int], unbounded: bool):
        area2 = sum((self.cycle_area2[c] for c in cycs), Fraction(0))
        self.faces.append(
            {"name": name, "cycles": tuple(sorted(cycs)), "area2": area2,
             "unbounded": unbounded}
        )
        for c in cycs:
            self.face_of_cycle[c] = len(self.faces) - 1

    def _build_sectors(self):
        self.sectors: dict[int, list[Sector]] = {}
        for xc in self.crossings:
            order = self.ccw_ends[xc.index]
            secs = []
            for i in range(4):
                exit_end = order[i]
                entry_end = order[(i + 1) % 4]
                positive = cross(self.end_ray(entry_end), xc.over.direction) == 0
                cyc = self.cycle_of_side[self.side_from_end(exit_end)]
                secs.append(Sector(xc.index, i, entry_end, exit_end, cyc, positive))
            pos = [s for s in secs if s.positive]
            assert len(pos) == 2 and (pos[0].index - pos[1].index) % 4 == 2
            self.sectors[xc.index] = secs

    def _euler_check(self):
        for ci in self.complexes:
            v = sum(1 for c in self.complex_of_crossing if c == ci)
            e = sum(1 for a in self.arcs if self.complex_of_crossing[a.tail] == ci)
            f = sum(1 for cc in self.cycle_complex if cc == ci)
            assert v - e + f == 2, f"Euler check failed for complex {ci}"

    # -- queries -----------------------------------------------------------

    @property
    def crossing_by_name(self) -> dict[str, Crossing]:
        return {c.name: c for c in self.crossings}

    def heights(self) -> dict[str, Fraction]:
        return {c.name: c.height for c in self.crossings}

    def generator_names(self) -> list[str]:
        return _natural_sorted([c.name for c in self.crossings])

    def bounded_cycle_ids(self, complex_id: int | None = None) -> list[int]:
        out = []
        for k in range(len(self.cycles)):
            if self.cycle_area2[k] <= 0:
                continue
            if complex_id is not None and self.cycle_complex[k] != complex_id:
                continue
            out.append(k)
        return out

    def face_name_of_cycle(self, cyc: int) -> str:
        return self.faces[self.face_of_cycle[cyc]]["name"]

    def sector_of_ends(self, crossing: int, exit_end: int) -> Sector:
        for s in self.sectors[crossing]:
            if s.exit_end == exit_end:
                return s
        raise AssertionError

    # -- classical invariants ----------------------------------------------

    def maslov_numbers(self) -> list[int]:
        """Twice the rotation number of each component (classical
        orientation)."""
        out = []
        for poly in self.diagram.components:
            n = len(poly)
            dirs = [mirror(sub(poly[(i + 1) % n], poly[i])) for i in range(n)]
            out.append(2 * turning_number(dirs))
        return out

    def bennequin_numbers(self) -> list[int]:
        """Writhe of each component's self-crossings."""
        out = []
        for ci in range(len(self.diagram.components)):
            total = 0
            for xc in self.crossings:
                if xc.over.component == ci and xc.under.component == ci:
                    total += self.crossing_sign(xc)
            out.append(total)
        return out

    def crossing_sign(self, xc: Crossing) -> int:
        """+1 iff (over, under) directions are a positive frame in the
        classical orientation."""
        s = cross(mirror(xc.over.direction), mirror(xc.under.direction))
        return 1 if s > 0 else -1

    # -- grading -----------------------------------------------------------

    def _pass_with_in_arc(self, arc_i: int) -> Pass:
        xc = self.crossings[self.arcs[arc_i].head]
        for p in (xc.over, xc.under):
            if p.in_arc == arc_i:
                return p
        raise AssertionError

    def _pass_with_out_arc(self, arc_i: int) -> Pass:
        xc = self.crossings[self.arcs[arc_i].tail]
        for p in (xc.over, xc.under):
            if p.out_arc == arc_i:
                return p
        raise AssertionError

    def capping_turns(self, xc: Crossing) -> tuple[int, int]:
        """(N1, N2) for the two paths from the upper preimage to the lower
        one, as integers in the grading orientation."""
        if len(self.diagram.components) != 1:
            raise LinkGradingUnsupported("grading needs a knot diagram")
        fwd: list[Vec] = []
        arc_i = xc.over.out_arc
        while True:
            fwd.extend(self.arcs[arc_i].dirs(True))
            if arc_i == xc.under.in_arc:
                break
            arc_i = self._pass_with_in_arc(arc_i).out_arc
        n1 = self._extract_n([mirror(v) for v in fwd])
        back: list[Vec] = []
        arc_i = xc.over.in_arc
        while True:
            back.extend(self.arcs[arc_i].dirs(False))
            if arc_i == xc.under.out_arc:
                break
            arc_i = self._pass_with_out_arc(arc_i).in_arc
        n2 = self._extract_n([mirror(v) for v in back])
        return n1, n2

    @staticmethod
    def _extract_n(dirs: list[Vec]) -> int:
        w, k = open_turn_class(dirs)
        return 2 * w + k

    def grading_modulus(self) -> int:
        if len(self.diagram.components) != 1:
            raise LinkGradingUnsupported("grading needs a knot diagram")
        return abs(self.maslov_numbers()[0])

    def degrees(self) -> dict[str, int]:
        """Degree of each crossing: N1 mod the grading modulus (integers when
        the modulus is 0).  Asserts the two capping paths agree."""
        m = self.grading_modulus()
        out = {}
        for xc in self.crossings:
            n1, n2 = self.capping_turns(xc)
            assert abs(n1 - n2) == m, f"capping paths disagree at {xc.name}"
            out[xc.name] = n1 % m if m else n1
        return out


def _natural_key(name: str):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def _natural_sorted(names: list[str]) -> list[str]:
    return sorted(names, key=_natural_key)


def build_planar_map(d: Diagram) -> PlanarMap:
    return PlanarMap(d)
