"""Enumeration of admissible immersed polygons and the induced differential.

A disk boundary is found as a closed walk on the diagram: start in a positive
sector of a crossing, travel with the disk interior on the left; at every
crossing either continue along the strand or turn through the sector on the
left (a corner, legal only in a negative sector); close by turning through
the starting positive sector.  Heights prune corners (the sum of negative
corner heights stays below the positive height) and windings prune straights:
a boundary strand with cycle ``c`` on its left can occur at most
``floor(H+ / area(c))`` times on one arc, and never with the unbounded region
on its left.  Both bounds follow from the exact area identity
``H(+) - sum H(-) = sum n_l A_l > 0``, which every emitted disk is checked
against, term by term.

Accepted walks must in addition have turning number 1, nonnegative windings
vanishing on the unbounded region, a consistent local sheet count at every
crossing, and Euler characteristic 1 for the implied cell structure.  These
checks accept exactly the boundaries of admissible disks on all diagrams this
package has been validated on; a boundary showing evidence of more than one
immersion filling raises ImmersionAmbiguity rather than miscounting.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DiskValidationError, ImmersionAmbiguity, OracleBudgetExceeded
from .exact import Vec, turning_number
from .planar import PlanarMap, Sector, Side, _natural_key


@dataclass(frozen=True)
class AdmissibleDisk:
    """One summand of the differential: a disk up to reparametrization."""

    positive: str
    negatives: tuple[str, ...]  # boundary order, starting after the positive corner
    sides: tuple[Side, ...]  # directed arcs of the boundary walk
    corner_sectors: tuple[tuple[int, int], ...]  # (crossing, sector index), + first
    area: Fraction
    multiplicities: tuple[tuple[int, int], ...]  # (cycle id, winding), sorted

    def mult_map(self) -> dict[int, int]:
        return dict(self.multiplicities)


def enumerate_disks(pm: PlanarMap) -> list[AdmissibleDisk]:
    """Every admissible disk of the planar map, exactly once, in a canonical
    deterministic order (independent of search order)."""
    disks: list[AdmissibleDisk] = []
    for xc in pm.crossings:
        for sector in pm.sectors[xc.index]:
            if sector.positive:
                disks.extend(_search_from(pm, xc.index, sector))
    disks.sort(
        key=lambda d: (_natural_key(d.positive), len(d.negatives),
                       [_natural_key(n) for n in d.negatives], d.sides)
    )
    return disks


def _nmax(pm: PlanarMap, cycle: int, h_plus: Fraction) -> int:
    area2 = pm.cycle_area2[cycle]
    if area2 <= 0:
        return 0
    return int((2 * h_plus) // area2)


def _search_from(pm: PlanarMap, x0: int, sector: Sector) -> list[AdmissibleDisk]:
    h_plus = pm.crossings[x0].height
    heights = [c.height for c in pm.crossings]
    cap: dict[Side, int] = {}
    for arc in pm.arcs:
        for sgn in (1, -1):
            side: Side = (arc.index, sgn)
            cap[side] = _nmax(pm, pm.cycle_of_side[side], h_plus)

    results: list[AdmissibleDisk] = []
    counts: Counter[Side] = Counter()
    sides: list[Side] = []
    corners: list[tuple[int, Sector]] = []

    sector_by_entry = {
        (s.crossing, s.entry_end): s
        for secs in pm.sectors.values()
        for s in secs
    }

    def visit(side: Side, hsum: Fraction):
        if counts[side] >= cap[side]:
            return
        counts[side] += 1
        sides.append(side)
        e = pm.arrival_end(side)
        c = pm.ends[e].crossing
        if c == x0 and e == sector.entry_end:
            disk = _validate(pm, x0, sector, tuple(sides), tuple(corners))
            if disk is not None:
                results.append(disk)
        sec = sector_by_entry[(c, e)]
        if not sec.positive and hsum + heights[c] < h_plus:
            corners.append((c, sec))
            visit(pm.side_from_end(sec.exit_end), hsum + heights[c])
            corners.pop()
        visit(pm.side_from_end(pm.opposite_end(e)), hsum)
        counts[side] -= 1
        sides.pop()

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 100000))
    try:
        visit(pm.side_from_end(sector.exit_end), Fraction(0))
    finally:
        sys.setrecursionlimit(old)
    return results


def _windings(pm: PlanarMap, complex_id: int, jumps: dict[int, int]):
    """Winding numbers per cycle from per-arc jumps, or None if negative.
    Raises DiskValidationError if the jumps are not integrable (a bug: a
    closed curve always has a well-defined winding function)."""
    cycles = [k for k in range(len(pm.cycles)) if pm.cycle_complex[k] == complex_id]
    outer = next(k for k in cycles if pm.cycle_area2[k] <= 0)
    n: dict[int, int] = {outer: 0}
    queue = [outer]
    arcs = [a for a in pm.arcs if pm.complex_of_crossing[a.tail] == complex_id]
    adj: dict[int, list[tuple[int, int, int]]] = {k: [] for k in cycles}
    for a in arcs:
        left = pm.cycle_of_side[(a.index, 1)]
        right = pm.cycle_of_side[(a.index, -1)]
        j = jumps.get(a.index, 0)
        adj[left].append((right, -j, a.index))
        adj[right].append((left, j, a.index))
    while queue:
        cur = queue.pop()
        for other, delta, _ in adj[cur]:
            val = n[cur] + delta
            if other in n:
                if n[other] != val:
                    raise DiskValidationError("winding jumps are inconsistent")
            else:
                n[other] = val
                queue.append(other)
    if len(n) != len(cycles):
        raise DiskValidationError("face adjacency not connected")
    if any(v < 0 for v in n.values()):
        return None
    return n


def _validate(pm, x0: int, sector: Sector, sides, corners):
    """Run every admissibility gate on a closed walk; return the disk or
    None.  Identity violations raise rather than miscount."""
    t_fwd: Counter[int] = Counter()
    t_bwd: Counter[int] = Counter()
    for arc, sgn in sides:
        (t_fwd if sgn == 1 else t_bwd)[arc] += 1
    jumps = {a: t_fwd[a] - t_bwd[a] for a in set(t_fwd) | set(t_bwd)}
    complex_id = pm.complex_of_crossing[x0]
    n = _windings(pm, complex_id, jumps)
    if n is None:
        return None

    # local sheet counts: windings minus corner and straight coverage must be
    # a single nonnegative number at each crossing
    all_corners = [(x0, sector)] + list(corners)
    corner_count: Counter[tuple[int, int]] = Counter()
    for c, sec in all_corners:
        corner_count[(c, sec.index)] += 1
    straight_cover: Counter[tuple[int, int]] = Counter()
    straights = 0
    for i, side in enumerate(sides[:-1]):
        e = pm.arrival_end(side)
        nxt_side = sides[i + 1]
        if pm.depart_end(nxt_side) == pm.opposite_end(e):
            c = pm.ends[e].crossing
            order = pm.ccw_ends[c]
            pe = order.index(e)
            straights += 1
            for k in (pe + 2, pe + 3):
                straight_cover[(c, k % 4)] += 1
        # otherwise it was a corner, counted above
    # the closing transition from the last side back to the first is the
    # positive corner, never a straight

    crossings_here = [
        xc.index
        for xc in pm.crossings
        if pm.complex_of_crossing[xc.index] == complex_id
    ]
    interior_total = 0
    for c in crossings_here:
        vals = []
        for s in pm.sectors[c]:
            ni = n[s.cycle]
            vals.append(ni - corner_count[(c, s.index)] - straight_cover[(c, s.index)])
        if len(set(vals)) != 1 or vals[0] < 0:
            return None
        interior_total += vals[0]

    # Euler characteristic of the implied cell decomposition must be a disk's
    v_count = interior_total + len(all_corners) + straights
    e_count = 0
    for a in pm.arcs:
        if pm.complex_of_crossing[a.tail] != complex_id:
            continue
        nl = n[pm.cycle_of_side[(a.index, 1)]]
        nr = n[pm.cycle_of_side[(a.index, -1)]]
        t = t_fwd[a.index] + t_bwd[a.index]
        if (nl + nr - t) % 2 != 0 or nl + nr - t < 0:
            return None
        e_count += (nl + nr - t) // 2 + t
    f_count = sum(n.values())
    if v_count - e_count + f_count != 1:
        return None

    dirs: list[Vec] = []
    for arc, sgn in sides:
        dirs.extend(pm.arcs[arc].dirs(sgn == 1))
    if turning_number(dirs) != 1:
        return None

    h_plus = pm.crossings[x0].height
    neg_sum = sum((pm.crossings[c].height for c, _ in corners), Fraction(0))
    area = sum(
        (Fraction(v) * pm.cycle_area2[cyc] for cyc, v in n.items()), Fraction(0)
    ) / 2
    if area != h_plus - neg_sum or area <= 0:
        raise DiskValidationError(
            f"area identity failed at {pm.crossings[x0].name}: "
            f"{area} != {h_plus} - {neg_sum}"
        )

    _ambiguity_check(pm, corner_count, n)

    return AdmissibleDisk(
        positive=pm.crossings[x0].name,
        negatives=tuple(pm.crossings[c].name for c, _ in corners),
        sides=tuple(sides),
        corner_sectors=tuple((c, s.index) for c, s in all_corners),
        area=area,
        multiplicities=tuple(sorted((cyc, v) for cyc, v in n.items() if v > 0)),
    )


def _ambiguity_check(pm, corner_count, n):
    """Refuse boundaries whose local data leaves room for two fillings: a
    sector hosting two or more corners of one disk stacked over interior
    sheets admits more than one cyclic matching of the sheets."""
    for (c, si), k in corner_count.items():
        if k >= 2:
            sec = pm.sectors[c][si]
            if n[sec.cycle] > k:
                raise ImmersionAmbiguity(
                    f"{k} corners share a sector at {pm.crossings[c].name} "
                    f"with extra sheets present"
                )


# ---------------------------------------------------------------------------
# Differential assembly


def differential_from_disks(disks, generators):
    """Mod-2 differential from the disk set; see algebra.FreeDGA."""
    from .algebra import FreeDGA, Poly

    diff: dict[str, set[tuple[str, ...]]] = {g: set() for g in generators}
    for d in disks:
        word = d.negatives
        diff[d.positive] ^= {word}
    return FreeDGA(
        generators=tuple(generators),
        diff={g: Poly(frozenset(ws)) for g, ws in diff.items()},
    )


def dump_disks(pm: PlanarMap, disks) -> str:
    """One line per disk, deterministic, for golden-file comparisons."""
    lines = []
    for d in disks:
        mult = ",".join(
            f"{pm.face_name_of_cycle(cyc)}:{v}" for cyc, v in d.multiplicities
        )
        word = ",".join(d.negatives)
        area = d.area
        area_s = (
            str(area.numerator)
            if area.denominator == 1
            else f"{area.numerator}/{area.denominator}"
        )
        lines.append(f"{d.positive} : [{word}] ; area={area_s} ; mult={{{mult}}}")
    return "\n".join(lines) + ("\n" if lines else "")
