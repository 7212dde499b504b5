"""Comparison of free DGAs up to a bijection of generator names.

Used by the test harness and the corpus registry: a computed algebra matches
a printed one when some renaming of generators carries the differential over
exactly.  The search backtracks over name assignments, pruned by a cheap
signature (word-length profile of each generator's differential).
"""

from __future__ import annotations

from .algebra import FreeDGA


def _signature(a: FreeDGA, g: str):
    lengths = sorted(len(t) for t in a.diff[g].terms)
    return tuple(lengths)


def find_bijection(src: FreeDGA, dst: FreeDGA):
    """A dict renaming src generators to dst generators that carries d_src to
    d_dst, or None.  Exact search; practical for the sizes handled here."""
    if len(src.generators) != len(dst.generators):
        return None
    sig_src = {g: _signature(src, g) for g in src.generators}
    sig_dst = {g: _signature(dst, g) for g in dst.generators}
    candidates = {
        g: [h for h in dst.generators if sig_dst[h] == sig_src[g]]
        for g in src.generators
    }
    order = sorted(src.generators, key=lambda g: len(candidates[g]))
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent() -> bool:
        # every fully-mapped differential must match on the nose
        for g, h in assignment.items():
            image = src.diff[g]
            if image.generators_used() <= set(assignment):
                if image.rename(assignment) != dst.diff[h]:
                    return False
        return True

    def rec(i: int):
        if i == len(order):
            return dict(assignment)
        g = order[i]
        for h in candidates[g]:
            if h in used:
                continue
            assignment[g] = h
            used.add(h)
            if consistent():
                result = rec(i + 1)
                if result is not None:
                    return result
            del assignment[g]
            used.remove(h)
        return None

    return rec(0)


def dga_equal_up_to_relabeling(a: FreeDGA, b: FreeDGA) -> bool:
    return find_bijection(a, b) is not None
