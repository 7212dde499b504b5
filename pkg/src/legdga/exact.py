"""Exact planar kernel: rational points, segment intersection, angular order,
and integer turning numbers.

Everything here works over ``fractions.Fraction``; no floating point enters
any computation.  Orientation is the one induced by the symplectic area form
on the (p, q) plane, i.e. ``cross((1,0),(0,1)) = +1`` and counterclockwise
simple loops have positive turning.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]
Vec = tuple[Fraction, Fraction]

_RAT_CHARS = set("-0123456789/")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal: optional sign, digits, optional '/digits'."""
    if not isinstance(text, str) or not text or not set(text) <= _RAT_CHARS:
        raise ValueError(f"bad rational literal {text!r}")
    if text.count("/") > 1 or text.startswith("/") or text.endswith("/"):
        raise ValueError(f"bad rational literal {text!r}")
    if "-" in text[1:]:
        raise ValueError(f"bad rational literal {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc
    return value


def fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sub(a: Point, b: Point) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def neg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def mirror(a: Vec) -> Vec:
    """Reflect across the p axis; used for conventions that measure rotation
    in the opposite plane orientation."""
    return (a[0], -a[1])


def is_parallel(a: Vec, b: Vec) -> bool:
    return cross(a, b) == 0


def segment_dirs(points: Sequence[Point], closed: bool = True) -> list[Vec]:
    """Direction vectors of consecutive segments of a polyline."""
    n = len(points)
    rng = range(n) if closed else range(n - 1)
    return [sub(points[(i + 1) % n], points[i]) for i in rng]


def shoelace2(points: Sequence[Point], closed: bool = True) -> Fraction:
    """Twice the signed area contribution sum(p_i q_{i+1} - p_{i+1} q_i)."""
    total = Fraction(0)
    n = len(points)
    rng = range(n) if closed else range(n - 1)
    for i in rng:
        a, b = points[i], points[(i + 1) % n]
        total += a[0] * b[1] - b[0] * a[1]
    return total


def pdq_integral(points: Sequence[Point], closed: bool = True) -> Fraction:
    """Integral of p dq along a polyline; per segment (p_a+p_b)/2 (q_b-q_a)."""
    total = Fraction(0)
    n = len(points)
    rng = range(n) if closed else range(n - 1)
    for i in rng:
        a, b = points[i], points[(i + 1) % n]
        total += (a[0] + b[0]) * (b[1] - a[1])
    return total / 2


# ---------------------------------------------------------------------------
# Segment intersection


def segment_hit(a: Point, b: Point, c: Point, d: Point):
    """Classify the intersection of closed segments [a,b] and [c,d].

    Returns None (disjoint), ('overlap',) for a collinear overlap, or
    ('point', t, u, point) where t, u are the exact parameters along each
    segment, both in [0, 1].
    """
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    ca = sub(c, a)
    if denom == 0:
        if cross(ca, r) != 0:
            return None
        # Collinear: project onto r (or s if r degenerate is excluded upstream).
        rr = dot(r, r)
        t0 = dot(ca, r) / rr
        t1 = dot(sub(d, a), r) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        if hi == 0 or lo == 1:
            # Touching at a single shared endpoint.
            t = Fraction(0) if hi == 0 else Fraction(1)
            pt = a if hi == 0 else b
            u = Fraction(0) if pt == c else Fraction(1)
            return ("point", t, u, pt)
        return ("overlap",)
    t = cross(ca, s) / denom
    u = cross(ca, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        pt = (a[0] + t * r[0], a[1] + t * r[1])
        return ("point", t, u, pt)
    return None


# ---------------------------------------------------------------------------
# Exact angular order


def _half(rho: Vec, d: Vec) -> int:
    """0 if the angle from rho to d lies in [0, pi), else 1."""
    c = cross(rho, d)
    if c > 0:
        return 0
    if c < 0:
        return 1
    return 0 if dot(rho, d) > 0 else 1


def angle_lt(rho: Vec, d1: Vec, d2: Vec) -> bool:
    """Whether d1 comes strictly before d2 going counterclockwise from rho."""
    h1, h2 = _half(rho, d1), _half(rho, d2)
    if h1 != h2:
        return h1 < h2
    c = cross(d1, d2)
    return c > 0


def ccw_sorted(rho: Vec, dirs: Iterable[Vec]) -> list[int]:
    """Indices of dirs sorted counterclockwise starting from rho."""
    items = list(enumerate(dirs))
    order = []
    remaining = items[:]
    while remaining:
        best = remaining[0]
        for cand in remaining[1:]:
            if angle_lt(rho, cand[1], best[1]):
                best = cand
        order.append(best[0])
        remaining.remove(best)
    return order


def strictly_inside_ccw(a: Vec, c: Vec, b: Vec) -> bool:
    """Whether direction c lies strictly inside the counterclockwise arc a->b
    (the arc shorter than a full turn; a and b are assumed non-parallel to c)."""
    if cross(a, b) > 0:
        return cross(a, c) > 0 and cross(c, b) > 0
    if cross(a, b) < 0:
        # arc longer than pi: complement of the ccw arc b->a
        return not (cross(b, c) > 0 and cross(c, a) > 0)
    # a, b opposite: the ccw arc is exactly pi
    return cross(a, c) > 0


def pick_reference(dirs: Iterable[Vec]) -> Vec:
    """A direction not parallel to any of dirs: (1, K) with K past all slopes."""
    k = Fraction(1)
    for d in dirs:
        if d[0] != 0:
            slope = abs(d[1] / d[0])
            if slope >= k:
                k = slope + 1
    return (Fraction(1), k)


def _step_passes(rho: Vec, d1: Vec, d2: Vec) -> int:
    """Signed count of passes through direction rho as the moving direction
    rotates from d1 to d2 the short way (|angle| < pi)."""
    c = cross(d1, d2)
    if c == 0:
        if dot(d1, d2) <= 0:
            raise ValueError("direction reversal in turning computation")
        return 0
    if c > 0:
        return 1 if (cross(d1, rho) > 0 and cross(rho, d2) > 0) else 0
    return -1 if (cross(d2, rho) > 0 and cross(rho, d1) > 0) else 0


def turning_number(dirs: Sequence[Vec], rho: Vec | None = None) -> int:
    """Turning number of a closed direction sequence (counterclockwise = +1).

    Consecutive directions must not be opposite; rho must not be parallel
    to any entry (a suitable rho is chosen if omitted).
    """
    if rho is None:
        rho = pick_reference(dirs)
    total = 0
    n = len(dirs)
    for i in range(n):
        total += _step_passes(rho, dirs[i], dirs[(i + 1) % n])
    return total


def open_turn_class(dirs: Sequence[Vec], rho: Vec | None = None) -> tuple[int, int]:
    """For an open direction sequence, return (W, k) where W is the signed
    number of rho-passes and k = floor(total turn angle from the start
    direction to the end direction, net of W full turns, in units of pi).

    The total turning angle is 2*pi*W + phi(end) - phi(start) with phi in
    [0, 2*pi) measured from rho; k locates phi(end) - phi(start) within
    (-2*pi, 2*pi) in multiples of pi, assuming start and end directions are
    not parallel.
    """
    if rho is None:
        rho = pick_reference(dirs)
    w = 0
    for i in range(len(dirs) - 1):
        w += _step_passes(rho, dirs[i], dirs[i + 1])
    d_s, d_e = dirs[0], dirs[-1]
    c = cross(d_s, d_e)
    if c == 0:
        raise ValueError("parallel endpoint directions have no pi-cell")
    ge = not angle_lt(rho, d_e, d_s)  # phi(d_e) >= phi(d_s)
    if ge:
        k = 0 if c > 0 else 1
    else:
        k = -1 if c < 0 else -2
    return w, k
