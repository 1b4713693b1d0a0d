"""Numeric core: coordinates, segment intersection, crossing angles, bend sides.

Coordinates are either exact (``Fraction``/``int``) or floating (``float``). Predicates on
exact inputs use plain sign tests; floating inputs fall back to a relative tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple, Optional, Sequence, Union

from rac.errors import DrawingFormatError, NotProperCrossing, PreconditionViolated

Coord = Union[Fraction, float]

DEFAULT_EPSILON = 1e-9
COLLINEAR_EPSILON = 1e-12


def parse_coord(text: str) -> Coord:
    """Parse a coordinate string.

    ``"5/4"`` and ``"3"`` become exact rationals, ``"1.25"`` or ``"1e-3"`` become floats.
    """
    s = str(text).strip()
    if not s:
        raise DrawingFormatError("empty coordinate string")
    try:
        if "/" in s:
            value = Fraction(s)
        elif any(ch in s for ch in ".eE") or s.lower() in ("inf", "-inf", "nan"):
            value = float(s)
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as e:
        raise DrawingFormatError(f"bad coordinate {text!r}: {e}") from e
    if isinstance(value, float) and not math.isfinite(value):
        raise DrawingFormatError(f"coordinate {text!r} is not finite")
    return value


def format_coord(value: Coord) -> str:
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_exact(*values: object) -> bool:
    return all(isinstance(v, (Fraction, int)) for v in values)


class Point(NamedTuple):
    x: Coord
    y: Coord

    def __sub__(self, other: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, k: Coord) -> "Point":
        return Point(self.x * k, self.y * k)

    @property
    def exact(self) -> bool:
        return is_exact(self.x, self.y)


def cross(u: Point, v: Point) -> Coord:
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point) -> Coord:
    return u.x * v.x + u.y * v.y


def norm(u: Point) -> float:
    return math.hypot(float(u.x), float(u.y))


def sign(value: Coord, scale: float = 1.0, eps: float = COLLINEAR_EPSILON) -> int:
    """Sign of ``value``; floats within ``eps * scale`` of zero count as zero."""
    if isinstance(value, float):
        if abs(value) <= eps * max(scale, 1e-300):
            return 0
    return (value > 0) - (value < 0)


def orientation(a: Point, b: Point, c: Point, eps: float = COLLINEAR_EPSILON) -> int:
    """+1 for a left turn a->b->c, -1 for a right turn, 0 when collinear."""
    value = cross(b - a, c - a)
    scale = 1.0 if is_exact(value) else norm(b - a) * norm(c - a)
    return sign(value, scale, eps)


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise PreconditionViolated(f"zero-length segment at {self.p}")

    @property
    def direction(self) -> Point:
        return self.q - self.p

    def canonical(self) -> tuple[Point, Point]:
        return (self.p, self.q) if self.p <= self.q else (self.q, self.p)


class IntersectionKind(str, enum.Enum):
    PROPER = "proper"
    ENDPOINT = "endpoint"
    OVERLAP = "overlap"


class Intersection(NamedTuple):
    point: Point
    kind: IntersectionKind


def on_segment(p: Point, q: Point, c: Point, eps: float = COLLINEAR_EPSILON) -> bool:
    """Whether ``c``, collinear with ``p q``, lies between them along the segment direction."""
    r = q - p
    rr = dot(r, r)
    t = dot(c - p, r)
    if is_exact(t, rr):
        return 0 <= t <= rr
    tol = eps * float(rr)
    return -tol <= t <= rr + tol


def _collinear_contact(a: Point, b: Point, c: Point, d: Point, eps: float) -> Optional[Intersection]:
    r = b - a
    rr = dot(r, r)
    (t_lo, p_lo), (t_hi, p_hi) = sorted([(dot(c - a, r), c), (dot(d - a, r), d)], key=lambda tp: tp[0])
    lo, lo_point = (t_lo, p_lo) if t_lo > 0 else (0, a)
    hi = t_hi if t_hi < rr else rr
    tol = 0 if is_exact(rr, t_lo, t_hi) else eps * float(rr)
    if lo - hi > tol:
        return None
    if abs(hi - lo) <= tol:
        return Intersection(lo_point, IntersectionKind.ENDPOINT)
    return Intersection(lo_point, IntersectionKind.OVERLAP)


def intersect(s1: Segment, s2: Segment, eps: float = COLLINEAR_EPSILON) -> Optional[Intersection]:
    """Intersection of two closed segments, or ``None``.

    ``PROPER`` is interior-interior, ``ENDPOINT`` means an endpoint of one segment lies on
    the other, ``OVERLAP`` is a collinear overlap of positive length (its point is the shared
    point nearest the start of the lexicographically first segment).
    """
    (a, b), (c, d) = sorted([s1.canonical(), s2.canonical()])
    o1 = orientation(a, b, c, eps)
    o2 = orientation(a, b, d, eps)
    o3 = orientation(c, d, a, eps)
    o4 = orientation(c, d, b, eps)

    if o1 == 0 and o2 == 0:
        return _collinear_contact(a, b, c, d, eps)

    if o1 * o2 > 0 or o3 * o4 > 0:
        return None

    if o1 == 0:
        return Intersection(c, IntersectionKind.ENDPOINT) if on_segment(a, b, c, eps) else None
    if o2 == 0:
        return Intersection(d, IntersectionKind.ENDPOINT) if on_segment(a, b, d, eps) else None
    if o3 == 0:
        return Intersection(a, IntersectionKind.ENDPOINT) if on_segment(c, d, a, eps) else None
    if o4 == 0:
        return Intersection(b, IntersectionKind.ENDPOINT) if on_segment(c, d, b, eps) else None

    r = b - a
    s = d - c
    t = cross(c - a, s) / cross(r, s)
    if is_exact(t):
        t = Fraction(t)
    return Intersection(Point(a.x + r.x * t, a.y + r.y * t), IntersectionKind.PROPER)


def crossing_angle(s1: Segment, s2: Segment, eps: float = COLLINEAR_EPSILON) -> float:
    """Angle in (0, pi/2] between two properly crossing segments, in radians."""
    hit = intersect(s1, s2, eps)
    if hit is None or hit.kind is not IntersectionKind.PROPER:
        raise NotProperCrossing(f"{s1} and {s2} do not cross properly")
    u, v = s1.direction, s2.direction
    return math.atan2(abs(float(cross(u, v))), abs(float(dot(u, v))))


def is_right_angle(s1: Segment, s2: Segment, eps: float = DEFAULT_EPSILON) -> bool:
    """Perpendicularity test: exact dot product for rationals, normalized dot otherwise."""
    u, v = s1.direction, s2.direction
    d = dot(u, v)
    if is_exact(d):
        return d == 0
    return abs(float(d)) / (norm(u) * norm(v)) <= eps


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    DEGENERATE = "degenerate"


def bend_convex_side(a: Point, bend: Point, b: Point, eps: float = COLLINEAR_EPSILON) -> Side:
    """Side of the polyline a -> bend -> b on which the angle at ``bend`` is below pi."""
    if a == bend or bend == b:
        raise PreconditionViolated("bend coincides with an endpoint")
    turn = orientation(a, bend, b, eps)
    if turn > 0:
        return Side.LEFT
    if turn < 0:
        return Side.RIGHT
    return Side.DEGENERATE


def _half(u: Point) -> int:
    return 0 if (u.y > 0 or (u.y == 0 and u.x > 0)) else 1


def _compare_directions(u: Point, v: Point) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    return (c < 0) - (c > 0)


def sort_ccw(directions: Sequence[Point]) -> list[int]:
    """Indices of ``directions`` in counter-clockwise order starting at the positive x-axis."""
    return sorted(
        range(len(directions)),
        key=cmp_to_key(lambda i, j: _compare_directions(directions[i], directions[j])),
    )


def signed_area(points: Sequence[Point]) -> Coord:
    total: Coord = 0
    for i, p in enumerate(points):
        q = points[(i + 1) % len(points)]
        total += cross(p, q)
    return total / 2


def winding_number(polygon: Sequence[Point], x: Point) -> int:
    """Winding number of a closed polyline around ``x`` (``x`` must not lie on it)."""
    w = 0
    for i, p in enumerate(polygon):
        q = polygon[(i + 1) % len(polygon)]
        if p.y <= x.y:
            if q.y > x.y and cross(q - p, x - p) > 0:
                w += 1
        elif q.y <= x.y and cross(q - p, x - p) < 0:
            w -= 1
    return w


def polar(angle_deg: float, length: float = 1.0) -> Point:
    rad = math.radians(angle_deg)
    return Point(length * math.cos(rad), length * math.sin(rad))


def heading(a: Point, b: Point) -> float:
    """Direction of a->b in degrees."""
    return math.degrees(math.atan2(float(b.y - a.y), float(b.x - a.x)))


def interior_angle(prev: Point, at: Point, nxt: Point) -> float:
    """Angle at ``at`` swept counter-clockwise from ``at->nxt`` to ``at->prev``, in degrees."""
    a = heading(at, prev) - heading(at, nxt)
    return a % 360.0
