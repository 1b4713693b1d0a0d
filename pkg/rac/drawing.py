"""Drawing data model and RAC1 validation."""

from __future__ import annotations

import enum
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Iterable, Iterator, NamedTuple, Optional

import networkx as nx
from networkx.utils import UnionFind

from rac.errors import DrawingFormatError, InvalidDrawing, PreconditionViolated
from rac.geom import (
    COLLINEAR_EPSILON,
    DEFAULT_EPSILON,
    Coord,
    IntersectionKind,
    Point,
    Segment,
    crossing_angle,
    intersect,
    is_right_angle,
    on_segment,
    orientation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vertex:
    id: str
    point: Point


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    bends: tuple[Point, ...] = ()
    auxiliary: bool = False

    @property
    def is_self_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Drawing:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    bend_limit: int = 1
    allow_self_loops: bool = False
    _points: dict = field(init=False, repr=False, compare=False)
    _edges: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        points: dict[str, Point] = {}
        seen_points: set[Point] = set()
        for v in self.vertices:
            if v.id in points:
                raise DrawingFormatError(f"duplicate vertex id {v.id!r}")
            if v.point in seen_points:
                raise DrawingFormatError(f"vertex {v.id!r} repeats point {v.point}")
            points[v.id] = v.point
            seen_points.add(v.point)
        edge_ids: set[str] = set()
        for e in self.edges:
            if e.id in edge_ids:
                raise DrawingFormatError(f"duplicate edge id {e.id!r}")
            edge_ids.add(e.id)
            if e.source not in points or e.target not in points:
                raise DrawingFormatError(f"edge {e.id!r} references an unknown vertex")
            if e.is_self_loop and not self.allow_self_loops:
                raise DrawingFormatError(f"edge {e.id!r} is a self-loop")
            for bend in e.bends:
                if bend in seen_points:
                    raise DrawingFormatError(f"bend of edge {e.id!r} sits on a vertex")
            line = [points[e.source], *e.bends, points[e.target]]
            if any(p == q for p, q in zip(line, line[1:])):
                raise DrawingFormatError(f"edge {e.id!r} has repeated consecutive points")
        object.__setattr__(self, "_points", points)
        object.__setattr__(self, "_edges", {e.id: e for e in self.edges})

    def point(self, vertex_id: str) -> Point:
        return self._points[vertex_id]

    def polyline(self, edge: Edge) -> list[Point]:
        return [self._points[edge.source], *edge.bends, self._points[edge.target]]

    def segments(self, edge: Edge) -> list[Segment]:
        line = self.polyline(edge)
        return [Segment(p, q) for p, q in zip(line, line[1:])]

    def edge(self, edge_id: str) -> Edge:
        return self._edges[edge_id]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        """Edge count without auxiliary edges."""
        return sum(1 for e in self.edges if not e.auxiliary)

    def with_edges(self, edges: Iterable[Edge], allow_self_loops: Optional[bool] = None) -> "Drawing":
        return Drawing(
            vertices=self.vertices,
            edges=tuple(edges),
            bend_limit=self.bend_limit,
            allow_self_loops=self.allow_self_loops if allow_self_loops is None else allow_self_loops,
        )

    def without_edges(self, edge_ids: Iterable[str]) -> "Drawing":
        drop = set(edge_ids)
        return self.with_edges(e for e in self.edges if e.id not in drop)

    def to_graph(self, include_auxiliary: bool = True) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(v.id for v in self.vertices)
        for e in self.edges:
            if include_auxiliary or not e.auxiliary:
                g.add_edge(e.source, e.target, key=e.id)
        return g


class ViolationKind(str, enum.Enum):
    NON_RIGHT_ANGLE = "non-right-angle"
    TOO_MANY_BENDS = "too-many-bends"
    OVERLAP = "overlap"
    EDGE_THROUGH_VERTEX = "edge-through-vertex"
    TRIPLE_POINT = "triple-point"


class Violation(NamedTuple):
    kind: ViolationKind
    edges: tuple[str, ...]
    details: str


class Crossing(NamedTuple):
    edge_a: str
    piece_a: int
    edge_b: str
    piece_b: int
    point: Point
    angle: float


@dataclass(frozen=True)
class ValidationReport:
    crossings: tuple[Crossing, ...]
    violations: tuple[Violation, ...]

    @property
    def is_rac(self) -> bool:
        return not self.violations

    def violation_kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}


def _pieces(d: Drawing) -> Iterator[tuple[Edge, int, Segment]]:
    for e in d.edges:
        for k, seg in enumerate(d.segments(e)):
            yield e, k, seg


Box = tuple[float, float, float, float]


def _box(seg: Segment) -> Box:
    xs = (float(seg.p.x), float(seg.q.x))
    ys = (float(seg.p.y), float(seg.q.y))
    return min(xs), max(xs), min(ys), max(ys)


def _candidate_pairs(boxes: list[Box], slack: float) -> Iterator[tuple[int, int]]:
    """Index pairs ``i < j`` whose boxes meet, by a sweep over the x-extents."""
    order = sorted(range(len(boxes)), key=lambda i: boxes[i][0])
    for pos, i in enumerate(order):
        _, x_hi, y_lo, y_hi = boxes[i]
        for j in order[pos + 1:]:
            other = boxes[j]
            if other[0] > x_hi + slack:
                break
            if other[2] > y_hi + slack or other[3] < y_lo - slack:
                continue
            yield (i, j) if i < j else (j, i)


def _coincident_groups(crossings: list[Crossing], eps: float) -> list[list[Crossing]]:
    """Crossings sharing a point: exact points by equality, floating ones within a relative ``eps``."""
    exact: dict[Point, list[int]] = defaultdict(list)
    floating: list[int] = []
    for i, c in enumerate(crossings):
        if c.point.exact:
            exact[c.point].append(i)
        else:
            floating.append(i)

    groups = UnionFind(range(len(crossings)))
    for members in exact.values():
        groups.union(*members)

    def close(a: Coord, b: Coord) -> bool:
        return math.isclose(float(a), float(b), rel_tol=eps, abs_tol=eps)

    floating.sort(key=lambda i: float(crossings[i].point.x))
    for pos, i in enumerate(floating):
        p = crossings[i].point
        for j in floating[pos + 1:]:
            q = crossings[j].point
            if not close(p.x, q.x):
                break
            if close(p.y, q.y):
                groups.union(i, j)
    return [[crossings[i] for i in sorted(members)] for members in groups.to_sets()]


def _legal_contact(d: Drawing, e1: Edge, k1: int, s1: Segment, e2: Edge, k2: int, s2: Segment, at: Point) -> bool:
    """Whether an endpoint contact between two pieces is just polyline continuity or a shared vertex."""
    if e1.id == e2.id:
        line_len = len(e1.bends) + 1
        if abs(k1 - k2) == 1:
            shared = s1.q if k1 < k2 else s1.p
            return at == shared
        if e1.is_self_loop and {k1, k2} == {0, line_len - 1}:
            return at == d.point(e1.source)
        return False
    ends1 = {d.point(e1.source), d.point(e1.target)}
    ends2 = {d.point(e2.source), d.point(e2.target)}
    return at in ends1 and at in ends2 and at in (s1.p, s1.q) and at in (s2.p, s2.q)


def validate(
    d: Drawing,
    eps: float = DEFAULT_EPSILON,
    collinear_eps: float = COLLINEAR_EPSILON,
    only_edges: Optional[Collection[str]] = None,
) -> ValidationReport:
    """Check every RAC1 condition of ``d`` by piece-pair tests over a bounding-box sweep.

    With ``only_edges`` just the pairs touching those edges are tested, which is enough when
    the rest of the drawing is already known to be RAC1.
    """
    focus = None if only_edges is None else set(only_edges)
    pieces = list(_pieces(d))
    boxes = [_box(seg) for _, _, seg in pieces]
    extent = max((abs(c) for b in boxes for c in b), default=0.0)
    slack = collinear_eps * (1.0 + 2.0 * extent)
    crossings: list[Crossing] = []
    violations: list[Violation] = []

    for e in d.edges:
        if not e.auxiliary and len(e.bends) > d.bend_limit:
            violations.append(
                Violation(ViolationKind.TOO_MANY_BENDS, (e.id,), f"{len(e.bends)} bends > {d.bend_limit}")
            )

    for i, j in _candidate_pairs(boxes, slack):
        (e1, k1, s1), (e2, k2, s2) = pieces[i], pieces[j]
        if focus is not None and e1.id not in focus and e2.id not in focus:
            continue
        hit = intersect(s1, s2, collinear_eps)
        if hit is None:
            continue
        pair = tuple(sorted((e1.id, e2.id)))
        if hit.kind is IntersectionKind.OVERLAP:
            violations.append(Violation(ViolationKind.OVERLAP, pair, f"collinear overlap at {hit.point}"))
        elif hit.kind is IntersectionKind.ENDPOINT:
            if not _legal_contact(d, e1, k1, s1, e2, k2, s2, hit.point):
                violations.append(Violation(ViolationKind.EDGE_THROUGH_VERTEX, pair, f"contact at {hit.point}"))
        else:
            angle = crossing_angle(s1, s2, collinear_eps)
            if (e1.id, k1) <= (e2.id, k2):
                crossing = Crossing(e1.id, k1, e2.id, k2, hit.point, angle)
            else:
                crossing = Crossing(e2.id, k2, e1.id, k1, hit.point, angle)
            crossings.append(crossing)
            if not is_right_angle(s1, s2, eps):
                violations.append(
                    Violation(ViolationKind.NON_RIGHT_ANGLE, pair, f"angle {angle:.12g} rad at {hit.point}")
                )

    for v in d.vertices:
        vx, vy = float(v.point.x), float(v.point.y)
        for (e, _, seg), (x_lo, x_hi, y_lo, y_hi) in zip(pieces, boxes):
            if focus is not None and e.id not in focus:
                continue
            if not (x_lo - slack <= vx <= x_hi + slack and y_lo - slack <= vy <= y_hi + slack):
                continue
            if v.point in (seg.p, seg.q):
                continue
            if orientation(seg.p, seg.q, v.point, collinear_eps) == 0 and on_segment(seg.p, seg.q, v.point, collinear_eps):
                violations.append(
                    Violation(ViolationKind.EDGE_THROUGH_VERTEX, (e.id,), f"passes through vertex {v.id}")
                )

    for group in _coincident_groups(crossings, eps):
        if len(group) > 1:
            involved = tuple(sorted({c.edge_a for c in group} | {c.edge_b for c in group}))
            violations.append(Violation(ViolationKind.TRIPLE_POINT, involved, f"{len(group)} crossings at {group[0].point}"))

    crossings.sort(key=lambda c: (c.edge_a, c.piece_a, c.edge_b, c.piece_b))
    violations = sorted(set(violations), key=lambda v: (v.kind.value, v.edges, v.details))
    report = ValidationReport(tuple(crossings), tuple(violations))
    logger.info(f"Validated drawing: n={d.n}, edges={len(d.edges)}, crossings={len(crossings)}, violations={len(violations)}")
    return report


@dataclass(frozen=True)
class EdgePartition:
    e0: frozenset[str]
    e1: frozenset[str]
    planar_ok: bool = True


def partition_edges(d: Drawing, r: ValidationReport) -> EdgePartition:
    """Split edges into crossing-free ``e0`` and crossed ``e1``."""
    if not r.is_rac:
        raise InvalidDrawing(f"drawing is not RAC1: {len(r.violations)} violations")
    crossed = {c.edge_a for c in r.crossings} | {c.edge_b for c in r.crossings}
    e1 = frozenset(e.id for e in d.edges if e.id in crossed)
    e0 = frozenset(e.id for e in d.edges if e.id not in crossed)

    simple = nx.Graph()
    multi = False
    for e in d.edges:
        if e.id in e0:
            if e.is_self_loop or simple.has_edge(e.source, e.target):
                multi = True
            simple.add_edge(e.source, e.target)
    planar_ok = multi or d.n < 3 or len(e0) <= 3 * d.n - 6
    return EdgePartition(e0=e0, e1=e1, planar_ok=planar_ok)


@dataclass(frozen=True)
class BoundVerdict:
    n: int
    m: int
    bound: Fraction
    satisfied: bool

    @property
    def slack(self) -> Fraction:
        return self.bound - self.m


def density_bound(n: int) -> Fraction:
    return Fraction(11, 2) * n - 11


def density_check(d: Drawing) -> BoundVerdict:
    """Compare the non-auxiliary edge count against 5.5n - 11."""
    if d.n < 5:
        raise PreconditionViolated(f"density bound needs n >= 5, got n={d.n}")
    if not nx.is_connected(d.to_graph()):
        raise PreconditionViolated("density bound needs a connected drawing")
    bound = density_bound(d.n)
    verdict = BoundVerdict(n=d.n, m=d.m, bound=bound, satisfied=d.m <= bound)
    logger.info(f"Density check: n={verdict.n}, m={verdict.m}, bound={float(bound)}, satisfied={verdict.satisfied}")
    return verdict


def self_loop_split_bound(n1: int, n2: int) -> tuple[Fraction, Fraction, bool]:
    """Bound for a drawing split at a cut-vertex carrying a self-loop.

    The two sides have ``n1`` and ``n2`` vertices sharing the cut-vertex, so the whole
    drawing has ``n1 + n2 - 1`` vertices. Returns (split bound, global bound, split <= global).
    """
    split = density_bound(n1) + density_bound(n2) + 1
    whole = density_bound(n1 + n2 - 1)
    return split, whole, split <= whole
