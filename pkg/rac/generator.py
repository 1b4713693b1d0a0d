"""Nested dodecahedral family with 5n - 10 edges and one bend per chord.

Each level is a dodecahedral ring: an outer pentagon ``O``, five ``P`` vertices, five ``Q``
vertices and an inner pentagon which is the outer pentagon of the next level, scaled and
turned by 36 degrees. Every pentagonal face then gets its five diagonals as one-bend
chords whose endpoint angles make all chord crossings right angles.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from rac.drawing import Drawing, Edge, ValidationReport, Vertex, density_check, partition_edges, validate
from rac.errors import DegenerateScale, PreconditionViolated, RayMiss
from rac.geom import Point, cross, heading, interior_angle, polar

logger = logging.getLogger(__name__)

OUTER = "outer"
INNERMOST = "innermost"
NEAR_OUTER = "near-outer"
NEAR_INNERMOST = "near-innermost"


@dataclass(frozen=True)
class FaceShapeSpec:
    """Boundary angles (degrees) of a face labelled C1, C2, B2, A, B1 counter-clockwise.

    ``alpha`` sits at A, ``beta`` at both B vertices and ``gamma`` at both C vertices.
    ``side_ratio`` is |B C| over |A B| for the near faces.
    """

    role: str
    alpha: float
    beta: float
    gamma: float
    side_ratio: float = 1.0

    def angles(self) -> Tuple[float, ...]:
        return (self.gamma, self.gamma, self.beta, self.alpha, self.beta)


@dataclass(frozen=True)
class ChordSpec:
    """Chord angles (degrees) measured from the face sides towards the interior."""

    alpha1: float = 45.0
    beta1: float = 45.0
    beta2: float = 45.0
    gamma1: float = 45.0
    gamma2: float = 45.0

    def towards_next(self) -> Tuple[float, ...]:
        return (self.gamma1, self.gamma2, self.beta2, self.alpha1, self.beta1)

    def towards_prev(self) -> Tuple[float, ...]:
        return (self.gamma2, self.gamma1, self.beta1, self.alpha1, self.beta2)


REGULAR_SHAPE = FaceShapeSpec(OUTER, 108.0, 108.0, 108.0)
NEAR_OUTER_SHAPE = FaceShapeSpec(NEAR_OUTER, alpha=160.0, beta=136.0, gamma=54.0, side_ratio=8.5)
NEAR_INNERMOST_SHAPE = FaceShapeSpec(NEAR_INNERMOST, alpha=88.0, beta=100.0, gamma=126.0, side_ratio=1.5)

REGULAR_CHORDS = ChordSpec()
NEAR_OUTER_CHORDS = ChordSpec(alpha1=47.5, beta1=85.0, beta2=42.5, gamma1=45.0, gamma2=5.0)
NEAR_INNERMOST_CHORDS = ChordSpec(alpha1=40.0, beta1=30.0, beta2=50.0, gamma1=45.0, gamma2=60.0)

SHAPES: Dict[str, FaceShapeSpec] = {
    OUTER: REGULAR_SHAPE,
    INNERMOST: FaceShapeSpec(INNERMOST, 108.0, 108.0, 108.0),
    NEAR_OUTER: NEAR_OUTER_SHAPE,
    NEAR_INNERMOST: NEAR_INNERMOST_SHAPE,
}

CHORDS: Dict[str, ChordSpec] = {
    OUTER: REGULAR_CHORDS,
    INNERMOST: REGULAR_CHORDS,
    NEAR_OUTER: NEAR_OUTER_CHORDS,
    NEAR_INNERMOST: NEAR_INNERMOST_CHORDS,
}


@dataclass(frozen=True)
class GeneratorParams:
    levels: int = 1
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise PreconditionViolated(f"levels must be >= 1, got {self.levels}")
        if not self.scale > 0:
            raise PreconditionViolated(f"scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class FrameFace:
    role: str
    vertices: Tuple[str, ...]


@dataclass(frozen=True)
class Frame:
    """Crossing-free skeleton plus its pentagonal faces in face-on-the-left order."""

    drawing: Drawing
    faces: Tuple[FrameFace, ...]
    ring_scale: float
    levels: int


def _near_side_lengths(outer_side: float) -> Tuple[float, float, float]:
    """Side lengths (P-Q, O-P, inner ring) of one level from the face angles."""
    no, ni = NEAR_OUTER_SHAPE, NEAR_INNERMOST_SHAPE
    # projection onto the outer side: b cos(gamma) + c cos(gamma + beta + 180) = side / 2
    c = (outer_side / 2) / (
        no.side_ratio * math.cos(math.radians(no.gamma)) + math.cos(math.radians(no.gamma + no.beta + 180))
    )
    b = no.side_ratio * c
    # same projection in the near-innermost face, solved for its C1 C2 side
    inner = c * math.cos(math.radians(ni.gamma + ni.beta + 180)) / (
        0.5 - ni.side_ratio * math.cos(math.radians(ni.gamma))
    )
    return c, b, inner


def _level_points(outer_side: float) -> Tuple[List[Point], List[Point], List[Point], float]:
    radius = outer_side / (2 * math.sin(math.radians(36)))
    c, b, inner = _near_side_lengths(outer_side)
    gamma, beta = NEAR_OUTER_SHAPE.gamma, NEAR_OUTER_SHAPE.beta
    o = [polar(90 + 72 * j, radius) for j in range(5)]
    p, q = [], []
    for j in range(5):
        h0 = heading(o[j], o[(j + 1) % 5])
        p.append(o[j] + polar(h0 + gamma, b))
        b2 = o[(j + 1) % 5] + polar(h0 + 180 - gamma, b)
        q.append(b2 + polar(h0 + 360 - gamma - beta, c))
    return o, p, q, inner / outer_side


def _transform(pt: Point, scale: float, turn: float) -> Point:
    r = math.hypot(pt.x, pt.y)
    return polar(math.degrees(math.atan2(pt.y, pt.x)) + turn, r * scale)


def dodecahedral_frame(levels: int, scale: float = 1.0) -> Frame:
    """Nested straight-line dodecahedral skeleton with ``15 * levels + 5`` vertices."""
    params = GeneratorParams(levels=levels, scale=scale)
    o, p, q, ratio = _level_points(params.scale)
    if not 0 < ratio < 1:
        raise DegenerateScale(f"nesting scale {ratio} outside (0, 1)")

    inner_side = params.scale * ratio * (2 * math.sin(math.radians(36)))
    radius = params.scale / (2 * math.sin(math.radians(36)))
    b_in = NEAR_INNERMOST_SHAPE.side_ratio * ratio * params.scale
    i0 = q[0].scaled(1 - b_in / math.hypot(q[0].x, q[0].y))
    if abs(math.hypot(i0.x, i0.y) - ratio * radius) > 1e-9 * radius:
        raise DegenerateScale(f"inner ring of side {inner_side} does not close onto the next level")

    vertices: List[Vertex] = []
    edges: List[Edge] = []
    faces: List[FrameFace] = []

    def ring(level: int, j: int) -> str:
        return f"O{level}.{j % 5}"

    def add_edge(u: str, v: str) -> None:
        edges.append(Edge(f"f{len(edges)}", u, v))

    for level in range(levels + 1):
        factor, turn = ratio ** level, 36.0 * level
        for j in range(5):
            vertices.append(Vertex(ring(level, j), _transform(o[j], factor, turn)))
        if level == levels:
            break
        for j in range(5):
            vertices.append(Vertex(f"P{level}.{j}", _transform(p[j], factor, turn)))
            vertices.append(Vertex(f"Q{level}.{j}", _transform(q[j], factor, turn)))

    for level in range(levels + 1):
        for j in range(5):
            add_edge(ring(level, j), ring(level, j + 1))
        if level == levels:
            break
        for j in range(5):
            pj, qj = f"P{level}.{j}", f"Q{level}.{j}"
            add_edge(ring(level, j), pj)
            add_edge(pj, qj)
            add_edge(qj, f"P{level}.{(j + 1) % 5}")
            add_edge(qj, ring(level + 1, j))

    faces.append(FrameFace(OUTER, tuple(ring(0, -j) for j in range(5))))
    for level in range(levels):
        for j in range(5):
            faces.append(FrameFace(NEAR_OUTER, (
                ring(level, j), ring(level, j + 1), f"P{level}.{(j + 1) % 5}", f"Q{level}.{j}", f"P{level}.{j}",
            )))
        for j in range(5):
            faces.append(FrameFace(NEAR_INNERMOST, (
                ring(level + 1, j), ring(level + 1, j - 1), f"Q{level}.{(j - 1) % 5}", f"P{level}.{j}", f"Q{level}.{j}",
            )))
    faces.append(FrameFace(INNERMOST, tuple(ring(levels, j) for j in range(5))))

    drawing = Drawing(vertices=tuple(vertices), edges=tuple(edges), bend_limit=1)
    logger.info(f"Built frame: levels={levels}, n={drawing.n}, edges={drawing.m}, faces={len(faces)}")
    return Frame(drawing=drawing, faces=tuple(faces), ring_scale=ratio, levels=levels)


def _ray_meet(a: Point, angle_a: float, b: Point, angle_b: float) -> Point:
    u, w = polar(angle_a), polar(angle_b)
    denom = cross(u, w)
    if abs(denom) < 1e-15:
        raise RayMiss(f"parallel chord rays from {a} and {b}")
    t = cross(b - a, w) / denom
    s = cross(b - a, u) / denom
    if t <= 0 or s <= 0:
        raise RayMiss(f"chord rays from {a} and {b} meet behind an endpoint")
    return a + u.scaled(t)


def face_chords(points: List[Point], spec: ChordSpec) -> List[Tuple[int, int, Point]]:
    """The five chords (j, j + 2) of a pentagon with their bends."""
    nxt, prv = spec.towards_next(), spec.towards_prev()
    chords = []
    for j in range(5):
        k, mid = (j + 2) % 5, (j + 1) % 5
        bend = _ray_meet(
            points[j], heading(points[j], points[mid]) + nxt[j],
            points[k], heading(points[k], points[mid]) - prv[k],
        )
        chords.append((j, k, bend))
    return chords


def add_chords(frame: Frame) -> Drawing:
    """Complete every pentagonal face to K5 with one-bend chords."""
    d = frame.drawing
    chords: List[Edge] = []
    for face in frame.faces:
        pts = [d.point(v) for v in face.vertices]
        for j, k, bend in face_chords(pts, CHORDS[face.role]):
            chords.append(Edge(f"c{len(chords)}", face.vertices[j], face.vertices[k], (bend,)))
    return d.with_edges(d.edges + tuple(chords))


def generate(levels: int, scale: float = 1.0) -> Drawing:
    return add_chords(dodecahedral_frame(levels, scale))


@dataclass(frozen=True)
class FaceAngles:
    face: FrameFace
    measured: Tuple[float, ...]
    expected: Tuple[float, ...]

    @property
    def deviation(self) -> float:
        return max(abs(a - b) for a, b in zip(self.measured, self.expected))


def face_angles(frame: Frame) -> List[FaceAngles]:
    """Interior angles of every frame face, measured back from the coordinates."""
    out = []
    for face in frame.faces:
        pts = [frame.drawing.point(v) for v in face.vertices]
        if face.role == OUTER:
            pts = pts[::-1]
        measured = tuple(interior_angle(pts[j - 1], pts[j], pts[(j + 1) % 5]) for j in range(5))
        out.append(FaceAngles(face, measured, SHAPES[face.role].angles()))
    return out


@dataclass(frozen=True)
class FamilyReport:
    levels: int
    n: int
    m: int
    matches_5n_minus_10: bool
    crossings: int
    max_angle_deviation: float
    max_face_angle_deviation: float
    is_rac: bool
    e0: int
    e1: int
    density_slack: Optional[float] = None


def family_report(
    levels: int,
    scale: float = 1.0,
    frame: Optional[Frame] = None,
    drawing: Optional[Drawing] = None,
    report: Optional[ValidationReport] = None,
) -> FamilyReport:
    """Counts and angle audit of the family; pass an already built ``frame``, ``drawing`` or ``report`` to reuse it."""
    frame = frame if frame is not None else dodecahedral_frame(levels, scale)
    d = drawing if drawing is not None else add_chords(frame)
    report = report if report is not None else validate(d)
    deviation = max((abs(math.pi / 2 - c.angle) for c in report.crossings), default=0.0)
    e0 = e1 = 0
    if report.is_rac:
        part = partition_edges(d, report)
        e0, e1 = len(part.e0), len(part.e1)
    verdict = density_check(d)
    result = FamilyReport(
        levels=levels,
        n=d.n,
        m=d.m,
        matches_5n_minus_10=d.m == 5 * d.n - 10,
        crossings=len(report.crossings),
        max_angle_deviation=deviation,
        max_face_angle_deviation=max(f.deviation for f in face_angles(frame)),
        is_rac=report.is_rac,
        e0=e0,
        e1=e1,
        density_slack=float(verdict.slack),
    )
    logger.info(f"Family report: levels={levels}, n={result.n}, m={result.m}, rac={result.is_rac}")
    return result
