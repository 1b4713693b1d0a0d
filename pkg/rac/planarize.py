"""Planarizations, facial walks, face statistics and good-face augmentation.

A planarization replaces every crossing point by a dummy node. Its arcs keep the polyline
geometry (bends included) only to derive the rotation system; everything after that is
combinatorial. Darts are ``2 * arc + direction`` with direction 0 running tail -> head, so
``dart ^ 1`` is the twin. Faces lie to the left of their darts.
"""

from __future__ import annotations

import enum
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, NamedTuple, Optional, Sequence

import networkx as nx
from networkx.utils import UnionFind

from rac.drawing import Drawing, Edge, ValidationReport, ViolationKind, validate
from rac.errors import (
    DrawingFormatError,
    InvalidDrawing,
    NonTerminating,
    OverlappingSegments,
    PreconditionViolated,
    TriplePoint,
)
from rac.geom import Point, dot, norm, signed_area, sort_ccw, winding_number

logger = logging.getLogger(__name__)

_TURN_EPSILON = 1e-12
_ROUTE_ATTEMPTS = 40


class Scope(str, enum.Enum):
    ALL = "all-edges"
    CROSSED = "crossed-only"
    UNCROSSED = "uncrossed-only"


class NodeKind(str, enum.Enum):
    REAL = "real"
    DUMMY = "dummy"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    point: Point
    order: int = 0


@dataclass(frozen=True)
class Arc:
    id: int
    tail: str
    head: str
    edge: str
    piece: int
    points: tuple[Point, ...]


Walk = tuple[int, ...]


@dataclass(frozen=True)
class Face:
    walks: tuple[Walk, ...]
    isolated_nodes: tuple[str, ...] = ()
    is_outer: bool = False


@dataclass
class Planarization:
    nodes: dict[str, Node]
    arcs: list[Arc]
    rotation: dict[str, list[int]]
    faces: list[Face] = field(default_factory=list)
    crossed_edges: frozenset[str] = frozenset()
    auxiliary_edges: frozenset[str] = frozenset()
    parent_faces: Optional[list[frozenset[int]]] = None
    active: Optional[frozenset[int]] = None

    def active_arcs(self) -> list[Arc]:
        if self.active is None:
            return list(self.arcs)
        return [a for a in self.arcs if a.id in self.active]

    def origin(self, dart: int) -> str:
        arc = self.arcs[dart >> 1]
        return arc.tail if dart & 1 == 0 else arc.head

    def head(self, dart: int) -> str:
        return self.origin(dart ^ 1)

    def edge_of(self, dart: int) -> str:
        return self.arcs[dart >> 1].edge

    def dart_points(self, dart: int) -> tuple[Point, ...]:
        pts = self.arcs[dart >> 1].points
        return pts if dart & 1 == 0 else tuple(reversed(pts))

    def is_crossing_free(self, dart: int) -> bool:
        return self.edge_of(dart) not in self.crossed_edges

    def next_dart(self, dart: int) -> int:
        """Successor of ``dart`` along the face on its left."""
        h = self.head(dart)
        rot = self.rotation[h]
        twin = dart ^ 1
        return rot[(rot.index(twin) - 1) % len(rot)]

    def darts(self) -> Iterable[int]:
        for arc in self.active_arcs():
            yield 2 * arc.id
            yield 2 * arc.id + 1

    def trace_walks(self) -> list[Walk]:
        seen: set[int] = set()
        walks: list[Walk] = []
        for start in self.darts():
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = self.next_dart(d)
            walks.append(tuple(walk))
        return walks

    def degree(self, node_id: str) -> int:
        return len(self.rotation.get(node_id, ()))

    def dart_faces(self) -> dict[int, int]:
        owner: dict[int, int] = {}
        for idx, f in enumerate(self.faces):
            for w in f.walks:
                for d in w:
                    owner[d] = idx
        return owner

    def outer_face(self) -> int:
        for idx, f in enumerate(self.faces):
            if f.is_outer:
                return idx
        raise PreconditionViolated("planarization has no outer face")

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for arc in self.active_arcs():
            g.add_edge(arc.tail, arc.head, key=arc.id)
        return g

    def component_count(self) -> int:
        return nx.number_connected_components(self.graph()) if self.nodes else 0

    def euler_ok(self) -> bool:
        return len(self.nodes) - len(self.active_arcs()) + len(self.faces) == 1 + self.component_count()

    def dummy_nodes(self) -> list[Node]:
        return sorted((n for n in self.nodes.values() if n.kind is NodeKind.DUMMY), key=lambda n: n.order)

    def arcs_of_edge(self, edge_id: str) -> list[Arc]:
        return [a for a in self.active_arcs() if a.edge == edge_id]


def _build_rotation(nodes: dict[str, Node], arcs: Sequence[Arc]) -> dict[str, list[int]]:
    leaving: dict[str, list[tuple[int, Point]]] = defaultdict(list)
    for arc in arcs:
        leaving[arc.tail].append((2 * arc.id, arc.points[1] - arc.points[0]))
        leaving[arc.head].append((2 * arc.id + 1, arc.points[-2] - arc.points[-1]))
    rotation: dict[str, list[int]] = {}
    for node_id in nodes:
        entries = leaving.get(node_id, [])
        order = sort_ccw([direction for _, direction in entries])
        rotation[node_id] = [entries[i][0] for i in order]
    return rotation


def _walk_polygon(p: Planarization, walk: Walk) -> list[Point]:
    pts: list[Point] = []
    for d in walk:
        pts.extend(p.dart_points(d)[:-1])
    return pts


def _components(p: Planarization) -> dict[str, int]:
    comp: dict[str, int] = {}
    for idx, members in enumerate(nx.connected_components(p.graph())):
        for node_id in members:
            comp[node_id] = idx
    return comp


def _assign_faces(p: Planarization) -> list[Face]:
    """Group walks into faces: bounded walks own a face, outer walks become holes."""
    walks = p.trace_walks()
    comp = _components(p)
    areas = [signed_area(_walk_polygon(p, w)) for w in walks]

    outer_walk_of: dict[int, int] = {}
    for idx, w in enumerate(walks):
        c = comp[p.origin(w[0])]
        if c not in outer_walk_of or areas[idx] < areas[outer_walk_of[c]]:
            outer_walk_of[c] = idx
    outer_walks = set(outer_walk_of.values())
    bounded = [idx for idx in range(len(walks)) if idx not in outer_walks]
    polygons = {idx: _walk_polygon(p, walks[idx]) for idx in bounded}

    def container(node_id: str) -> Optional[int]:
        pt = p.nodes[node_id].point
        best: Optional[int] = None
        for idx in bounded:
            if comp[p.origin(walks[idx][0])] == comp[node_id]:
                continue
            if winding_number(polygons[idx], pt) != 0:
                if best is None or areas[idx] < areas[best]:
                    best = idx
        return best

    holes: dict[Optional[int], list[int]] = defaultdict(list)
    isolated: dict[Optional[int], list[str]] = defaultdict(list)
    for c, idx in sorted(outer_walk_of.items()):
        holes[container(p.origin(walks[idx][0]))].append(idx)
    for node_id in p.nodes:
        if p.degree(node_id) == 0:
            isolated[container(node_id)].append(node_id)

    faces = [
        Face(
            walks=tuple(walks[idx] for idx in holes[None]),
            isolated_nodes=tuple(isolated[None]),
            is_outer=True,
        )
    ]
    for idx in bounded:
        faces.append(
            Face(
                walks=(walks[idx], *(walks[h] for h in holes[idx])),
                isolated_nodes=tuple(isolated[idx]),
            )
        )
    return faces


def _check_report(report: ValidationReport) -> None:
    kinds = report.violation_kinds()
    if ViolationKind.TRIPLE_POINT in kinds:
        raise TriplePoint("three edge interiors meet in one point")
    if ViolationKind.OVERLAP in kinds:
        raise OverlappingSegments("drawing contains overlapping segments")
    if ViolationKind.EDGE_THROUGH_VERTEX in kinds:
        raise InvalidDrawing("an edge passes through a vertex or bend")


def _piece_param(start: Point, end: Point, at: Point):
    direction = end - start
    t = dot(at - start, direction)
    if isinstance(t, float):
        return t / (norm(direction) ** 2)
    return Fraction(t) / Fraction(dot(direction, direction))


def planarize(d: Drawing, scope: Scope = Scope.ALL, report: Optional[ValidationReport] = None) -> Planarization:
    """Planarization of ``d`` restricted to ``scope``.

    ``crossed-only`` keeps the crossed edges and their endpoints; ``uncrossed-only`` keeps
    every vertex and the crossing-free edges.
    """
    report = report if report is not None else validate(d)
    _check_report(report)
    crossed = frozenset({c.edge_a for c in report.crossings} | {c.edge_b for c in report.crossings})

    if scope is Scope.CROSSED:
        edges = [e for e in d.edges if e.id in crossed]
        keep_ids = {e.source for e in edges} | {e.target for e in edges}
        vertices = [v for v in d.vertices if v.id in keep_ids]
    elif scope is Scope.UNCROSSED:
        edges = [e for e in d.edges if e.id not in crossed]
        vertices = list(d.vertices)
    else:
        edges = list(d.edges)
        vertices = list(d.vertices)
    edge_ids = {e.id for e in edges}

    nodes: dict[str, Node] = {v.id: Node(v.id, NodeKind.REAL, v.point) for v in vertices}
    cuts: dict[tuple[str, int], list[tuple[object, str, Point]]] = defaultdict(list)
    for k, c in enumerate(x for x in report.crossings if x.edge_a in edge_ids and x.edge_b in edge_ids):
        dummy_id = f"x:{k}"
        if dummy_id in nodes:
            raise PreconditionViolated(f"vertex id {dummy_id!r} is reserved for crossing nodes")
        nodes[dummy_id] = Node(dummy_id, NodeKind.DUMMY, c.point, order=k)
        for edge_id, piece in ((c.edge_a, c.piece_a), (c.edge_b, c.piece_b)):
            edge = d.edge(edge_id)
            line = d.polyline(edge)
            cuts[(edge_id, piece)].append((_piece_param(line[piece], line[piece + 1], c.point), dummy_id, c.point))

    arcs: list[Arc] = []
    for edge in edges:
        line = d.polyline(edge)
        tail = edge.source
        points: list[Point] = [line[0]]
        piece_no = 0
        for k in range(len(line) - 1):
            for _, dummy_id, at in sorted(cuts.get((edge.id, k), []), key=lambda item: item[0]):
                points.append(at)
                arcs.append(Arc(len(arcs), tail, dummy_id, edge.id, piece_no, tuple(points)))
                piece_no += 1
                tail = dummy_id
                points = [at]
            points.append(line[k + 1])
        arcs.append(Arc(len(arcs), tail, edge.target, edge.id, piece_no, tuple(points)))

    p = Planarization(
        nodes=nodes,
        arcs=arcs,
        rotation=_build_rotation(nodes, arcs),
        crossed_edges=crossed & edge_ids,
        auxiliary_edges=frozenset(e.id for e in edges if e.auxiliary),
    )
    p.faces = _assign_faces(p)
    logger.info(
        f"Planarized ({scope.value}): nodes={len(p.nodes)}, dummies={len(p.dummy_nodes())}, "
        f"arcs={len(p.arcs)}, faces={len(p.faces)}"
    )
    return p


def restrict(
    p: Planarization,
    keep_arc: Callable[[Arc], bool],
    keep_node: Optional[Callable[[Node], bool]] = None,
) -> Planarization:
    """Sub-planarization on the kept arcs, derived combinatorially from ``p``.

    Each face of the result is the union of the faces of ``p`` glued across dropped arcs;
    ``parent_faces`` records which faces of ``p`` make it up. Nodes survive when they keep an
    arc or satisfy ``keep_node``.
    """
    keep_node = keep_node or (lambda n: n.kind is NodeKind.REAL)
    kept_arcs = {a.id for a in p.arcs if keep_arc(a)}
    owner = p.dart_faces()

    uf = UnionFind(range(len(p.faces)))
    for arc in p.arcs:
        if arc.id not in kept_arcs:
            uf.union(owner[2 * arc.id], owner[2 * arc.id + 1])

    rotation = {
        node_id: [d for d in rot if (d >> 1) in kept_arcs]
        for node_id, rot in p.rotation.items()
    }
    nodes = {
        node_id: node
        for node_id, node in p.nodes.items()
        if rotation[node_id] or keep_node(node)
    }
    rotation = {node_id: rotation[node_id] for node_id in nodes}

    sub = Planarization(
        nodes=nodes,
        arcs=p.arcs,
        rotation=rotation,
        crossed_edges=p.crossed_edges,
        auxiliary_edges=p.auxiliary_edges,
        active=frozenset(kept_arcs),
    )

    def sub_next(dart: int) -> int:
        rot = rotation[p.head(dart)]
        return rot[(rot.index(dart ^ 1) - 1) % len(rot)]

    classes: dict[int, dict] = {}

    def bucket(face_idx: int) -> dict:
        root = uf[face_idx]
        return classes.setdefault(root, {"walks": [], "isolated": []})

    seen: set[int] = set()
    for arc_id in sorted(kept_arcs):
        for start in (2 * arc_id, 2 * arc_id + 1):
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = sub_next(d)
            bucket(owner[start])["walks"].append(tuple(walk))

    isolated_in: dict[str, int] = {}
    for idx, f in enumerate(p.faces):
        for node_id in f.isolated_nodes:
            isolated_in[node_id] = idx
    for node_id in nodes:
        if rotation[node_id]:
            continue
        if node_id in isolated_in:
            bucket(isolated_in[node_id])["isolated"].append(node_id)
        else:
            bucket(owner[p.rotation[node_id][0]])["isolated"].append(node_id)

    outer_root = uf[p.outer_face()] if p.faces else None
    for idx in range(len(p.faces)):
        bucket(idx)

    members: dict[int, list[int]] = defaultdict(list)
    for idx in range(len(p.faces)):
        members[uf[idx]].append(idx)

    faces: list[Face] = []
    parents: list[frozenset[int]] = []
    for root in sorted(classes, key=lambda r: (r != outer_root, min(members[r]))):
        data = classes[root]
        faces.append(Face(tuple(data["walks"]), tuple(data["isolated"]), root == outer_root))
        parents.append(frozenset(members[root]))
    sub.faces = faces
    sub.parent_faces = parents
    return sub


def uncrossed_subplanarization(p: Planarization) -> Planarization:
    """The plane subgraph G0 of crossing-free edges, with every real vertex."""
    return restrict(p, lambda a: a.edge not in p.crossed_edges)


def crossed_subplanarization(p: Planarization) -> Planarization:
    """The crossed part G1' (dummy nodes included), as a restriction of ``p``."""
    return restrict(p, lambda a: a.edge in p.crossed_edges, keep_node=lambda n: False)


@dataclass(frozen=True)
class FaceStats:
    d: int
    l: int
    m: int
    i: int
    b: int
    good: Optional[bool] = None
    outer: bool = False

    def shape(self) -> tuple[int, int, int, int]:
        return (self.d, self.m, self.i, self.b)

    def identity_holds(self) -> bool:
        return self.l == self.d + self.m - self.i


def stats_from_walks(
    walks: Sequence[Sequence[int]],
    origin: Callable[[int], Hashable],
    isolated: Sequence[Hashable] = (),
    outer: bool = False,
) -> FaceStats:
    """Face statistics from facial walks given as darts (``dart ^ 1`` is the twin)."""
    occurrences: dict[Hashable, int] = defaultdict(int)
    length = 0
    block_graph = nx.Graph()
    loops: set[int] = set()
    for walk in walks:
        length += len(walk)
        for dart in walk:
            occurrences[origin(dart)] += 1
            tail, head = origin(dart), origin(dart ^ 1)
            if tail == head:
                loops.add(dart >> 1)
            else:
                block_graph.add_edge(tail, head)
    distinct = set(occurrences) | set(isolated)
    extra = sum(count - 1 for count in occurrences.values())
    blocks = sum(1 for _ in nx.biconnected_components(block_graph)) + len(loops)
    return FaceStats(d=len(distinct), l=length, m=extra, i=len(isolated), b=blocks, outer=outer)


def face_stats(p: Planarization, f: Face) -> FaceStats:
    """Degree, length, extra occurrences, isolated vertices and blocks of one face."""
    return stats_from_walks(f.walks, p.origin, f.isolated_nodes, f.is_outer)


def is_triangle(f: Face) -> bool:
    return len(f.walks) == 1 and len(f.walks[0]) == 3 and not f.isolated_nodes


class CatalogueEntry(NamedTuple):
    label: str
    t: int
    shape: tuple[int, int, int, int]


_CATALOGUE = (
    CatalogueEntry("a", 1, (4, 0, 0, 1)),
    CatalogueEntry("b", 1, (3, 1, 0, 2)),
    CatalogueEntry("c", 2, (5, 0, 0, 1)),
    CatalogueEntry("d", 2, (4, 1, 0, 2)),
    CatalogueEntry("e", 2, (3, 0, 1, 1)),
    CatalogueEntry("f", 3, (6, 0, 0, 1)),
    CatalogueEntry("g", 3, (5, 1, 0, 2)),
    CatalogueEntry("h", 3, (4, 0, 1, 1)),
    CatalogueEntry("i", 3, (4, 2, 0, 3)),
    CatalogueEntry("j", 3, (4, 2, 0, 3)),
    CatalogueEntry("k", 3, (4, 2, 0, 3)),
)


def small_face_catalogue() -> list[CatalogueEntry]:
    """Faces reachable by removing one, two or three edges from a triangulation."""
    return list(_CATALOGUE)


@dataclass(frozen=True)
class FaceGoodness:
    face: int
    edges: dict[str, bool]
    good: bool
    triangle: bool
    outer: bool
    stats: FaceStats


@dataclass(frozen=True)
class GoodnessReport:
    g0: Planarization
    faces: tuple[FaceGoodness, ...]

    @property
    def all_good(self) -> bool:
        return all(f.good for f in self.faces)

    def bad_edges(self) -> set[str]:
        return {e for f in self.faces for e, ok in f.edges.items() if not ok}


def good_edges(d: Drawing, p_all: Planarization) -> GoodnessReport:
    """Per crossing-free face, which of its edges are good and whether the face is good.

    An edge ``e`` of a G0-face ``f`` is not good when some face of ``p_all`` inside ``f``
    touches ``e`` and another crossing-free edge. The outer face counts the unbounded
    region as its inside.
    """
    missing = {e.id for e in d.edges} - {a.edge for a in p_all.active_arcs()}
    if missing:
        raise PreconditionViolated(f"planarization lacks edges {sorted(missing)}")
    if p_all.parent_faces is not None:
        raise PreconditionViolated("good_edges needs the full planarization, not a restriction")

    g0 = uncrossed_subplanarization(p_all)
    touched: list[set[str]] = []
    for g in p_all.faces:
        touched.append({p_all.edge_of(dart) for w in g.walks for dart in w if p_all.is_crossing_free(dart)})

    results = []
    for idx, f in enumerate(g0.faces):
        boundary = sorted({g0.edge_of(dart) for w in f.walks for dart in w})
        flags: dict[str, bool] = {}
        for e in boundary:
            flags[e] = not any(e in touched[g] and len(touched[g]) > 1 for g in g0.parent_faces[idx])
        triangle = is_triangle(f)
        good = triangle or all(flags.values())
        stats = face_stats(g0, f)
        results.append(
            FaceGoodness(
                face=idx,
                edges=flags,
                good=good,
                triangle=triangle,
                outer=f.is_outer,
                stats=FaceStats(stats.d, stats.l, stats.m, stats.i, stats.b, good, f.is_outer),
            )
        )
    report = GoodnessReport(g0=g0, faces=tuple(results))
    logger.info(f"Goodness: {sum(f.good for f in results)}/{len(results)} crossing-free faces good")
    return report


@dataclass(frozen=True)
class AugmentResult:
    drawing: Drawing
    planarization: Planarization
    added: tuple[str, ...]
    self_loops: tuple[tuple[str, str], ...]
    passes: int


class _Augmenter:
    """Mutable copy of a connected planarization that accepts crossing-free arcs."""

    def __init__(self, p: Planarization, d: Drawing) -> None:
        self.p = Planarization(
            nodes=dict(p.nodes),
            arcs=list(p.arcs),
            rotation={k: list(v) for k, v in p.rotation.items()},
            crossed_edges=p.crossed_edges,
            auxiliary_edges=p.auxiliary_edges,
        )
        self.outer_dart = p.faces[p.outer_face()].walks[0][0] if p.arcs else None
        self.edges: list[Edge] = []
        self.self_loops: list[tuple[str, str]] = []
        lengths = [
            float(norm(b - a))
            for arc in p.arcs
            for a, b in zip(arc.points, arc.points[1:])
        ]
        self.delta = 0.1 * min(lengths) if lengths else 1.0
        self.used = {e.id for e in d.edges}
        self.d = d

    def _new_edge_id(self) -> str:
        k = len(self.edges)
        while f"aux{k}" in self.used:
            k += 1
        edge_id = f"aux{k}"
        self.used.add(edge_id)
        return edge_id

    def _offset_route(self, path: Sequence[int], delta: float) -> list[Point]:
        """Bends of a polyline running ``delta`` to the left of ``path``.

        Left turns get a miter point, right turns and reversals a three-point bevel around
        the corner.
        """
        pts: list[tuple[float, float]] = []
        for dart in path:
            seg = [(float(q.x), float(q.y)) for q in self.p.dart_points(dart)]
            pts.extend(seg if not pts else seg[1:])

        def unit(x: float, y: float) -> tuple[float, float]:
            length = math.hypot(x, y)
            return x / length, y / length

        route: list[Point] = []
        for k in range(1, len(pts) - 1):
            (px, py), (qx, qy), (rx, ry) = pts[k - 1], pts[k], pts[k + 1]
            ax, ay = unit(qx - px, qy - py)
            bx, by = unit(rx - qx, ry - qy)
            turn = ax * by - ay * bx
            along = ax * bx + ay * by
            if turn >= -_TURN_EPSILON and along > -1 + _TURN_EPSILON:
                scale = delta / (1 + along)
                route.append(Point(qx + scale * (-ay - by), qy + scale * (ax + bx)))
            else:
                ox, oy = unit(ax - bx, ay - by)
                route.append(Point(qx - delta * ay, qy + delta * ax))
                route.append(Point(qx + delta * ox, qy + delta * oy))
                route.append(Point(qx - delta * by, qy + delta * bx))
        if not route:
            (px, py), (qx, qy) = pts[0], pts[-1]
            ax, ay = unit(qx - px, qy - py)
            route.append(Point((px + qx) / 2 - delta * ay, (py + qy) / 2 + delta * ax))
        return route

    def _is_clear(self, candidate: Edge) -> bool:
        try:
            drawing = self.d.with_edges((*self.d.edges, *self.edges, candidate), allow_self_loops=True)
        except DrawingFormatError:
            return False
        report = validate(drawing, only_edges={candidate.id})
        if any(candidate.id in v.edges for v in report.violations):
            return False
        return not any(candidate.id in (c.edge_a, c.edge_b) for c in report.crossings)

    def route(self, edge_id: str, u: str, v: str, path: Sequence[int]) -> tuple[Point, ...]:
        """Crossing-free bends for a new auxiliary edge along ``path``, shrinking the offset until clear."""
        delta = self.delta / (1 + len(self.edges))
        for _ in range(_ROUTE_ATTEMPTS):
            bends = tuple(self._offset_route(path, delta))
            if self._is_clear(Edge(edge_id, u, v, bends, auxiliary=True)):
                return bends
            delta /= 2
        raise NonTerminating(f"no crossing-free route for auxiliary edge {edge_id} between {u} and {v}")

    def insert(self, walk: Walk, i: int, j: int) -> int:
        """Add an arc from the corner before ``walk[i]`` to the corner before ``walk[j]``.

        The darts ``walk[i:j]`` end up on one side of the new arc together with its reverse
        dart; the returned forward dart lies on the other side.
        """
        p = self.p
        b_u, b_v = walk[i], walk[j]
        u, v = p.origin(b_u), p.origin(b_v)
        path = walk[i:j]
        edge_id = self._new_edge_id()
        bends = self.route(edge_id, u, v, path)
        arc = Arc(len(p.arcs), u, v, edge_id, 0, (p.nodes[u].point, *bends, p.nodes[v].point))
        p.arcs.append(arc)
        forward = 2 * arc.id
        rot_u = p.rotation[u]
        rot_u.insert(rot_u.index(b_u) + 1, forward)
        rot_v = p.rotation[v]
        rot_v.insert(rot_v.index(b_v) + 1, forward + 1)
        self.edges.append(Edge(edge_id, u, v, tuple(bends), auxiliary=True))
        if u == v:
            self.self_loops.append((edge_id, u))
            logger.info(f"Auxiliary self-loop {edge_id} at cut-vertex {u}")
        if self.outer_dart is not None and self.outer_dart in walk:
            self.outer_dart = forward
        return forward

    def walk_from(self, dart: int) -> Walk:
        walk = [dart]
        d = self.p.next_dart(dart)
        while d != dart:
            walk.append(d)
            d = self.p.next_dart(d)
        return tuple(walk)

    def crossing_free_edges(self, walk: Walk) -> set[str]:
        return {self.p.edge_of(d) for d in walk if self.p.is_crossing_free(d)}

    def satisfied(self, walk: Walk) -> bool:
        if len(self.crossing_free_edges(walk)) <= 1:
            return True
        return len(walk) == 3 and all(self.p.is_crossing_free(d) for d in walk)

    def triangulate(self, walk: Walk) -> None:
        while len(walk) > 3:
            origins = [self.p.origin(d) for d in walk]
            size = len(walk)
            ear = next((k for k in range(size) if origins[k] != origins[(k + 2) % size]), None)
            if ear is None:
                ear = 0
            rotated = walk[ear:] + walk[:ear]
            forward = self.insert(rotated, 0, 2)
            walk = self.walk_from(forward)
        if len(walk) < 3:
            raise PreconditionViolated("crossing-free face bounded by homotopic parallel edges")

    def connect(self, walk: Walk) -> None:
        p = self.p
        dummies = [k for k, d in enumerate(walk) if p.nodes[p.origin(d)].kind is NodeKind.DUMMY]
        start = min(dummies, key=lambda k: (p.nodes[p.origin(walk[k])].order, k))
        rotated = walk[start:] + walk[:start]
        size = len(rotated)
        incident = [
            k
            for k in range(size)
            if p.nodes[p.origin(rotated[k])].kind is NodeKind.REAL
            and (p.is_crossing_free(rotated[k]) or p.is_crossing_free(rotated[k - 1]))
        ]
        self.insert(rotated, incident[0], incident[-1])

    def run(self, cap: int) -> int:
        passes = 0
        while True:
            pending = [w for w in self.p.trace_walks() if not self.satisfied(w)]
            if not pending:
                return passes
            passes += 1
            if passes > cap:
                raise NonTerminating(f"augmentation exceeded {cap} passes")
            for walk in pending:
                if all(self.p.is_crossing_free(d) for d in walk):
                    self.triangulate(walk)
                else:
                    self.connect(walk)

    def result(self, d: Drawing, passes: int) -> AugmentResult:
        p = self.p
        p.auxiliary_edges = p.auxiliary_edges | {e.id for e in self.edges}
        p.faces = [
            Face(walks=(w,), is_outer=self.outer_dart in w)
            for w in p.trace_walks()
        ]
        if not p.arcs:
            p.faces = [Face(walks=(), isolated_nodes=tuple(p.nodes), is_outer=True)]
        drawing = d.with_edges(
            (*d.edges, *self.edges),
            allow_self_loops=d.allow_self_loops or bool(self.self_loops),
        )
        return AugmentResult(drawing, p, tuple(e.id for e in self.edges), tuple(self.self_loops), passes)


def augment_to_good(d: Drawing, p_all: Planarization) -> AugmentResult:
    """Insert crossing-free auxiliary edges until every face of the planarization is a
    crossing-free triangle or touches at most one crossing-free edge.

    Works on the rotation system of a connected full planarization. The auxiliary
    polylines follow the facial walk they cut off at a small inward offset and never cross
    anything.
    """
    if p_all.parent_faces is not None:
        raise PreconditionViolated("augmentation needs the full planarization")
    if p_all.component_count() > 1:
        raise PreconditionViolated("augmentation needs a connected planarization")
    augmenter = _Augmenter(p_all, d)
    passes = augmenter.run(cap=4 * max(len(p_all.faces), 1))
    result = augmenter.result(d, passes)
    check = validate(result.drawing)
    if not check.is_rac or len(check.crossings) != len(p_all.dummy_nodes()):
        raise InvalidDrawing(f"auxiliary edges broke the drawing: {len(check.violations)} violations")
    logger.info(f"Augmented drawing: {len(result.added)} auxiliary edges, {len(result.self_loops)} self-loops, {passes} passes")
    return result
