"""Edge removals from a plane triangulation and the potential that bounds crossed edges.

A :class:`Triangulation` is a combinatorial map (rotation system) with triangular faces.
:class:`RemovalState` removes edges one at a time, keeps every face as a region made of
facial walks plus isolated vertices, and tracks ``t(f)``: how many removals created the
face. ``tau`` is the potential of the crossed-edge bound; every step is classified and its
potential change recomputed from scratch as a cross-check.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Optional, Sequence

import networkx as nx

from rac.charge import face_bound_value
from rac.errors import OrderViolation, PreconditionViolated, UnknownT
from rac.planarize import FaceStats, stats_from_walks

logger = logging.getLogger(__name__)

T1_WEIGHT = Fraction(8, 3)
T2_WEIGHT = Fraction(16, 3)
STEP_BUDGET = Fraction(8, 3)

LABELS = ("C1a", "C1b", "C1c", "C2a", "C2b", "small-t1", "small-t2", "small-t3")


def _pair(u: int, v: int) -> str:
    return f"{min(u, v)}-{max(u, v)}"


@dataclass
class Triangulation:
    """Plane multigraph given by its rotation system; every face is a triangle."""

    vertices: list[int]
    edges: list[tuple[Hashable, int, int]]
    rotation: dict[int, list[int]]

    def origin(self, dart: int) -> int:
        _, u, v = self.edges[dart >> 1]
        return u if dart & 1 == 0 else v

    def next_dart(self, dart: int) -> int:
        rot = self.rotation[self.origin(dart ^ 1)]
        return rot[(rot.index(dart ^ 1) - 1) % len(rot)]

    def faces(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        faces = []
        for start in range(2 * len(self.edges)):
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = self.next_dart(d)
            faces.append(tuple(walk))
        return faces

    def label(self, edge_index: int) -> Hashable:
        return self.edges[edge_index][0]

    def index_of(self, label: Hashable) -> int:
        for k, (lab, _, _) in enumerate(self.edges):
            if lab == label:
                return k
        raise KeyError(label)

    @classmethod
    def from_faces(
        cls,
        faces: Sequence[tuple[int, int, int]],
        edge_labels: Optional[Sequence[tuple[Hashable, Hashable, Hashable]]] = None,
    ) -> "Triangulation":
        """Build the rotation system from counter-clockwise vertex triples.

        Without ``edge_labels`` an edge is identified by its endpoint pair, which suits simple
        triangulations. Multigraphs name the three sides of every face explicitly.
        """
        sides: dict[Hashable, list[tuple[int, int, int]]] = {}
        order: list[Hashable] = []
        for f_idx, (a, b, c) in enumerate(faces):
            labels = edge_labels[f_idx] if edge_labels else (
                _pair(a, b), _pair(b, c), _pair(c, a)
            )
            for pos, (u, v) in enumerate(((a, b), (b, c), (c, a))):
                lab = labels[pos]
                if lab not in sides:
                    sides[lab] = []
                    order.append(lab)
                sides[lab].append((u, v, f_idx * 3 + pos))
        edges: list[tuple[Hashable, int, int]] = []
        dart_of_side: dict[int, int] = {}
        for k, lab in enumerate(order):
            entries = sides[lab]
            if len(entries) != 2 or entries[0][:2] != entries[1][1::-1]:
                raise PreconditionViolated(f"edge {lab!r} does not appear once in each direction")
            (u, v, s0), (_, _, s1) = entries
            edges.append((lab, u, v))
            dart_of_side[s0] = 2 * k
            dart_of_side[s1] = 2 * k + 1
        face_next = {}
        for f_idx in range(len(faces)):
            for pos in range(3):
                face_next[dart_of_side[f_idx * 3 + pos]] = dart_of_side[f_idx * 3 + (pos + 1) % 3]

        vertices = sorted({v for face in faces for v in face})
        tri = cls(vertices=vertices, edges=edges, rotation={})
        leaving: dict[int, list[int]] = {v: [] for v in vertices}
        for dart in range(2 * len(edges)):
            leaving[tri.origin(dart)].append(dart)
        for v, darts in leaving.items():
            # clockwise successor of x is next(twin(x)); collect clockwise, then reverse
            cw = [darts[0]]
            x = face_next[darts[0] ^ 1]
            while x != darts[0]:
                cw.append(x)
                x = face_next[x ^ 1]
            if len(cw) != len(darts):
                raise PreconditionViolated(f"faces around vertex {v} do not form a disk")
            tri.rotation[v] = list(reversed(cw))
        return tri

    def to_graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for lab, u, v in self.edges:
            g.add_edge(u, v, key=lab)
        return g


def canonical_fan(n: int) -> list[tuple[int, int, int]]:
    """Apex 0 over the cycle 1..n-1, the other side fanned from vertex 1."""
    if n < 4:
        raise PreconditionViolated(f"triangulation needs n >= 4, got {n}")
    faces = [(0, i, i + 1) for i in range(1, n - 1)] + [(0, n - 1, 1)]
    faces += [(1, k + 1, k) for k in range(2, n - 1)]
    return faces


def _flip(faces: list[tuple[int, int, int]], f_idx: int, side: int) -> bool:
    a, b, c = faces[f_idx][side:] + faces[f_idx][:side]
    for g_idx, face in enumerate(faces):
        for rot in range(3):
            x, y, d = face[rot:] + face[:rot]
            if (x, y) == (b, a):
                if c == d:
                    return False
                if any(c in other and d in other for other in faces):
                    return False
                faces[f_idx] = (a, d, c)
                faces[g_idx] = (d, b, c)
                return True
    return False


def random_triangulation(n: int, seed: int, flips: Optional[int] = None) -> Triangulation:
    """Seeded random simple triangulation: a flip walk started from the canonical fan."""
    rng = random.Random(seed)
    faces = canonical_fan(n)
    for _ in range(flips if flips is not None else 10 * n):
        _flip(faces, rng.randrange(len(faces)), rng.randrange(3))
    return Triangulation.from_faces(faces)


@dataclass
class Region:
    walks: list[tuple[int, ...]]
    isolated: list[int]
    t: Optional[int]


def contribution(stats: FaceStats, t: Optional[int]) -> Fraction:
    if t is None:
        raise UnknownT("face carries no removal provenance")
    if t == 0:
        return Fraction(0)
    if t == 1:
        return T1_WEIGHT
    if t == 2:
        return T2_WEIGHT
    return Fraction(face_bound_value(stats.d, stats.m, stats.i, stats.b))


def _coarse_term(d: int) -> int:
    return 4 * d - 8 if d > 3 else 0


def coarse_step_delta(d1: int, d2: Optional[int], merged: int) -> tuple[str, int]:
    """Case and change of the coarse potential (sum of 4d - 8 over faces of degree above three).

    ``d2`` is None when the removed edge is a bridge of a single face. Merging two triangles
    adds 8, a triangle and a larger face at most 4, two larger faces nothing.
    """
    if d2 is None:
        return "bridge", _coarse_term(merged) - _coarse_term(d1)
    delta = _coarse_term(merged) - _coarse_term(d1) - _coarse_term(d2)
    if d1 <= 3 and d2 <= 3:
        return "two-triangles", delta
    if d1 <= 3 or d2 <= 3:
        return "triangle-face", delta
    return "two-faces", delta


@dataclass(frozen=True)
class RemovalStep:
    edge: Hashable
    label: str
    t: int
    shape: tuple[int, int, int, int]
    tau_before: Fraction
    tau_after: Fraction
    delta: Fraction
    coarse_case: str
    coarse_delta: int
    coarse_after: int

    @property
    def within_step_budget(self) -> bool:
        return self.delta <= STEP_BUDGET


class RemovalState:
    """Plane graph obtained from a triangulation by edge removals, with face provenance."""

    def __init__(self, tri: Triangulation) -> None:
        self.tri = tri
        self.alive: set[int] = set(range(len(tri.edges)))
        self.rotation = {v: list(r) for v, r in tri.rotation.items()}
        self.regions: dict[int, Region] = {}
        self.region_of: dict[int, int] = {}
        for walk in tri.faces():
            self._add_region(Region([walk], [], 0))
        self.removed: list[Hashable] = []

    def copy(self) -> "RemovalState":
        other = RemovalState.__new__(RemovalState)
        other.tri = self.tri
        other.alive = set(self.alive)
        other.rotation = {v: list(r) for v, r in self.rotation.items()}
        other.regions = {k: Region(list(r.walks), list(r.isolated), r.t) for k, r in self.regions.items()}
        other.region_of = dict(self.region_of)
        other.removed = list(self.removed)
        return other

    def _add_region(self, region: Region) -> int:
        rid = max(self.regions, default=-1) + 1
        self.regions[rid] = region
        for walk in region.walks:
            for dart in walk:
                self.region_of[dart] = rid
        return rid

    def origin(self, dart: int) -> int:
        return self.tri.origin(dart)

    def _next(self, dart: int) -> int:
        rot = self.rotation[self.origin(dart ^ 1)]
        return rot[(rot.index(dart ^ 1) - 1) % len(rot)]

    def _trace(self, darts: Iterable[int]) -> list[tuple[int, ...]]:
        pending = sorted(darts)
        seen: set[int] = set()
        walks = []
        for start in pending:
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = self._next(d)
            walks.append(tuple(walk))
        return walks

    def stats(self, rid: int) -> FaceStats:
        r = self.regions[rid]
        return stats_from_walks(r.walks, self.origin, r.isolated)

    def tau(self) -> Fraction:
        return sum((contribution(self.stats(rid), r.t) for rid, r in self.regions.items()), Fraction(0))

    def coarse(self) -> int:
        """Coarse right-hand side: sum of 4d - 8 over faces of degree above three."""
        return sum(_coarse_term(self.stats(rid).d) for rid in self.regions)

    def _is_simple_triangle(self, region: Region) -> bool:
        if len(region.walks) != 1 or region.isolated or len(region.walks[0]) != 3:
            return False
        return len({self.origin(d) for d in region.walks[0]}) == 3

    def remove(self, edge: Hashable) -> RemovalStep:
        k = self.tri.index_of(edge)
        if k not in self.alive:
            raise PreconditionViolated(f"edge {edge!r} already removed")
        fwd, bwd = 2 * k, 2 * k + 1
        r1, r2 = self.region_of[fwd], self.region_of[bwd]
        f1, f2 = self.regions[r1], self.regions[r2]
        if r1 != r2 and (f1.t or 0) >= 1 and (f2.t or 0) >= 1:
            raise OrderViolation(f"removing {edge!r} merges two faces created by earlier removals")

        tau_before = self.tau()
        before = contribution(self.stats(r1), f1.t) + (contribution(self.stats(r2), f2.t) if r1 != r2 else 0)
        d1 = self.stats(r1).d
        d2 = self.stats(r2).d if r1 != r2 else None

        u, v = self.origin(fwd), self.origin(bwd)
        shared = 0
        if r1 != r2:
            darts2 = {dd for w in f2.walks for dd in w}
            shared = sum(1 for w in f1.walks for dd in w if dd ^ 1 in darts2)

        self.rotation[u].remove(fwd)
        self.rotation[v].remove(bwd)
        self.alive.discard(k)
        self.removed.append(edge)

        darts = {dd for w in f1.walks for dd in w}
        isolated = list(f1.isolated)
        t_prev = f1.t or 0
        if r1 != r2:
            darts |= {dd for w in f2.walks for dd in w}
            isolated += f2.isolated
            t_prev = (f1.t or 0) + (f2.t or 0)
        darts -= {fwd, bwd}
        newly_isolated = [x for x in dict.fromkeys((u, v)) if not self.rotation[x]]
        isolated += newly_isolated

        for rid in {r1, r2}:
            del self.regions[rid]
        for dd in (fwd, bwd):
            self.region_of.pop(dd, None)
        region = Region(self._trace(darts), isolated, t_prev + 1)
        if self._is_simple_triangle(region):
            region.t = 0
        rid = self._add_region(region)

        stats = self.stats(rid)
        after = contribution(stats, region.t)
        delta = after - before
        tau_after = self.tau()
        if tau_after - tau_before != delta:
            raise AssertionError(f"incremental potential {delta} disagrees with recomputation {tau_after - tau_before}")

        label = self._label(r1 == r2, len(newly_isolated), shared, region.t, f1, f2)
        coarse_case, coarse_delta = coarse_step_delta(d1, d2, stats.d)
        return RemovalStep(
            edge=edge,
            label=label,
            t=region.t,
            shape=stats.shape(),
            tau_before=tau_before,
            tau_after=tau_after,
            delta=delta,
            coarse_case=coarse_case,
            coarse_delta=coarse_delta,
            coarse_after=self.coarse(),
        )

    @staticmethod
    def _label(bridge: bool, isolated: int, shared: int, t: int, f1: Region, f2: Region) -> str:
        if 1 <= t <= 3:
            return f"small-t{t}"
        if bridge:
            return ("C1c", "C1b", "C1a")[isolated]
        return "C2a" if shared <= 1 else "C2b"

    def face_records(self) -> list[tuple[int, FaceStats]]:
        return [(r.t, self.stats(rid)) for rid, r in sorted(self.regions.items())]


def remove_step(state: RemovalState, edge: Hashable) -> tuple[RemovalState, str, Fraction]:
    """Pure form of one removal: returns the new state, the case label and the potential change."""
    new_state = state.copy()
    step = new_state.remove(edge)
    return new_state, step.label, step.delta


def tau(state: RemovalState) -> Fraction:
    """Potential of the current plane graph, recomputed from its faces."""
    return state.tau()


def dual_graph(tri: Triangulation, removal: Iterable[Hashable]) -> nx.MultiGraph:
    """Dual of ``tri`` restricted to the duals of ``removal``; nodes are face indices."""
    faces = tri.faces()
    face_of: dict[int, int] = {}
    for idx, walk in enumerate(faces):
        for dart in walk:
            face_of[dart] = idx
    wanted = {tri.index_of(lab) for lab in removal}
    dual = nx.MultiGraph()
    for k in sorted(wanted):
        dual.add_edge(face_of[2 * k], face_of[2 * k + 1], key=tri.label(k))
    return dual


def bfs_removal_order(tri: Triangulation, removal: Iterable[Hashable]) -> list[Hashable]:
    """Removal order: dual edges in BFS order, one traversal per dual component rooted at
    its lowest face index."""
    dual = dual_graph(tri, removal)
    order: list[Hashable] = []
    for component in sorted((sorted(c) for c in nx.connected_components(dual)), key=lambda c: c[0]):
        for _, _, key in nx.edge_bfs(dual, source=component[0]):
            order.append(key)
    return order


@dataclass
class RemovalTrace:
    steps: list[RemovalStep] = field(default_factory=list)
    seed: Optional[int] = None
    n: int = 0

    @property
    def k(self) -> int:
        return len(self.steps)

    @property
    def final_tau(self) -> Fraction:
        return self.steps[-1].tau_after if self.steps else Fraction(0)

    @property
    def bound_holds(self) -> bool:
        """The potential never exceeds 8/3 per removal so far."""
        return all(s.tau_after <= STEP_BUDGET * (j + 1) for j, s in enumerate(self.steps))

    @property
    def coarse_holds(self) -> bool:
        return all(s.coarse_after <= 8 * (j + 1) for j, s in enumerate(self.steps))

    def labels(self) -> list[str]:
        return [s.label for s in self.steps]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "final_tau": str(self.final_tau),
            "bound_holds": self.bound_holds,
            "steps": [
                {
                    "edge": str(s.edge),
                    "label": s.label,
                    "t": s.t,
                    "shape": list(s.shape),
                    "tau_before": str(s.tau_before),
                    "tau_after": str(s.tau_after),
                    "coarse_case": s.coarse_case,
                    "coarse_delta": s.coarse_delta,
                }
                for s in self.steps
            ],
        }


def simulate(tri: Triangulation, removal: Iterable[Hashable], seed: Optional[int] = None) -> tuple[RemovalState, RemovalTrace]:
    state = RemovalState(tri)
    trace = RemovalTrace(seed=seed, n=len(tri.vertices))
    for edge in bfs_removal_order(tri, removal):
        trace.steps.append(state.remove(edge))
    if not trace.bound_holds:
        logger.warning(f"Potential exceeded 8/3 per removal on seed={seed}")
    logger.info(f"Removal trace: n={trace.n}, k={trace.k}, final tau={trace.final_tau}")
    return state, trace


def random_removal(n: int, k: int, seed: int) -> tuple[Triangulation, list[Hashable]]:
    tri = random_triangulation(n, seed)
    if not 0 <= k <= len(tri.edges):
        raise PreconditionViolated(f"k must lie in [0, {len(tri.edges)}], got {k}")
    rng = random.Random(seed + 1)
    picks = rng.sample(range(len(tri.edges)), k)
    return tri, [tri.label(i) for i in sorted(picks)]


def removal_sim(n: int, k: int, seed: int) -> tuple[RemovalState, RemovalTrace]:
    """Remove ``k`` random edges of a random triangulation on ``n`` vertices in BFS order."""
    tri, picks = random_removal(n, k, seed)
    return simulate(tri, picks, seed=seed)


@dataclass(frozen=True)
class PotentialReport:
    n: int
    k: int
    f1: int
    f2: int
    face_bound_terms: int
    eq4: Fraction
    tau: Fraction
    coarse: int
    planar_edges: int
    charge_bound: int
    coarse_bound: int
    refined_bound: Fraction

    @property
    def refined_ok(self) -> bool:
        return self.eq4 <= self.tau <= STEP_BUDGET * self.k

    @property
    def coarse_ok(self) -> bool:
        return self.coarse <= 8 * self.k

    @property
    def combined_coarse(self) -> int:
        return min(self.charge_bound, self.coarse_bound)

    @property
    def combined_refined(self) -> Fraction:
        return min(Fraction(self.charge_bound), self.refined_bound)


def potential_bound(state: RemovalState, trace: Optional[RemovalTrace] = None) -> PotentialReport:
    """Crossed-edge bounds of the current plane graph and the global edge bookends."""
    n = len(state.tri.vertices)
    k = len(state.removed) if trace is None else trace.k
    f1 = f2 = terms = 0
    for t, stats in state.face_records():
        if t is None:
            raise UnknownT("face carries no removal provenance")
        if t == 1:
            f1 += 1
        elif t == 2:
            f2 += 1
        elif t > 2:
            terms += face_bound_value(stats.d, stats.m, stats.i, stats.b)
    return PotentialReport(
        n=n,
        k=k,
        f1=f1,
        f2=f2,
        face_bound_terms=terms,
        eq4=Fraction(2 * f1 + 5 * f2 + terms),
        tau=state.tau(),
        coarse=state.coarse(),
        planar_edges=3 * n - 6 - k,
        charge_bound=7 * n - 14 - k,
        coarse_bound=3 * n - 6 + 7 * k,
        refined_bound=3 * n - 6 + Fraction(5, 3) * k,
    )


def _balanced_k(n: int, gain: Fraction) -> Fraction:
    # 7n - 14 - k == 3n - 6 - k + gain * k
    return Fraction(4 * n - 8) / gain


def coarse_optimum(n: int) -> tuple[Fraction, Fraction]:
    """Maximising k and the resulting global bound when each removal may add 8 crossed edges."""
    k = _balanced_k(n, Fraction(8))
    return k, min(7 * n - 14 - k, 3 * n - 6 + 7 * k)


def refined_optimum(n: int) -> tuple[Fraction, Fraction]:
    """Same with 8/3 per removal."""
    k = _balanced_k(n, Fraction(8, 3))
    return k, min(7 * n - 14 - k, 3 * n - 6 + Fraction(5, 3) * k)
