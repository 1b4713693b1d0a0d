"""Seeded random RAC1 drawings with integer coordinates.

Vertices get pairwise distinct x and y coordinates. Edges are tried in random order, first as
straight segments and then as axis-parallel one-bend paths; a candidate is kept only if the
drawing stays RAC1. Every crossing is between a horizontal and a vertical piece, so the
right angles are exact.
"""

from __future__ import annotations

import itertools
import logging
import random
from typing import Iterator, List

from rac.drawing import Drawing, Edge, Vertex, validate
from rac.errors import DrawingFormatError, PreconditionViolated
from rac.geom import Point

logger = logging.getLogger(__name__)


def _candidates(d: Drawing, edge_id: str, u: str, v: str, rng: random.Random) -> Iterator[Edge]:
    pu, pv = d.point(u), d.point(v)
    yield Edge(edge_id, u, v)
    corners = [Point(pv.x, pu.y), Point(pu.x, pv.y)]
    rng.shuffle(corners)
    for corner in corners:
        yield Edge(edge_id, u, v, (corner,))


def random_rac_drawing(n: int, seed: int, density: float = 1.0, span: int = 0) -> Drawing:
    """Greedy random RAC1 drawing on ``n`` vertices.

    ``density`` is the share of vertex pairs that are attempted; ``span`` the coordinate
    range (defaults to ``4 * n``).
    """
    if n < 2:
        raise PreconditionViolated(f"need at least two vertices, got {n}")
    rng = random.Random(seed)
    span = span or 4 * n
    xs = rng.sample(range(span), n)
    ys = rng.sample(range(span), n)
    vertices = tuple(Vertex(f"v{i}", Point(xs[i], ys[i])) for i in range(n))
    d = Drawing(vertices=vertices, edges=(), bend_limit=1)

    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    pairs = pairs[: max(1, round(density * len(pairs)))]

    edges: List[Edge] = []
    for a, b in pairs:
        edge_id = f"e{len(edges)}"
        for candidate in _candidates(d, edge_id, f"v{a}", f"v{b}", rng):
            try:
                trial = d.with_edges([*edges, candidate])
            except DrawingFormatError:
                continue
            if validate(trial, only_edges={edge_id}).is_rac:
                edges.append(candidate)
                d = trial
                break

    logger.debug(f"Random RAC1 drawing: seed={seed}, n={n}, edges={len(edges)}")
    return d


def corpus(count: int, n_min: int = 5, n_max: int = 10, seed: int = 0) -> List[Drawing]:
    """``count`` random drawings with vertex counts cycling through ``n_min..n_max``."""
    sizes = range(n_min, n_max + 1)
    return [random_rac_drawing(sizes[k % len(sizes)], seed + k) for k in range(count)]
