import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from rac.drawing import Drawing, Edge, Vertex
from rac.geom import Point
from rac.removal import Triangulation, canonical_fan

settings.register_profile("ci", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=20, deadline=None)
settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


def make_drawing(vertices, edges, **kwargs) -> Drawing:
    """``vertices``: {id: (x, y)}; ``edges``: (id, source, target[, bends])."""
    return Drawing(
        vertices=tuple(Vertex(v, Point(Fraction(x), Fraction(y))) for v, (x, y) in vertices.items()),
        edges=tuple(
            Edge(e[0], e[1], e[2], tuple(Point(Fraction(bx), Fraction(by)) for bx, by in (e[3] if len(e) > 3 else ())))
            for e in edges
        ),
        **kwargs,
    )


@pytest.fixture
def plus_drawing() -> Drawing:
    """Two straight edges crossing at right angles in (1, 1)."""
    return make_drawing(
        {"a": (0, 1), "b": (2, 1), "c": (1, 0), "d": (1, 2)},
        [("ab", "a", "b"), ("cd", "c", "d")],
    )


@pytest.fixture
def skew_drawing() -> Drawing:
    """Two straight edges crossing at a non-right angle in (3/2, 1/2)."""
    return make_drawing(
        {"a": (0, 0), "b": (3, 1), "c": (0, 2), "d": (2, 0)},
        [("ab", "a", "b"), ("cd", "c", "d")],
    )


@pytest.fixture
def square_with_diagonals() -> Drawing:
    """Crossing-free square whose diagonals cross at right angles in the middle."""
    return make_drawing(
        {"v1": (0, 0), "v2": (4, 0), "v3": (4, 4), "v4": (0, 4)},
        [
            ("s12", "v1", "v2"),
            ("s23", "v2", "v3"),
            ("s34", "v3", "v4"),
            ("s41", "v4", "v1"),
            ("d13", "v1", "v3"),
            ("d24", "v2", "v4"),
        ],
    )


@pytest.fixture
def heptagon_face() -> Drawing:
    """Crossing-free face with a pendant edge, a hole edge and an isolated vertex.

    The bounded face has walks v1 v2 v1 v3 ... v8 and v9 v10 plus the isolated v11.
    """
    return make_drawing(
        {
            "v1": (0, 0), "v3": (10, 0), "v4": (14, 5), "v5": (12, 11), "v6": (6, 14), "v7": (0, 12), "v8": (-3, 6),
            "v2": (3, 2), "v9": (5, 6), "v10": (8, 6), "v11": (6, 9),
        },
        [
            ("e13", "v1", "v3"), ("e34", "v3", "v4"), ("e45", "v4", "v5"), ("e56", "v5", "v6"),
            ("e67", "v6", "v7"), ("e78", "v7", "v8"), ("e81", "v8", "v1"),
            ("e12", "v1", "v2"), ("e910", "v9", "v10"),
        ],
    )


@pytest.fixture
def good_heptagon_face() -> Drawing:
    """The heptagon face with crossed edges inside that keep every one of its edges good.

    Eight axis-parallel crossed edges cut the face into cells touching at most one
    crossing-free edge each. ``g4-7`` alone separates the cell of ``e56`` from the cell
    holding the hole edge ``e910``.
    """
    return make_drawing(
        {
            "v1": (20, -4), "v2": (20, -1), "v3": (30, 0), "v4": (40, 20), "v5": (30, 40), "v6": (10, 40),
            "v7": (0, 20), "v8": (10, 0), "v9": (16, 15), "v10": (24, 15), "v11": (20, 10),
        },
        [
            ("e13", "v1", "v3"), ("e34", "v3", "v4"), ("e45", "v4", "v5"), ("e56", "v5", "v6"),
            ("e67", "v6", "v7"), ("e78", "v7", "v8"), ("e81", "v8", "v1"),
            ("e12", "v1", "v2"), ("e910", "v9", "v10"),
            ("g4-7", "v4", "v7"), ("g5-3", "v5", "v3"), ("g6-8", "v6", "v8"), ("g8-3", "v8", "v3"),
            ("g7-11", "v7", "v11", [(6, 10)]), ("g4-11", "v4", "v11", [(34, 10)]),
            ("g1-9", "v1", "v9", [(16, -2)]), ("g1-10", "v1", "v10", [(24, -2)]),
        ],
    )


@pytest.fixture
def lens_drawing() -> Drawing:
    """Edge f bends back over its own crossing with e, closing a two-arc face with one bend."""
    return make_drawing(
        {"u": (0, 0), "a": (4, 0), "b": (2, -2)},
        [("e", "u", "a"), ("f", "u", "b", [(2, 2)])],
    )


@pytest.fixture
def lens_with_donor() -> Drawing:
    """The lens drawing plus a crossed one-bend edge whose convex side is the large face."""
    return make_drawing(
        {"u": (0, 0), "a": (4, 0), "b": (2, -2), "c": (3, 1), "t": (5, -1)},
        [("e", "u", "a"), ("f", "u", "b", [(2, 2)]), ("g", "c", "t", [(3, -1)])],
    )


@pytest.fixture
def k4() -> Triangulation:
    return Triangulation.from_faces(canonical_fan(4))


@pytest.fixture
def fan5() -> Triangulation:
    return Triangulation.from_faces(canonical_fan(5))


@pytest.fixture
def theta3() -> Triangulation:
    """Three vertices, three edges, two triangular faces."""
    return Triangulation.from_faces([(0, 1, 2), (0, 2, 1)])


@pytest.fixture
def digon_apex() -> Triangulation:
    """Vertex 3 of degree two sits inside the digon formed by parallel edges e1 and e2."""
    return Triangulation.from_faces(
        [(0, 1, 3), (1, 0, 3), (0, 2, 1), (0, 1, 2)],
        edge_labels=[("e1", "1-3", "0-3"), ("e2", "0-3", "1-3"), ("0-2", "1-2", "e1"), ("e2", "1-2", "0-2")],
    )
