from fractions import Fraction

import networkx as nx
import pytest

from rac.drawing import (
    Drawing,
    Edge,
    Vertex,
    ViolationKind,
    density_bound,
    density_check,
    partition_edges,
    self_loop_split_bound,
    validate,
)
from rac.errors import DrawingFormatError, InvalidDrawing, PreconditionViolated
from rac.fixtures import corpus, random_rac_drawing
from rac.geom import Point
from tests.conftest import make_drawing


def float_drawing(vertices, edges) -> Drawing:
    return Drawing(
        vertices=tuple(Vertex(v, Point(float(x), float(y))) for v, (x, y) in vertices.items()),
        edges=tuple(Edge(e_id, s, t) for e_id, s, t in edges),
    )


class TestDrawingModel:
    def test_duplicate_vertex_id(self):
        with pytest.raises(DrawingFormatError):
            Drawing(vertices=(Vertex("a", Point(0, 0)), Vertex("a", Point(1, 0))), edges=())

    def test_unknown_vertex(self):
        with pytest.raises(DrawingFormatError):
            make_drawing({"a": (0, 0)}, [("e", "a", "z")])

    def test_self_loop_needs_permission(self):
        with pytest.raises(DrawingFormatError):
            make_drawing({"a": (0, 0)}, [("e", "a", "a", [(1, 1)])])

    def test_repeated_point(self):
        with pytest.raises(DrawingFormatError):
            make_drawing({"a": (0, 0), "b": (0, 0)}, [])

    def test_edge_lookup(self, plus_drawing):
        assert plus_drawing.edge("cd").source == "c"
        with pytest.raises(KeyError):
            plus_drawing.edge("zz")

    def test_m_excludes_auxiliary_edges(self, plus_drawing):
        d = plus_drawing.with_edges([*plus_drawing.edges, Edge("x", "a", "c", auxiliary=True)])
        assert d.m == 2
        assert len(d.edges) == 3


class TestValidate:
    def test_plus_is_rac(self, plus_drawing):
        report = validate(plus_drawing)
        assert report.is_rac
        assert len(report.crossings) == 1
        assert report.crossings[0].point == (Fraction(1), Fraction(1))

    def test_non_right_angle(self, skew_drawing):
        report = validate(skew_drawing)
        assert not report.is_rac
        assert report.violation_kinds() == {ViolationKind.NON_RIGHT_ANGLE}

    def test_too_many_bends(self):
        d = make_drawing({"a": (0, 0), "b": (4, 0)}, [("e", "a", "b", [(1, 1), (3, 1)])])
        assert validate(d).violation_kinds() == {ViolationKind.TOO_MANY_BENDS}

    def test_overlap(self):
        d = make_drawing(
            {"a": (0, 0), "b": (2, 0), "c": (1, 1), "d": (3, 0)},
            [("e", "a", "b"), ("f", "c", "d", [(1, 0)])],
        )
        assert ViolationKind.OVERLAP in validate(d).violation_kinds()

    def test_edge_through_vertex(self):
        d = make_drawing({"a": (0, 0), "b": (2, 0), "c": (1, 0)}, [("e", "a", "b")])
        assert validate(d).violation_kinds() == {ViolationKind.EDGE_THROUGH_VERTEX}

    def test_triple_point(self):
        d = make_drawing(
            {"a": (0, 1), "b": (2, 1), "c": (1, 0), "d": (1, 2), "p": (0, 0), "q": (2, 2)},
            [("ab", "a", "b"), ("cd", "c", "d"), ("pq", "p", "q")],
        )
        kinds = validate(d).violation_kinds()
        assert ViolationKind.TRIPLE_POINT in kinds

    def test_shared_endpoint_is_legal(self):
        d = make_drawing({"a": (0, 0), "b": (2, 0), "c": (0, 2)}, [("ab", "a", "b"), ("ac", "a", "c")])
        assert validate(d).is_rac

    def test_one_bend_crossing(self, lens_drawing):
        report = validate(lens_drawing)
        assert report.is_rac
        assert [(c.edge_a, c.edge_b) for c in report.crossings] == [("e", "f")]

    def test_float_vertex_beyond_a_nearly_vertical_edge(self):
        d = float_drawing(
            {"a": (1e-19, 1.0), "b": (-1e-19, 2.0), "c": (0.0, 5.0), "d": (2e-19, 6.0)},
            [("ab", "a", "b"), ("cd", "c", "d")],
        )
        assert validate(d).is_rac

    def test_nearby_float_crossings_form_a_triple_point(self):
        d = float_drawing(
            {"a": (0.0, 1.0), "b": (2.0, 1.0), "c": (1.0, 0.0), "d": (1.0, 2.0), "p": (0.0, 1e-13), "q": (2.0, 2.0 + 1e-13)},
            [("ab", "a", "b"), ("cd", "c", "d"), ("pq", "p", "q")],
        )
        report = validate(d)
        assert len(report.crossings) == 3
        assert ViolationKind.TRIPLE_POINT in report.violation_kinds()

    def test_separate_float_crossings_are_not_a_triple_point(self):
        d = float_drawing(
            {"a": (0.0, 1.0), "b": (2.0, 1.0), "c": (1.0, 0.0), "d": (1.0, 2.0), "p": (0.0, 1e-3), "q": (2.0, 2.0 + 1e-3)},
            [("ab", "a", "b"), ("cd", "c", "d"), ("pq", "p", "q")],
        )
        assert ViolationKind.TRIPLE_POINT not in validate(d).violation_kinds()

    def test_result_ignores_input_order(self, square_with_diagonals):
        d = square_with_diagonals
        shuffled = Drawing(vertices=tuple(reversed(d.vertices)), edges=tuple(reversed(d.edges)))
        first, second = validate(d), validate(shuffled)
        assert first.crossings == second.crossings
        assert first.violations == second.violations

    def test_skew_result_ignores_input_order(self, skew_drawing):
        d = skew_drawing
        shuffled = Drawing(vertices=tuple(reversed(d.vertices)), edges=tuple(reversed(d.edges)))
        assert validate(d).violations == validate(shuffled).violations

    def test_only_edges_limits_the_pairs(self, skew_drawing):
        assert validate(skew_drawing, only_edges={"ab"}).violation_kinds() == {ViolationKind.NON_RIGHT_ANGLE}


class TestPartitionAndDensity:
    def test_partition(self, square_with_diagonals):
        part = partition_edges(square_with_diagonals, validate(square_with_diagonals))
        assert part.e1 == {"d13", "d24"}
        assert part.e0 == {"s12", "s23", "s34", "s41"}
        assert part.planar_ok

    def test_partition_needs_rac(self, skew_drawing):
        with pytest.raises(InvalidDrawing):
            partition_edges(skew_drawing, validate(skew_drawing))

    def test_density_bound_values(self):
        assert density_bound(20) == 99
        assert density_bound(5) == Fraction(33, 2)

    def test_density_needs_five_vertices(self, square_with_diagonals):
        with pytest.raises(PreconditionViolated):
            density_check(square_with_diagonals)

    def test_density_needs_connected(self):
        d = make_drawing(
            {"a": (0, 0), "b": (1, 0), "c": (5, 5), "d": (6, 5), "e": (9, 9)},
            [("ab", "a", "b"), ("cd", "c", "d")],
        )
        with pytest.raises(PreconditionViolated):
            density_check(d)

    def test_self_loop_split_never_exceeds_global(self):
        for n1 in range(5, 15):
            for n2 in range(5, 15):
                split, whole, ok = self_loop_split_bound(n1, n2)
                assert ok
                assert whole - split == Fraction(9, 2)


class TestRandomCorpus:
    def test_random_drawings_are_rac(self):
        for d in corpus(20, n_min=5, n_max=9):
            assert validate(d).is_rac

    def test_random_drawings_respect_density(self):
        checked = 0
        for d in corpus(50, n_min=5, n_max=10):
            if not nx.is_connected(d.to_graph()):
                continue
            assert density_check(d).satisfied
            checked += 1
        assert checked > 0

    def test_seed_is_deterministic(self):
        assert random_rac_drawing(8, seed=3) == random_rac_drawing(8, seed=3)
