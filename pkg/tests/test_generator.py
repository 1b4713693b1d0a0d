import math
from collections import Counter

import pytest

from rac.drawing import validate
from rac.errors import PreconditionViolated
from rac.generator import (
    CHORDS,
    INNERMOST,
    NEAR_INNERMOST,
    NEAR_OUTER,
    OUTER,
    SHAPES,
    GeneratorParams,
    add_chords,
    dodecahedral_frame,
    face_angles,
    family_report,
    generate,
)


@pytest.fixture(scope="module")
def frame1():
    return dodecahedral_frame(1)


@pytest.fixture(scope="module")
def g20():
    return generate(1)


class TestFrame:
    def test_counts(self, frame1):
        assert frame1.drawing.n == 20
        assert frame1.drawing.m == 30
        assert len(frame1.faces) == 12
        assert Counter(f.role for f in frame1.faces) == {OUTER: 1, NEAR_OUTER: 5, NEAR_INNERMOST: 5, INNERMOST: 1}

    def test_frame_is_crossing_free(self, frame1):
        report = validate(frame1.drawing)
        assert report.is_rac
        assert report.crossings == ()

    def test_face_angles_are_realised(self, frame1):
        for fa in face_angles(frame1):
            assert fa.deviation < 1e-6, fa.face

    def test_inner_ring_shrinks(self, frame1):
        assert 0 < frame1.ring_scale < 1

    def test_angle_tables_close_the_pentagons(self):
        for shape in SHAPES.values():
            assert sum(shape.angles()) == pytest.approx(540.0)
        assert set(CHORDS) == set(SHAPES)

    @pytest.mark.parametrize("levels, scale", [(0, 1.0), (1, 0.0), (2, -1.0)])
    def test_bad_parameters(self, levels, scale):
        with pytest.raises(PreconditionViolated):
            GeneratorParams(levels=levels, scale=scale)
        with pytest.raises(PreconditionViolated):
            dodecahedral_frame(levels, scale)


class TestFamily:
    def test_twenty_vertices(self, g20):
        assert (g20.n, g20.m) == (20, 90)
        assert g20.m == 5 * g20.n - 10

    def test_every_chord_crosses_twice_at_right_angles(self, g20):
        report = validate(g20)
        assert report.is_rac
        assert len(report.crossings) == 60
        per_edge = Counter(e for c in report.crossings for e in (c.edge_a, c.edge_b))
        assert set(per_edge) == {e.id for e in g20.edges if e.id.startswith("c")}
        assert set(per_edge.values()) == {2}
        for c in report.crossings:
            assert c.angle == pytest.approx(math.pi / 2, abs=1e-6)

    def test_chords_have_one_bend(self, g20):
        chords = [e for e in g20.edges if e.id.startswith("c")]
        assert len(chords) == 60
        assert all(len(e.bends) == 1 for e in chords)

    def test_scale_only_resizes(self):
        small = add_chords(dodecahedral_frame(1, scale=0.25))
        assert validate(small).is_rac
        assert small.point("O1.0").x == pytest.approx(generate(1).point("O1.0").x * 0.25, abs=1e-9)

    @pytest.mark.parametrize("levels", [1, 2, 3, 4, 5])
    def test_report(self, levels):
        report = family_report(levels)
        n = 15 * levels + 5
        assert (report.n, report.m) == (n, 5 * n - 10)
        assert report.matches_5n_minus_10
        assert report.is_rac
        assert report.crossings == 50 * levels + 10
        assert (report.e0, report.e1) == (25 * levels + 5, 50 * levels + 10)
        assert report.density_slack == pytest.approx(0.5 * n - 1)
        assert report.max_angle_deviation < 1e-6
        assert report.max_face_angle_deviation < 1e-6

    def test_report_reuses_a_built_drawing(self, frame1, g20):
        checked = validate(g20)
        assert family_report(1, frame=frame1, drawing=g20, report=checked) == family_report(1)
