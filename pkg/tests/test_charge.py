from fractions import Fraction

import pytest

from rac.charge import (
    audit,
    convex_bends,
    e1_bound,
    face_bound,
    face_bound_audit,
    face_bound_value,
    initial_charges,
    phase2,
    surround_check,
)
from rac.errors import FaceNotGood, NotCertified, PreconditionViolated
from rac.fixtures import corpus
from rac.generator import generate
from rac.planarize import FaceStats, Scope, good_edges, planarize
from rac.reports import charge_audit_report
from tests.conftest import make_drawing


def crossed(d):
    return planarize(d, Scope.CROSSED)


class TestChargingAudit:
    def test_initial_total_is_minus_eight(self, lens_with_donor):
        ledger = initial_charges(crossed(lens_with_donor))
        assert ledger.total() == -8
        assert ledger.component_count == 1

    def test_plus_is_certified(self, plus_drawing):
        ledger = audit(plus_drawing, crossed(plus_drawing))
        assert ledger.verdict.certified
        assert all(ledger.total(phase) == -8 for phase in ("ch", "ch1", "ch2"))
        bound = e1_bound(ledger, plus_drawing.n)
        assert (bound.e1, bound.bound, bound.holds) == (2, 8, True)

    def test_lonely_lens_fails(self, lens_drawing):
        p = crossed(lens_drawing)
        bends = convex_bends(lens_drawing, p)
        assert [b.edge for b in bends] == ["f"]
        ledger = audit(lens_drawing, p)
        assert ledger.lenses == (bends[0].face,)
        assert ledger.verdict.describe() == "failed(unmatched-lens)"
        with pytest.raises(NotCertified):
            e1_bound(ledger, lens_drawing.n)

    def test_lens_takes_a_unit_from_the_donor(self, lens_with_donor):
        p = crossed(lens_with_donor)
        ledger = audit(lens_with_donor, p)
        assert ledger.verdict.certified
        assert ledger.vertex_floor_ok
        assert len(ledger.lens_matching) == 1
        lens = ledger.lenses[0]
        assert ledger.face_charge["ch1"][lens] == -1
        assert ledger.face_charge["ch2"][lens] == 0
        donor = next(key for key, size in ledger.face_size.items() if size == 12)
        assert ledger.face_charge["ch2"][donor] == 8
        assert ledger.total("ch2") == -8

    def test_phase2_needs_phase1(self, plus_drawing):
        with pytest.raises(PreconditionViolated):
            phase2(initial_charges(crossed(plus_drawing)))

    def test_full_planarization_is_rejected(self, square_with_diagonals):
        with pytest.raises(PreconditionViolated):
            initial_charges(planarize(square_with_diagonals))

    def test_report(self, lens_with_donor):
        report = charge_audit_report(lens_with_donor)
        assert report["verdict"] == "certified"
        assert report["totals"] == {"ch": -8, "ch1": -8, "ch2": -8}
        assert report["matched_lenses"] == 1
        assert report["e1_bound"]["holds"]


class TestPerFaceBound:
    def test_face_bound_value(self):
        assert face_bound_value(4, 0, 0, 1) == 4
        assert face_bound_value(11, 1, 1, 3) == 26

    def test_bound_needs_a_good_face(self):
        with pytest.raises(FaceNotGood):
            face_bound(FaceStats(d=4, l=4, m=0, i=0, b=1, good=False))

    def test_square_face_holds_its_diagonals(self, square_with_diagonals):
        p = planarize(square_with_diagonals)
        goodness = good_edges(square_with_diagonals, p)
        audits = {a.face: a for a in face_bound_audit(p, goodness)}
        inner = next(f.face for f in goodness.faces if not f.outer)
        outer = next(f.face for f in goodness.faces if f.outer)
        assert (audits[inner].bound, audits[inner].actual, audits[inner].ok) == (4, 2, True)
        assert audits[outer].bound is None

    def test_surrounding_face_is_twice_as_long(self, square_with_diagonals):
        p = planarize(square_with_diagonals)
        goodness = good_edges(square_with_diagonals, p)
        inner = next(f.face for f in goodness.faces if not f.outer)
        [surround] = surround_check(p, inner, goodness)
        assert surround.block == ("s12", "s23", "s34", "s41")
        assert surround.surrounding_length == 8
        assert surround.ok

    def test_blocks_of_the_heptagon_are_surrounded(self, good_heptagon_face):
        p = planarize(good_heptagon_face)
        goodness = good_edges(good_heptagon_face, p)
        inner = next(f.face for f in goodness.faces if not f.outer)
        found = {s.block: (s.length, s.surrounding_length) for s in surround_check(p, inner, goodness)}
        assert found == {
            ("e13", "e34", "e45", "e56", "e67", "e78", "e81"): (7, 15),
            ("e12",): (1, 3),
            ("e910",): (1, 11),
        }
        audits = {a.face: a for a in face_bound_audit(p, goodness)}
        assert (audits[inner].bound, audits[inner].actual, audits[inner].ok) == (26, 8, True)

    def test_surrounding_length_ignores_other_holes(self):
        d = make_drawing(
            {
                "v1": (0, 0), "v2": (16, 0), "v3": (16, 16), "v4": (0, 16),
                "a": (6, 2), "b": (10, 2), "c": (8, 1), "d": (8, 3),
            },
            [
                ("s12", "v1", "v2"), ("s23", "v2", "v3"), ("s34", "v3", "v4"), ("s41", "v4", "v1"),
                ("d13", "v1", "v3"), ("d24", "v2", "v4"), ("ab", "a", "b"), ("cd", "c", "d"),
            ],
        )
        p = planarize(d)
        goodness = good_edges(d, p)
        inner = next(f.face for f in goodness.faces if not f.outer)
        [surround] = surround_check(p, inner, goodness)
        assert surround.block == ("s12", "s23", "s34", "s41")
        assert surround.surrounding_length == 8

    def test_surround_needs_a_good_face(self, square_with_diagonals):
        p = planarize(square_with_diagonals)
        goodness = good_edges(square_with_diagonals, p)
        outer = next(f.face for f in goodness.faces if f.outer)
        with pytest.raises(FaceNotGood):
            surround_check(p, outer, goodness)


def test_fractions_stay_exact(lens_with_donor):
    ledger = audit(lens_with_donor, crossed(lens_with_donor))
    assert all(isinstance(v, Fraction) for v in ledger.vertex_charge["ch1"].values())


class TestCorpus:
    def test_initial_charges_sum_to_minus_eight_per_component(self):
        checked = 0
        for d in corpus(260, n_min=5, n_max=10, seed=11):
            p = crossed(d)
            if not p.nodes:
                continue
            ledger = initial_charges(p)
            totals = ledger.component_totals()
            assert len(totals) == ledger.component_count == p.component_count()
            assert set(totals.values()) == {Fraction(-8)}
            checked += 1
        assert checked >= 200

    def test_certified_audits_respect_the_e1_bound(self):
        for d in corpus(60, seed=3):
            p = crossed(d)
            if not p.nodes:
                continue
            ledger = audit(d, p)
            if ledger.verdict.certified:
                assert e1_bound(ledger, d.n).holds

    @pytest.mark.parametrize("levels", [1, 2])
    def test_generated_family_is_certified(self, levels):
        g = generate(levels)
        ledger = audit(g, crossed(g))
        assert ledger.verdict.certified
        assert ledger.total("ch2") == ledger.total("ch")
        bound = e1_bound(ledger, g.n)
        assert bound.holds
        assert bound.e1 == 50 * levels + 10
