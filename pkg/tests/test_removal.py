from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from rac.errors import OrderViolation, PreconditionViolated, UnknownT
from rac.planarize import FaceStats, small_face_catalogue
from rac.removal import (
    RemovalState,
    Triangulation,
    bfs_removal_order,
    canonical_fan,
    coarse_optimum,
    coarse_step_delta,
    contribution,
    potential_bound,
    random_removal,
    random_triangulation,
    refined_optimum,
    remove_step,
    removal_sim,
    simulate,
    tau,
)


def fan(n: int) -> Triangulation:
    return Triangulation.from_faces(canonical_fan(n))


def run(tri: Triangulation, *edges):
    state = RemovalState(tri)
    return state, [state.remove(e) for e in edges]


class TestTriangulation:
    def test_fan_counts(self, k4):
        assert len(k4.edges) == 6
        assert len(k4.faces()) == 4
        assert all(len(f) == 3 for f in k4.faces())

    def test_open_surface_is_rejected(self):
        with pytest.raises(PreconditionViolated):
            Triangulation.from_faces([(0, 1, 2)])

    def test_fan_needs_four_vertices(self):
        with pytest.raises(PreconditionViolated):
            canonical_fan(3)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_triangulation_is_simple(self, seed):
        tri = random_triangulation(9, seed)
        assert len(tri.edges) == 3 * 9 - 6
        assert len(tri.faces()) == 2 * 9 - 4
        assert len({frozenset((u, v)) for _, u, v in tri.edges}) == len(tri.edges)


class TestSingleSteps:
    def test_two_triangles_make_a_quadrilateral(self, k4):
        _, [step] = run(k4, "0-2")
        assert (step.label, step.t, step.shape) == ("small-t1", 1, (4, 0, 0, 1))
        assert step.delta == Fraction(8, 3)
        assert step.within_step_budget
        assert (step.coarse_case, step.coarse_delta) == ("two-triangles", 8)

    def test_theta_graph(self, theta3):
        _, [step] = run(theta3, "0-2")
        assert (step.label, step.shape) == ("small-t1", (3, 1, 0, 2))

    def test_digon_with_apex(self, digon_apex):
        _, steps = run(digon_apex, "0-3", "1-3")
        assert [s.shape for s in steps] == [(3, 1, 0, 2), (3, 0, 1, 1)]
        assert steps[-1].t == 2

    def test_isolating_the_apex(self, k4):
        _, steps = run(k4, "0-1", "0-2", "0-3")
        assert steps[1].shape == (4, 1, 0, 2)
        assert (steps[2].label, steps[2].t, steps[2].shape) == ("small-t3", 3, (4, 0, 1, 1))
        assert steps[2].delta == Fraction(2, 3)
        assert steps[2].tau_after == 6

    def test_path_then_bridge(self, k4):
        state, steps = run(k4, "1-2", "2-3", "0-3")
        assert (steps[-1].t, steps[-1].shape, steps[-1].tau_after) == (3, (4, 2, 0, 3), 8)
        bridge = state.remove("0-1")
        assert (bridge.label, bridge.t, bridge.delta) == ("C1c", 4, 0)
        assert bridge.coarse_case == "bridge"

    def test_fans(self, fan5):
        _, steps = run(fan5, "0-2", "0-3", "0-4")
        assert [s.shape for s in steps[1:]] == [(5, 0, 0, 1), (5, 1, 0, 2)]
        assert [s.tau_after for s in steps[1:]] == [Fraction(16, 3), 8]
        _, steps = run(fan(6), "0-2", "0-3", "0-4")
        assert (steps[-1].shape, steps[-1].tau_after) == ((6, 0, 0, 1), 8)

    def test_every_catalogue_shape_is_reached(self, k4, fan5, theta3, digon_apex):
        reached = set()
        for tri, edges in [
            (k4, ("0-2",)),
            (k4, ("0-1", "0-2", "0-3")),
            (k4, ("1-2", "2-3", "0-3")),
            (fan5, ("0-2", "0-3", "0-4")),
            (fan(6), ("0-2", "0-3", "0-4")),
            (theta3, ("0-2",)),
            (digon_apex, ("0-3", "1-3")),
        ]:
            _, steps = run(tri, *edges)
            reached |= {(s.t, s.shape) for s in steps}
        assert {(e.t, e.shape) for e in small_face_catalogue()} <= reached

    def test_merging_two_created_faces_is_refused(self):
        state, _ = run(fan(6), "0-2", "0-4")
        with pytest.raises(OrderViolation):
            state.remove("0-3")

    def test_edge_removed_twice(self, k4):
        state, _ = run(k4, "0-2")
        with pytest.raises(PreconditionViolated):
            state.remove("0-2")

    def test_remove_step_leaves_input_alone(self, k4):
        state = RemovalState(k4)
        after, label, delta = remove_step(state, "0-2")
        assert (label, delta) == ("small-t1", Fraction(8, 3))
        assert tau(state) == 0
        assert tau(after) == Fraction(8, 3)


class TestPotential:
    def test_contribution_needs_provenance(self):
        with pytest.raises(UnknownT):
            contribution(FaceStats(d=3, l=3, m=0, i=0, b=1), None)

    @pytest.mark.parametrize(
        "d1, d2, merged, expected",
        [
            (3, 3, 4, ("two-triangles", 8)),
            (3, 5, 6, ("triangle-face", 4)),
            (4, 5, 7, ("two-faces", 0)),
            (5, None, 5, ("bridge", 0)),
        ],
    )
    def test_coarse_cases(self, d1, d2, merged, expected):
        assert coarse_step_delta(d1, d2, merged) == expected

    def test_triangulation_bounds(self, k4):
        report = potential_bound(RemovalState(k4))
        assert (report.k, report.eq4, report.tau, report.coarse) == (0, 0, 0, 0)
        assert report.planar_edges == 6

    def test_bounds_after_one_removal(self, k4):
        state, _ = run(k4, "0-2")
        report = potential_bound(state)
        assert (report.f1, report.f2, report.eq4, report.tau) == (1, 0, 2, Fraction(8, 3))
        assert report.refined_ok and report.coarse_ok
        assert (report.charge_bound, report.coarse_bound) == (13, 13)
        assert report.refined_bound == Fraction(23, 3)

    def test_bookends(self):
        assert coarse_optimum(10) == (4, 52)
        assert refined_optimum(10) == (12, 44)

    @pytest.mark.parametrize("n", range(5, 101))
    def test_bookends_over_n(self, n):
        assert coarse_optimum(n) == (Fraction(n, 2) - 1, Fraction(13 * n, 2) - 13)
        assert refined_optimum(n) == (Fraction(3 * (n - 2), 2), Fraction(11 * n, 2) - 11)


class TestSimulation:
    def test_bfs_order_single_edge(self, k4):
        assert bfs_removal_order(k4, ["0-2"]) == ["0-2"]

    def test_bfs_order_follows_the_dual(self, fan5):
        assert bfs_removal_order(fan5, ["0-3", "0-2"]) == ["0-2", "0-3"]

    def test_simulate(self, fan5):
        _, trace = simulate(fan5, ["0-3", "0-2"], seed=7)
        assert trace.labels() == ["small-t1", "small-t2"]
        assert trace.final_tau == Fraction(16, 3)
        assert trace.to_dict()["final_tau"] == "16/3"

    def test_k_out_of_range(self):
        with pytest.raises(PreconditionViolated):
            random_removal(6, 100, seed=0)

    @settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(n=st.integers(min_value=5, max_value=12), data=st.data(), seed=st.integers(min_value=0, max_value=10_000))
    def test_random_removals_stay_within_budget(self, n, data, seed):
        k = data.draw(st.integers(min_value=0, max_value=3 * n - 6))
        state, trace = removal_sim(n, k, seed)
        assert trace.k == k
        assert trace.bound_holds
        assert trace.coarse_holds
        report = potential_bound(state, trace)
        assert report.refined_ok
        assert report.eq4 <= report.tau
