import math

import numpy as np
import pytest

from helpers import PAPER_BETA, make_scenario, random_scenario
from irsroute.beamforming import closed_form_power
from irsroute.errors import GraphCycleError, InvalidParameterError, ScenarioValidationError
from irsroute.geometry import validate_route
from irsroute.graph import (
    RoutingGraph,
    build_graph,
    build_los_matrix,
    edge_weight,
    min_edge_weight,
    to_dot,
)
from irsroute.paths import simple_paths


class TestLosMatrix:
    def test_threshold_boundary_inclusive(self):
        s = make_scenario([(0, 0, 0), (12, 0, 0), (24, 0, 0)], threshold=12)
        assert s.distances[0, 1] == 12.0
        assert build_los_matrix(s)[0, 1] == 1

    def test_zero_diagonal_and_symmetry(self, rng):
        s = random_scenario(rng, 8)
        los = build_los_matrix(s)
        assert np.all(np.diag(los) == 0)
        np.testing.assert_array_equal(los, los.T)

    def test_collinear_pairs(self):
        s = make_scenario([(0, 0, 0), (10, 0, 0), (25, 0, 0)], threshold=12)
        np.testing.assert_array_equal(build_los_matrix(s), [[0, 1, 0], [1, 0, 0], [0, 0, 0]])

    def test_explicit_matrix_passthrough(self):
        rows = ((0, 1, 0), (1, 0, 1), (0, 1, 0))
        s = make_scenario([(0, 0, 0), (0, 50, 0), (0, 100, 0)], los=rows)
        np.testing.assert_array_equal(build_los_matrix(s), rows)

    def test_explicit_matrix_rejected(self):
        with pytest.raises(ScenarioValidationError):
            make_scenario([(0, 0, 0), (0, 5, 0), (0, 10, 0)], los=((0, 1), (1, 0)))


class TestValidateRoute:
    los = np.array(
        [
            [0, 1, 1, 0, 0],
            [1, 0, 1, 1, 0],
            [1, 1, 0, 1, 1],
            [0, 1, 1, 0, 1],
            [0, 0, 1, 1, 0],
        ]
    )

    def test_repeated_irs(self):
        assert not validate_route((3, 3), self.los)

    def test_two_hop(self):
        assert validate_route((1, 3), self.los)

    def test_missing_terminal_link(self):
        assert not validate_route((1,), self.los)

    def test_out_of_range_and_empty(self):
        assert not validate_route((), self.los)
        assert not validate_route((0, 2), self.los)
        assert not validate_route((2, 4), self.los)


class TestBuildGraph:
    def test_bs_edges_carry_log_weight(self):
        s = make_scenario([(0, 0, 0), (0, 5, 0), (3, 9, 0)], m1=4, m2=5, threshold=12)
        g = build_graph(s)
        expected = math.log(5 / (20 * math.sqrt(s.params.ref_path_gain)))
        assert g.weight_of(0, 1) == pytest.approx(expected, rel=1e-14)

    def test_outward_rule(self):
        # IRS 1 is 5 m from the BS, IRS 2 only 3 m
        s = make_scenario([(0, 0, 0), (5, 0, 0), (0, 3, 0), (6, 6, 0)], threshold=12)
        edges = {(a, b) for a, b, _ in build_graph(s).edges}
        assert (2, 1) in edges and (1, 2) not in edges

    def test_equidistant_irs_get_no_edge(self):
        s = make_scenario([(0, 0, 0), (5, 0, 0), (0, 5, 0), (6, 6, 0)], threshold=12)
        edges = {(a, b) for a, b, _ in build_graph(s).edges}
        assert (1, 2) not in edges and (2, 1) not in edges

    def test_no_edge_into_source_or_out_of_sink(self, rng):
        for _ in range(10):
            g = build_graph(random_scenario(rng, 8))
            assert all(d != 0 and s != g.sink for s, d, _ in g.edges)

    def test_user_edges_exempt_from_outward_rule(self):
        # user closer to the BS than the IRS
        s = make_scenario([(0, 0, 0), (0, 10, 0), (0, 5, 2)], threshold=12)
        edges = {(a, b) for a, b, _ in build_graph(s).edges}
        assert edges == {(0, 1), (1, 2)}

    def test_negative_weight_at_900_elements(self):
        w = edge_weight(3.0, 900, PAPER_BETA)
        assert w == pytest.approx(math.log(3 / (900 * math.sqrt(PAPER_BETA))), rel=1e-14)
        assert w == pytest.approx(-0.359, abs=5e-4)
        assert w < 0

    def test_acyclic_random(self, rng):
        for _ in range(30):
            assert build_graph(random_scenario(rng, 10, threshold=rng.uniform(6, 20))).is_acyclic()

    def test_rule_free_graph_can_be_cyclic(self):
        s = make_scenario([(0, 0, 0), (5, 0, 0), (0, 3, 0), (6, 6, 0)], threshold=12)
        g = build_graph(s, outward_only=False)
        assert not g.is_acyclic()
        with pytest.raises(GraphCycleError):
            g.topological_order()

    def test_edge_count_shrinks_with_threshold(self, rng):
        s = random_scenario(rng, 10, threshold=30.0)
        counts = [len(build_graph(s.with_los_threshold(t)).edges) for t in (30, 20, 15, 12, 9, 6, 3)]
        assert counts == sorted(counts, reverse=True)

    def test_edge_set_independent_of_m_and_weights_shift(self, rng):
        s = random_scenario(rng, 10)
        g1 = build_graph(s.with_elements(20, 20))
        g2 = build_graph(s.with_elements(30, 50))
        assert [(a, b) for a, b, _ in g1.edges] == [(a, b) for a, b, _ in g2.edges]
        shift = math.log(1500 / 400)
        for e1, e2 in zip(g1.edges, g2.edges):
            assert e2.weight == pytest.approx(e1.weight - shift, abs=1e-12)

    def test_path_weight_tracks_channel_power(self, rng):
        for _ in range(10):
            s = random_scenario(rng, 8, m1=int(rng.integers(5, 40)), m2=int(rng.integers(5, 40)),
                                n=int(rng.integers(1, 8)))
            g = build_graph(s)
            m, n = s.params.n_elements, s.params.bs_antennas
            paths = list(simple_paths(g))
            for p in paths:
                power = closed_form_power(s, p.route).power
                assert p.total_weight == pytest.approx(
                    0.5 * math.log(1 / power) - 0.5 * math.log(m * m / n), abs=1e-9
                )
            powers = [closed_form_power(s, p.route).power for p in paths]
            for i in range(len(paths)):
                for j in range(len(paths)):
                    if paths[i].total_weight < paths[j].total_weight - 1e-9:
                        assert powers[i] > powers[j]


class TestGraphStructure:
    def test_min_edge_weight(self):
        assert min_edge_weight(RoutingGraph(2, ((0, 1, 0.5),))) == 0.5
        assert min_edge_weight(RoutingGraph(3, ((0, 1, 0.2), (1, 2, -0.1), (0, 2, 0.7)))) == -0.1
        with pytest.raises(InvalidParameterError):
            min_edge_weight(RoutingGraph(3, ()))

    def test_example_negative_at_900(self, example):
        assert min_edge_weight(build_graph(example.with_elements(30, 30))) < 0

    @pytest.mark.parametrize(
        "edges", [((0, 0, 1.0),), ((0, 5, 1.0),), ((0, 1, 1.0), (0, 1, 2.0))]
    )
    def test_invalid_edges(self, edges):
        with pytest.raises(InvalidParameterError):
            RoutingGraph(3, edges)


class TestDot:
    def test_minimal(self):
        s = make_scenario([(0, 0, 0), (0, 5, 0), (0, 10, 0)], threshold=12)
        dot = to_dot(build_graph(s), s)
        assert dot.startswith("digraph routing {")
        assert dot.count("->") == 2
        assert sum(1 for line in dot.splitlines() if "[label=" in line and "->" not in line) == 3

    def test_negative_edges_marked(self):
        g = RoutingGraph(3, ((0, 1, -0.25), (1, 2, 0.123456)))
        dot = to_dot(g)
        assert '0 -> 1 [label="-0.2500", color=red, fontcolor=red, class="negative"];' in dot
        assert '1 -> 2 [label="0.1235"];' in dot
