"""Optimal multi-IRS beam routing with closed-form cooperative beamforming."""

from .beamforming import (
    RouteEvaluation,
    closed_form_power,
    evaluate_direct,
    mrt_vector,
    optimal_phases,
)
from .benchmarks import compare, max_hop_route, min_pathloss_route, myopic_route
from .errors import (
    GraphCycleError,
    InfeasibleRouteError,
    InvalidParameterError,
    IrsRouteError,
    NegativeWeightError,
    NoLosError,
    NoRouteError,
    ScenarioParseError,
    ScenarioValidationError,
    SolverInconsistencyError,
)
from .geometry import (
    AnglePair,
    Node,
    NodeKind,
    Scenario,
    SystemParams,
    cascaded_path_gain,
    hop_channel,
    route_distance,
    validate_route,
)
from .graph import RoutingGraph, build_graph, build_los_matrix, min_edge_weight, to_dot
from .paths import (
    HopIndexedPaths,
    PathResult,
    ahsp_dp,
    brute_force_optimum,
    dag_shortest_path,
    dijkstra,
    optimal_route,
    shortest_path,
)
from .scenario_io import load_example_scenario, load_scenario, parse_scenario, serialize_scenario

__version__ = "0.1.0"
