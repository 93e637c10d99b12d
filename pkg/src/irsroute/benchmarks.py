"""Baseline routing schemes and the per-M comparison harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .beamforming import closed_form_power
from .errors import NoRouteError
from .geometry import Route, Scenario
from .graph import build_graph
from .paths import ahsp_dp, optimal_route, shortest_path

SCHEMES = ("proposed", "max-hop", "min-pathloss", "myopic")


def max_hop_route(scenario: Scenario) -> Route:
    """Shortest path among those with the largest achievable number of IRSs."""
    path = ahsp_dp(build_graph(scenario)).max_hops()
    if path is None or not path.route:
        raise NoRouteError("no route for the max-hop scheme")
    return path.route


def min_pathloss_route(scenario: Scenario) -> Route:
    """Route with the largest cascaded path gain, i.e. the optimum at ``M = 1``."""
    path = shortest_path(build_graph(scenario, n_elements=1))
    if path is None or not path.route:
        raise NoRouteError("no route for the min-pathloss scheme")
    return path.route


def myopic_route(scenario: Scenario) -> Route:
    """Greedy nearest-neighbour walk from the BS.

    The walk ends at the user as soon as the current IRS sees it. Otherwise
    it hops to the closest unvisited IRS that is in LoS and farther from the
    BS than the current node (ties go to the smaller id). A walk that gets
    stuck raises :class:`NoRouteError`; there is no backtracking.
    """
    los, d = scenario.los, scenario.distances
    user = scenario.user_id
    current, route = 0, []
    while True:
        if route and los[current, user]:
            return tuple(route)
        candidates = [
            j
            for j in range(1, user)
            if j not in route and los[current, j] and (current == 0 or d[j, 0] > d[current, 0])
        ]
        if not candidates:
            raise NoRouteError(f"myopic walk stranded at node {current} after {route}")
        current = min(candidates, key=lambda j: (d[current, j], j))
        route.append(current)


@dataclass(frozen=True)
class SchemeResult:
    route: Route
    power: float
    power_db: float

    @property
    def hop_count(self) -> int:
        return len(self.route)


@dataclass(frozen=True)
class ComparisonRow:
    m_value: int
    irs_rows: int
    irs_cols: int
    schemes: dict[str, SchemeResult | None] = field(default_factory=dict)

    def __getitem__(self, scheme: str) -> SchemeResult | None:
        return self.schemes[scheme]


def _score(scenario: Scenario, route: Route) -> SchemeResult:
    ev = closed_form_power(scenario, route)
    return SchemeResult(route, ev.power, ev.power_db)


def compare_at(scenario: Scenario) -> ComparisonRow:
    """All four schemes at the scenario's own element count."""
    finders = {
        "proposed": lambda s: optimal_route(s)[0],
        "max-hop": max_hop_route,
        "min-pathloss": min_pathloss_route,
        "myopic": myopic_route,
    }
    results: dict[str, SchemeResult | None] = {}
    for name in SCHEMES:
        try:
            results[name] = _score(scenario, finders[name](scenario))
        except NoRouteError:
            results[name] = None
    p = scenario.params
    return ComparisonRow(p.n_elements, p.irs_rows, p.irs_cols, results)


def compare(scenario: Scenario, m_values: Sequence[tuple[int, int]]) -> list[ComparisonRow]:
    """One :class:`ComparisonRow` per ``(M1, M2)``, sorted by ascending ``M``."""
    if not m_values:
        raise ValueError("m_values must not be empty")
    ordered = sorted(m_values, key=lambda mm: (mm[0] * mm[1], mm[0], mm[1]))
    return [compare_at(scenario.with_elements(m1, m2)) for m1, m2 in ordered]
