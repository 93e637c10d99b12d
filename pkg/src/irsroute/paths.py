"""Exact shortest-path solvers on the routing graph.

All solvers share one ordering on candidate paths: lower total weight wins,
then fewer vertices, then the lexicographically smaller vertex sequence.
They also accumulate weights in the same order (source outwards), so the
same path always gets bit-identical totals regardless of solver.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterator

from .beamforming import RouteEvaluation, closed_form_power
from .errors import (
    InvalidParameterError,
    NegativeWeightError,
    NoRouteError,
    SolverInconsistencyError,
)
from .geometry import Route, Scenario
from .graph import RoutingGraph, build_graph, min_edge_weight

AGREEMENT_TOL = 1e-9
BRUTE_FORCE_MAX_IRS = 12


@dataclass(frozen=True)
class PathResult:
    vertex_sequence: tuple[int, ...]
    total_weight: float

    @property
    def hop_count(self) -> int:
        """Number of intermediate (IRS) vertices."""
        return len(self.vertex_sequence) - 2

    @property
    def route(self) -> Route:
        return self.vertex_sequence[1:-1]

    def key(self):
        return (self.total_weight, len(self.vertex_sequence), self.vertex_sequence)


@dataclass(frozen=True)
class HopIndexedPaths:
    """``paths[k]`` is the best source -> sink path with exactly ``k`` intermediate vertices."""

    paths: tuple[PathResult | None, ...]

    def __getitem__(self, k: int) -> PathResult | None:
        return self.paths[k]

    def __len__(self) -> int:
        return len(self.paths)

    def present(self) -> list[PathResult]:
        return [p for p in self.paths if p is not None]

    def best(self) -> PathResult | None:
        found = self.present()
        return min(found, key=PathResult.key) if found else None

    def max_hops(self) -> PathResult | None:
        found = self.present()
        return found[-1] if found else None


def _better(candidate: PathResult, incumbent: PathResult | None) -> bool:
    return incumbent is None or candidate.key() < incumbent.key()


def dijkstra(graph: RoutingGraph, *, check_negative: bool = True) -> PathResult | None:
    """Label-setting Dijkstra from source to sink.

    With ``check_negative=False`` negative edges are tolerated and the
    algorithm behaves as the plain greedy it is: settled vertices are never
    reopened, so the answer may be suboptimal.
    """
    if check_negative and graph.edges and min_edge_weight(graph) < 0:
        raise NegativeWeightError("dijkstra requires non-negative edge weights")
    succ = graph.successors()
    best: dict[int, tuple] = {graph.source: (0.0, 1, (graph.source,))}
    heap = [best[graph.source]]
    settled = set()
    while heap:
        weight, length, seq = heapq.heappop(heap)
        v = seq[-1]
        if v in settled:
            continue
        settled.add(v)
        if v == graph.sink:
            return PathResult(seq, weight)
        for u, w in succ[v]:
            if u in settled:
                continue
            label = (weight + w, length + 1, seq + (u,))
            if u not in best or label < best[u]:
                best[u] = label
                heapq.heappush(heap, label)
    return None


def ahsp_dp(graph: RoutingGraph) -> HopIndexedPaths:
    """All-hops shortest paths from the source to the sink.

    Layer ``k`` holds, for every vertex, the best path reaching it with
    exactly ``k + 1`` edges, built from layer ``k - 1`` plus one incoming
    edge. Vertices without such a path are simply missing from the layer.
    The graph must be acyclic for the layered paths to be simple, which
    ``build_graph`` guarantees.
    """
    source, sink = graph.source, graph.sink
    layer: dict[int, PathResult] = {}
    for s, d, w in graph.edges:
        if s == source:
            layer[d] = PathResult((source, d), 0.0 + w)
    found = [layer.get(sink)]
    for _ in range(1, graph.vertex_count - 1):
        nxt: dict[int, PathResult] = {}
        for s, d, w in graph.edges:
            prefix = layer.get(s)
            if prefix is None or s == sink:
                continue
            cand = PathResult(prefix.vertex_sequence + (d,), prefix.total_weight + w)
            if _better(cand, nxt.get(d)):
                nxt[d] = cand
        layer = nxt
        found.append(layer.get(sink))
    return HopIndexedPaths(tuple(found))


def dag_shortest_path(graph: RoutingGraph) -> PathResult | None:
    """Single relaxation pass in topological order; valid with negative weights."""
    order = graph.topological_order()
    succ = graph.successors()
    labels: dict[int, PathResult] = {graph.source: PathResult((graph.source,), 0.0)}
    for v in order:
        here = labels.get(v)
        if here is None or v == graph.sink:
            continue
        for u, w in succ[v]:
            cand = PathResult(here.vertex_sequence + (u,), here.total_weight + w)
            if _better(cand, labels.get(u)):
                labels[u] = cand
    return labels.get(graph.sink)


def simple_paths(graph: RoutingGraph) -> Iterator[PathResult]:
    """Every simple source -> sink path, by depth-first search."""
    succ = graph.successors()
    sink = graph.sink

    def walk(seq, weight, visited):
        v = seq[-1]
        if v == sink:
            yield PathResult(seq, weight)
            return
        for u, w in succ[v]:
            if u not in visited:
                visited.add(u)
                yield from walk(seq + (u,), weight + w, visited)
                visited.remove(u)

    yield from walk((graph.source,), 0.0, {graph.source})


def brute_force_optimum(graph: RoutingGraph, *, max_irs: int = BRUTE_FORCE_MAX_IRS) -> PathResult | None:
    """Exhaustive minimum over :func:`simple_paths`. Works on cyclic graphs too."""
    if graph.vertex_count - 2 > max_irs:
        raise InvalidParameterError(
            f"brute force is limited to {max_irs} intermediate vertices, graph has {graph.vertex_count - 2}"
        )
    best = None
    for path in simple_paths(graph):
        if _better(path, best):
            best = path
    return best


def select_solver(graph: RoutingGraph) -> str:
    """``"dijkstra"`` when every weight is non-negative, otherwise ``"ahsp"``."""
    if not graph.edges or min_edge_weight(graph) >= 0:
        return "dijkstra"
    return "ahsp"


def shortest_path(graph: RoutingGraph) -> PathResult | None:
    """Shortest source -> sink path, cross-checked against the DAG solver."""
    if select_solver(graph) == "dijkstra":
        result = dijkstra(graph)
    else:
        result = ahsp_dp(graph).best()
    check = dag_shortest_path(graph)
    if (result is None) != (check is None):
        raise SolverInconsistencyError(f"solvers disagree on reachability: {result} vs {check}")
    if result is not None and not math.isclose(
        result.total_weight, check.total_weight, rel_tol=0.0, abs_tol=AGREEMENT_TOL
    ):
        raise SolverInconsistencyError(
            f"solvers disagree: {result.total_weight!r} vs DAG {check.total_weight!r}"
        )
    return result


def optimal_route(scenario: Scenario) -> tuple[Route, RouteEvaluation]:
    """Route maximising the end-to-end channel power, with that power."""
    path = shortest_path(build_graph(scenario))
    if path is None or not path.route:
        raise NoRouteError("the user cannot be reached through any chain of IRSs")
    return path.route, closed_form_power(scenario, path.route)
