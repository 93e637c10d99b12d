"""Directed routing graph whose shortest 0 -> J+1 path is the optimal route."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import GraphCycleError, InvalidParameterError
from .geometry import NodeKind, Scenario, check_los_matrix, validate_route

__all__ = [
    "Edge",
    "RoutingGraph",
    "build_graph",
    "build_los_matrix",
    "edge_weight",
    "min_edge_weight",
    "to_dot",
    "validate_route",
]


class Edge(NamedTuple):
    src: int
    dst: int
    weight: float


@dataclass(frozen=True)
class RoutingGraph:
    """Weighted digraph on vertices ``0..vertex_count-1``.

    Vertex 0 is the source (BS) and ``vertex_count - 1`` the sink (user).
    Edges are kept sorted by (src, dst) so every solver iterates them in the
    same order.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 2:
            raise InvalidParameterError("a routing graph needs at least a source and a sink")
        edges = tuple(sorted(Edge(int(s), int(d), float(w)) for s, d, w in self.edges))
        seen = set()
        for s, d, _ in edges:
            if not (0 <= s < self.vertex_count and 0 <= d < self.vertex_count) or s == d:
                raise InvalidParameterError(f"invalid edge ({s}, {d})")
            if (s, d) in seen:
                raise InvalidParameterError(f"duplicate edge ({s}, {d})")
            seen.add((s, d))
        object.__setattr__(self, "edges", edges)

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.vertex_count - 1

    def successors(self) -> list[list[tuple[int, float]]]:
        out: list[list[tuple[int, float]]] = [[] for _ in range(self.vertex_count)]
        for s, d, w in self.edges:
            out[s].append((d, w))
        return out

    def weight_of(self, src: int, dst: int) -> float:
        for s, d, w in self.edges:
            if s == src and d == dst:
                return w
        raise KeyError((src, dst))

    def path_weight(self, vertices: Iterable[int]) -> float:
        """Sum edge weights along ``vertices`` from the source end."""
        vertices = list(vertices)
        lookup = {(s, d): w for s, d, w in self.edges}
        total = 0.0
        for edge in zip(vertices[:-1], vertices[1:]):
            total = total + lookup[edge]
        return total

    def topological_order(self) -> list[int]:
        """Kahn's algorithm; smallest ready vertex first for determinism."""
        indegree = [0] * self.vertex_count
        succ = self.successors()
        for s, d, _ in self.edges:
            indegree[d] += 1
        ready = deque(v for v in range(self.vertex_count) if indegree[v] == 0)
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            for u, _ in succ[v]:
                indegree[u] -= 1
                if indegree[u] == 0:
                    ready.append(u)
        if len(order) != self.vertex_count:
            raise GraphCycleError("routing graph contains a cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except GraphCycleError:
            return False
        return True


def build_los_matrix(scenario: Scenario) -> np.ndarray:
    """LoS condition matrix for ``scenario`` (threshold rule or validated explicit rows)."""
    if scenario.los_matrix is not None:
        return check_los_matrix(scenario.los_matrix, len(scenario.nodes))
    return scenario.los


def edge_weight(distance_m: float, n_elements: int, ref_path_gain: float) -> float:
    """``ln(d / (M sqrt(beta)))``, stored as ``ln d - ln M - ln(beta) / 2``."""
    return math.log(distance_m) - math.log(n_elements) - 0.5 * math.log(ref_path_gain)


def build_graph(
    scenario: Scenario,
    los: np.ndarray | None = None,
    *,
    n_elements: int | None = None,
    outward_only: bool = True,
) -> RoutingGraph:
    """Build the routing graph of ``scenario``.

    Edges leave the BS towards every IRS it sees, enter the user from every
    IRS that sees it, and join IRS ``i`` to IRS ``j`` when they see each other
    and ``j`` is strictly farther from the BS than ``i``. ``outward_only=False``
    drops that last restriction; the result may then contain cycles and is
    only meant for the brute-force search.

    ``n_elements`` overrides ``M`` in the weights (``1`` gives pure path loss).
    """
    if los is None:
        los = build_los_matrix(scenario)
    else:
        los = check_los_matrix(los, len(scenario.nodes))
    m = scenario.params.n_elements if n_elements is None else n_elements
    if m < 1:
        raise InvalidParameterError(f"n_elements must be >= 1, got {m}")
    beta = scenario.params.ref_path_gain
    d = scenario.distances
    user = scenario.user_id
    irs = range(1, user)

    pairs = [(0, j) for j in irs if los[0, j]]
    for i in irs:
        for j in irs:
            if i != j and los[i, j] and (not outward_only or d[j, 0] > d[i, 0]):
                pairs.append((i, j))
    pairs.extend((j, user) for j in irs if los[j, user])
    edges = [Edge(i, j, edge_weight(d[i, j], m, beta)) for i, j in pairs]
    return RoutingGraph(len(scenario.nodes), tuple(edges))


def min_edge_weight(graph: RoutingGraph) -> float:
    if not graph.edges:
        raise InvalidParameterError("graph has no edges")
    return min(w for _, _, w in graph.edges)


def to_dot(graph: RoutingGraph, scenario: Scenario | None = None, name: str = "routing") -> str:
    """Render ``graph`` as Graphviz DOT text.

    Weights are printed with 4 decimals; negative-weight edges get
    ``color=red`` and ``class="negative"``. When ``scenario`` is given, vertex
    labels include node kind and coordinates.
    """
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(graph.vertex_count):
        if scenario is not None:
            node = scenario.nodes[v]
            x, y, z = node.position
            label = f"{v} {node.kind.value}\\n({x:g}, {y:g}, {z:g})"
            shape = "box" if node.kind is not NodeKind.IRS else "ellipse"
        else:
            label, shape = str(v), "ellipse"
        lines.append(f'  {v} [label="{label}", shape={shape}];')
    for s, d, w in graph.edges:
        attrs = f'label="{w:.4f}"'
        if w < 0:
            attrs += ', color=red, fontcolor=red, class="negative"'
        lines.append(f"  {s} -> {d} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
