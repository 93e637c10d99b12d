"""Scenario geometry, array responses and per-hop LoS channels.

Conventions used throughout:

* The BS carries a ULA along the global x-axis with boresight +y.
* Every IRS carries a URA parallel to the x-z plane, facing +y. Element
  ``m`` (0-based) sits in column ``m // M1`` (horizontal, along x) and row
  ``m % M1`` (vertical, along z).
* Elevation is measured from +z and azimuth from +x in the x-y plane, so a
  node straight in front of an IRS is seen at azimuth pi/2, elevation pi/2.
* Node ``0`` is the BS, nodes ``1..J`` are IRSs and node ``J+1`` is the user.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    InfeasibleRouteError,
    InvalidParameterError,
    NoLosError,
    ScenarioValidationError,
)

SPEED_OF_LIGHT = 2.998e8

Route = tuple[int, ...]


class NodeKind(str, enum.Enum):
    BS = "BS"
    IRS = "IRS"
    USER = "USER"


@dataclass(frozen=True)
class SystemParams:
    """Radio and array parameters shared by all nodes.

    Spacings default to half a wavelength and the reference path gain at
    1 m defaults to the free-space value ``(wavelength / 4 pi) ** 2``.
    """

    wavelength_m: float
    bs_antennas: int
    irs_rows: int
    irs_cols: int
    antenna_spacing_m: float | None = None
    element_spacing_m: float | None = None
    ref_path_gain: float | None = None

    def __post_init__(self):
        if not self.wavelength_m > 0:
            raise InvalidParameterError(f"wavelength must be positive, got {self.wavelength_m}")
        for name in ("bs_antennas", "irs_rows", "irs_cols"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidParameterError(f"{name} must be a positive integer, got {value}")
            object.__setattr__(self, name, int(value))
        half = self.wavelength_m / 2
        if self.antenna_spacing_m is None:
            object.__setattr__(self, "antenna_spacing_m", half)
        if self.element_spacing_m is None:
            object.__setattr__(self, "element_spacing_m", half)
        if self.ref_path_gain is None:
            object.__setattr__(self, "ref_path_gain", (self.wavelength_m / (4 * math.pi)) ** 2)
        if not self.antenna_spacing_m > 0 or not self.element_spacing_m > 0:
            raise InvalidParameterError("antenna and element spacings must be positive")
        if not 0 < self.ref_path_gain < 1:
            raise InvalidParameterError(
                f"reference path gain must lie in (0, 1), got {self.ref_path_gain}"
            )

    @classmethod
    def from_frequency(cls, frequency_hz: float, **kwargs) -> SystemParams:
        if not frequency_hz > 0:
            raise InvalidParameterError(f"carrier frequency must be positive, got {frequency_hz}")
        return cls(wavelength_m=SPEED_OF_LIGHT / frequency_hz, **kwargs)

    @property
    def n_elements(self) -> int:
        """Reflecting elements per IRS, ``M = M1 * M2``."""
        return self.irs_rows * self.irs_cols


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    position: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "kind", NodeKind(self.kind))
        pos = tuple(float(c) for c in self.position)
        if len(pos) != 3 or not all(math.isfinite(c) for c in pos):
            raise InvalidParameterError(f"node {self.id}: position must be 3 finite coordinates")
        object.__setattr__(self, "position", pos)


class AnglePair(NamedTuple):
    azimuth_rad: float
    elevation_rad: float


def check_los_matrix(matrix, size: int | None = None) -> np.ndarray:
    """Validate a binary LoS condition matrix and return it as a read-only array."""
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ScenarioValidationError(f"LoS matrix must be square, got shape {arr.shape}")
    if size is not None and arr.shape[0] != size:
        raise ScenarioValidationError(
            f"LoS matrix must be {size}x{size} for this scenario, got {arr.shape[0]}x{arr.shape[1]}"
        )
    if not np.all((arr == 0) | (arr == 1)):
        raise ScenarioValidationError("LoS matrix entries must be 0 or 1")
    arr = arr.astype(np.int8)
    if np.any(np.diag(arr) != 0):
        raise ScenarioValidationError("LoS matrix must have a zero diagonal")
    if not np.array_equal(arr, arr.T):
        i, j = np.argwhere(arr != arr.T)[0]
        raise ScenarioValidationError(f"LoS matrix is not symmetric: l[{i},{j}] != l[{j},{i}]")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Scenario:
    """A BS, ``J`` IRSs and a user, plus the rule deciding which pairs have LoS.

    Exactly one of ``los_threshold_m`` (LoS iff distance <= threshold) and
    ``los_matrix`` (explicit symmetric 0/1 rows) must be given.
    """

    params: SystemParams
    nodes: tuple[Node, ...]
    los_threshold_m: float | None = None
    los_matrix: tuple[tuple[int, ...], ...] | None = field(default=None)

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda n: n.id))
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 3:
            raise ScenarioValidationError("a scenario needs a BS, at least one IRS and a user")
        ids = [n.id for n in nodes]
        if ids != list(range(len(nodes))):
            raise ScenarioValidationError(f"node ids must be exactly 0..{len(nodes) - 1}, got {ids}")
        kinds = [n.kind for n in nodes]
        if kinds.count(NodeKind.BS) != 1 or kinds.count(NodeKind.USER) != 1:
            raise ScenarioValidationError("a scenario needs exactly one BS and exactly one USER")
        if kinds[0] is not NodeKind.BS:
            raise ScenarioValidationError("node 0 must be the BS")
        if kinds[-1] is not NodeKind.USER:
            raise ScenarioValidationError(f"node {len(nodes) - 1} must be the USER")

        if (self.los_threshold_m is None) == (self.los_matrix is None):
            raise ScenarioValidationError("give exactly one of a LoS threshold or an explicit LoS matrix")
        if self.los_threshold_m is not None:
            if not self.los_threshold_m > 0:
                raise ScenarioValidationError(
                    f"LoS threshold must be positive, got {self.los_threshold_m}"
                )
            object.__setattr__(self, "los_threshold_m", float(self.los_threshold_m))
        else:
            checked = check_los_matrix(self.los_matrix, len(nodes))
            object.__setattr__(self, "los_matrix", tuple(tuple(int(v) for v in row) for row in checked))

        d = self.distances
        iu = np.triu_indices(len(nodes), k=1)
        bad = np.flatnonzero(d[iu] <= 1.0)
        if bad.size:
            i, j = iu[0][bad[0]], iu[1][bad[0]]
            raise ScenarioValidationError(
                f"d_{{{i},{j}}} = {d[i, j]:.4g} m violates far-field > 1 m"
            )

    @property
    def n_irs(self) -> int:
        return len(self.nodes) - 2

    @property
    def user_id(self) -> int:
        return len(self.nodes) - 1

    @cached_property
    def positions(self) -> np.ndarray:
        pos = np.array([n.position for n in self.nodes], dtype=float)
        pos.setflags(write=False)
        return pos

    @cached_property
    def distances(self) -> np.ndarray:
        pos = self.positions
        d = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=-1)
        d.setflags(write=False)
        return d

    @cached_property
    def los(self) -> np.ndarray:
        """The (J+2)x(J+2) LoS condition matrix implied by the policy."""
        if self.los_matrix is not None:
            return check_los_matrix(self.los_matrix)
        link = (self.distances <= self.los_threshold_m).astype(np.int8)
        np.fill_diagonal(link, 0)
        link.setflags(write=False)
        return link

    def with_elements(self, irs_rows: int, irs_cols: int) -> Scenario:
        return replace(self, params=replace(self.params, irs_rows=irs_rows, irs_cols=irs_cols))

    def with_los_threshold(self, threshold_m: float) -> Scenario:
        return replace(self, los_threshold_m=threshold_m, los_matrix=None)


def validate_route(route: Sequence[int], los: np.ndarray) -> bool:
    """Return True iff ``route`` is a feasible reflection path under ``los``.

    A feasible route is non-empty, visits only IRS ids, never repeats an
    IRS, and has LoS on every hop BS -> a_1 -> ... -> a_K -> user.
    """
    route = tuple(route)
    user = los.shape[0] - 1
    if not route or len(set(route)) != len(route):
        return False
    if any(not 1 <= a < user for a in route):
        return False
    hops = zip((0,) + route, route + (user,))
    return all(los[i, j] == 1 for i, j in hops)


def _require_feasible(scenario: Scenario, route: Sequence[int]) -> Route:
    route = tuple(int(a) for a in route)
    if not validate_route(route, scenario.los):
        raise InfeasibleRouteError(f"route {route} is not feasible in this scenario")
    return route


def route_hops(scenario: Scenario, route: Sequence[int]) -> list[tuple[int, int]]:
    """Consecutive (from, to) vertex pairs of ``route`` including both endpoints."""
    route = tuple(route)
    seq = (0,) + route + (scenario.user_id,)
    return list(zip(seq[:-1], seq[1:]))


def ula_response(angle: AnglePair, n_antennas: int, spacing_m: float, wavelength_m: float) -> np.ndarray:
    if n_antennas < 1 or not spacing_m > 0 or not wavelength_m > 0:
        raise InvalidParameterError("ULA needs n_antennas >= 1 and positive spacing and wavelength")
    n = np.arange(n_antennas)
    return np.exp(-2j * np.pi * n * spacing_m * math.sin(angle.azimuth_rad) / wavelength_m)


def ura_response(
    angle: AnglePair, m1: int, m2: int, spacing_m: float, wavelength_m: float
) -> np.ndarray:
    """Array response of an ``m1`` (vertical) by ``m2`` (horizontal) URA.

    Elements are ordered column by column, so entry ``m`` has horizontal
    index ``m // m1`` and vertical index ``m % m1``.
    """
    if m1 < 1 or m2 < 1:
        raise InvalidParameterError(f"URA sizes must be positive, got {m1}x{m2}")
    if not spacing_m > 0 or not wavelength_m > 0:
        raise InvalidParameterError("URA spacing and wavelength must be positive")
    m = np.arange(m1 * m2)
    col, row = np.divmod(m, m1)
    az, el = angle
    phase = col * math.sin(el) * math.cos(az) + row * math.cos(el)
    return np.exp(-2j * np.pi * spacing_m * phase / wavelength_m)


def angles_between(src: Node, dst: Node) -> AnglePair:
    """Direction of ``dst`` as seen from ``src`` in ``src``'s array frame.

    For the BS the ULA only resolves the angle off boresight, returned as
    the azimuth with elevation pinned to pi/2.
    """
    delta = np.subtract(dst.position, src.position)
    dist = float(np.linalg.norm(delta))
    if dist == 0.0:
        raise InvalidParameterError(f"nodes {src.id} and {dst.id} are coincident")
    ux, uy, uz = delta / dist
    if src.kind is NodeKind.BS:
        return AnglePair(math.asin(max(-1.0, min(1.0, ux))), math.pi / 2)
    elevation = math.acos(max(-1.0, min(1.0, uz)))
    azimuth = math.atan2(uy, ux)
    if azimuth == -math.pi:
        azimuth = math.pi
    return AnglePair(azimuth, elevation)


def array_response(scenario: Scenario, at: int, toward: int) -> np.ndarray:
    """Steering vector of node ``at``'s array pointed at node ``toward``."""
    p = scenario.params
    src, dst = scenario.nodes[at], scenario.nodes[toward]
    angle = angles_between(src, dst)
    if src.kind is NodeKind.BS:
        return ula_response(angle, p.bs_antennas, p.antenna_spacing_m, p.wavelength_m)
    if src.kind is NodeKind.IRS:
        return ura_response(angle, p.irs_rows, p.irs_cols, p.element_spacing_m, p.wavelength_m)
    raise InvalidParameterError("the user has a single antenna and no array response")


def hop_channel(scenario: Scenario, from_id: int, to_id: int) -> np.ndarray:
    """LoS channel matrix of one hop.

    Returns an ``M x N`` matrix for BS -> IRS, ``M x M`` for IRS -> IRS and a
    ``1 x M`` row (the conjugate-transposed IRS -> user channel) for
    IRS -> user. Every entry has magnitude ``sqrt(beta) / d``.
    """
    kinds = (scenario.nodes[from_id].kind, scenario.nodes[to_id].kind)
    if from_id == to_id or kinds not in {
        (NodeKind.BS, NodeKind.IRS),
        (NodeKind.IRS, NodeKind.IRS),
        (NodeKind.IRS, NodeKind.USER),
    }:
        raise InvalidParameterError(
            f"unsupported hop {from_id} -> {to_id} ({kinds[0].value} -> {kinds[1].value})"
        )
    if scenario.los[from_id, to_id] != 1:
        raise NoLosError(f"no LoS between nodes {from_id} and {to_id}")

    p = scenario.params
    d = scenario.distances[from_id, to_id]
    scale = math.sqrt(p.ref_path_gain) / d * np.exp(-2j * np.pi * d / p.wavelength_m)
    departure = array_response(scenario, from_id, to_id)
    if kinds[1] is NodeKind.USER:
        return scale * departure.conj()[None, :]
    arrival = array_response(scenario, to_id, from_id)
    return scale * np.outer(arrival, departure.conj())


def route_distance(scenario: Scenario, route: Sequence[int]) -> float:
    """End-to-end propagation distance of a feasible route, in meters."""
    route = _require_feasible(scenario, route)
    d = scenario.distances
    return float(sum(d[i, j] for i, j in route_hops(scenario, route)))


def log_path_gain(scenario: Scenario, route: Sequence[int]) -> float:
    """Natural log of :func:`cascaded_path_gain`."""
    route = _require_feasible(scenario, route)
    d = scenario.distances
    log_d = sum(math.log(d[i, j]) for i, j in route_hops(scenario, route))
    return 0.5 * (len(route) + 1) * math.log(scenario.params.ref_path_gain) - log_d


def cascaded_path_gain(scenario: Scenario, route: Sequence[int]) -> float:
    """Product of the per-hop LoS amplitude gains ``sqrt(beta) / d``."""
    return math.exp(log_path_gain(scenario, route))
