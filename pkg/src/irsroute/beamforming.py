"""Closed-form active/passive beamforming for a fixed reflection route."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError
from .geometry import (
    Route,
    Scenario,
    _require_feasible,
    array_response,
    hop_channel,
    log_path_gain,
    route_distance,
)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class RouteEvaluation:
    route: Route
    channel_coefficient: complex
    power: float
    power_db: float

    @property
    def hop_count(self) -> int:
        return len(self.route)


def wrap_phase(phase) -> np.ndarray:
    """Map angles into [0, 2 pi)."""
    wrapped = np.mod(phase, TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def align_phases(incoming: np.ndarray, outgoing: np.ndarray) -> np.ndarray:
    """Per-element phase shifts steering ``incoming`` onto ``outgoing``.

    Both arguments are array-response vectors; the result is
    ``angle(outgoing) - angle(incoming)`` wrapped to [0, 2 pi), which makes
    ``outgoing^H diag(exp(j theta)) incoming`` equal to ``len(incoming)``
    when both vectors are unit-modulus.
    """
    return wrap_phase(np.angle(outgoing) - np.angle(incoming))


def optimal_phases(scenario: Scenario, route: Sequence[int]) -> list[np.ndarray]:
    """Phase-shift vector for every IRS on ``route``, in route order."""
    route = _require_feasible(scenario, route)
    seq = (0,) + route + (scenario.user_id,)
    phases = []
    for k in range(1, len(seq) - 1):
        prev, here, nxt = seq[k - 1], seq[k], seq[k + 1]
        incoming = array_response(scenario, here, prev)
        outgoing = array_response(scenario, here, nxt)
        phases.append(align_phases(incoming, outgoing))
    return phases


def mrt_vector(scenario: Scenario, route: Sequence[int]) -> np.ndarray:
    """Unit-norm BS beam matched to the first hop, with the route's distance phase undone."""
    route = _require_feasible(scenario, route)
    h = array_response(scenario, 0, route[0])
    distance = route_distance(scenario, route)
    return np.exp(2j * np.pi * distance / scenario.params.wavelength_m) * h / np.linalg.norm(h)


def _evaluation(route: Route, coefficient: complex, power: float, power_db: float) -> RouteEvaluation:
    return RouteEvaluation(route, complex(coefficient), float(power), float(power_db))


def evaluate_direct(
    scenario: Scenario,
    route: Sequence[int],
    phases: Sequence[np.ndarray],
    w: np.ndarray,
) -> RouteEvaluation:
    """Evaluate the end-to-end channel by multiplying out every hop matrix.

    No closed-form shortcut is taken: the full ``M x N``, ``M x M`` and
    ``1 x M`` hop channels are built and chained.
    """
    route = tuple(int(a) for a in route)
    p = scenario.params
    w = np.asarray(w, dtype=complex)
    if w.shape != (p.bs_antennas,):
        raise InvalidParameterError(f"beam vector must have shape ({p.bs_antennas},), got {w.shape}")
    if len(phases) != len(route):
        raise InvalidParameterError(f"expected {len(route)} phase vectors, got {len(phases)}")
    for theta in phases:
        if np.shape(theta) != (p.n_elements,):
            raise InvalidParameterError(
                f"phase vectors must have length {p.n_elements}, got {np.shape(theta)}"
            )

    seq = (0,) + route + (scenario.user_id,)
    signal = hop_channel(scenario, seq[0], seq[1]) @ w
    for k, theta in enumerate(phases, start=1):
        signal = np.exp(1j * np.asarray(theta)) * signal
        signal = hop_channel(scenario, seq[k], seq[k + 1]) @ signal
    coefficient = complex(signal.item())
    power = abs(coefficient) ** 2
    power_db = 10 * math.log10(power) if power > 0 else -math.inf
    return _evaluation(route, coefficient, power, power_db)


def log_closed_form_power(scenario: Scenario, route: Sequence[int]) -> float:
    """Natural log of the maximum channel power ``M^{2K} N kappa^2``."""
    route = _require_feasible(scenario, route)
    p = scenario.params
    return (
        2 * len(route) * math.log(p.n_elements)
        + math.log(p.bs_antennas)
        + 2 * log_path_gain(scenario, route)
    )


def closed_form_power(scenario: Scenario, route: Sequence[int]) -> RouteEvaluation:
    route = _require_feasible(scenario, route)
    log_power = log_closed_form_power(scenario, route)
    power = math.exp(log_power)
    return _evaluation(route, math.sqrt(power), power, 10 * log_power / math.log(10))
