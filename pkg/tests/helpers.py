"""Scenario builders shared by the test modules."""

import math

import numpy as np

from irsroute.errors import IrsRouteError
from irsroute.geometry import Node, NodeKind, Scenario, SystemParams
from irsroute.graph import build_graph
from irsroute.paths import dag_shortest_path

PAPER_LAMBDA = 0.06
PAPER_BETA = (PAPER_LAMBDA / (4 * math.pi)) ** 2

ACCEPTANCE_LINES = []


def report(criterion, ok, detail=""):
    line = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def make_scenario(positions, *, m1=1, m2=1, n=1, wavelength=PAPER_LAMBDA, beta=None,
                  threshold=None, los=None):
    """``positions`` lists the BS first, then the IRSs, then the user."""
    kinds = [NodeKind.BS] + [NodeKind.IRS] * (len(positions) - 2) + [NodeKind.USER]
    nodes = tuple(Node(i, k, p) for i, (k, p) in enumerate(zip(kinds, positions)))
    params = SystemParams(wavelength, n, m1, m2, ref_path_gain=beta)
    if threshold is None and los is None:
        threshold = 1e6
    return Scenario(params, nodes, los_threshold_m=threshold, los_matrix=los)


def random_scenario(rng, n_irs, *, m1=10, m2=10, n=2, threshold=12.0, length=30.0,
                    width=15.0, require_route=True, min_separation=1.2):
    """Random layout: BS near the origin, user at the far end, IRSs in between."""
    for _ in range(1000):
        irs = np.c_[rng.uniform(0, length, n_irs), rng.uniform(0, width, n_irs),
                    rng.uniform(1.0, 3.0, n_irs)]
        bs = (0.0, rng.uniform(0, width), 2.0)
        user = (length + rng.uniform(1, 4), rng.uniform(0, width), 1.5)
        pos = [bs] + [tuple(p) for p in irs] + [user]
        d = np.linalg.norm(np.subtract(pos, np.array(pos)[:, None]), axis=-1)
        if d[np.triu_indices(len(pos), 1)].min() <= min_separation:
            continue
        try:
            s = make_scenario(pos, m1=m1, m2=m2, n=n, threshold=threshold)
        except IrsRouteError:
            continue
        if not require_route or dag_shortest_path(build_graph(s)) is not None:
            return s
    raise RuntimeError("could not draw a routable scenario")


def random_feasible_route(rng, scenario, max_k):
    """Random simple LoS walk BS -> ... -> user with at most ``max_k`` IRSs."""
    los, user = scenario.los, scenario.user_id
    for _ in range(1000):
        route, current = [], 0
        while len(route) < max_k:
            options = [j for j in range(1, user) if los[current, j] and j not in route]
            if not options:
                break
            current = int(rng.choice(options))
            route.append(current)
            if los[current, user] and rng.random() < 0.4:
                break
        if route and los[route[-1], user]:
            return tuple(route)
    return None
