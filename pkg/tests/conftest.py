import numpy as np
import pytest

from helpers import ACCEPTANCE_LINES
from irsroute.graph import RoutingGraph
from irsroute.scenario_io import load_example_scenario


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def example():
    return load_example_scenario()


@pytest.fixture
def four_vertex_graph():
    # three simple paths: 0-1-3 (1.0), 0-2-3 (0.95), 0-1-2-3 (0.65)
    return RoutingGraph(4, ((0, 1, 0.5), (0, 2, 0.9), (1, 2, 0.1), (1, 3, 0.5), (2, 3, 0.05)))


@pytest.fixture
def greedy_trap_graph():
    # settling vertex 1 at weight 1.0 hides the cheaper 0-2-1 approach (0.0)
    return RoutingGraph(
        5, ((0, 1, 1.0), (0, 2, 2.0), (2, 1, -2.0), (1, 4, 1.0), (0, 3, 5.0), (3, 4, 0.0))
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
