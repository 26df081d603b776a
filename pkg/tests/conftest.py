import numpy as np
import pytest

from adiasearch.graphs import build_family, cycle, hypercube

ACCEPTANCE_LINES: list[str] = []

# (family, params) used by the per-module property tests
FAMILY_CASES = [
    ("complete", (4,)),
    ("complete", (16,)),
    ("dihedral", (3,)),
    ("dihedral", (4,)),
    ("dihedral", (10,)),
    ("mpartite", (3, 2)),
    ("mpartite", (4, 3)),
    ("mpartite", (10, 10)),
    ("crown", (3,)),
    ("crown", (4,)),
    ("crown", (10,)),
]


def all_graphs():
    graphs = [build_family(f, p) for f, p in FAMILY_CASES]
    graphs += [cycle(8), hypercube(3)]
    return graphs


def graph_id(g) -> str:
    return f"{g.family}{list(g.params)}" if g.family != "custom" else f"custom-n{g.n}-d{g.degree}"


@pytest.fixture(params=all_graphs(), ids=graph_id)
def any_graph(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
