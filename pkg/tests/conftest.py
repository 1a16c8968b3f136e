from __future__ import annotations

import networkx as nx
import pytest

from homind.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(h.nodes())}
    return Graph.from_edges(len(index), [(index[a], index[b]) for a, b in h.edges()])


@pytest.fixture
def record_line():
    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
