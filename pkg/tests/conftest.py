import functools
import random

import networkx as nx
import pytest

from hullkit.closure import ClosedFamily
from hullkit.graph import Graph
from hullkit.sets import full_mask


@functools.lru_cache(maxsize=None)
def connected_graphs(max_n: int) -> tuple[Graph, ...]:
    """Every connected graph on 1..max_n vertices (max_n <= 7), up to isomorphism."""
    out = []
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(Graph.from_networkx(h))
    return tuple(out)


@pytest.fixture(scope="session")
def graphs_upto5():
    return connected_graphs(5)


@pytest.fixture(scope="session")
def graphs_upto7():
    return connected_graphs(7)


def random_family(rng: random.Random, n: int, count: int) -> ClosedFamily:
    """Random sets closed under intersection, plus the universe."""
    sets = {full_mask(n)} | {rng.getrandbits(n) if n else 0 for _ in range(count)}
    changed = True
    while changed:
        new = {a & b for a in sets for b in sets} - sets
        changed = bool(new)
        sets |= new
    return ClosedFamily(n, tuple(sets))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
