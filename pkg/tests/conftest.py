import itertools
import random

import pytest

from rosespec.graph import Graph


def random_graph(rng, n, p=None):
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2)
                                if rng.random() < p])


def all_labelled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(e for i, e in enumerate(pairs) if mask >> i & 1))


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance lines, printed at the end of the session whatever the capture mode
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
