import random

import pytest

from homorder import Digraph, directed_path, oriented_path, parse_digraph
from homorder.checks import proper_trees

ACCEPTANCE_LINES: list[str] = []


def random_tree(rng: random.Random, n: int, prefix: str = "t") -> Digraph:
    """Random oriented tree: vertex i hangs off a uniform earlier vertex."""
    vs = [f"{prefix}{i}" for i in range(n)]
    arcs = []
    for i in range(1, n):
        j = rng.randrange(i)
        arcs.append((vs[j], vs[i]) if rng.random() < 0.5 else (vs[i], vs[j]))
    return Digraph(vs, arcs)


@pytest.fixture
def arc():
    return directed_path(1)


@pytest.fixture
def star():
    # u -> x, w -> x, x -> v
    return parse_digraph("u x\nw x\nx v")


@pytest.fixture
def zigzag3():
    return oriented_path("FBF")


@pytest.fixture(scope="session")
def propers():
    return proper_trees(9)


@pytest.fixture(scope="session")
def smallest_proper(propers):
    return propers[0]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
