from fractions import Fraction

import pytest

from kextend.core import Element
from kextend.systems import HypergraphMatching, PartitionMatroidIntersection

ACCEPTANCE_RESULTS: dict[str, str] = {}


def edge(uid, vertices, weight=1):
    return Element(uid, Fraction(weight), {"vertices": list(vertices)})


def part_elem(uid, weight=1, **keys):
    return Element(uid, Fraction(weight), dict(keys))


@pytest.fixture
def bipartite():
    """Bipartite matching on left {a, b} and right {1, 2}."""
    return HypergraphMatching(2)


@pytest.fixture
def k22(bipartite):
    ground = [
        edge("a1", ["a", "1"], 4),
        edge("a2", ["a", "2"], 1),
        edge("b1", ["b", "1"], 1),
        edge("b2", ["b", "2"], 4),
    ]
    return ground, bipartite


@pytest.fixture
def rank1():
    """Uniform matroid of rank 1: every element in one part of capacity 1."""
    return PartitionMatroidIntersection([{"key_attr": "p", "capacities": 1}])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{ACCEPTANCE_RESULTS[name]}  {name}")
