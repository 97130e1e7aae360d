"""Streaming unweighted greedy: the subroutine every other algorithm is built from."""

from __future__ import annotations

from typing import Iterable

from .base import StreamingSelector
from .core import Element, IndependenceSystem


class GreedyState:
    """Running solution of one unweighted-greedy instance.

    Each ``feed`` makes exactly one oracle query. The solution keeps insertion
    order and only ever grows.
    """

    __slots__ = ("system", "solution", "oracle_calls")

    def __init__(self, system: IndependenceSystem):
        self.system = system
        self.solution: list[Element] = []
        self.oracle_calls = 0

    @property
    def g(self) -> int:
        return len(self.solution)

    def feed(self, u: Element) -> bool:
        self.oracle_calls += 1
        self.solution.append(u)
        if self.system.is_independent(self.solution):
            return True
        self.solution.pop()
        return False

    def clone(self) -> GreedyState:
        other = GreedyState(self.system)
        other.solution = list(self.solution)
        return other

    def output(self) -> list[Element]:
        return list(self.solution)

    def __repr__(self):
        return f"GreedyState(g={self.g})"


def greedy_pass(system: IndependenceSystem, elements: Iterable[Element]) -> list[Element]:
    state = GreedyState(system)
    for u in elements:
        state.feed(u)
    return state.solution


class UnweightedGreedy(StreamingSelector):
    """One unweighted greedy over the stream; a base of the arrived elements, weights ignored.

    Parameters
    ----------
    system : IndependenceSystem
    k : int
        Declared extendibility; used only for reporting.
    filter_self_loops : bool
    """

    def __init__(self, system=None, k=1, filter_self_loops=True):
        self.system = system
        self.k = k
        self.filter_self_loops = filter_self_loops

    def _init_state(self):
        super()._init_state()
        self.greedy_ = GreedyState(self._oracle)

    def _feed(self, u, weight=None):
        self.greedy_.feed(u)

    def _finalize(self):
        return self.greedy_.output()

    def _stored_elements(self):
        return self.greedy_.g

    def _instance_count(self):
        return 1
