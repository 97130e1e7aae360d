"""Greedy of greedies for k-power weights inside known bounds [wmin, wmax].

One unweighted greedy per power of k in range; an element of weight k**i is
fed to every instance with index at most i. After the stream, the instance
outputs are merged greedily from the highest index down.
"""

from __future__ import annotations

from fractions import Fraction

from .base import StreamingSelector
from .core import ContractError, IndependenceSystem, KPowerWeight, log2_of_power_of_two
from .greedy import GreedyState
from .reduction import ceil_log_k, floor_log_k


def merge_descending(system: IndependenceSystem, outputs: dict[int, list]):
    """Greedy merge of per-index outputs, highest index first.

    Returns the merged set and the trace ``{i: ids of T after index i}``.
    Elements already in T are skipped without an oracle call.
    """
    merged = GreedyState(system)
    members: set[str] = set()
    trace = {}
    for i in sorted(outputs, reverse=True):
        for u in outputs[i]:
            if u.id not in members and merged.feed(u):
                members.add(u.id)
        trace[i] = tuple(u.id for u in merged.solution)
    return merged.solution, trace


class GreedyOfGreedies(StreamingSelector):
    """Two-stage algorithm for k-power instances with weights in [wmin, wmax].

    Parameters
    ----------
    system : IndependenceSystem
    k : int
        A power of two, at least 2. Every weight fed must be an exact power of k.
    wmin, wmax : Fraction or int
        Positive bounds on the weights. Out-of-range weights raise ContractError.
    instrument : bool
        Record the ids fed to each instance in ``fed_ids_``.
    filter_self_loops : bool
    """

    def __init__(self, system=None, k=2, wmin=1, wmax=1, instrument=False, filter_self_loops=True):
        self.system = system
        self.k = k
        self.wmin = wmin
        self.wmax = wmax
        self.instrument = instrument
        self.filter_self_loops = filter_self_loops

    def _init_state(self):
        log2_of_power_of_two(self.k)
        wmin, wmax = Fraction(self.wmin), Fraction(self.wmax)
        if wmin <= 0 or wmax <= 0:
            raise ValueError("weight bounds must be positive")
        if wmin > wmax:
            raise ValueError("wmin must not exceed wmax")
        super()._init_state()
        self.imin_ = ceil_log_k(wmin, self.k)
        self.imax_ = floor_log_k(wmax, self.k)
        self.instances_ = {i: GreedyState(self._oracle) for i in range(self.imin_, self.imax_ + 1)}
        self.peak_instance_count_ = len(self.instances_)
        if self.instrument:
            self.fed_ids_ = {i: [] for i in self.instances_}

    def _feed(self, u, weight=None):
        if weight is None:
            weight = KPowerWeight.of(u.weight, self.k)
        elif weight.base_k != self.k:
            raise ContractError(f"weight has base {weight.base_k}, expected {self.k}")
        iu = weight.exponent
        if not self.imin_ <= iu <= self.imax_:
            raise ContractError(
                f"element {u.id!r}: weight {self.k}**{iu} outside [{self.k}**{self.imin_}, {self.k}**{self.imax_}]"
            )
        for i in range(self.imin_, iu + 1):
            self.instances_[i].feed(u)
            if self.instrument:
                self.fed_ids_[i].append(u.id)

    def _finalize(self):
        T, self.trace_ = merge_descending(self._oracle, self.outputs_)
        return T

    @property
    def outputs_(self) -> dict[int, list]:
        return {i: g.output() for i, g in self.instances_.items()}

    def _stored_elements(self):
        return sum(g.g for g in self.instances_.values())

    def _instance_count(self):
        return len(self.instances_)
