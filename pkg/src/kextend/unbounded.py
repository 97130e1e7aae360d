"""Greedy of greedies without weight bounds.

The window of live instances tracks the heaviest weight seen (wmax) and a
global unweighted greedy of size g: wmin = wmax / (2 g k)**2. Instances that
fall below the window are deleted; when wmin drops, the old bottom instance is
copied downward so every live instance still saw every element it would have
seen under fixed bounds. Elements lighter than wmin are discarded.
"""

from __future__ import annotations

from fractions import Fraction

from .base import StreamingSelector
from .bounded import merge_descending
from .core import ContractError, CountingOracle, KPowerWeight, log2_of_power_of_two
from .greedy import GreedyState
from .reduction import ceil_log_k


class DynamicGreedyOfGreedies(StreamingSelector):
    """One-pass algorithm for k-power instances with arbitrary weight range.

    Parameters
    ----------
    system : IndependenceSystem
    k : int
        A power of two, at least 2. Every weight fed must be an exact power of k.
    instrument : bool
        Keep arrival ids, per-instance fed ids (``fed_ids_``), arrival-time
        discards and a per-arrival window history. Costs O(n) memory.
    filter_self_loops : bool

    Attributes
    ----------
    wmax_, wmin_ : Fraction
    imin_, imax_ : int
        Current window of live instances.
    instances_ : dict[int, GreedyState]
    global_greedy_ : GreedyState
        Unweighted greedy over every arrival; its size is ``g_``.
    discarded_count_, discarded_weight_ :
        Elements rejected on arrival for weighing less than wmin.
    peak_window_ : int
        Largest ``imax - imin + 2`` seen after any arrival.
    """

    def __init__(self, system=None, k=2, instrument=False, filter_self_loops=True):
        self.system = system
        self.k = k
        self.instrument = instrument
        self.filter_self_loops = filter_self_loops

    def _init_state(self):
        self._ell = log2_of_power_of_two(self.k)
        super()._init_state()
        raw = self._oracle.system
        while isinstance(raw, CountingOracle):
            raw = raw.system
        # counted apart from the bank's queries
        self._global_oracle = CountingOracle(raw)
        self.global_greedy_ = GreedyState(self._global_oracle)
        self.wmax_ = None
        self.wmin_ = None
        self.imin_ = None
        self.imax_ = None
        self.instances_: dict[int, GreedyState] = {}
        self.discarded_count_ = 0
        self.discarded_weight_ = Fraction(0)
        self.peak_window_ = 0
        if self.instrument:
            self.arrivals_ = []
            self.fed_ids_: dict[int, list[str]] = {}
            self.arrival_discards_ = []
            self.history_ = []

    @property
    def g_(self) -> int:
        return self.global_greedy_.g

    @property
    def global_oracle_calls_(self) -> int:
        return self._global_oracle.calls

    def _feed(self, u, weight=None):
        if weight is None:
            weight = KPowerWeight.of(u.weight, self.k)
        elif weight.base_k != self.k:
            raise ContractError(f"weight has base {weight.base_k}, expected {self.k}")
        iu = weight.exponent
        w = weight.value

        self.global_greedy_.feed(u)
        g = self.global_greedy_.g
        if g == 0:
            # only a self-loop can be rejected by an empty greedy
            self.self_loops_filtered_ += 1
            return
        if self.instrument:
            self.arrivals_.append(u.id)

        first = self.wmax_ is None
        if first or w > self.wmax_:
            self.wmax_ = w
        imax = iu if first else max(iu, self.imax_)
        self.wmin_ = self.wmax_ / (2 * g * self.k) ** 2
        imin = ceil_log_k(self.wmin_, self.k)

        if first:
            self._create(range(imin, imax + 1))
        else:
            pimin, pimax = self.imin_, self.imax_
            # deletions strictly before creations
            for i in range(pimin, min(imin, pimax + 1)):
                self._delete(i)
            if imin < pimin:
                for i in range(imin, pimin):
                    self._copy(pimin, i)
            # new top indices that survive the new bottom, created empty
            self._create(range(max(pimax + 1, imin), imax + 1))
        self.imin_, self.imax_ = imin, imax

        if w >= self.wmin_:
            for i in range(imin, iu + 1):
                self.instances_[i].feed(u)
                if self.instrument:
                    self.fed_ids_[i].append(u.id)
        else:
            self.discarded_count_ += 1
            self.discarded_weight_ += u.weight
            if self.instrument:
                self.arrival_discards_.append(u.id)

        self.peak_window_ = max(self.peak_window_, imax - imin + 2)
        if self.instrument:
            self.history_.append({"id": u.id, "g": g, "imin": imin, "imax": imax})

    def _create(self, indices):
        for i in indices:
            self.instances_[i] = GreedyState(self._oracle)
            if self.instrument:
                self.fed_ids_[i] = []

    def _delete(self, i):
        del self.instances_[i]
        if self.instrument:
            del self.fed_ids_[i]

    def _copy(self, src, dst):
        self.instances_[dst] = self.instances_[src].clone()
        if self.instrument:
            self.fed_ids_[dst] = list(self.fed_ids_[src])

    def _finalize(self):
        T, self.trace_ = merge_descending(self._oracle, self.outputs_)
        return T

    @property
    def outputs_(self) -> dict[int, list]:
        return {i: g.output() for i, g in self.instances_.items()}

    @property
    def discarded_ids_(self) -> list[str]:
        """Arrivals never fed to the final bottom instance (needs ``instrument=True``)."""
        if self.imin_ is None:
            return []
        kept = set(self.fed_ids_[self.imin_])
        return [uid for uid in self.arrivals_ if uid not in kept]

    def _stored_elements(self):
        return self.global_greedy_.g + sum(g.g for g in self.instances_.values())

    def _instance_count(self):
        return len(self.instances_) + 1
