"""Modulo-ell split: reduce arbitrary positive weights to ell = log2(k) streams of k-power weights.

An element of weight w lands in class i = floor(log2 w). Classes whose indices
agree modulo ell are k-power multiples of one another, so each residue group
is handed to its own inner k-power algorithm with the weight k**floor(log_k w).
"""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import clone

from .base import StreamingSelector
from .core import KPowerWeight, floor_log2, log2_of_power_of_two, weight_of_set
from .validation import check_k


def round_k(k: int) -> int:
    """Smallest power of two that is at least ``max(k, 2)``."""
    check_k(k)
    return max(2, 1 << (k - 1).bit_length())


def class_index(w: Fraction) -> int:
    """floor(log2 w), exactly."""
    return floor_log2(Fraction(w))


def kpower_round(w: Fraction, k: int) -> KPowerWeight:
    """The largest power of k not exceeding w."""
    ell = log2_of_power_of_two(k)
    return KPowerWeight(k, class_index(w) // ell)


def group_of(w: Fraction, k: int) -> int:
    return class_index(w) % log2_of_power_of_two(k)


def floor_log_k(w: Fraction, k: int) -> int:
    return class_index(w) // log2_of_power_of_two(k)


def ceil_log_k(w: Fraction, k: int) -> int:
    return -floor_log_k(1 / Fraction(w), k)


class ModuloSplit(StreamingSelector):
    """Run ``ell`` copies of a k-power algorithm, one per residue of floor(log2 w) mod ell.

    Parameters
    ----------
    system : IndependenceSystem
    k : int
        Extendibility parameter; rounded up to a power of two (at least 2).
    inner : StreamingSelector, optional
        Template for the inner k-power algorithm. Cloned once per group with
        ``k`` and ``system`` overridden. Defaults to
        :class:`~kextend.unbounded.DynamicGreedyOfGreedies`.
    instrument : bool
        Keep the per-group lists of fed element ids in ``fed_ids_``.
    filter_self_loops : bool
    """

    def __init__(self, system=None, k=2, inner=None, instrument=False, filter_self_loops=True):
        self.system = system
        self.k = k
        self.inner = inner
        self.instrument = instrument
        self.filter_self_loops = filter_self_loops

    def _init_state(self):
        super()._init_state()
        from .unbounded import DynamicGreedyOfGreedies

        self.k_ = round_k(self.k)
        self.ell_ = log2_of_power_of_two(self.k_)
        template = self.inner if self.inner is not None else DynamicGreedyOfGreedies()
        self.inners_ = []
        for _ in range(self.ell_):
            alg = clone(template).set_params(system=self._oracle, k=self.k_, filter_self_loops=False)
            alg._init_state()
            self.inners_.append(alg)
        self.group_counts_ = [0] * self.ell_
        if self.instrument:
            self.fed_ids_ = [[] for _ in range(self.ell_)]

    def _feed(self, u, weight=None):
        i = class_index(u.weight)
        j = i % self.ell_
        self.inners_[j].feed(u, KPowerWeight(self.k_, i // self.ell_))
        self.group_counts_[j] += 1
        if self.instrument:
            self.fed_ids_[j].append(u.id)

    def _finalize(self):
        best, best_w = [], Fraction(-1)
        for alg in self.inners_:
            c = alg.solution_
            w = weight_of_set(c)
            if w > best_w:  # strict: ties go to the lowest group
                best, best_w = c, w
        return list(best)

    def _stored_elements(self):
        return sum(alg._stored_elements() for alg in self.inners_)

    def _instance_count(self):
        return sum(alg._instance_count() for alg in self.inners_)

    @property
    def group_solutions_(self):
        return [alg.solution_ for alg in self.inners_]
