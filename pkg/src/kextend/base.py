"""Estimator base class for one-pass selection algorithms."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .core import CountingOracle, Element, weight_of_set
from .validation import check_element, check_elements, check_system


class StreamingSelector(BaseEstimator):
    """Common fit / partial_fit / predict plumbing.

    ``fit`` starts a new stream, ``partial_fit`` continues the current one and
    ``feed`` takes a single element. Subclasses implement ``_feed``,
    ``_finalize``, ``_stored_elements`` and ``_instance_count``.
    """

    def _init_state(self):
        self._oracle = CountingOracle(check_system(self.system))
        self.n_seen_ = 0
        self.self_loops_filtered_ = 0
        self.peak_stored_elements_ = 0
        self.peak_instance_count_ = 0
        self._solution = None

    def _ensure_state(self):
        if not hasattr(self, "n_seen_"):
            self._init_state()

    def fit(self, X, y=None):
        self._init_state()
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        self._ensure_state()
        for u in check_elements(X, self._oracle):
            self.feed(u)
        return self

    def feed(self, u: Element, weight=None):
        """Process one arrival. ``weight`` optionally overrides the element's weight for the algorithm's logic."""
        self._ensure_state()
        self.n_seen_ += 1
        self._solution = None
        if getattr(self, "filter_self_loops", True) and not self._oracle.is_independent((u,)):
            self.self_loops_filtered_ += 1
            return self
        self._feed(u, weight)
        self.peak_stored_elements_ = max(self.peak_stored_elements_, self._stored_elements())
        self.peak_instance_count_ = max(self.peak_instance_count_, self._instance_count())
        return self

    @property
    def solution_(self) -> list[Element]:
        check_is_fitted(self, "n_seen_")
        if self._solution is None:
            self._solution = self._finalize()
            self.peak_stored_elements_ = max(
                self.peak_stored_elements_, self._stored_elements() + len(self._solution)
            )
        return self._solution

    @property
    def solution_weight_(self) -> Fraction:
        return weight_of_set(self.solution_)

    @property
    def oracle_calls_(self) -> int:
        check_is_fitted(self, "n_seen_")
        return self._oracle.calls

    def predict(self, X):
        """Boolean mask: which of the given elements are in the selected set."""
        chosen = {u.id for u in self.solution_}
        return np.array([check_element(x).id in chosen for x in X], dtype=bool)

    def _feed(self, u, weight):
        raise NotImplementedError

    def _finalize(self):
        raise NotImplementedError

    def _stored_elements(self) -> int:
        raise NotImplementedError

    def _instance_count(self) -> int:
        raise NotImplementedError
