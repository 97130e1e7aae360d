"""Concrete independence systems and brute-force checkers for k-set / k-extendible structure.

The checkers tabulate the oracle over every subset of a small ground set, so
they are exponential and refuse ground sets above a fixed size.
"""

from __future__ import annotations

from collections import Counter
from typing import Any, Collection, Iterable, Mapping, Sequence

import numpy as np

from .core import Element, IndependenceSystem

MAX_CHECK_SIZE = 14
MAX_SWEEP_SIZE = 12


class GroundSetTooLarge(ValueError):
    pass


class PartitionMatroidIntersection(IndependenceSystem):
    """Intersection of partition matroids.

    Each partition is a mapping with ``key_attr`` (the element attribute naming
    its part) and ``capacities`` (either one integer for every part, or a
    mapping from part key to capacity). Parts absent from a capacity mapping
    get ``default_capacity`` (1 unless given).
    """

    def __init__(self, partitions: Sequence[Mapping[str, Any]]):
        if not partitions:
            raise ValueError("need at least one partition")
        self.partitions = []
        for p in partitions:
            caps = p["capacities"]
            if isinstance(caps, Mapping):
                caps = {str(key): int(c) for key, c in caps.items()}
                if any(c < 0 for c in caps.values()):
                    raise ValueError("capacities must be non-negative")
            elif int(caps) < 0:
                raise ValueError("capacities must be non-negative")
            self.partitions.append((p["key_attr"], caps, int(p.get("default_capacity", 1))))
        self.k = len(self.partitions)

    def _capacity(self, caps, default, key) -> int:
        if isinstance(caps, dict):
            return caps.get(key, default)
        return int(caps)

    def validate(self, u):
        for key_attr, _, _ in self.partitions:
            if key_attr not in u.attrs:
                raise ValueError(f"element {u.id!r} has no attribute {key_attr!r}")

    def is_independent(self, elements: Collection[Element]) -> bool:
        for key_attr, caps, default in self.partitions:
            counts = Counter(str(u.attrs[key_attr]) for u in elements)
            for key, c in counts.items():
                if c > self._capacity(caps, default, key):
                    return False
        return True

    def __repr__(self):
        return f"PartitionMatroidIntersection(k={self.k})"


class HypergraphMatching(IndependenceSystem):
    """Sets of pairwise vertex-disjoint hyperedges, each of at most ``k`` vertices."""

    def __init__(self, k: int, vertex_attr: str = "vertices"):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.k = k
        self.vertex_attr = vertex_attr

    def vertices(self, u: Element) -> frozenset:
        return frozenset(u.attrs[self.vertex_attr])

    def validate(self, u):
        if self.vertex_attr not in u.attrs:
            raise ValueError(f"element {u.id!r} has no attribute {self.vertex_attr!r}")
        arity = len(self.vertices(u))
        if arity > self.k:
            raise ValueError(f"element {u.id!r} has arity {arity} > k={self.k}")

    def is_independent(self, elements: Collection[Element]) -> bool:
        seen: set = set()
        for u in elements:
            vs = self.vertices(u)
            if not seen.isdisjoint(vs):
                return False
            seen |= vs
        return True

    def __repr__(self):
        return f"HypergraphMatching(k={self.k})"


class ExplicitSystem(IndependenceSystem):
    """A system on at most 20 named elements given by its independent sets.

    The family is closed downward on construction and stored as a set of bitmasks.
    """

    MAX_GROUND = 20

    def __init__(self, ground_ids: Sequence[str], independent_sets: Iterable[Iterable[str]], k: int = 1):
        if len(ground_ids) > self.MAX_GROUND:
            raise GroundSetTooLarge(f"explicit systems hold at most {self.MAX_GROUND} elements")
        if len(set(ground_ids)) != len(ground_ids):
            raise ValueError("duplicate ids in ground set")
        self.ground_ids = list(ground_ids)
        self.index = {uid: j for j, uid in enumerate(self.ground_ids)}
        self.k = k
        family = {0}
        for s in independent_sets:
            mask = self._mask(s)
            if mask in family:
                continue
            sub = mask
            while True:
                family.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & mask
        self.family = frozenset(family)

    def _mask(self, ids: Iterable[str]) -> int:
        mask = 0
        for uid in ids:
            try:
                mask |= 1 << self.index[uid]
            except KeyError:
                raise ValueError(f"{uid!r} is not in the ground set") from None
        return mask

    def validate(self, u):
        if u.id not in self.index:
            raise ValueError(f"{u.id!r} is not in the ground set")

    def is_independent(self, elements: Collection[Element]) -> bool:
        return self._mask(u.id for u in elements) in self.family

    def __repr__(self):
        return f"ExplicitSystem(n={len(self.ground_ids)}, |I|={len(self.family)}, k={self.k})"


def system_from_config(cfg: Mapping[str, Any]) -> IndependenceSystem:
    """Build a system from ``{"type": ..., "k": ..., "params": {...}}``."""
    kind = cfg.get("type")
    params = cfg.get("params") or {}
    if kind in ("partition_matroid_intersection", "partition_matroids", "partition"):
        return PartitionMatroidIntersection(params["partitions"])
    if kind in ("hypergraph_matching", "hypergraph"):
        return HypergraphMatching(int(cfg["k"]), params.get("vertex_attr", "vertices"))
    if kind == "explicit":
        return ExplicitSystem(params["ground"], params.get("independent_sets", []), int(cfg.get("k", 1)))
    raise ValueError(f"unknown system type {kind!r}")


# -- brute-force checkers ---------------------------------------------------


def _require_size(ground: Sequence[Element], limit: int):
    if len(ground) > limit:
        raise GroundSetTooLarge(f"ground set of {len(ground)} elements exceeds the enumeration limit {limit}")


def independence_table(system: IndependenceSystem, ground: Sequence[Element]) -> np.ndarray:
    """Boolean array indexed by bitmask over ``ground``."""
    n = len(ground)
    table = np.zeros(1 << n, dtype=bool)
    for mask in range(1 << n):
        table[mask] = system.is_independent([ground[j] for j in range(n) if mask >> j & 1])
    return table


def _submask_layout(mask: int, n: int):
    """Global bitmasks and popcounts of every submask of ``mask``, in local order."""
    bits = [j for j in range(n) if mask >> j & 1]
    glob = np.zeros(1 << len(bits), dtype=np.int64)
    size = np.zeros(1 << len(bits), dtype=np.int64)
    for j, b in enumerate(bits):
        half = 1 << j
        glob[half : 2 * half] = glob[:half] | (1 << b)
        size[half : 2 * half] = size[:half] + 1
    return glob, size


def _superset_min(g: np.ndarray, t: int) -> np.ndarray:
    """g[m] <- min over local supersets of m."""
    for b in range(t):
        view = g.reshape(-1, 2, 1 << b)
        np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return g


def down_closed_witness(system: IndependenceSystem, ground: Sequence[Element], table=None):
    """Return ``(T, S)`` with T independent, S a subset of T that is dependent, or None."""
    _require_size(ground, MAX_CHECK_SIZE)
    if table is None:
        table = independence_table(system, ground)
    n = len(ground)
    if not table[0]:
        return (), ()
    for mask in range(1 << n):
        if not table[mask]:
            continue
        for j in range(n):
            if mask >> j & 1 and not table[mask & ~(1 << j)]:
                sub = mask & ~(1 << j)
                return _ids(ground, mask), _ids(ground, sub)
    return None


def _ids(ground, mask):
    return tuple(u.id for j, u in enumerate(ground) if mask >> j & 1)


def _extendibility(table: np.ndarray, n: int, dependent_supersets: bool):
    """Largest removal count any (T, S, u) triple needs, with a witness triple."""
    worst, witness = 0, None
    for T in range(1 << n):
        if not dependent_supersets and not table[T]:
            continue
        glob, size = _submask_layout(T, n)
        t = int(size[-1]) if len(size) else 0
        for j in range(n):
            ubit = 1 << j
            if T & ubit:
                continue
            ok = table[glob | ubit]  # R + u independent, for every R subset of T
            if ok[-1]:
                continue  # T + u is independent: Y = {} always works
            g = np.where(ok, t - size, n + 1)
            _superset_min(g, t)
            need = np.where(ok, g, -1)  # only S with S + u independent are constrained
            m = int(need.max())
            if m > worst:
                worst = m
                s_local = int(need.argmax())
                witness = (int(T), int(glob[s_local]), j)
    return worst, witness


def extendibility_witness(system, ground, k, dependent_supersets=False):
    """A triple (T, S, u) violating k-extendibility, as id tuples, or None."""
    _require_size(ground, MAX_CHECK_SIZE)
    worst, w = _extendibility(independence_table(system, ground), len(ground), dependent_supersets)
    if worst <= k:
        return None
    T, S, j = w
    return _ids(ground, T), _ids(ground, S), ground[j].id


def check_k_extendible(system: IndependenceSystem, ground: Sequence[Element], k: int,
                       dependent_supersets: bool = False) -> bool:
    """True iff the system restricted to ``ground`` is k-extendible.

    For all independent T, all S within T and all u outside T with S + u
    independent, some Y within T minus S of size at most k leaves T - Y + u
    independent. ``dependent_supersets=True`` also quantifies over dependent
    T, the stricter literal reading under which most matroids fail for k=1.
    """
    _require_size(ground, MAX_CHECK_SIZE)
    worst, _ = _extendibility(independence_table(system, ground), len(ground), dependent_supersets)
    return worst <= k


def min_extendibility(system: IndependenceSystem, ground: Sequence[Element]) -> int:
    """Smallest k >= 1 for which ``check_k_extendible`` holds (at most ``len(ground)``)."""
    _require_size(ground, MAX_SWEEP_SIZE)
    worst, _ = _extendibility(independence_table(system, ground), len(ground), False)
    return max(1, min(worst, len(ground)))


def base_size_bounds(table: np.ndarray, n: int):
    """Per-subset (smallest base size, largest base size), both indexed by bitmask."""
    full = (1 << n) - 1
    lo = np.full(1 << n, n + 1, dtype=np.int64)
    hi = np.zeros(1 << n, dtype=np.int64)
    for I in np.flatnonzero(table):
        I = int(I)
        ext = 0
        for j in range(n):
            if not I >> j & 1 and table[I | 1 << j]:
                ext |= 1 << j
        free = full & ~I & ~ext
        glob, _ = _submask_layout(free, n)
        S = glob | I  # I is a base of exactly these sets
        c = I.bit_count()
        lo[S] = np.minimum(lo[S], c)
        hi[S] = np.maximum(hi[S], c)
    return lo, hi


def check_k_set_system(system: IndependenceSystem, ground: Sequence[Element], k: int) -> bool:
    """True iff, for every subset S of ``ground``, the largest base of S is at most k times the smallest."""
    _require_size(ground, MAX_CHECK_SIZE)
    n = len(ground)
    lo, hi = base_size_bounds(independence_table(system, ground), n)
    return bool(np.all(hi <= k * lo))
