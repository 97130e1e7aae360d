"""Brute-force optimum, the offline greedy baseline, and seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Element, IndependenceSystem
from .greedy import greedy_pass
from .systems import GroundSetTooLarge, HypergraphMatching, PartitionMatroidIntersection

MAX_EXACT_SIZE = 20


@dataclass(frozen=True)
class ExactResult:
    opt_set: tuple[Element, ...]
    opt_weight: Fraction
    independent_count: int


def brute_force_opt(ground: Sequence[Element], system: IndependenceSystem) -> ExactResult:
    """Maximum-weight independent subset by depth-first enumeration in id order.

    A branch is cut as soon as it turns dependent, which is sound because the
    family is down-closed. Sets are visited in lexicographic order of their
    sorted ids and only a strictly heavier set replaces the incumbent, so ties
    resolve to the lexicographically smallest set.
    """
    if len(ground) > MAX_EXACT_SIZE:
        raise GroundSetTooLarge(f"brute force is limited to {MAX_EXACT_SIZE} elements, got {len(ground)}")
    order = sorted(ground, key=lambda u: u.id)
    n = len(order)
    best: list[Element] = []
    best_w = Fraction(0)
    count = 1  # the empty set
    current: list[Element] = []

    def extend(start: int, w: Fraction):
        nonlocal best, best_w, count
        for j in range(start, n):
            current.append(order[j])
            if system.is_independent(current):
                count += 1
                cw = w + order[j].weight
                if cw > best_w:
                    best, best_w = list(current), cw
                extend(j + 1, cw)
            current.pop()

    extend(0, Fraction(0))
    return ExactResult(tuple(best), best_w, count)


def independent_sets(ground: Sequence[Element], system: IndependenceSystem) -> list[frozenset[str]]:
    """Every independent subset, as id sets (same enumeration as ``brute_force_opt``)."""
    order = sorted(ground, key=lambda u: u.id)
    out = [frozenset()]
    current: list[Element] = []

    def extend(start):
        for j in range(start, len(order)):
            current.append(order[j])
            if system.is_independent(current):
                out.append(frozenset(u.id for u in current))
                extend(j + 1)
            current.pop()

    extend(0)
    return out


def offline_greedy(ground: Sequence[Element], system: IndependenceSystem) -> list[Element]:
    """Classical greedy: heaviest first (ties by id), keep whatever stays independent."""
    return greedy_pass(system, sorted(ground, key=lambda u: (-u.weight, u.id)))


@dataclass
class Instance:
    ground: list[Element]
    system: IndependenceSystem
    seed: int
    k: int

    def to_records(self) -> list[dict]:
        return [{"id": u.id, "weight": format_weight(u.weight), "attrs": dict(u.attrs)} for u in self.ground]

    def constraint_config(self) -> dict:
        return system_config(self.system)


def system_config(system: IndependenceSystem) -> dict:
    if isinstance(system, HypergraphMatching):
        return {"type": "hypergraph_matching", "k": system.k, "params": {"vertex_attr": system.vertex_attr}}
    if isinstance(system, PartitionMatroidIntersection):
        parts = [
            {"key_attr": attr, "capacities": caps, "default_capacity": default}
            for attr, caps, default in system.partitions
        ]
        return {"type": "partition_matroid_intersection", "k": system.k, "params": {"partitions": parts}}
    return {"type": type(system).__name__, "k": system.k}


def format_weight(w: Fraction) -> str:
    """Exact decimal string when the value has one, otherwise ``p/q``."""
    w = Fraction(w)
    q = w.denominator
    twos = fives = 0
    while q % 2 == 0:
        q //= 2
        twos += 1
    while q % 5 == 0:
        q //= 5
        fives += 1
    if q != 1:
        return f"{w.numerator}/{w.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(w.numerator)
    scaled = w * 10**digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def random_instance(
    seed: int,
    n: int,
    system_kind: str = "hypergraph",
    weight_mode: str = "k-power",
    k: int = 2,
    exponent_range: tuple[int, int] = (-3, 3),
    arity: int | None = None,
    n_vertices: int | None = None,
) -> Instance:
    """A reproducible small instance.

    ``system_kind`` is ``"hypergraph"`` (hyperedges of ``arity`` vertices,
    default ``k``) or ``"partition"`` (intersection of ``k`` partition
    matroids). ``weight_mode`` is ``"k-power"`` (k**e, e uniform in
    ``exponent_range``) or ``"arbitrary"`` (random positive rationals spanning
    several orders of magnitude).
    """
    rng = random.Random(seed)
    if system_kind == "hypergraph":
        arity = k if arity is None else arity
        if n_vertices is None:
            n_vertices = max(arity + 1, (n * arity) // 2 + 1)
        vertices = list(range(n_vertices))
        attrs = [{"vertices": sorted(rng.sample(vertices, arity))} for _ in range(n)]
        system: IndependenceSystem = HypergraphMatching(max(arity, 1))
    elif system_kind == "partition":
        partitions = []
        attrs = [dict() for _ in range(n)]
        for p in range(k):
            n_parts = rng.randint(1, max(1, n // 2))
            caps = {str(part): rng.randint(1, 2) for part in range(n_parts)}
            partitions.append({"key_attr": f"p{p}", "capacities": caps})
            for a in attrs:
                a[f"p{p}"] = str(rng.randrange(n_parts))
        system = PartitionMatroidIntersection(partitions)
    else:
        raise ValueError(f"unknown system kind {system_kind!r}")

    lo, hi = exponent_range
    ground = []
    for j in range(n):
        if weight_mode == "k-power":
            e = rng.randint(lo, hi)
            w = Fraction(k) ** e
        elif weight_mode == "arbitrary":
            w = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3))
        else:
            raise ValueError(f"unknown weight mode {weight_mode!r}")
        ground.append(Element(f"e{j:02d}", w, attrs[j]))
    return Instance(ground, system, seed, k)
