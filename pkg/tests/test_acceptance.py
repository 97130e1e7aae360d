"""Acceptance criteria, each checked with exact arithmetic against brute-force oracles.

Every test records one PASS/FAIL line in ``ACCEPTANCE_RESULTS``; the lines are
printed in the terminal summary.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_RESULTS, edge, part_elem
from kextend.bounded import GreedyOfGreedies
from kextend.core import Element, weight_of_set
from kextend.exact import brute_force_opt, independent_sets, offline_greedy, random_instance
from kextend.greedy import greedy_pass
from kextend.reduction import ModuloSplit, class_index, kpower_round
from kextend.systems import (
    ExplicitSystem,
    HypergraphMatching,
    PartitionMatroidIntersection,
    check_k_extendible,
    check_k_set_system,
    min_extendibility,
)
from kextend.unbounded import DynamicGreedyOfGreedies

pytestmark = pytest.mark.acceptance

CORPUS_PER_K = 500
KINDS = ("hypergraph", "partition")


def record(number, name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {name}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_RESULTS[f"{number} {name}"] = "PASS" if ok else "FAIL"
    print(line)
    assert ok, line


def _cmp_pow2(p, q, t):
    """Sign of p/q - 2**t using integer shifts only."""
    if t >= 0:
        a, b = p, q << t
    else:
        a, b = p << -t, q
    return (a > b) - (a < b)


def _ids(elements):
    return {u.id for u in elements}


class Corpus:
    """Seeded k-power instances with their brute-force optimum and rho."""

    def __init__(self, exponent_range, base_seed):
        self.items = []
        for k in (2, 4):
            for j in range(CORPUS_PER_K):
                seed = base_seed + 10_000 * k + j
                n = random.Random(seed).randint(6, 16)
                inst = random_instance(seed, n, KINDS[j % 2], "k-power", k=k, exponent_range=exponent_range)
                opt = brute_force_opt(inst.ground, inst.system)
                rho = max(len(A) for A in independent_sets(inst.ground, inst.system))
                self.items.append((inst, k, opt, rho))


@pytest.fixture(scope="module")
def bounded_corpus():
    start = time.perf_counter()
    corpus = Corpus((-3, 3), 1_000_000)
    corpus.build_time = time.perf_counter() - start
    return corpus


@pytest.fixture(scope="module")
def unbounded_corpus():
    # 16 exponents wide so the window has to move
    return Corpus((-8, 8), 2_000_000)


def test_criterion_01_rounding_bounds():
    start = time.perf_counter()
    bad = []
    for k in (2, 4, 8, 16):
        ell = k.bit_length() - 1
        rng = random.Random(k)
        for _ in range(100_000):
            p, q = rng.randint(1, 2**40), rng.randint(1, 2**40)
            w = Fraction(p, q)
            p, q = w.numerator, w.denominator
            e = kpower_round(w, k).exponent
            i = class_index(w)
            s = ell * e + i % ell
            ok = (
                _cmp_pow2(p, q, s + 1) <= 0  # w/2 <= w2 * 2**(i mod ell)
                and _cmp_pow2(p, q, s) >= 0  # w2 * 2**(i mod ell) <= w
                and _cmp_pow2(p, q, ell * e + ell) <= 0  # w/k <= w2
                and _cmp_pow2(p, q, ell * e) >= 0  # w2 <= w
            )
            if not ok:
                bad.append((k, w))
    elapsed = time.perf_counter() - start
    record(1, "weight rounding bounds", not bad and elapsed < 10,
           f"4x100000 weights, {len(bad)} violations, {elapsed:.1f}s")


def _exchange_fixtures():
    out = []
    # bipartite and general graph matchings
    out.append((HypergraphMatching(2), [edge(f"e{a}{b}", [f"l{a}", f"r{b}"]) for a, b in
                                        [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (3, 3), (1, 3)]]))
    out.append((HypergraphMatching(2), [edge(f"e{a}{b}", [a, b]) for a, b in
                                        itertools.combinations(range(4), 2)] + [edge("e45", [4, 5])]))
    # 3-uniform hypergraph matching
    out.append((HypergraphMatching(3), [edge(f"h{j}", vs) for j, vs in
                                        enumerate([(1, 2, 3), (3, 4, 5), (5, 6, 1), (2, 4, 6), (1, 4, 7), (7, 8, 9), (2, 8, 5)])]))
    # single matroid, intersection of two and of three partition matroids
    out.append((PartitionMatroidIntersection([{"key_attr": "a", "capacities": {"x": 2, "y": 1, "z": 1}}]),
                [part_elem(f"u{j}", a=c) for j, c in enumerate("xxxyyzz")]))
    out.append((PartitionMatroidIntersection([{"key_attr": "a", "capacities": 1}, {"key_attr": "b", "capacities": 1}]),
                [part_elem(f"u{j}", a=j % 3, b=j % 2) for j in range(7)]))
    out.append((PartitionMatroidIntersection([{"key_attr": c, "capacities": 1} for c in "abc"]),
                [part_elem(f"u{j}", a=j % 3, b=(j * 2) % 4, c=j % 2) for j in range(7)]))
    # larger fixtures (n = 8, 9): sampled orders
    for seed, (kind, n, k) in enumerate([("hypergraph", 8, 2), ("partition", 8, 2), ("hypergraph", 9, 3),
                                         ("partition", 9, 3), ("hypergraph", 9, 2), ("partition", 9, 2)]):
        inst = random_instance(seed, n, kind, k=k)
        out.append((inst.system, inst.ground))
    return out


def test_criterion_02_greedy_exchange_bound():
    start = time.perf_counter()
    violations, orders = 0, 0
    rng = random.Random(2)
    for system, ground in _exchange_fixtures():
        k = min_extendibility(system, ground)
        family = independent_sets(ground, system)
        if len(ground) <= 7:
            perms = itertools.permutations(ground)
        else:
            perms = (rng.sample(ground, len(ground)) for _ in range(2000))
        checked = {}
        for perm in perms:
            orders += 1
            b = frozenset(_ids(greedy_pass(system, perm)))
            if b not in checked:
                checked[b] = all(k * len(b - A) >= len(A - b) for A in family)
            violations += not checked[b]
    elapsed = time.perf_counter() - start
    record(2, "greedy exchange bound k|B\\A| >= |A\\B|", violations == 0 and elapsed < 120,
           f"{orders} stream orders, {violations} violations, {elapsed:.1f}s")


def _run_bounded(inst, k):
    ws = [u.weight for u in inst.ground]
    return GreedyOfGreedies(system=inst.system, k=k, wmin=min(ws), wmax=max(ws), instrument=True).fit(inst.ground)


def test_criterion_03_class_inequality(bounded_corpus):
    start = time.perf_counter()
    bad = 0
    for inst, k, opt, _ in bounded_corpus.items:
        alg = _run_bounded(inst, k)
        alg.solution_
        opt_ids = _ids(opt.opt_set)
        prev = set()
        for i in range(alg.imax_, alg.imin_ - 1, -1):
            Ti = set(alg.trace_[i])
            if k * k * len(prev) + k * len(Ti - prev) < len(opt_ids & set(alg.fed_ids_[i])):
                bad += 1
            prev = Ti
    elapsed = time.perf_counter() - start + bounded_corpus.build_time
    record(3, "per-class inequality k^2|T_{i+1}| + k|T_i\\T_{i+1}| >= |OPT cap E_i|", bad == 0 and elapsed < 180,
           f"{len(bounded_corpus.items)} instances, {bad} violations, {elapsed:.1f}s")


def test_criterion_04_bounded_ratio(bounded_corpus):
    bad = worst = 0
    for inst, k, opt, _ in bounded_corpus.items:
        w = _run_bounded(inst, k).solution_weight_
        bad += opt.opt_weight > 2 * k * w
        worst = max(worst, opt.opt_weight / (k * w))
    record(4, "bounded ratio w(OPT) <= 2k w(T)", bad == 0,
           f"{len(bounded_corpus.items)} instances, worst OPT/(k w(T)) = {float(worst):.3f}")


def test_criterion_05_unbounded_ratio(unbounded_corpus):
    bad = moved = 0
    worst = 0
    for inst, k, opt, _ in unbounded_corpus.items:
        alg = DynamicGreedyOfGreedies(system=inst.system, k=k, instrument=True).fit(inst.ground)
        w = alg.solution_weight_
        bad += opt.opt_weight > 4 * k * w
        worst = max(worst, opt.opt_weight / (k * w))
        moved += len({h["imin"] for h in alg.history_}) > 1
    record(5, "unbounded ratio w(OPT) <= 4k w(T)", bad == 0 and moved > 0,
           f"{len(unbounded_corpus.items)} instances, window moved in {moved}, worst OPT/(k w(T)) = {float(worst):.3f}")


def test_criterion_06_pipeline_ratio():
    bad = total = 0
    worst = 0
    for k in (2, 4, 8):
        ell = k.bit_length() - 1
        for j in range(200):
            seed = 3_000_000 + 1000 * k + j
            n = random.Random(seed).randint(4, 14)
            inst = random_instance(seed, n, KINDS[j % 2], "arbitrary", k=k)
            opt = brute_force_opt(inst.ground, inst.system).opt_weight
            w = ModuloSplit(system=inst.system, k=k).fit(inst.ground).solution_weight_
            bad += opt > 8 * k * ell * w
            worst = max(worst, opt / (k * ell * w))
            total += 1
    record(6, "pipeline ratio w(OPT) <= 8k log2(k) w(T)", bad == 0,
           f"{total} arbitrary-weight instances, worst OPT/(k log2 k w(T)) = {float(worst):.3f}")


def test_criterion_07_space_bounds(bounded_corpus, unbounded_corpus):
    bad = 0
    for inst, k, _, _ in bounded_corpus.items:
        alg = _run_bounded(inst, k)
        ws = [u.weight for u in inst.ground]
        count = len(alg.instances_)
        bad += count != alg.imax_ - alg.imin_ + 1
        bad += Fraction(k) ** (count - 1) > max(ws) / min(ws)
    peak = 0
    for inst, k, _, rho in unbounded_corpus.items:
        alg = DynamicGreedyOfGreedies(system=inst.system, k=k).fit(inst.ground)
        # peak_window <= log_k((2k rho)^2) + 2, compared without logarithms
        bad += k ** (alg.peak_window_ - 2) > (2 * k * rho) ** 2
        peak = max(peak, alg.peak_window_)
    record(7, "instance-count and peak-window bounds", bad == 0,
           f"{len(bounded_corpus.items) + len(unbounded_corpus.items)} runs, largest peak window {peak}")


def test_criterion_08_equivalence_and_discard_bound(unbounded_corpus):
    mismatch = over = nonempty_f = 0
    for inst, k, opt, _ in unbounded_corpus.items:
        alg = DynamicGreedyOfGreedies(system=inst.system, k=k, instrument=True).fit(inst.ground)
        F = set(alg.discarded_ids_)
        nonempty_f += bool(F)
        kept = [u for u in inst.ground if u.id not in F]
        ref = GreedyOfGreedies(system=inst.system, k=k, wmin=alg.wmin_, wmax=alg.wmax_).fit(kept)
        mismatch += _ids(ref.solution_) != _ids(alg.solution_)
        w_f = sum((u.weight for u in opt.opt_set if u.id in F), Fraction(0))
        over += 2 * w_f > opt.opt_weight
    record(8, "equivalence with the bounded run on N\\F, and w(OPT cap F) <= w(OPT)/2",
           mismatch == 0 and over == 0,
           f"{len(unbounded_corpus.items)} instances, F non-empty in {nonempty_f}, "
           f"{mismatch} mismatches, {over} discard violations")


def test_criterion_09_definition_checkers():
    fails = checked = 0
    for seed in range(40):
        for kind in KINDS:
            k = 1 + seed % 4
            inst = random_instance(4_000_000 + seed, 10, kind, k=k)
            ok = check_k_extendible(inst.system, inst.ground, inst.system.k)
            ok = ok and check_k_set_system(inst.system, inst.ground, inst.system.k)
            fails += not ok
            checked += 1
    # arbitrary down-closed families: at their tightest k, extendible implies set system
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 7)
        ids = [f"x{j}" for j in range(n)]
        gens = [rng.sample(ids, rng.randint(0, n)) for _ in range(rng.randint(1, 4))]
        sys_ = ExplicitSystem(ids, gens)
        ground = [Element(i, 1) for i in ids]
        k = min_extendibility(sys_, ground)
        fails += not (check_k_extendible(sys_, ground, k) and check_k_set_system(sys_, ground, k))
        checked += 1
    record(9, "shipped systems are k-extendible and k-extendible fixtures are k-set systems", fails == 0,
           f"{checked} systems, {fails} failures")


def test_criterion_10_baselines():
    bad_ratio = bad_base = 0
    rng = random.Random(10)
    total = 0
    for seed in range(300):
        k = (1, 2, 3, 4)[seed % 4]
        inst = random_instance(5_000_000 + seed, rng.randint(3, 12), KINDS[seed % 2], "arbitrary", k=k)
        opt = brute_force_opt(inst.ground, inst.system).opt_weight
        bad_ratio += opt > inst.system.k * weight_of_set(offline_greedy(inst.ground, inst.system))
        for _ in range(5):
            order = rng.sample(inst.ground, len(inst.ground))
            B = greedy_pass(inst.system, order)
            b = _ids(B)
            bad_base += not inst.system.is_independent(B) or any(
                inst.system.is_independent(B + [u]) for u in inst.ground if u.id not in b
            )
        total += 1
    record(10, "offline greedy within factor k and unweighted greedy returns a base",
           bad_ratio == 0 and bad_base == 0,
           f"{total} instances, {bad_ratio} ratio violations, {bad_base} non-bases")
