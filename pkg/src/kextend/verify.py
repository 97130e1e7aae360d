"""Seeded property suite: every approximation and space guarantee, checked against brute force."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .bounded import GreedyOfGreedies
from .core import IndependenceSystem, weight_of_set
from .exact import Instance, brute_force_opt, independent_sets, offline_greedy, random_instance
from .greedy import greedy_pass
from .reduction import ModuloSplit, round_k
from .systems import check_k_extendible, check_k_set_system, down_closed_witness
from .unbounded import DynamicGreedyOfGreedies


class PlantedViolation(IndependenceSystem):
    """Fault injection: reports one chosen element as a self-loop, breaking down-closedness
    wherever that element sits in a larger independent set."""

    def __init__(self, system: IndependenceSystem, victim_id: str):
        self.system = system
        self.victim_id = victim_id
        self.k = system.k

    def is_independent(self, elements):
        if len(elements) == 1 and next(iter(elements)).id == self.victim_id:
            return False
        return self.system.is_independent(elements)

    def validate(self, u):
        self.system.validate(u)


class PropertyFailure(AssertionError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail


@dataclass
class SuiteResult:
    trials: int
    checks: Counter = field(default_factory=Counter)
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "trials": self.trials,
            "checks": dict(sorted(self.checks.items())),
            "failures": self.failures,
        }


def _require(ok: bool, check: str, detail: str = ""):
    if not ok:
        raise PropertyFailure(check, detail)


def _ids(elements):
    return {u.id for u in elements}


def check_down_closed(inst: Instance, checks: Counter):
    wit = down_closed_witness(inst.system, inst.ground)
    _require(wit is None, "down_closed", f"independent {wit[0] if wit else ''} has dependent subset {wit[1] if wit else ''}")
    checks["down_closed"] += 1


def check_definitions(inst: Instance, checks: Counter):
    k = inst.system.k
    _require(check_k_extendible(inst.system, inst.ground, k), "k_extendible", f"fails at declared k={k}")
    _require(check_k_set_system(inst.system, inst.ground, k), "k_set_system", f"fails at k={k}")
    checks["k_extendible"] += 1
    checks["k_set_system"] += 1


def check_greedy(inst: Instance, rng: random.Random, checks: Counter):
    order = list(inst.ground)
    rng.shuffle(order)
    B = greedy_pass(inst.system, order)
    b = _ids(B)
    for u in order:
        if u.id not in b:
            _require(not inst.system.is_independent(B + [u]), "greedy_base", f"{u.id} extends the greedy output")
    k = inst.system.k
    for A in independent_sets(inst.ground, inst.system):
        _require(k * len(b - A) >= len(A - b), "greedy_exchange", f"A={sorted(A)} B={sorted(b)}")
        _require(len(A) <= k * len(b), "greedy_cardinality", f"A={sorted(A)} B={sorted(b)}")
    checks["greedy_base"] += 1
    checks["greedy_exchange"] += 1


def check_offline_greedy(inst: Instance, opt_w: Fraction, checks: Counter):
    w = weight_of_set(offline_greedy(inst.ground, inst.system))
    _require(opt_w <= inst.system.k * w, "offline_greedy_ratio", f"OPT={opt_w} greedy={w}")
    checks["offline_greedy_ratio"] += 1


def check_bounded(inst: Instance, k: int, checks: Counter):
    """Per-class inequality, 2k ratio and space accounting for the bounded algorithm."""
    opt = brute_force_opt(inst.ground, inst.system)
    opt_ids = _ids(opt.opt_set)
    weights = [u.weight for u in inst.ground]
    wmin, wmax = min(weights), max(weights)
    alg = GreedyOfGreedies(system=inst.system, k=k, wmin=wmin, wmax=wmax, instrument=True).fit(inst.ground)
    T = alg.solution_
    wT = weight_of_set(T)
    _require(opt.opt_weight <= 2 * k * wT, "bounded_ratio", f"OPT={opt.opt_weight} T={wT}")
    prev: set[str] = set()
    for i in range(alg.imax_, alg.imin_ - 1, -1):
        Ti = set(alg.trace_[i])
        Ei = set(alg.fed_ids_[i])
        lhs = k * k * len(prev) + k * len(Ti - prev)
        _require(lhs >= len(opt_ids & Ei), "bounded_class_inequality", f"i={i} lhs={lhs} |OPT∩E_i|={len(opt_ids & Ei)}")
        if i < alg.imax_:
            _require(Ei >= set(alg.fed_ids_[i + 1]), "bounded_nesting", f"i={i}")
        prev = Ti
    n_inst = alg.imax_ - alg.imin_ + 1
    _require(len(alg.instances_) == n_inst and k ** (n_inst - 1) <= wmax / wmin, "bounded_instance_count",
             f"{len(alg.instances_)} instances for [{wmin}, {wmax}]")
    rho = max(len(A) for A in independent_sets(inst.ground, inst.system))
    _require(alg.peak_stored_elements_ <= rho * n_inst + len(T), "bounded_space",
             f"peak={alg.peak_stored_elements_} rho={rho} instances={n_inst}")
    for name in ("bounded_ratio", "bounded_class_inequality", "bounded_instance_count", "bounded_space"):
        checks[name] += 1


def check_unbounded(inst: Instance, k: int, checks: Counter):
    """4k ratio, discard bound, window bound, greedy-size bounds, and agreement with the bounded
    algorithm run on the never-discarded elements."""
    opt = brute_force_opt(inst.ground, inst.system)
    alg = DynamicGreedyOfGreedies(system=inst.system, k=k, instrument=True).fit(inst.ground)
    T = alg.solution_
    wT = weight_of_set(T)
    _require(opt.opt_weight <= 4 * k * wT, "unbounded_ratio", f"OPT={opt.opt_weight} T={wT}")

    F = set(alg.discarded_ids_)
    w_opt_f = sum((u.weight for u in opt.opt_set if u.id in F), Fraction(0))
    _require(2 * w_opt_f <= opt.opt_weight, "unbounded_discard", f"w(OPT∩F)={w_opt_f} OPT={opt.opt_weight}")

    arrived = set(alg.arrivals_)
    kept = [u for u in inst.ground if u.id not in F and u.id in arrived]
    if kept:
        ref = GreedyOfGreedies(system=inst.system, k=k, wmin=alg.wmin_, wmax=alg.wmax_).fit(kept)
        _require([u.id for u in ref.solution_] == [u.id for u in T], "unbounded_equivalence",
                 f"dynamic={[u.id for u in T]} bounded={[u.id for u in ref.solution_]}")
    else:
        _require(not T, "unbounded_equivalence", "non-empty output with every element discarded")

    rho = max(len(A) for A in independent_sets(inst.ground, inst.system))
    if alg.n_seen_:
        _require(k ** (alg.peak_window_ - 2) <= (2 * k * rho) ** 2, "unbounded_window",
                 f"peak window {alg.peak_window_} rho={rho}")
        _require(alg.peak_instance_count_ <= alg.peak_window_, "unbounded_window", "instance count above window")
        g = alg.g_
        _require(rho <= k * g and g <= rho, "unbounded_g_bounds", f"g={g} rho={rho}")
    for name in ("unbounded_ratio", "unbounded_discard", "unbounded_equivalence", "unbounded_window",
                 "unbounded_g_bounds"):
        checks[name] += 1


def check_pipeline(inst: Instance, k: int, checks: Counter):
    kr = round_k(k)
    ell = kr.bit_length() - 1
    opt = brute_force_opt(inst.ground, inst.system)
    alg = ModuloSplit(system=inst.system, k=kr, instrument=True).fit(inst.ground)
    wT = weight_of_set(alg.solution_)
    _require(opt.opt_weight <= 8 * kr * ell * wT, "pipeline_ratio", f"OPT={opt.opt_weight} T={wT}")
    fed = [uid for group in alg.fed_ids_ for uid in group]
    _require(sorted(fed) == sorted(u.id for u in inst.ground) and len(set(fed)) == len(fed),
             "pipeline_partition", "groups do not partition the stream")
    checks["pipeline_ratio"] += 1
    checks["pipeline_partition"] += 1


def _trial_seed(seed: int, trial: int, k: int) -> int:
    return (seed * 1_000_003 + trial) * 101 + k


def verify_suite(
    seed: int = 0,
    trials: int = 500,
    k_list: Sequence[int] = (2, 4),
    inject_fault: bool = False,
    n_range: tuple[int, int] = (4, 9),
    on_failure: Callable[[dict], None] | None = None,
) -> SuiteResult:
    """Run every property check on ``trials`` generated instances per k.

    Each trial draws a hypergraph matching or a partition-matroid intersection
    (alternating), then checks the definitions, the greedy baselines, the
    bounded and unbounded algorithms on k-power weights, and the full pipeline
    on arbitrary weights. Failures carry the trial seed and the serialized
    instance so they can be replayed with ``kextend run``.
    """
    result = SuiteResult(trials)
    for trial in range(trials):
        for k in k_list:
            kr = round_k(k)
            ts = _trial_seed(seed, trial, k)
            rng = random.Random(ts)
            kind = ("hypergraph", "partition")[trial % 2]
            n = rng.randint(*n_range)
            stages = [
                ("k-power", (-3, 3), lambda inst: _structural(inst, rng, result.checks, inject_fault)),
                ("k-power", (-3, 3), lambda inst: check_bounded(inst, kr, result.checks)),
                ("k-power", (-8, 8), lambda inst: check_unbounded(inst, kr, result.checks)),
                ("arbitrary", (0, 0), lambda inst: check_pipeline(inst, kr, result.checks)),
            ]
            for stage, (mode, exps, run_checks) in enumerate(stages):
                inst = random_instance(ts + stage, n, kind, mode, k=kr, exponent_range=exps)
                try:
                    run_checks(inst)
                except PropertyFailure as e:
                    failure = {
                        "check": e.check,
                        "detail": e.detail,
                        "seed": inst.seed,
                        "k": kr,
                        "constraint": inst.constraint_config(),
                        "stream": inst.to_records(),
                    }
                    result.failures.append(failure)
                    if on_failure:
                        on_failure(failure)
    return result


def _structural(inst: Instance, rng: random.Random, checks: Counter, inject_fault: bool):
    if inject_fault:
        victim = _fault_victim(inst)
        if victim is not None:
            inst.system = PlantedViolation(inst.system, victim)
    check_down_closed(inst, checks)
    check_definitions(inst, checks)
    check_greedy(inst, rng, checks)
    opt = brute_force_opt(inst.ground, inst.system)
    check_offline_greedy(inst, opt.opt_weight, checks)


def _fault_victim(inst: Instance):
    for u, v in itertools.combinations(inst.ground, 2):
        if inst.system.is_independent([u, v]):
            return u.id
    return None
