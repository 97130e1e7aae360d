"""Run one algorithm over a stream and assemble the JSON report."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .bounded import GreedyOfGreedies
from .core import CountingOracle, Element, IndependenceSystem, weight_of_set
from .exact import MAX_EXACT_SIZE, brute_force_opt, format_weight, offline_greedy
from .greedy import GreedyState, UnweightedGreedy
from .reduction import ModuloSplit, round_k
from .unbounded import DynamicGreedyOfGreedies

ALGORITHMS = ("theorem1", "gog-unbounded", "gog-bounded", "unweighted-greedy", "offline-greedy", "exact")


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    algorithm: str
    k: int
    k_rounded: int
    solution_ids: list[str]
    solution_weight: str
    element_count: int
    rho_upper: int
    peak_stored_elements: int
    peak_instance_count: int
    oracle_calls: int
    discarded_count: int = 0
    discarded_weight: str = "0"
    self_loops_filtered: int = 0
    extra: dict[str, Any] = field(default_factory=dict)
    opt_weight: str | None = None
    ratio: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        extra = d.pop("extra")
        if self.opt_weight is None:
            del d["opt_weight"], d["ratio"]
        d.update(extra)
        return d


def run(
    elements: Iterable[Element],
    system: IndependenceSystem,
    algorithm: str = "theorem1",
    k: int | None = None,
    wmin=None,
    wmax=None,
    verify: bool = False,
    instrument: bool = False,
) -> RunReport:
    """Stream ``elements`` through ``algorithm`` and report.

    With ``verify`` the elements are also kept so the brute-force optimum can
    be computed; that refuses streams longer than the enumeration limit.
    """
    if algorithm not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    k_in = system.k if k is None else k
    if k_in < 1:
        raise UsageError("k must be at least 1")
    kr = round_k(k_in)
    start = time.perf_counter()

    rho_probe = GreedyState(CountingOracle(system))
    kept: list[Element] = []
    keep_all = verify or algorithm in ("exact", "offline-greedy")
    extra: dict[str, Any] = {}

    if algorithm in ("exact", "offline-greedy"):
        for u in elements:
            kept.append(u)
            if algorithm == "exact" and len(kept) > MAX_EXACT_SIZE:
                raise UsageError(f"exact refuses streams longer than {MAX_EXACT_SIZE} elements")
            rho_probe.feed(u)
        counter = CountingOracle(system)
        if algorithm == "exact":
            res = brute_force_opt(kept, counter)
            solution = list(res.opt_set)
            extra["independent_count"] = res.independent_count
        else:
            solution = offline_greedy(kept, counter)
        n = len(kept)
        stats = dict(peak_stored_elements=n, peak_instance_count=0, oracle_calls=counter.calls)
    else:
        est = _make_estimator(algorithm, system, kr, wmin, wmax, instrument)
        n = 0
        for u in elements:
            n += 1
            if keep_all:
                kept.append(u)
                if len(kept) > MAX_EXACT_SIZE:
                    raise UsageError(f"--verify refuses streams longer than {MAX_EXACT_SIZE} elements")
            rho_probe.feed(u)
            est.feed(u)
        est._ensure_state()
        solution = est.solution_
        stats = dict(
            peak_stored_elements=est.peak_stored_elements_,
            peak_instance_count=est.peak_instance_count_,
            oracle_calls=est.oracle_calls_,
            self_loops_filtered=est.self_loops_filtered_,
        )
        stats.update(_algorithm_fields(est, instrument, extra))

    report = RunReport(
        algorithm=algorithm,
        k=k_in,
        k_rounded=kr,
        solution_ids=[u.id for u in solution],
        solution_weight=format_weight(weight_of_set(solution)),
        element_count=n,
        rho_upper=k_in * rho_probe.g,
        extra=extra,
        **stats,
    )
    if verify:
        opt = brute_force_opt(kept, system).opt_weight
        w = weight_of_set(solution)
        report.opt_weight = format_weight(opt)
        report.ratio = format_weight(opt / w) if w > 0 else ("1" if opt == 0 else None)
    if instrument:
        extra["wall_time_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return report


def _make_estimator(algorithm, system, k, wmin, wmax, instrument):
    if algorithm == "unweighted-greedy":
        return UnweightedGreedy(system=system, k=k)
    if algorithm == "gog-bounded":
        if wmin is None or wmax is None:
            raise UsageError("gog-bounded needs --wmin and --wmax")
        return GreedyOfGreedies(system=system, k=k, wmin=wmin, wmax=wmax, instrument=instrument)
    if algorithm == "gog-unbounded":
        return DynamicGreedyOfGreedies(system=system, k=k, instrument=instrument)
    return ModuloSplit(system=system, k=k, inner=DynamicGreedyOfGreedies(instrument=instrument), instrument=instrument)


def _algorithm_fields(est, instrument, extra) -> dict:
    out: dict[str, Any] = {}
    if isinstance(est, GreedyOfGreedies):
        extra["window"] = [est.imin_, est.imax_]
        if instrument:
            extra["fed_ids"] = {str(i): ids for i, ids in est.fed_ids_.items()}
    elif isinstance(est, DynamicGreedyOfGreedies):
        out["discarded_count"] = est.discarded_count_
        out["discarded_weight"] = format_weight(est.discarded_weight_)
        extra["final_window"] = [est.imin_, est.imax_]
        extra["global_oracle_calls"] = est.global_oracle_calls_
        if instrument:
            extra["history"] = est.history_
            extra["never_fed_ids"] = est.discarded_ids_
    elif isinstance(est, ModuloSplit):
        inners = est.inners_
        out["discarded_count"] = sum(a.discarded_count_ for a in inners)
        out["discarded_weight"] = format_weight(sum((a.discarded_weight_ for a in inners), Fraction(0)))
        extra["ell"] = est.ell_
        extra["group_counts"] = est.group_counts_
        extra["final_windows"] = [[a.imin_, a.imax_] for a in inners]
        extra["global_oracle_calls"] = sum(a.global_oracle_calls_ for a in inners)
        if instrument:
            extra["fed_ids"] = est.fed_ids_
    return out
