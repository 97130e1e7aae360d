"""One-pass maximum-weight selection under k-extendible constraints."""

from .bounded import GreedyOfGreedies
from .core import (
    ContractError,
    CountingOracle,
    Element,
    ElementStream,
    IndependenceSystem,
    KPowerWeight,
    is_self_loop,
    weight_of_set,
)
from .exact import brute_force_opt, offline_greedy, random_instance
from .greedy import GreedyState, UnweightedGreedy
from .reduction import ModuloSplit, class_index, group_of, kpower_round, round_k
from .systems import (
    ExplicitSystem,
    HypergraphMatching,
    PartitionMatroidIntersection,
    check_k_extendible,
    check_k_set_system,
    min_extendibility,
)
from .unbounded import DynamicGreedyOfGreedies

__version__ = "0.1.0"
