"""Elements, exact weights, and the independence-oracle interface."""

from __future__ import annotations

import abc
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Any, Collection, Iterable, Iterator, Mapping


class ContractError(ValueError):
    """An input violated an algorithm's precondition (e.g. a non k-power weight)."""


@dataclass(frozen=True)
class Element:
    """A stream element. Equality and hashing use ``id`` only."""

    id: str
    weight: Fraction = field(compare=False)
    attrs: Mapping[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        w = self.weight
        if not isinstance(w, Fraction):
            w = Fraction(w)
            object.__setattr__(self, "weight", w)
        if w <= 0:
            raise ValueError(f"element {self.id!r}: weight must be positive, got {w}")


def floor_log2(w: Fraction) -> int:
    """Return the integer i with 2**i <= w < 2**(i+1), computed exactly."""
    p, q = w.numerator, w.denominator
    if p <= 0:
        raise ValueError("floor_log2 needs a positive value")
    i = p.bit_length() - q.bit_length()
    # now 2**(i-1) < p/q < 2**(i+1)
    if i >= 0:
        if p < (q << i):
            i -= 1
    elif (p << -i) < q:
        i -= 1
    return i


def log2_of_power_of_two(k: int) -> int:
    if k < 2 or k & (k - 1):
        raise ValueError(f"k must be a power of 2 and at least 2, got {k}")
    return k.bit_length() - 1


def pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


@total_ordering
@dataclass(frozen=True)
class KPowerWeight:
    """The weight ``base_k ** exponent``; ordered by exponent."""

    base_k: int
    exponent: int

    def __post_init__(self):
        log2_of_power_of_two(self.base_k)

    @classmethod
    def of(cls, w: Fraction, k: int) -> KPowerWeight:
        """Exact k-power weight of ``w``; raise ContractError if ``w`` is not a power of ``k``."""
        w = Fraction(w)
        ell = log2_of_power_of_two(k)
        if w <= 0:
            raise ContractError(f"weight must be positive, got {w}")
        p, q = w.numerator, w.denominator
        # a power of 2 has a single set bit and the other side equal to 1
        if q == 1 and p & (p - 1) == 0:
            i = p.bit_length() - 1
        elif p == 1 and q & (q - 1) == 0:
            i = -(q.bit_length() - 1)
        else:
            raise ContractError(f"weight {w} is not a power of {k}")
        if i % ell:
            raise ContractError(f"weight {w} is not a power of {k}")
        return cls(k, i // ell)

    @property
    def value(self) -> Fraction:
        return pow2(self.exponent * log2_of_power_of_two(self.base_k))

    def __lt__(self, other):
        if not isinstance(other, KPowerWeight):
            return NotImplemented
        if other.base_k != self.base_k:
            raise ValueError("cannot compare k-power weights with different bases")
        return self.exponent < other.exponent


def weight_of_set(elements: Iterable[Element]) -> Fraction:
    return sum((u.weight for u in elements), Fraction(0))


class IndependenceSystem(abc.ABC):
    """An independence oracle over elements, with declared extendibility ``k``.

    Implementations must be pure: the answer depends only on the set queried.
    """

    k: int = 1

    @abc.abstractmethod
    def is_independent(self, elements: Collection[Element]) -> bool:
        ...

    def validate(self, u: Element) -> None:
        """Raise ValueError if ``u`` cannot be interpreted by this system."""


def is_self_loop(u: Element, system: IndependenceSystem) -> bool:
    return not system.is_independent((u,))


class CountingOracle(IndependenceSystem):
    """Wraps a system and counts oracle queries."""

    def __init__(self, system: IndependenceSystem):
        self.system = system
        self.k = system.k
        self.calls = 0

    def is_independent(self, elements):
        self.calls += 1
        return self.system.is_independent(elements)

    def validate(self, u):
        self.system.validate(u)


class ElementStream:
    """Single-pass iterator over elements that tracks the 1-based arrival index."""

    def __init__(self, elements: Iterable[Element]):
        self._it = iter(elements)
        self.position = 0

    def __iter__(self) -> Iterator[Element]:
        return self

    def __next__(self) -> Element:
        u = next(self._it)
        self.position += 1
        return u
