"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any, Iterable, Iterator

from .core import Element, IndependenceSystem


def parse_weight(value: Any) -> Fraction:
    """Parse an exact positive weight from an int, Fraction, or decimal/ratio string.

    Floats are rejected: they cannot carry an exact decimal weight.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"weight must be an int, Fraction or string, got {value!r}")
    if isinstance(value, (int, Fraction)):
        w = Fraction(value)
    elif isinstance(value, Decimal):
        w = Fraction(value)
    elif isinstance(value, str):
        s = value.strip()
        try:
            w = Fraction(s) if "/" in s else Fraction(Decimal(s))
        except (ValueError, InvalidOperation, ZeroDivisionError):
            raise ValueError(f"cannot parse weight {value!r}") from None
    else:
        raise TypeError(f"unsupported weight type {type(value).__name__}")
    if w <= 0:
        raise ValueError(f"weight must be positive, got {value!r}")
    return w


def check_element(x: Any) -> Element:
    """Coerce an Element, a ``{"id", "weight", "attrs"}`` mapping or an ``(id, weight[, attrs])`` tuple."""
    if isinstance(x, Element):
        return x
    if isinstance(x, dict):
        try:
            uid, weight = x["id"], x["weight"]
        except KeyError as e:
            raise ValueError(f"element record is missing field {e.args[0]!r}") from None
        attrs = x.get("attrs") or {}
    elif isinstance(x, tuple) and len(x) in (2, 3):
        uid, weight = x[0], x[1]
        attrs = x[2] if len(x) == 3 else {}
    else:
        raise TypeError(f"cannot interpret {x!r} as an element")
    if not isinstance(uid, str):
        raise TypeError(f"element id must be a string, got {uid!r}")
    if not isinstance(attrs, dict):
        raise TypeError(f"element attrs must be a mapping, got {attrs!r}")
    return Element(uid, parse_weight(weight), attrs)


def check_elements(X: Iterable[Any], system: IndependenceSystem | None = None) -> Iterator[Element]:
    """Lazily coerce a batch of elements, rejecting duplicate ids within the batch."""
    seen: set[str] = set()
    for x in X:
        u = check_element(x)
        if u.id in seen:
            raise ValueError(f"duplicate element id {u.id!r}")
        seen.add(u.id)
        if system is not None:
            system.validate(u)
        yield u


def check_k(k: Any) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return k


def check_system(system: Any) -> IndependenceSystem:
    if not isinstance(system, IndependenceSystem):
        raise TypeError(f"system must be an IndependenceSystem, got {type(system).__name__}")
    return system
