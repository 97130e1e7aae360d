"""JSON Lines stream files and JSON constraint configs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator

from .core import Element, IndependenceSystem
from .systems import system_from_config
from .validation import check_element


class StreamFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def iter_stream(path, system: IndependenceSystem | None = None) -> Iterator[Element]:
    """Yield elements from a JSONL file, one per non-blank line.

    Raises StreamFormatError naming the offending line for malformed JSON,
    missing fields, non-positive weights, duplicate ids, or elements the
    system cannot interpret.
    """
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                if isinstance(record.get("weight"), float):
                    # keep the literal text exact rather than trusting the float
                    record["weight"] = _raw_weight(line)
                u = check_element(record)
                if system is not None:
                    system.validate(u)
            except (ValueError, TypeError, KeyError, AttributeError) as e:
                raise StreamFormatError(lineno, str(e)) from None
            if u.id in seen:
                raise StreamFormatError(lineno, f"duplicate element id {u.id!r}")
            seen.add(u.id)
            yield u


def _raw_weight(line: str) -> str:
    return json.loads(line, parse_float=str)["weight"]


def load_constraint(path) -> tuple[IndependenceSystem, dict]:
    cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(cfg, dict):
        raise ValueError("constraint config must be a JSON object")
    return system_from_config(cfg), cfg


def write_stream(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True) + "\n")
