"""Self-contained verdict records with exact serialized witnesses.

Every numeric field in a report is an exact encoding: rationals as
"p/q" strings, quadratic numbers as {"a", "b", "sqrt"} objects, intervals
as {"lo", "hi"}.  Reports are deterministic: identical inputs produce
byte-for-byte identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactnum.qnum import QuadraticNumber, RationalInterval, fmt_rational, parse_rational

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"
CERTIFIED = "certified"
CONTRADICTION = "contradiction"


def encode_value(x) -> Any:
    """Exact JSON-compatible encoding of any supported value."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return fmt_rational(x)
    if isinstance(x, QuadraticNumber):
        if x.is_rational:
            return fmt_rational(x.a)
        return {"a": fmt_rational(x.a), "b": fmt_rational(x.b), "sqrt": x.n}
    if isinstance(x, RationalInterval):
        return {"lo": fmt_rational(x.lo), "hi": fmt_rational(x.hi)}
    if isinstance(x, (list, tuple)):
        return [encode_value(v) for v in x]
    if isinstance(x, dict):
        return {k: encode_value(v) for k, v in x.items()}
    if x is None or isinstance(x, str):
        return x
    raise TypeError(f"cannot encode {type(x).__name__}")


def decode_value(obj):
    """Inverse of encode_value for scalar encodings."""
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict) and set(obj) == {"a", "b", "sqrt"}:
        return QuadraticNumber(parse_rational(obj["a"]), parse_rational(obj["b"]),
                               int(obj["sqrt"]))
    if isinstance(obj, dict) and set(obj) == {"lo", "hi"}:
        return RationalInterval(parse_rational(obj["lo"]), parse_rational(obj["hi"]))
    if isinstance(obj, list):
        return [decode_value(v) for v in obj]
    return obj


@dataclass
class CheckReport:
    """Verdict for one inequality or condition check, with exact witnesses."""

    claim: str
    verdict: str
    entries: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.verdict in (HOLDS, CERTIFIED, "pass")

    def add(self, name: str, status: str, **values) -> dict:
        entry = {"name": name, "status": status}
        for key, val in values.items():
            entry[key] = encode_value(val)
        self.entries.append(entry)
        return entry

    def note(self, text: str) -> None:
        self.notes.append(text)

    def to_dict(self) -> dict:
        out = {"claim": self.claim, "verdict": self.verdict, "entries": self.entries}
        if self.notes:
            out["notes"] = list(self.notes)
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    def summary_line(self) -> str:
        return f"{self.verdict.upper():<14} {self.claim}"
