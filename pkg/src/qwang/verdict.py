"""Results of bounded searches over semi-decidable tiling questions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    return x


@dataclass(frozen=True)
class HoldsUpTo:
    """The property held for every instance up to ``bound``."""

    bound: Any

    def to_json(self) -> dict:
        return {"kind": "holds", "bound": _plain(self.bound)}


@dataclass(frozen=True)
class RefutedAt:
    """A concrete instance refutes the property; ``witness`` is recomputable."""

    witness: Any
    detail: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"kind": "refuted", "witness": _plain(self.witness)}
        if self.detail:
            out["detail"] = _plain(self.detail)
        return out


@dataclass(frozen=True)
class Exact:
    value: bool

    def to_json(self) -> dict:
        return {"kind": "exact", "value": self.value}


Verdict = Union[HoldsUpTo, RefutedAt, Exact]


def from_json(doc: dict) -> Verdict:
    kind = doc["kind"]
    if kind == "holds":
        b = doc["bound"]
        return HoldsUpTo(tuple(b) if isinstance(b, list) else b)
    if kind == "refuted":
        w = doc["witness"]
        return RefutedAt(tuple(w) if isinstance(w, list) else w, doc.get("detail", {}))
    if kind == "exact":
        return Exact(bool(doc["value"]))
    raise ValueError(f"unknown verdict kind {kind!r}")
