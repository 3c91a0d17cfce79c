"""JSON tile files.

    {"dim": d, "arity": 2 | 4,
     "entries": [{"idx": [i1, ..., in], "re": r, "im": m}, ...]}

Indices in ``idx`` are 1-based; omitted entries are zero. Entries are
written in row-major index order, and floats use ``repr`` so coefficients
survive a round trip bit for bit.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .tensor import Tensor


class TileFileError(ValueError):
    pass


def to_doc(t: Tensor) -> dict:
    entries = []
    for idx in zip(*np.nonzero(t.data)):
        v = complex(t.data[idx])
        entries.append({"idx": [int(i) + 1 for i in idx], "re": v.real, "im": v.imag})
    return {"dim": t.dim, "arity": t.arity, "entries": entries}


def from_doc(doc: dict) -> Tensor:
    try:
        dim, arity, entries = int(doc["dim"]), int(doc["arity"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise TileFileError(f"malformed tile document: {exc}") from exc
    if dim < 1 or arity < 0:
        raise TileFileError("dim must be >= 1 and arity >= 0")
    arr = np.zeros((dim,) * arity, dtype=np.complex128)
    seen = set()
    for e in entries:
        idx = tuple(e.get("idx", ()))
        if len(idx) != arity or not all(isinstance(i, int) and 1 <= i <= dim for i in idx):
            raise TileFileError(f"index {list(idx)} out of range for dim={dim}, arity={arity}")
        if idx in seen:
            raise TileFileError(f"duplicate index {list(idx)}")
        seen.add(idx)
        arr[tuple(i - 1 for i in idx)] = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
    try:
        return Tensor(arr, dim=dim)
    except ValueError as exc:
        raise TileFileError(str(exc)) from exc


def dumps(t: Tensor) -> str:
    return json.dumps(to_doc(t), indent=1) + "\n"


def loads(text: str) -> Tensor:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TileFileError(f"invalid JSON: {exc}") from exc
    return from_doc(doc)


def load(path) -> Tensor:
    return loads(Path(path).read_text())


def save(t: Tensor, path) -> None:
    Path(path).write_text(dumps(t))
