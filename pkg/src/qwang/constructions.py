"""Concrete tiles: classical lifts, dimers, the nilpotent tile, walk and PQCA tiles."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

import numpy as np

from .tile import Tile, union

EMPTY, LEFT, RIGHT = 0, 1, 2  # walk colors: no walker, walker moving left, walker moving right

DEFAULT_N = np.array([[0.5, 0.5], [-0.5, -0.5]], dtype=np.complex128)


@dataclass(frozen=True)
class ClassicalTileset:
    """Wang tiles as (up, right, down, left) color quadruples over ``range(colors)``."""

    colors: int
    tiles: frozenset

    def __init__(self, colors: int, tiles: Iterable[tuple[int, int, int, int]]):
        tiles = frozenset(tuple(int(c) for c in q) for q in tiles)
        for q in tiles:
            if len(q) != 4 or not all(0 <= c < colors for c in q):
                raise ValueError(f"tile {q} is not a quadruple over {colors} colors")
        object.__setattr__(self, "colors", int(colors))
        object.__setattr__(self, "tiles", tiles)

    def __len__(self) -> int:
        return len(self.tiles)


@dataclass(frozen=True)
class CoinOperator:
    """2×2 coin ``[[a, b], [c, d]]``; a stochastic coin is read out linearly."""

    a: complex
    b: complex
    c: complex
    d: complex
    stochastic: bool = False

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    def is_unitary(self, tol: float = 1e-9) -> bool:
        m = self.matrix
        return bool(np.allclose(m.conj().T @ m, np.eye(2), atol=tol))

    @classmethod
    def hadamard(cls) -> "CoinOperator":
        s = 1 / np.sqrt(2)
        return cls(s, s, s, -s)

    @classmethod
    def identity(cls) -> "CoinOperator":
        return cls(1, 0, 0, 1)

    @classmethod
    def classical(cls) -> "CoinOperator":
        return cls(1, 1, 1, 1, stochastic=True)


def from_classical(ts: ClassicalTileset) -> Tile:
    """Possibilistic tile with coefficient 1 exactly on the tileset's quadruples."""
    arr = np.zeros((ts.colors,) * 4, dtype=np.complex128)
    for q in ts.tiles:
        arr[q] = 1.0
    return Tile(arr, dim=ts.colors)


def dimer_tileset() -> ClassicalTileset:
    return ClassicalTileset(2, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])


def dimer() -> Tile:
    """``T[x, y, z, t] = 1`` iff ``x + y + z + t = 1``: tilings by 2×1 dominoes."""
    return from_classical(dimer_tileset())


def weighted_dimer() -> Tile:
    arr = np.zeros((2,) * 4, dtype=np.complex128)
    arr[1, 0, 0, 0] = np.sqrt(7) / 4
    arr[0, 0, 1, 0] = np.sqrt(7) / 4
    arr[0, 1, 0, 0] = -0.25
    arr[0, 0, 0, 1] = 0.25
    return Tile(arr)


def full_tileset(colors: int) -> ClassicalTileset:
    return ClassicalTileset(colors, np.ndindex(*(colors,) * 4))


def nilpotent_tile(N=None) -> Tile:
    """``T[x, y, z, t] = ⟨x|N|z⟩⟨t|N|y⟩`` with ``⟨i|N|j⟩ = N[j, i]``.

    The vertical legs carry ``N`` from bottom to top and the horizontal legs
    carry it from right to left, so two adjacent cells always meet in ``N²``.
    """
    N = DEFAULT_N if N is None else np.asarray(N, dtype=np.complex128)
    return Tile(np.einsum("zx,yt->xyzt", N, N))


def quantum_aperiodic(t_a) -> Tile:
    """``t_a ⊎ nilpotent_tile()``: its support tiles periodically, its traces do not."""
    return union(t_a, nilpotent_tile())


def walk_tile(coin: CoinOperator) -> Tile:
    """Unnormalized walk tile over colors (empty, left-mover, right-mover).

    Three tiles move a walker (or nothing) up one row; four more apply the
    coin to a walker entering from below and send it sideways.
    """
    arr = np.zeros((3,) * 4, dtype=np.complex128)
    arr[EMPTY, EMPTY, EMPTY, EMPTY] = 1
    arr[RIGHT, EMPTY, EMPTY, RIGHT] = 1
    arr[LEFT, LEFT, EMPTY, EMPTY] = 1
    arr[EMPTY, EMPTY, LEFT, LEFT] = coin.a
    arr[EMPTY, RIGHT, LEFT, EMPTY] = coin.c
    arr[EMPTY, EMPTY, RIGHT, LEFT] = coin.b
    arr[EMPTY, RIGHT, RIGHT, EMPTY] = coin.d
    return Tile(arr)


def pqca_tile(u) -> Tile:
    """Wrap a PQCA block ``u[out1, out2, in1, in2]`` as a tile.

    Inputs enter through down (``in1``) and right (``in2``); outputs leave
    through up (``out1``) and left (``out2``).
    """
    u = np.asarray(getattr(u, "data", u), dtype=np.complex128)
    if u.ndim == 2:
        d = int(round(np.sqrt(u.shape[0])))
        u = u.reshape(d, d, d, d)
    if u.ndim != 4:
        raise ValueError("a PQCA block has arity 4")
    # tile[up, right, down, left] = u[up, left, down, right]
    return Tile(np.transpose(u, (0, 3, 2, 1)))


def fixture_aperiodic() -> ClassicalTileset:
    """The 11-tile Jeandel–Rao aperiodic set, loaded from the bundled JSON file."""
    doc = json.loads(resources.files("qwang.data").joinpath("jeandel_rao.json").read_text())
    return ClassicalTileset(doc["colors"], [tuple(q) for q in doc["tiles"]])
