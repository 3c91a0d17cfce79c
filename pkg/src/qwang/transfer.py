"""Column transfer operators for rectangular tile networks.

A rectangle of height ``n`` is swept column by column. The transfer state is
a batch of vectors over the ``n`` horizontal bonds of a column boundary
(bottom row = most significant digit); inside a column a vertical bond is
carried from the bottom row to the top one. Tiles are applied from their
nonzero coefficients only, which keeps sparse classical tilesets cheap even
when the state space is large.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels


class BudgetExceeded(RuntimeError):
    """A contraction would exceed the configured memory budget."""

    def __init__(self, message: str, size: int | None = None):
        super().__init__(message)
        self.size = size


@dataclass(frozen=True)
class Budget:
    max_bond: int = int(os.environ.get("QWANG_MAX_BOND", 4096))
    max_entries: int = int(os.environ.get("QWANG_MAX_ENTRIES", 1 << 24))


DEFAULT_BUDGET = Budget()

PERIODIC = "periodic"


@dataclass(frozen=True)
class SparseTile:
    """Nonzero coefficients of a tile in (up, right, down, left) order."""

    up: np.ndarray
    right: np.ndarray
    down: np.ndarray
    left: np.ndarray
    vals: np.ndarray
    dh: int  # horizontal bond dimension (left/right)
    dv: int  # vertical bond dimension (up/down)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "SparseTile":
        arr = np.asarray(arr, dtype=np.complex128)
        u, r, d, l = np.nonzero(arr)
        return cls(
            u.astype(np.int64), r.astype(np.int64), d.astype(np.int64), l.astype(np.int64),
            np.ascontiguousarray(arr[u, r, d, l]), arr.shape[1], arr.shape[0],
        )

    def doubled(self) -> "SparseTile":
        """Coordinates of ``T ⊗ conj(T)`` with each leg pair fused to ``i*d + i'``."""
        u = (self.up[:, None] * self.dv + self.up[None, :]).ravel()
        r = (self.right[:, None] * self.dh + self.right[None, :]).ravel()
        d = (self.down[:, None] * self.dv + self.down[None, :]).ravel()
        l = (self.left[:, None] * self.dh + self.left[None, :]).ravel()
        vals = (self.vals[:, None] * self.vals.conj()[None, :]).ravel()
        return SparseTile(u, r, d, l, np.ascontiguousarray(vals), self.dh**2, self.dv**2)

    def transposed(self) -> "SparseTile":
        """Mirror across the diagonal: columns become rows."""
        return SparseTile(self.right, self.up, self.left, self.down, self.vals, self.dv, self.dh)


def pair_vector(d: int) -> np.ndarray:
    """``Σ_c |c⟩|c̄⟩`` in the doubled space: closes a bond against its conjugate."""
    e = np.zeros(d * d, dtype=np.complex128)
    e[np.arange(d) * (d + 1)] = 1.0
    return e


def _check(entries: int, budget: Budget, what: str) -> None:
    if entries > budget.max_entries:
        raise BudgetExceeded(f"{what} needs {entries} state entries (budget {budget.max_entries})", entries)


def _sweep(s: np.ndarray, sp: SparseTile, n: int) -> np.ndarray:
    # s: (B, dh**n, dv)
    B = s.shape[0]
    dh, dv = sp.dh, sp.dv
    for r in range(n):
        pre, post = dh**r, dh ** (n - r - 1)
        s4 = np.ascontiguousarray(s.reshape(B * pre, dh, post, dv))
        s = _kernels.apply_site(s4, sp.up, sp.right, sp.down, sp.left, sp.vals, dh, dv)
        s = s.reshape(B, dh**n, dv)
    return s


def column_apply(state: np.ndarray, sp: SparseTile, n: int, bottom, top=None,
                 budget: Budget = DEFAULT_BUDGET) -> np.ndarray:
    """Push ``state`` (shape ``(B, dh**n)``) through one column of ``n`` tiles.

    ``bottom`` is either :data:`PERIODIC` (the top bond of the column is
    identified with its bottom bond) or a boundary vector for the bottom
    bond, in which case ``top`` is the vector closing the top bond.
    """
    state = np.asarray(state, dtype=np.complex128)
    B = state.shape[0]
    _check(B * sp.dh**n * sp.dv, budget, f"column of height {n}")
    if isinstance(bottom, str):
        if bottom != PERIODIC:
            raise ValueError(f"unknown boundary {bottom!r}")
        out = np.zeros((B, sp.dh**n), dtype=np.complex128)
        for v0 in range(sp.dv):
            s = np.zeros((B, sp.dh**n, sp.dv), dtype=np.complex128)
            s[:, :, v0] = state
            out += _sweep(s, sp, n)[:, :, v0]
        return out
    s = state[:, :, None] * np.asarray(bottom, dtype=np.complex128)[None, None, :]
    return _sweep(s, sp, n) @ np.asarray(top, dtype=np.complex128)


def periodic_column_matrix(sp: SparseTile, n: int, budget: Budget = DEFAULT_BUDGET) -> np.ndarray:
    """Transfer matrix ``M[h_in, h_out]`` of a height-``n`` column with vertical bonds traced.

    ``tr(M**m)`` is the toroidal trace of the ``m × n`` rectangle.
    """
    side = sp.dh**n
    if side > budget.max_bond:
        raise BudgetExceeded(f"bond dimension {sp.dh}^{n} = {side} exceeds {budget.max_bond}", side)
    return column_apply(np.eye(side, dtype=np.complex128), sp, n, PERIODIC, budget=budget)


def product_vector(v: np.ndarray, n: int) -> np.ndarray:
    out = np.ones(1, dtype=np.complex128)
    for _ in range(n):
        out = np.kron(out, v)
    return out
