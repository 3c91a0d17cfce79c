"""Quantum walk read off a rectangle tiled by the walk tile.

The grid has ``width`` columns (positions) and ``steps`` rows (time). Left
and right sides are fixed to the empty color; the bottom row holds the walker
at the middle position in an equal superposition of both directions. The top
boundary tensor is swept row by row and its single-walker coefficients are
the walk amplitudes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constructions import EMPTY, LEFT, RIGHT, CoinOperator, walk_tile
from .transfer import DEFAULT_BUDGET, Budget, BudgetExceeded, SparseTile, column_apply


class WidthTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class WalkDistribution:
    """Per-position probabilities, positions centered at 0."""

    positions: np.ndarray
    p_left: np.ndarray
    p_right: np.ndarray
    raw_total: float  # mass before renormalization

    @property
    def p_total(self) -> np.ndarray:
        return self.p_left + self.p_right

    def as_dict(self) -> dict[tuple[int, str], float]:
        out = {}
        for x, pl, pr in zip(self.positions, self.p_left, self.p_right):
            out[(int(x), "L")] = float(pl)
            out[(int(x), "R")] = float(pr)
        return out


def walk_distribution(coin: CoinOperator, steps: int, width: int,
                      budget: Budget = DEFAULT_BUDGET) -> WalkDistribution:
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if width < 2 * steps + 1:
        raise WidthTooSmall(f"width must satisfy width >= 2*steps+1 = {2 * steps + 1}, got {width}")
    if 3 ** (width + 1) > budget.max_entries:
        raise BudgetExceeded(f"a row of width {width} needs 3^{width + 1} state entries "
                             f"(budget {budget.max_entries})", 3 ** (width + 1))
    center = width // 2
    start = np.zeros(3, dtype=np.complex128)
    amp = 0.5 if coin.stochastic else 1 / np.sqrt(2)
    start[LEFT] = start[RIGHT] = amp
    empty = np.zeros(3, dtype=np.complex128)
    empty[EMPTY] = 1.0

    state = np.ones(1, dtype=np.complex128)
    for x in range(width):
        state = np.kron(state, start if x == center else empty)
    state = state[None, :]
    # rows are swept as columns of the transposed tile, the position axis taking the role of height
    sp = SparseTile.from_array(walk_tile(coin).data).transposed()
    for _ in range(steps):
        state = column_apply(state, sp, width, empty, empty, budget=budget)
    top = state[0].reshape((3,) * width)

    amps = np.zeros((width, 2), dtype=np.complex128)
    for x in range(width):
        idx = [EMPTY] * width
        for k, c in enumerate((LEFT, RIGHT)):
            idx[x] = c
            amps[x, k] = top[tuple(idx)]
    weights = amps.real if coin.stochastic else np.abs(amps) ** 2
    total = float(weights.sum())
    probs = weights / total if total > 0 else weights
    return WalkDistribution(np.arange(width) - center, probs[:, 0], probs[:, 1], total)
