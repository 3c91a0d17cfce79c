"""Brute-force ground truth.

Exhaustive backtracking over classical tilesets, exhaustive path counting and
a direct state-vector walk. Nothing here goes through the tensor engine;
counts are Python integers.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

MAX_CELLS = 16


class ShapeTooLarge(ValueError):
    pass


@dataclass
class BoundarySpec:
    """Fixed colors on chosen free bonds (others free) plus rectangle wraparound.

    With ``wrap_x`` the right side of a rectangle is glued to its left side;
    with ``wrap_y`` the top is glued to the bottom.
    """

    fixed: dict = field(default_factory=dict)
    wrap_x: bool = False
    wrap_y: bool = False


def _bonds(x, y):
    # (up, right, down, left), half-integer positions
    return ((x, y + 0.5), (x + 0.5, y), (x, y - 0.5), (x - 0.5, y))


def _canon(shape, spec: BoundarySpec):
    cells = sorted(shape, key=lambda c: (c[1], c[0]))  # row-major
    if not (spec.wrap_x or spec.wrap_y):
        return cells, lambda b: b
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if (x1 - x0 + 1) * (y1 - y0 + 1) != len(cells):
        raise ValueError("periodic boundaries need a rectangular shape")

    def canon(b):
        bx, by = b
        if spec.wrap_x and bx == x1 + 0.5:
            bx = x0 - 0.5
        if spec.wrap_y and by == y1 + 0.5:
            by = y0 - 0.5
        return (bx, by)

    return cells, canon


def enumerate_tilings(tiles: Iterable[tuple], shape, spec: Optional[BoundarySpec] = None,
                      max_cells: int = MAX_CELLS):
    """Yield every valid assignment ``{bond: color}`` (after wraparound)."""
    spec = spec or BoundarySpec()
    shape = list(shape)
    if len(shape) > max_cells:
        raise ShapeTooLarge(f"{len(shape)} cells exceed the exhaustive limit {max_cells}")
    tiles = sorted(set(tuple(q) for q in tiles))
    cells, canon = _canon(shape, spec)
    fixed = {canon(b): c for b, c in spec.fixed.items()}
    legs = [[canon(b) for b in _bonds(*c)] for c in cells]
    colors: dict = dict(fixed)

    def rec(i):
        if i == len(cells):
            yield dict(colors)
            return
        for q in tiles:
            placed = []
            ok = True
            for b, c in zip(legs[i], q):
                have = colors.get(b)
                if have is None:
                    colors[b] = c
                    placed.append(b)
                elif have != c:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
            for b in placed:
                del colors[b]

    yield from rec(0)


def count_tilings(ts, shape, spec: Optional[BoundarySpec] = None, max_cells: int = MAX_CELLS) -> int:
    """Number of valid tilings of ``shape`` by ``ts`` compatible with ``spec``."""
    tiles = ts.tiles if hasattr(ts, "tiles") else ts
    return sum(1 for _ in enumerate_tilings(tiles, shape, spec, max_cells))


def boundary_counts(ts, shape, max_cells: int = MAX_CELLS) -> Counter:
    """Count of tilings per coloring of the free bonds (listed in sorted bond order)."""
    tiles = ts.tiles if hasattr(ts, "tiles") else ts
    seen = Counter(b for c in shape for b in _bonds(*c))
    free = sorted(b for b, k in seen.items() if k == 1)
    out: Counter = Counter()
    for colors in enumerate_tilings(tiles, shape, None, max_cells):
        out[tuple(colors[b] for b in free)] += 1
    return out


def count_paths(ds, n: int, a: int, b: int, colors: Optional[int] = None) -> int:
    """Color sequences ``a = c0, c1, ..., cn = b`` with every ``(c_{i-1}, c_i)`` in ``ds``."""
    ds = set(tuple(p) for p in ds)
    if colors is None:
        colors = 1 + max([a, b] + [c for p in ds for c in p])
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 12:
        total = 0
        for mid in itertools.product(range(colors), repeat=n - 1):
            seq = (a,) + mid + (b,)
            if all((seq[i], seq[i + 1]) in ds for i in range(n)):
                total += 1
        return total
    # integer vector iteration
    vec = [1 if c == a else 0 for c in range(colors)]
    for _ in range(n):
        vec = [sum(vec[x] for x in range(colors) if (x, y) in ds) for y in range(colors)]
    return vec[b]


def walk_reference(coin, steps: int, width: int) -> dict[tuple[int, str], float]:
    """Direct evolution: coin then shift, from the middle position.

    ``|x,L⟩ → a|x-1,L⟩ + c|x+1,R⟩`` and ``|x,R⟩ → b|x-1,L⟩ + d|x+1,R⟩``.
    For a stochastic coin the weights are probabilities and are propagated
    linearly; otherwise they are amplitudes and squared at the end. Keys are
    (position relative to the center, "L" or "R").
    """
    if width < 2 * steps + 1:
        raise ValueError(f"width must satisfy width >= 2*steps+1 = {2 * steps + 1}")
    a, b, c, d = (complex(v) for v in (coin.a, coin.b, coin.c, coin.d))
    stochastic = getattr(coin, "stochastic", False)
    center = width // 2
    init = 0.5 if stochastic else 1 / math.sqrt(2)
    state = {(center, "L"): complex(init), (center, "R"): complex(init)}
    for _ in range(steps):
        nxt: dict = {}
        for (x, s), w in state.items():
            to_left, to_right = (a, c) if s == "L" else (b, d)
            nxt[(x - 1, "L")] = nxt.get((x - 1, "L"), 0) + to_left * w
            nxt[(x + 1, "R")] = nxt.get((x + 1, "R"), 0) + to_right * w
        state = nxt
    probs = {}
    for x in range(width):
        for s in "LR":
            w = state.get((x, s), 0)
            probs[(x - center, s)] = w.real if stochastic else abs(w) ** 2
    if stochastic:
        total = sum(probs.values())
        probs = {k: v / total for k, v in probs.items()}
    return probs
