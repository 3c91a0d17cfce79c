"""Random search for a tile with a nonzero rectangle trace but vanishing square traces.

Whether a nonzero tr(R(a,b)·T) forces some nonzero square trace tr(R(n,n)·T)
is not known. This script samples small tiles (random complex, or random
signed 0/±1 entries, which cancel more often), computes all toroidal traces
up to a bound and prints any tile whose squares all vanish while some
rectangle does not. Finding nothing proves nothing.

    python3 scripts/square_trace_search.py --samples 2000 --bound 4 --dim 2 --seed 0
"""
import argparse

import numpy as np

from qwang import tile, tilefile
from qwang.tile import Tile


def sample(rng, d, kind):
    if kind == "signed":
        return Tile(rng.integers(-1, 2, size=(d,) * 4).astype(np.complex128))
    return Tile(rng.normal(size=(d,) * 4) + 1j * rng.normal(size=(d,) * 4))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--bound", type=int, default=4)
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--kind", choices=["signed", "gaussian"], default="signed")
    ap.add_argument("--eps", type=float, default=1e-9)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    hits = 0
    for i in range(args.samples):
        t = sample(rng, args.dim, args.kind)
        top = float(np.max(np.abs(t.data)))
        if top == 0:
            continue
        grid = tile.trace_grid(Tile(t.data / top), args.bound)
        squares = [abs(grid[n, n]) for n in range(1, args.bound + 1)]
        rects = {k: v for k, v in grid.items() if k[0] != k[1] and abs(v) > args.eps}
        if max(squares) <= args.eps and rects:
            hits += 1
            print(f"# sample {i}: squares vanish up to {args.bound}, nonzero at {sorted(rects)}")
            print(tilefile.dumps(t), end="")
    print(f"# {hits} candidate(s) in {args.samples} samples (bound {args.bound}, dim {args.dim}, {args.kind})")


if __name__ == "__main__":
    main()
