"""Compare the site kernels on representative engine workloads.

Three columns: always numba, always numpy, and the default dispatch (numba
for small outputs, numpy above ``_kernels.NUMPY_ABOVE`` entries).

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from qwang import _kernels
from qwang import constructions as C
from qwang import tile
from qwang.walk import walk_distribution

WORKLOADS = {
    "fixture ‖R(4,4)·T‖² (doubled, bond 25)": lambda jr, dim: tile.shape_norm_sq(jr, tile.rectangle(4, 4)),
    "fixture toroidal traces m,n <= 4": lambda jr, dim: tile.trace_grid(jr, 4),
    "dimer toroidal trace R(10,10)": lambda jr, dim: tile.rect_trace(dim, 10, 10),
    "dimer ‖R(8,8)·T‖²": lambda jr, dim: tile.shape_norm_sq(dim, tile.rectangle(8, 8)),
    "Hadamard walk, 6 steps, width 13": lambda jr, dim: walk_distribution(C.CoinOperator.hadamard(), 6, 13),
}


def run(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels.apply_site_numba is None:
        raise SystemExit("numba is unavailable (or QWANG_BACKEND=numpy is set); nothing to compare")
    jr = C.from_classical(C.fixture_aperiodic())
    dim = C.dimer()
    default = _kernels.apply_site
    print(f"{'workload':45s} {'numba':>10s} {'numpy':>10s} {'default':>10s} {'numpy/default':>14s}")
    for name, work in WORKLOADS.items():
        times = {}
        for backend, kernel in (("numba", _kernels.apply_site_numba), ("numpy", _kernels.apply_site_numpy),
                                ("default", default)):
            _kernels.apply_site = kernel
            times[backend] = run(lambda: work(jr, dim), args.repeat)
        print(f"{name:45s} {times['numba']:9.4f}s {times['numpy']:9.4f}s {times['default']:9.4f}s "
              f"{times['numpy'] / times['default']:13.1f}x")
    _kernels.apply_site = default


if __name__ == "__main__":
    main()
