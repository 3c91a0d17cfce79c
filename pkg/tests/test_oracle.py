import pytest

from qwang import constructions as C
from qwang import oracle
from qwang.tile import free_bonds as _free
from qwang.tile import rectangle


def test_dimer_small_counts():
    ts = C.dimer_tileset()
    zero = lambda s: oracle.BoundarySpec({b: 0 for b in _free(s)})
    assert oracle.count_tilings(ts, rectangle(2, 2), zero(rectangle(2, 2))) == 2
    assert oracle.count_tilings(ts, rectangle(2, 2), oracle.BoundarySpec(wrap_x=True, wrap_y=True)) == 8
    assert oracle.count_tilings(ts, rectangle(1, 2), oracle.BoundarySpec(wrap_x=True, wrap_y=True)) == 2
    assert sum(oracle.boundary_counts(ts, rectangle(2, 2)).values()) == 34


def test_dimer_4x4_is_36():
    ts = C.dimer_tileset()
    s = rectangle(4, 4)
    assert oracle.count_tilings(ts, s, oracle.BoundarySpec({b: 0 for b in _free(s)})) == 36


def test_shape_too_large():
    with pytest.raises(oracle.ShapeTooLarge):
        oracle.count_tilings(C.dimer_tileset(), rectangle(5, 5))


def test_wrap_needs_rectangle():
    with pytest.raises(ValueError):
        oracle.count_tilings(C.dimer_tileset(), [(0, 0), (1, 1)], oracle.BoundarySpec(wrap_x=True))


def test_count_paths_both_branches():
    fib = {(0, 0), (0, 1), (1, 0)}
    assert oracle.count_paths(fib, 2, 0, 0) == 2
    assert [oracle.count_paths(fib, n, 0, 0) for n in (12, 13)] == [233, 377]


def test_walk_reference_hadamard_mass():
    ref = oracle.walk_reference(C.CoinOperator.hadamard(), 4, 9)
    assert sum(ref.values()) == pytest.approx(1.0)
    assert all(v < 1e-15 for (x, _), v in ref.items() if x % 2)


def test_walk_reference_classical_binomial():
    ref = oracle.walk_reference(C.CoinOperator.classical(), 4, 9)
    totals = {x: ref[(x, "L")] + ref[(x, "R")] for x in range(-4, 5)}
    assert [totals[x] for x in (-4, -2, 0, 2, 4)] == [1 / 16, 4 / 16, 6 / 16, 4 / 16, 1 / 16]


def test_free_count_is_sum_of_fixed_counts():
    import itertools
    ts = C.ClassicalTileset(2, [(0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 1, 1), (0, 0, 1, 0)])
    for s in (rectangle(2, 1), rectangle(2, 2), [(0, 0), (1, 1)]):
        free = _free(s)
        total = sum(oracle.count_tilings(ts, s, oracle.BoundarySpec(dict(zip(free, cols))))
                    for cols in itertools.product(range(2), repeat=len(free)))
        assert total == oracle.count_tilings(ts, s)


def test_count_paths_matches_domino_amplitudes():
    import numpy as np
    from qwang import domino
    rng = np.random.default_rng(3)
    for d in (1, 2, 3):
        for _ in range(5):
            m = (rng.random((d, d)) < 0.6).astype(float)
            pairs = {(a, b) for a in range(d) for b in range(d) if m[a, b]}
            for n in range(1, 9):
                for a in range(d):
                    for b in range(d):
                        assert oracle.count_paths(pairs, n, a, b, d) == domino.boundary_amplitude(domino.Domino(m), n, a, b)


@pytest.mark.parametrize("steps", [0, 1, 5, 12, 20])
def test_walk_reference_unitary_total(steps):
    import numpy as np
    rng = np.random.default_rng(steps)
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    coin = C.CoinOperator(*q.ravel())
    ref = oracle.walk_reference(coin, steps, 2 * steps + 1)
    assert abs(sum(ref.values()) - 1) < 1e-12
