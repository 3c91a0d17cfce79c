import json

import numpy as np
import pytest
from conftest import FIVE_CELL

from qwang import constructions as C
from qwang import oracle, tile, tilefile
from qwang.tensor import norm_sq


def test_fixture_loads():
    ts = C.fixture_aperiodic()
    assert ts.colors == 5 and len(ts) == 11


def test_fixture_bounded_behaviour():
    # tiles every small square, but has no small torus
    t = C.from_classical(C.fixture_aperiodic())
    for k in range(1, 4):
        assert tile.shape_nonzero(t, tile.rectangle(k, k))
    grid = tile.trace_grid(t, 3)
    assert all(v == 0 for v in grid.values())


def test_classical_tileset_validates():
    with pytest.raises(ValueError):
        C.ClassicalTileset(2, [(0, 0, 0, 2)])
    assert len(C.full_tileset(2)) == 16


def test_tile_json_roundtrip(tmp_path):
    for t in (C.dimer(), C.weighted_dimer(), C.nilpotent_tile(), C.walk_tile(C.CoinOperator.hadamard())):
        path = tmp_path / "t.json"
        tilefile.save(t, path)
        assert tilefile.load(path) == t  # bit-exact


def test_weighted_dimer_is_normalized():
    assert norm_sq(C.weighted_dimer()) == pytest.approx(1.0)


def test_nilpotent_tile_connected_shapes():
    t = C.nilpotent_tile()
    assert norm_sq(t) == pytest.approx(1.0)
    for s in (tile.rectangle(2, 1), tile.rectangle(1, 2), tile.rectangle(2, 2), [(0, 0), (1, 0), (1, 1)]):
        assert not tile.shape_nonzero(t, s)
    # the 5-cell shape has two connected pieces with adjacent cells
    assert not tile.shape_nonzero(t, FIVE_CELL)


def test_quantum_aperiodic_support_tiles_periodically():
    t = C.quantum_aperiodic(C.from_classical(C.full_tileset(2)))
    lift = tile.support_lift(t)
    assert tile.rect_trace(lift, 1, 1) != 0
    assert tile.rect_trace(C.nilpotent_tile(), 1, 1) == pytest.approx(0, abs=1e-12)


def test_pqca_identity_and_swap():
    d = 2
    eye = np.eye(d * d).reshape(d, d, d, d)
    t = C.pqca_tile(eye)
    for up, right, down, left in np.ndindex(d, d, d, d):
        assert t.data[up, right, down, left] == (up == down and right == left)
    swap = np.einsum("ad,bc->abcd", np.eye(d), np.eye(d))
    t = C.pqca_tile(swap)
    for up, right, down, left in np.ndindex(d, d, d, d):
        assert t.data[up, right, down, left] == (up == right and down == left)


def test_pqca_unitary_norm(rng):
    d = 2
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    t = C.pqca_tile(q)
    assert norm_sq(t) == pytest.approx(d * d)


def test_coin_operators():
    assert C.CoinOperator.hadamard().is_unitary()
    assert C.CoinOperator.identity().is_unitary()
    assert not C.CoinOperator.classical().is_unitary()
    assert C.CoinOperator.classical().stochastic


def test_walk_tile_entries():
    coin = C.CoinOperator(1, 2, 3, 4)
    t = C.walk_tile(coin)
    assert len(tile.support(t)) == 7
    assert t.data[C.EMPTY, C.EMPTY, C.LEFT, C.LEFT] == 1
    assert t.data[C.EMPTY, C.RIGHT, C.LEFT, C.EMPTY] == 3
    assert t.data[C.EMPTY, C.EMPTY, C.RIGHT, C.LEFT] == 2
    assert t.data[C.EMPTY, C.RIGHT, C.RIGHT, C.EMPTY] == 4


def test_dimer_matches_matchings():
    ts = C.dimer_tileset()
    t = C.dimer()
    for m, n in ((2, 2), (2, 3), (3, 2)):
        bt = tile.contract_shape(t, tile.rectangle(m, n))
        fixed = {b: 0 for b in bt.bonds}
        assert bt.coefficient(fixed) == oracle.count_tilings(ts, tile.rectangle(m, n), oracle.BoundarySpec(fixed))


def test_fixture_json_shape():
    from importlib import resources
    doc = json.loads(resources.files("qwang.data").joinpath("jeandel_rao.json").read_text())
    assert doc["order"] == ["up", "right", "down", "left"]


def _connected(s):
    s = set(s)
    todo, seen = [next(iter(s))], set()
    while todo:
        x, y = todo.pop()
        if (x, y) in seen:
            continue
        seen.add((x, y))
        todo += [c for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)) if c in s]
    return seen == s


def test_nilpotent_tile_every_connected_shape():
    from conftest import all_subshapes
    t = C.nilpotent_tile()
    shapes = [s for s in all_subshapes(3, 3) if _connected(s)]
    for s in shapes:
        assert tile.shape_nonzero(t, s) == (len(s) == 1), s
