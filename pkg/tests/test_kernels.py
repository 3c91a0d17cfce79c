import os
import subprocess
import sys

import numpy as np
import pytest

from qwang import _kernels
from qwang import constructions as C
from qwang.transfer import SparseTile

pytestmark = pytest.mark.skipif(_kernels.njit is None, reason="numba not installed")


@pytest.mark.parametrize("make", [C.dimer, C.weighted_dimer, C.nilpotent_tile,
                                  lambda: C.from_classical(C.fixture_aperiodic())])
def test_numba_matches_numpy(make, rng):
    sp = SparseTile.from_array(make().data)
    d = sp.dh
    state = rng.normal(size=(3, d, 5, d)) + 1j * rng.normal(size=(3, d, 5, d))
    args = (sp.up, sp.right, sp.down, sp.left, sp.vals, sp.dh, sp.dv)
    a = _kernels.apply_site_numpy(state, *args)
    b = _kernels.apply_site_numba(state, *args)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-13)


def test_backend_flag():
    assert _kernels.BACKEND in ("numba", "numpy")


def test_numpy_backend_end_to_end():
    code = ("from qwang import _kernels, tile, constructions as C;"
            "print(_kernels.BACKEND, tile.rect_trace(C.dimer(), 3, 4), tile.shape_norm_sq(C.weighted_dimer(), tile.rectangle(3, 3)))")
    env = dict(os.environ, QWANG_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    from qwang import tile
    assert out[0] == "numpy"
    assert complex(out[1]) == tile.rect_trace(C.dimer(), 3, 4)
    assert float(out[2]) == pytest.approx(tile.shape_norm_sq(C.weighted_dimer(), tile.rectangle(3, 3)), rel=1e-12)
