"""Hot loop of the transfer-matrix engine.

``apply_site`` pushes a batch of transfer states through one tile whose
nonzero coefficients are given in coordinate form. Two implementations are
kept: a numba-compiled loop and a pure-numpy one. Set ``QWANG_BACKEND=numpy``
to force the numpy path (numba is also skipped when it cannot be imported).

The compiled loop wins by a wide margin while the output is small and the
numpy loop is dominated by per-entry dispatch. Large outputs are bound by
memory traffic, where numpy's lazily zeroed allocation is faster, so
``apply_site`` hands outputs above ``NUMPY_ABOVE`` entries to numpy.
"""
from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("QWANG_BACKEND", "numba").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - depends on environment
    njit = None

BACKEND = "numba" if njit is not None else "numpy"
NUMPY_ABOVE = 1 << 20


def apply_site_numpy(state, up, right, down, left, vals, dh_out, dv_out):
    """``out[a, r, p, u] += w * state[a, l, p, dn]`` for each nonzero (u, r, dn, l, w).

    ``state`` has shape ``(A, dh_in, P, dv_in)``: axis 1 is the horizontal
    bond entering the tile from the left, axis 3 the vertical bond entering
    from below.
    """
    A, _, P, _ = state.shape
    out = np.zeros((A, dh_out, P, dv_out), dtype=np.complex128)
    for k in range(vals.shape[0]):
        out[:, right[k], :, up[k]] += vals[k] * state[:, left[k], :, down[k]]
    return out


if njit is not None:

    @njit(cache=True, nogil=True)
    def apply_site_numba(state, up, right, down, left, vals, dh_out, dv_out):
        A, _, P, _ = state.shape
        out = np.zeros((A, dh_out, P, dv_out), dtype=np.complex128)
        for k in range(vals.shape[0]):
            u = up[k]
            r = right[k]
            dn = down[k]
            lf = left[k]
            w = vals[k]
            for a in range(A):
                for p in range(P):
                    out[a, r, p, u] += w * state[a, lf, p, dn]
        return out

    def apply_site(state, up, right, down, left, vals, dh_out, dv_out):
        if state.shape[0] * state.shape[2] * dh_out * dv_out > NUMPY_ABOVE:
            return apply_site_numpy(state, up, right, down, left, vals, dh_out, dv_out)
        return apply_site_numba(state, up, right, down, left, vals, dh_out, dv_out)
else:
    apply_site_numba = None
    apply_site = apply_site_numpy
