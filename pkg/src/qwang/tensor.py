"""Dense complex tensors with a uniform index dimension.

A :class:`Tensor` of arity ``n`` over dimension ``d`` holds ``d**n`` complex
coefficients, stored row-major (the first index varies slowest). Index
positions and index values are 0-based in the Python API.

Every tensor carries a ``scale``: an upper bound on the magnitude of the
individual terms that were summed to produce its coefficients. Zero tests are
relative to it, so a coefficient that cancels down to round-off is still
recognised as zero.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DEFAULT_EPS = 1e-9


class Tensor:
    """Immutable dense complex tensor.

    Parameters
    ----------
    data : array_like
        Array of shape ``(d,) * n``. A 0-d array (or a Python scalar) gives
        an arity-0 tensor, in which case ``dim`` must be supplied.
    dim : int, optional
        Index dimension; only needed for arity-0 tensors.
    scale : float, optional
        Largest term magnitude seen while producing ``data``. Defaults to the
        largest coefficient magnitude.
    """

    __slots__ = ("_data", "_dim", "scale")

    def __init__(self, data, dim: int | None = None, scale: float | None = None):
        arr = np.array(data, dtype=np.complex128)
        if arr.ndim == 0:
            if dim is None:
                dim = 1
        else:
            if len(set(arr.shape)) != 1:
                raise ValueError(f"all indices must share one dimension, got shape {arr.shape}")
            if dim is not None and dim != arr.shape[0]:
                raise ValueError(f"dim={dim} does not match shape {arr.shape}")
            dim = arr.shape[0]
        if dim < 1:
            raise ValueError("dim must be >= 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor coefficients must be finite")
        arr.setflags(write=False)
        self._data = arr
        self._dim = int(dim)
        if scale is None:
            scale = float(np.max(np.abs(arr))) if arr.size else 0.0
        self.scale = float(scale)

    # construction helpers -------------------------------------------------
    @classmethod
    def zeros(cls, dim: int, arity: int) -> "Tensor":
        return cls(np.zeros((dim,) * arity), dim=dim)

    @classmethod
    def from_coeffs(cls, dim: int, arity: int, coeffs: Sequence[complex]) -> "Tensor":
        """Build from a flat row-major coefficient list of length ``dim**arity``."""
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.size != dim**arity:
            raise ValueError(f"expected {dim**arity} coefficients, got {coeffs.size}")
        return cls(coeffs.reshape((dim,) * arity), dim=dim)

    @classmethod
    def from_entries(cls, dim: int, arity: int, entries: Iterable[tuple[Sequence[int], complex]]) -> "Tensor":
        """Build from sparse ``(index_tuple, value)`` pairs; other entries are 0."""
        arr = np.zeros((dim,) * arity, dtype=np.complex128)
        for idx, value in entries:
            arr[tuple(idx)] = value
        return cls(arr, dim=dim)

    # accessors ---------------------------------------------------------
    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def arity(self) -> int:
        return self._data.ndim

    @property
    def coeffs(self) -> np.ndarray:
        return self._data.reshape(-1)

    def __getitem__(self, idx):
        return complex(self._data[idx])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, arity={self.arity})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dim == other.dim and self.arity == other.arity and np.array_equal(self._data, other._data)

    __hash__ = None

    def allclose(self, other: "Tensor", rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        return (
            self.dim == other.dim
            and self.arity == other.arity
            and np.allclose(self._data, other._data, rtol=rtol, atol=atol)
        )

    def __mul__(self, c) -> "Tensor":
        c = complex(c)
        return type(self)._wrap(self._data * c, self.dim, self.scale * abs(c))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Tensor":
        return self * (1 / complex(c))

    @classmethod
    def _wrap(cls, data, dim, scale):
        return cls(data, dim=dim, scale=scale)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    """Outer product: ``(a ⊗ b)[i, j] = a[i] * b[j]``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    data = np.multiply.outer(a.data, b.data)
    return Tensor(data, dim=a.dim, scale=a.scale * b.scale)


def contract(t: Tensor, a: int, b: int) -> Tensor:
    """Sum over the diagonal of index positions ``a < b`` (0-based).

    Contracting both indices of a matrix gives its trace.
    """
    if t.arity < 2:
        raise ValueError("contraction needs arity >= 2")
    if not (0 <= a < b < t.arity):
        raise ValueError(f"need 0 <= a < b < {t.arity}, got a={a}, b={b}")
    data = np.trace(t.data, axis1=a, axis2=b)
    return Tensor(data, dim=t.dim, scale=t.scale)


def permute(t: Tensor, sigma: Sequence[int]) -> Tensor:
    """Move index position ``k`` of ``t`` to position ``sigma[k]``."""
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(t.arity)):
        raise ValueError(f"{sigma} is not a permutation of 0..{t.arity - 1}")
    axes = [0] * t.arity
    for k, s in enumerate(sigma):
        axes[s] = k
    return type(t)._wrap(np.transpose(t.data, axes), t.dim, t.scale)


def direct_sum(a: Tensor, b: Tensor) -> Tensor:
    """Block-diagonal embedding over dimension ``a.dim + b.dim``.

    Coefficients with every index below ``a.dim`` come from ``a``, those with
    every index at or above ``a.dim`` come from ``b``; mixed blocks are zero.
    """
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")
    d = a.dim + b.dim
    n = a.arity
    if n == 0:
        # V^{⊗0} is the scalar field for both summands
        return Tensor(a.data + b.data, dim=d, scale=max(a.scale, b.scale))
    out = np.zeros((d,) * n, dtype=np.complex128)
    out[(slice(0, a.dim),) * n] = a.data
    out[(slice(a.dim, d),) * n] = b.data
    return Tensor(out, dim=d, scale=max(a.scale, b.scale))


def kron_per_index(a: Tensor, b: Tensor) -> Tensor:
    """Index-wise Kronecker product over dimension ``a.dim * b.dim``.

    Index ``k`` of the result is the pair (index k of a, index k of b),
    flattened as ``i * b.dim + j``.
    """
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")
    n = a.arity
    outer = np.multiply.outer(a.data, b.data)
    # interleave (a0, b0, a1, b1, ...)
    order = [ax for k in range(n) for ax in (k, n + k)]
    data = np.transpose(outer, order).reshape((a.dim * b.dim,) * n)
    return Tensor(data, dim=a.dim * b.dim, scale=a.scale * b.scale)


def norm_sq(t: Tensor) -> float:
    return float(np.vdot(t.data, t.data).real)


def is_zero(t: Tensor, eps: float = DEFAULT_EPS) -> bool:
    """``norm_sq(t) <= eps² · max(1, scale²)``."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    return norm_sq(t) <= eps * eps * max(1.0, t.scale * t.scale)



def max_normalized(arr) -> tuple[np.ndarray, float, int]:
    """``(arr / s, top, e)`` where ``s = top · 2**e`` is the largest ``|entry|``.

    The power-of-two part is applied exactly first, so subnormal or huge
    inputs neither overflow nor lose the normalization. A zero array comes
    back unchanged with ``top = 0``.
    """
    arr = np.asarray(arr, dtype=np.complex128)
    big = max(float(np.max(np.abs(arr.real), initial=0.0)), float(np.max(np.abs(arr.imag), initial=0.0)))
    if big == 0:
        return arr, 0.0, 0
    e = int(np.frexp(big)[1])
    arr = np.ldexp(arr.real, -e) + 1j * np.ldexp(arr.imag, -e)
    top = float(np.max(np.abs(arr)))
    return arr / top, top, e
