"""One-dimensional tensorial dominoes.

A domino is an arity-2 tensor read as a matrix: row = left color, column =
right color. Powers count (or weigh) admissible length-n patterns and traces
of powers weigh periodic ones. Whether a domino tiles the line is decided
exactly through the trace characterization of nilpotent matrices.
"""
from __future__ import annotations

import enum
from typing import Optional

import numpy as np

from .tensor import DEFAULT_EPS, Tensor, direct_sum, kron_per_index, max_normalized


class Kind(enum.Enum):
    POSSIBILISTIC = "possibilistic"
    PROBABILISTIC = "probabilistic"
    QUANTUM = "quantum"
    GENERIC = "generic"


class Domino(Tensor):
    """Arity-2 tensor; ``domino.matrix[x, y]`` weighs the domino (x, y)."""

    __slots__ = ()

    def __init__(self, data, dim: int | None = None, scale: float | None = None):
        super().__init__(data, dim=dim, scale=scale)
        if self.arity != 2:
            raise ValueError(f"a domino has arity 2, got {self.arity}")

    @property
    def matrix(self) -> np.ndarray:
        return self.data


def as_domino(t) -> Domino:
    if isinstance(t, Domino):
        return t
    if isinstance(t, Tensor):
        return Domino(t.data, scale=t.scale)
    return Domino(t)


# classification ------------------------------------------------------------

def is_possibilistic(t: Tensor, eps: float = DEFAULT_EPS) -> bool:
    c = t.coeffs
    return bool(np.all(np.abs(c.imag) <= eps) and np.all(np.minimum(np.abs(c.real), np.abs(c.real - 1)) <= eps))


def is_probabilistic(t: Tensor, eps: float = DEFAULT_EPS) -> bool:
    c = t.coeffs
    return bool(
        np.all(np.abs(c.imag) <= eps)
        and np.all(c.real >= -eps)
        and np.all(c.real <= 1 + eps)
        and abs(c.real.sum() - 1) <= eps
    )


def is_quantum(t: Tensor, eps: float = DEFAULT_EPS) -> bool:
    return abs(float(np.vdot(t.coeffs, t.coeffs).real) - 1) <= eps


def classify_tensor(t: Tensor, eps: float = DEFAULT_EPS) -> Kind:
    """Most restrictive kind; the all-zero tensor is reported as generic."""
    if np.all(np.abs(t.coeffs) <= eps):
        return Kind.GENERIC
    if is_possibilistic(t, eps):
        return Kind.POSSIBILISTIC
    if is_probabilistic(t, eps):
        return Kind.PROBABILISTIC
    if is_quantum(t, eps):
        return Kind.QUANTUM
    return Kind.GENERIC


def support_of(t: Tensor, eps: float = DEFAULT_EPS) -> set[tuple[int, ...]]:
    return {tuple(int(i) for i in idx) for idx in zip(*np.nonzero(np.abs(t.data) > eps))}


def classify(t, eps: float = DEFAULT_EPS) -> Kind:
    return classify_tensor(as_domino(t), eps)


def support(t, eps: float = DEFAULT_EPS) -> set[tuple[int, int]]:
    """Pairs (x, y) with ``|T[x, y]| > eps``."""
    return support_of(as_domino(t), eps)


# powers and traces -------------------------------------------------------------

def power(t, n: int) -> Domino:
    """Matrix power by repeated squaring; ``power(t, 0)`` is the identity."""
    t = as_domino(t)
    if n < 0:
        raise ValueError("n must be non-negative")
    return Domino(np.linalg.matrix_power(t.matrix, n), scale=t.scale**n if n else 1.0)


def boundary_amplitude(t, n: int, a: int, b: int) -> complex:
    """Weight of length-n patterns whose left end is color ``a`` and right end ``b``."""
    t = as_domino(t)
    if n < 1:
        raise ValueError("n must be positive")
    if not (0 <= a < t.dim and 0 <= b < t.dim):
        raise ValueError(f"colors must lie in 0..{t.dim - 1}")
    return complex(power(t, n).matrix[a, b])


def periodic_amplitude(t, n: int) -> complex:
    """``tr(T**n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return complex(np.trace(power(t, n).matrix))


def _normalized(m: np.ndarray) -> np.ndarray:
    return max_normalized(m)[0]


def trace_sequence(t) -> list[complex]:
    """``[tr(T), tr(T²), ..., tr(T^d)]``."""
    m = as_domino(t).matrix
    out, p = [], np.eye(m.shape[0], dtype=np.complex128)
    for _ in range(m.shape[0]):
        p = p @ m
        out.append(complex(np.trace(p)))
    return out


def vanishing_traces(t, eps: float = DEFAULT_EPS) -> list[bool]:
    """``tr(T^k) ≈ 0`` for k = 1..d, judged on T scaled to unit max-entry."""
    # zero-ness of a trace is scale invariant: normalize so every term is <= 1
    m = _normalized(as_domino(t).matrix)
    flags, p = [], np.eye(m.shape[0], dtype=np.complex128)
    for _ in range(m.shape[0]):
        p = p @ m
        flags.append(abs(np.trace(p)) <= eps)
    return flags


def tiles_line(t, eps: float = DEFAULT_EPS) -> bool:
    """False iff T is nilpotent, i.e. iff ``tr(T^k) = 0`` for k = 1..d."""
    return not all(vanishing_traces(t, eps))


def trace_aperiodic(t, eps: float = DEFAULT_EPS) -> bool:
    """Every ``tr(T^n)`` vanishes; equivalent to not tiling the line."""
    return all(vanishing_traces(t, eps))


def nilpotency_index(t, eps: float = DEFAULT_EPS) -> Optional[int]:
    """Smallest k with ``T^k = 0``, or None when T tiles the line."""
    if tiles_line(t, eps):
        return None
    m = _normalized(as_domino(t).matrix)
    p = np.eye(m.shape[0], dtype=np.complex128)
    for k in range(1, m.shape[0] + 1):
        p = p @ m
        if np.max(np.abs(p)) <= eps:
            return k
    return m.shape[0]


def find_large_periodic(t, N: int, eps: float = DEFAULT_EPS) -> Optional[int]:
    """Smallest ``k >= N`` with ``tr(T^k) != 0``; None for trace-aperiodic T.

    For a trace-periodic T the matrix ``T^N`` is not nilpotent, so some
    ``k`` in ``N..N*d`` works; the search runs up to ``N*d*(d+1)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if trace_aperiodic(t, eps):
        return None
    m = _normalized(as_domino(t).matrix)
    d = m.shape[0]
    # rescale by the spectral radius so that traces neither blow up nor decay
    rho = float(np.max(np.abs(np.linalg.eigvals(m))))
    m = m / rho
    p = np.linalg.matrix_power(m, N)
    for k in range(N, N * d * (d + 1) + 1):
        if abs(np.trace(p)) > eps:
            return k
        p = p @ m
    return None


# combinations ---------------------------------------------------------------

def union(a, b) -> Domino:
    """Direct sum; the supports are disjointly united."""
    return as_domino(direct_sum(as_domino(a), as_domino(b)))


def product(a, b) -> Domino:
    """Kronecker product; the support is the cartesian product."""
    return as_domino(kron_per_index(as_domino(a), as_domino(b)))
