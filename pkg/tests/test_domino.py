import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from hypothesis.extra.numpy import arrays

from qwang import domino
from qwang.domino import Domino, Kind
from qwang.oracle import count_paths
from qwang.tensor import max_normalized

CLASSIC = Domino([[1, 1], [1, 0]])
NILP = Domino(0.5 * np.array([[1, 1], [-1, -1]]))
DIAG = Domino(np.diag([1, 1j]) / np.sqrt(2))


def test_classify_examples():
    assert domino.classify(CLASSIC) is Kind.POSSIBILISTIC
    assert domino.classify(NILP) is Kind.QUANTUM
    assert domino.classify(Domino([[0.25, 0.25], [0.5, 0]])) is Kind.PROBABILISTIC
    assert domino.classify(Domino([[2, 0], [0, 0]])) is Kind.GENERIC
    assert domino.classify(Domino.zeros(2, 2)) is Kind.GENERIC
    assert domino.support(CLASSIC) == {(0, 0), (0, 1), (1, 0)}
    assert domino.support(NILP) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_power_classic():
    np.testing.assert_array_equal(domino.power(CLASSIC, 2).matrix, [[2, 1], [1, 1]])
    np.testing.assert_array_equal(domino.power(CLASSIC, 0).matrix, np.eye(2))


def test_nilpotent_example():
    assert np.linalg.norm(domino.power(NILP, 2).matrix) < 1e-12
    assert not domino.tiles_line(NILP)
    assert domino.trace_aperiodic(NILP)
    assert domino.nilpotency_index(NILP) == 2
    assert domino.find_large_periodic(NILP, 5) is None


def test_diag_example():
    tr = domino.trace_sequence(DIAG)
    assert abs(tr[0] - (1 + 1j) / np.sqrt(2)) < 1e-12
    assert abs(tr[1]) < 1e-12
    assert domino.tiles_line(DIAG)
    assert domino.nilpotency_index(DIAG) is None
    # tr(T^3) = (1 - i)/(2√2) is already nonzero
    assert domino.find_large_periodic(DIAG, 3) == 3
    assert domino.find_large_periodic(DIAG, 2) == 3


@pytest.mark.parametrize("N", range(1, 51))
def test_find_large_periodic_diag(N):
    k = domino.find_large_periodic(DIAG, N)
    assert k is not None and k >= N
    assert abs(domino.periodic_amplitude(DIAG, k)) > 1e-12


def test_boundary_amplitude_counts_paths():
    pairs = domino.support(CLASSIC)
    for n in range(1, 8):
        for a in range(2):
            for b in range(2):
                assert domino.boundary_amplitude(CLASSIC, n, a, b) == count_paths(pairs, n, a, b, 2)


def test_boundary_amplitude_validates():
    with pytest.raises(ValueError):
        domino.boundary_amplitude(CLASSIC, 0, 0, 0)
    with pytest.raises(ValueError):
        domino.boundary_amplitude(CLASSIC, 2, 0, 2)


def test_union_and_product():
    u = domino.union(CLASSIC, NILP)
    assert u.dim == 4
    assert domino.support(u) == domino.support(CLASSIC) | {(a + 2, b + 2) for a, b in domino.support(NILP)}
    p = domino.product(CLASSIC, DIAG)
    assert p.dim == 4


small = st.integers(2, 4).flatmap(
    lambda d: arrays(np.complex128, (d, d),
                     elements=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)))


@given(small, small, st.integers(1, 6))
def test_trace_homomorphisms(a, b, n):
    a, b = Domino(a), Domino(b)
    ta, tb = domino.periodic_amplitude(a, n), domino.periodic_amplitude(b, n)
    tol = 1e-9 * max(1.0, abs(ta), abs(tb), abs(ta * tb), np.max(np.abs(a.matrix)) ** n * np.max(np.abs(b.matrix)) ** n * 16)
    assert abs(domino.periodic_amplitude(domino.union(a, b), n) - (ta + tb)) <= tol
    assert abs(domino.periodic_amplitude(domino.product(a, b), n) - ta * tb) <= tol


@given(st.integers(2, 5), st.integers(0, 2**31 - 1))
def test_strictly_triangular_is_nilpotent(d, seed):
    rng = np.random.default_rng(seed)
    m = np.triu(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)), 1)
    q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    t = Domino(q @ m @ q.T)
    assert not domino.tiles_line(t)
    assert domino.nilpotency_index(t) <= d


@given(small)
def test_tiles_line_iff_not_nilpotent(a):
    t = Domino(a)
    m = max_normalized(a)[0]
    d = m.shape[0]
    nilpotent = np.max(np.abs(np.linalg.matrix_power(m, d))) <= 1e-12
    # stay away from the tolerance boundary, where either answer is defensible
    clearly_nilpotent = nilpotent and all(abs(np.trace(np.linalg.matrix_power(m, k))) <= 1e-11 for k in range(1, d + 1))
    assume(clearly_nilpotent or np.max(np.abs(np.linalg.eigvals(m))) > 1e-3)
    assert domino.tiles_line(t) == (not nilpotent)


@given(st.integers(1, 5), st.integers(0, 2**31 - 1))
def test_acyclic_quantum_support_is_trace_aperiodic(d, seed):
    rng = np.random.default_rng(seed)
    m = np.triu(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)), 1)
    perm = rng.permutation(d)
    m = m[np.ix_(perm, perm)]  # acyclic support, relabelled
    if not m.any():
        m[0, 0] = 0  # the zero domino is trivially acyclic
    else:
        m = m / np.linalg.norm(m)
    t = Domino(m)
    assert all(abs(tr) <= 1e-9 for tr in domino.trace_sequence(t))
    assert domino.trace_aperiodic(t) and not domino.tiles_line(t)


@given(st.integers(1, 3), st.integers(0, 2**31 - 1), st.integers(1, 8))
def test_boundary_amplitude_matches_oracle(d, seed, n):
    rng = np.random.default_rng(seed)
    t = Domino((rng.random((d, d)) < 0.5).astype(float))
    pairs = domino.support(t)
    for a in range(d):
        for b in range(d):
            assert domino.boundary_amplitude(t, n, a, b) == count_paths(pairs, n, a, b, d)


@given(small, st.integers(1, 30))
def test_find_large_periodic_is_sound(a, N):
    t = Domino(a)
    k = domino.find_large_periodic(t, N)
    assert (k is None) == domino.trace_aperiodic(t)
    if k is not None:
        m = max_normalized(a)[0]
        m = m / np.max(np.abs(np.linalg.eigvals(m)))
        assert k >= N and abs(np.trace(np.linalg.matrix_power(m, k))) > 1e-9


@given(small)
def test_trace_aperiodic_is_not_tiles_line(a):
    t = Domino(a)
    assert domino.trace_aperiodic(t) == (not domino.tiles_line(t))
