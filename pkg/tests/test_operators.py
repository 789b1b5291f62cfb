import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorana_readout.errors import DomainError
from majorana_readout.operators import (
    ChargeBasis,
    assert_hermitian,
    branch_half_shift,
    charge_shift,
    hermitian_eig,
    kron,
    number_operator,
    pair_number_operator,
    pair_shift,
)


def random_hermitian(rng, n):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (A + A.conj().T)


def test_basis_indexing():
    b = ChargeBasis(3)
    assert b.dimension == 7
    assert [b.index(N) for N in b.charges] == list(range(7))
    with pytest.raises(DomainError):
        b.index(4)
    with pytest.raises(DomainError):
        ChargeBasis(-1)


def test_charge_shift_definition():
    b = ChargeBasis(2)
    S = charge_shift(b, 2)
    assert S[4, 2] == 1  # |0> -> |2>
    assert S.sum() == 3
    np.testing.assert_array_equal(charge_shift(b, 0), np.eye(5))
    np.testing.assert_array_equal(charge_shift(b, 1).conj().T, charge_shift(b, -1))


def test_charge_shift_out_of_range():
    with pytest.raises(DomainError, match="shift exceeds basis"):
        charge_shift(ChargeBasis(2), 5)


@given(n_max=st.integers(1, 12), m=st.integers(0, 24))
def test_shift_products_are_interior_projectors(n_max, m):
    b = ChargeBasis(n_max)
    if m > 2 * n_max:
        return
    P = charge_shift(b, m) @ charge_shift(b, -m)
    # S_m S_-m keeps |N> exactly when N - m is still in the basis
    expected = np.diag([1.0 if N - m >= -n_max else 0.0 for N in b.charges])
    np.testing.assert_array_equal(P, expected)


def test_number_operator():
    np.testing.assert_array_equal(np.diag(number_operator(ChargeBasis(1))), [-1, 0, 1])
    for n in (1, 5, 30):
        N = number_operator(ChargeBasis(n))
        assert np.trace(N) == 0
        assert np.allclose(N @ charge_shift(ChargeBasis(n), 0), charge_shift(ChargeBasis(n), 0) @ N)


def test_pair_operators_and_half_shift():
    b = ChargeBasis(6)
    assert np.array_equal(np.diag(pair_number_operator(b)), 2 * np.arange(-3, 4))
    np.testing.assert_array_equal(pair_shift(b, 1).T, pair_shift(b, -1))
    A = branch_half_shift(b)
    # the half shift squares to the full pair shift in the interior of the basis
    d = b.pair_dimension
    inner = slice(2, d - 2)
    np.testing.assert_allclose((A @ A)[inner, inner], pair_shift(b, 1)[inner, inner], atol=0.1)


def test_eig_trivial_cases():
    e = hermitian_eig(np.diag([2.0, 1.0]))
    np.testing.assert_allclose(e.values, [1.0, 2.0])
    e = hermitian_eig(np.array([[0, 1], [1, 0]], dtype=complex))
    np.testing.assert_allclose(e.values, [-1.0, 1.0])
    v = e.vectors
    np.testing.assert_allclose(np.abs(v[:, 0]), [2**-0.5, 2**-0.5])
    assert abs(np.vdot(v[:, 0], [1, -1])) == pytest.approx(2**0.5)


def test_eig_reconstruction_and_phase(rng):
    H = random_hermitian(rng, 50)
    e = hermitian_eig(H)
    V, w = e.vectors, e.values
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs(V @ np.diag(w) @ V.conj().T - H)) < 1e-10 * np.max(np.abs(H))
    assert np.max(np.abs(V.conj().T @ V - np.eye(50))) < 1e-10
    for k in range(50):
        j = np.argmax(np.abs(V[:, k]))
        assert V[j, k].imag == 0 and V[j, k].real > 0
    for k in range(50):
        assert np.linalg.norm(H @ V[:, k] - w[k] * V[:, k]) <= 1e-10 * np.linalg.norm(H, 2)


def test_eig_rejects_bad_input():
    with pytest.raises(DomainError):
        hermitian_eig(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(DomainError):
        assert_hermitian(np.array([[1, 1j], [1j, 1]]))


def test_eig_nonfinite_is_error():
    with pytest.raises(DomainError):
        hermitian_eig(np.array([[np.nan, 0], [0, 1.0]]))


def test_kron_basics(rng):
    X = np.array([[0, 1], [1, 0]])
    e0 = np.array([1, 0])
    np.testing.assert_array_equal(kron(np.eye(2), X) @ np.kron(e0, e0), np.kron(e0, [0, 1]))
    assert kron(np.eye(2), np.eye(3)).shape == (6, 6)
    A, B, C, D = (rng.normal(size=(2, 2)) for _ in range(4))
    np.testing.assert_allclose(kron(A, B) @ kron(C, D), kron(A @ C, B @ D), atol=1e-14)


def _rotation(t):
    return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])


@settings(max_examples=30, deadline=None)
@given(angles=st.lists(st.floats(0, 2 * np.pi), min_size=3, max_size=3), seed=st.integers(0, 2**31))
def test_eigenvalues_unitarily_invariant(angles, seed):
    H = random_hermitian(np.random.default_rng(seed), 8)
    U = kron(_rotation(angles[0]), kron(_rotation(angles[1]), _rotation(angles[2])))
    w1 = hermitian_eig(H).values
    w2 = hermitian_eig(U @ H @ U.T).values
    np.testing.assert_allclose(w2, w1, rtol=1e-10, atol=1e-10 * np.max(np.abs(w1)))
