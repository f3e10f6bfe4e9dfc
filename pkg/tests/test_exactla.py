import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobhh.errors import CapExceeded, NoRoot, NoSolution, NotInvertible, NotPrime
from frobhh.exactla import (
    PrimeField,
    SparseMatrix,
    column_space_basis,
    dense_rank,
    einsum_mod,
    inverse,
    kernel_basis,
    matmul,
    matrix_order,
    matrix_power,
    primitive_root_of_unity,
    rank,
    rref,
    solve,
)
from oracles import rank_mod_p

P = 13
F = PrimeField(P)


def matrices(max_side=12, p=P):
    return st.tuples(st.integers(1, max_side), st.integers(1, max_side), st.integers(0, 2**32 - 1)).map(
        lambda t: np.random.default_rng(t[2]).integers(0, p, size=(t[0], t[1]))
    )


def sparse_random(rng, r, c, density=0.1):
    M = rng.integers(1, P, size=(r, c))
    return M * (rng.random((r, c)) < density)


@pytest.mark.parametrize("bad", [0, 1, 4, 12, 2**31 + 11, True, 2.0])
def test_field_rejects_non_primes(bad):
    with pytest.raises(NotPrime):
        PrimeField(bad)


def test_field_inverse_and_power():
    for a in range(1, P):
        assert a * F.inv(a) % P == 1
        assert F.pow(a, -1) == F.inv(a)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 12])
def test_primitive_root_is_primitive(m):
    w = primitive_root_of_unity(F, m)
    assert pow(w, m, P) == 1
    assert all(pow(w, k, P) != 1 for k in range(1, m))


def test_no_root_when_m_does_not_divide():
    with pytest.raises(NoRoot):
        primitive_root_of_unity(F, 5)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_agrees_with_oracle(M):
    assert dense_rank(M, F) == rank_mod_p(M.tolist(), P)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_sparse_rank_matches_dense(M):
    S = SparseMatrix.from_dense(M, F)
    assert rank(S, F, density_threshold=1.0) == dense_rank(M, F)
    assert rank(S, F, density_threshold=0.0) == dense_rank(M, F)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M, F)
    assert len(K) + dense_rank(M, F) == M.shape[1]
    if len(K):
        assert not matmul(M, K.T, F).any()


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rref_shape(M):
    R, piv = rref(M, F)
    assert len(piv) == dense_rank(M, F)
    for i, c in enumerate(piv):
        assert R[i, c] == 1 and np.count_nonzero(R[:, c]) == 1


@settings(max_examples=40, deadline=None)
@given(matrices(), st.integers(0, 2**32 - 1))
def test_solve_recovers_consistent_systems(M, seed):
    x0 = np.random.default_rng(seed).integers(0, P, size=M.shape[1])
    b = matmul(M, x0, F)
    x = solve(M, b, F)
    assert np.array_equal(matmul(M, x, F), b)


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve(np.zeros((2, 2), dtype=np.int64), [1, 0], F)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_inverse(n, seed):
    M = np.random.default_rng(seed).integers(0, P, size=(n, n))
    if dense_rank(M, F) < n:
        with pytest.raises(NotInvertible):
            inverse(M, F)
    else:
        assert np.array_equal(matmul(M, inverse(M, F), F), np.eye(n, dtype=np.int64))


def test_column_space_basis():
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    B = column_space_basis(M, F)
    assert B.shape[1] == dense_rank(M, F) == 2


def test_matmul_large_prime_and_float_path():
    big = PrimeField(2147483647)
    rng = np.random.default_rng(1)
    A = rng.integers(0, big.p, size=(5, 7))
    B = rng.integers(0, big.p, size=(7, 3))
    ref = [[sum(int(A[i, k]) * int(B[k, j]) for k in range(7)) % big.p for j in range(3)] for i in range(5)]
    assert matmul(A, B, big).tolist() == ref
    A = rng.integers(0, P, size=(80, 90))
    B = rng.integers(0, P, size=(90, 70))
    assert np.array_equal(matmul(A, B, F), (A @ B) % P)


def test_einsum_object_fallback():
    big = PrimeField(2147483647)
    a = np.full((3, 3), big.p - 1)
    out = einsum_mod("ij,jk->ik", a, a, F=big)
    assert out[0, 0] == 3 * (big.p - 1) ** 2 % big.p


def test_matrix_power_and_order():
    g = np.array([[0, 1], [1, 0]])
    assert matrix_order(g, F) == 2
    assert np.array_equal(matrix_power(g, -1, F), g)
    with pytest.raises(CapExceeded):
        matrix_order(np.diag([2, 1]), F, cap=3)
    with pytest.raises(NotInvertible):
        matrix_order(np.zeros((2, 2), dtype=np.int64), F)


def test_sparse_roundtrip_and_transpose():
    rng = np.random.default_rng(3)
    M = sparse_random(rng, 20, 30)
    S = SparseMatrix.from_dense(M, F)
    assert np.array_equal(S.to_dense(), M % P)
    assert np.array_equal(S.T.to_dense(), (M % P).T)
    sub = S.submatrix([1, 4, 7], [0, 2])
    assert np.array_equal(sub.to_dense(), (M % P)[np.ix_([1, 4, 7], [0, 2])])


def test_from_coo_sums_duplicates():
    S = SparseMatrix.from_coo((2, 2), [0, 0, 1], [1, 1, 0], [7, 8, 13], F)
    assert S.to_dense().tolist() == [[0, 2], [0, 0]]
