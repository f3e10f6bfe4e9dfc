"""Exact linear algebra over prime fields F_p.

Dense matrices are plain ``int64`` numpy arrays with entries in ``[0, p)``;
scalars are Python ints.  ``SparseMatrix`` is a sorted coordinate list used
for the cochain differentials, which are sparse before elimination and fill
in during it.  Moduli are kept below 2**31 so that a product of two reduced
entries fits in an ``int64``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapExceeded,
    DimensionMismatch,
    NoRoot,
    NoSolution,
    NotInvertible,
    NotPrime,
)

DEFAULT_DENSITY_THRESHOLD = 0.2
_INT64_MAX = np.iinfo(np.int64).max


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime ``p < 2**31``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise NotPrime(f"modulus must be an integer, got {self.p!r}")
        if self.p >= 2**31:
            raise NotPrime(f"modulus {self.p} exceeds the supported range p < 2**31")
        if not _is_prime(int(self.p)):
            raise NotPrime(f"{self.p} is not prime")
        object.__setattr__(self, "p", int(self.p))

    def __str__(self):
        return f"F_{self.p}"

    def __call__(self, a) -> int:
        return int(a) % self.p

    def inv(self, a) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def pow(self, a, e: int) -> int:
        a = int(a) % self.p
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def reduce(self, arr) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64) % self.p

    def primitive_root_of_unity(self, m: int) -> int:
        return primitive_root_of_unity(self, m)


def field_new(p: int) -> PrimeField:
    return PrimeField(p)


def multiplicative_order(F: PrimeField, a: int) -> int:
    a = F(a)
    if a == 0:
        raise NotInvertible("0 has no multiplicative order")
    r, x = 1, a
    while x != 1:
        x = x * a % F.p
        r += 1
    return r


def primitive_root_of_unity(F: PrimeField, m: int) -> int:
    """Smallest ``w`` in ``[1, p)`` of multiplicative order exactly ``m``."""
    if m < 1:
        raise ValueError("m must be positive")
    if (F.p - 1) % m:
        raise NoRoot(f"no primitive {m}-th root of unity in {F}: {m} does not divide {F.p - 1}")
    for w in range(1, F.p):
        if pow(w, m, F.p) == 1 and multiplicative_order(F, w) == m:
            return w
    raise NoRoot(f"no primitive {m}-th root of unity in {F}")  # unreachable for prime p


# -- matrices ---------------------------------------------------------------


def matmul(A, B, F: PrimeField) -> np.ndarray:
    """``A @ B`` mod p without int64 overflow."""
    A = np.asarray(A, dtype=np.int64) % F.p
    B = np.asarray(B, dtype=np.int64) % F.p
    inner = A.shape[-1]
    bound = (F.p - 1) ** 2 * max(inner, 1)
    if bound < 2**53 and A.ndim == 2 and B.ndim >= 1 and A.size * B.size > 4096:
        # float64 BLAS is exact below 2^53
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % F.p
    if bound <= _INT64_MAX:
        return (A @ B) % F.p
    # split B into 16-bit halves so each partial product sum stays in range
    lo = B & 0xFFFF
    hi = B >> 16
    return (((A @ hi) % F.p) * 65536 + (A @ lo) % F.p) % F.p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Coordinate-list matrix over F_p.

    Coordinates are sorted row-major with no duplicates and no stored zeros.
    """

    shape: tuple
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    p: int = field(default=0)

    @classmethod
    def from_coo(cls, shape, rows, cols, vals, F: PrimeField) -> "SparseMatrix":
        """Build from unsorted triples, summing duplicates mod p."""
        nrows, ncols = int(shape[0]), int(shape[1])
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        vals = np.asarray(vals, dtype=np.int64).ravel() % F.p
        if not (len(rows) == len(cols) == len(vals)):
            raise DimensionMismatch("coordinate arrays differ in length")
        if len(rows) and (rows.min() < 0 or rows.max() >= nrows or cols.min() < 0 or cols.max() >= ncols):
            raise DimensionMismatch("coordinate outside matrix shape")
        if len(rows):
            key = rows * ncols + cols
            order = np.argsort(key, kind="stable")
            key, vals = key[order], vals[order]
            starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
            summed = np.add.reduceat(vals, starts) % F.p
            key = key[starts]
            keep = summed != 0
            key, summed = key[keep], summed[keep]
            rows, cols, vals = key // max(ncols, 1), key % max(ncols, 1), summed
        return cls((nrows, ncols), rows, cols, vals, F.p)

    @classmethod
    def from_dense(cls, M, F: PrimeField) -> "SparseMatrix":
        M = np.asarray(M, dtype=np.int64) % F.p
        r, c = np.nonzero(M)
        return cls(M.shape, r.astype(np.int64), c.astype(np.int64), M[r, c], F.p)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.rows, self.cols] = self.vals
        return out

    @property
    def nnz(self) -> int:
        return len(self.vals)

    @property
    def density(self) -> float:
        size = self.shape[0] * self.shape[1]
        return self.nnz / size if size else 0.0

    def transpose(self) -> "SparseMatrix":
        F = PrimeField(self.p)
        return SparseMatrix.from_coo(self.shape[::-1], self.cols, self.rows, self.vals, F)

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def submatrix(self, row_idx, col_idx) -> "SparseMatrix":
        """Restrict to the given rows and columns (renumbered in the given order)."""
        row_idx = np.asarray(row_idx, dtype=np.int64)
        col_idx = np.asarray(col_idx, dtype=np.int64)
        rmap = np.full(self.shape[0], -1, dtype=np.int64)
        cmap = np.full(self.shape[1], -1, dtype=np.int64)
        rmap[row_idx] = np.arange(len(row_idx))
        cmap[col_idx] = np.arange(len(col_idx))
        r, c = rmap[self.rows], cmap[self.cols]
        keep = (r >= 0) & (c >= 0)
        return SparseMatrix.from_coo((len(row_idx), len(col_idx)), r[keep], c[keep], self.vals[keep], PrimeField(self.p))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.p == other.p
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.vals, other.vals)
        )

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz}, p={self.p})"


def as_dense(M, F: PrimeField) -> np.ndarray:
    if isinstance(M, SparseMatrix):
        return M.to_dense()
    return np.asarray(M, dtype=np.int64) % F.p


# -- elimination ------------------------------------------------------------


def _dense_rank(A: np.ndarray, p: int) -> int:
    A = A.copy()
    nrows, ncols = A.shape
    if nrows > ncols:
        A = A.T.copy()
        nrows, ncols = ncols, nrows
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r, c:] = A[r, c:] * pow(int(A[r, c]), -1, p) % p
        below = r + 1 + np.flatnonzero(A[r + 1 :, c])
        if below.size:
            A[below, c:] = (A[below, c:] - np.outer(A[below, c], A[r, c:])) % p
        r += 1
    return r


def _sparse_rank(M: SparseMatrix, threshold: float) -> int:
    """Markowitz-style elimination; hands the active part to the dense
    routine once its density exceeds ``threshold``."""
    p = M.p
    rows: dict[int, dict[int, int]] = {}
    colsets: dict[int, set] = {}
    for r, c, v in zip(M.rows.tolist(), M.cols.tolist(), M.vals.tolist()):
        rows.setdefault(r, {})[c] = v
        colsets.setdefault(c, set()).add(r)
    nnz = M.nnz
    rank = 0
    while colsets:
        area = len(rows) * len(colsets)
        if area >= 64 and nnz > threshold * area:
            rlist = sorted(rows)
            clist = sorted(colsets)
            cpos = {c: j for j, c in enumerate(clist)}
            D = np.zeros((len(rlist), len(clist)), dtype=np.int64)
            for i, r in enumerate(rlist):
                for c, v in rows[r].items():
                    D[i, cpos[c]] = v
            return rank + _dense_rank(D, p)
        # pivot column with fewest entries, then its shortest row
        c = min(colsets, key=lambda j: (len(colsets[j]), j))
        r = min(colsets[c], key=lambda i: (len(rows[i]), i))
        prow = rows.pop(r)
        inv = pow(prow[c], -1, p)
        for j in prow:
            colsets[j].discard(r)
        nnz -= len(prow)
        for s in list(colsets[c]):
            srow = rows[s]
            f = srow[c] * inv % p
            for j, v in prow.items():
                old = srow.get(j)
                new = ((old or 0) - f * v) % p
                if new:
                    if old is None:
                        colsets[j].add(s)
                        nnz += 1
                    srow[j] = new
                elif old is not None:
                    del srow[j]
                    colsets[j].discard(s)
                    nnz -= 1
            if not srow:
                del rows[s]
        for j in prow:
            if not colsets[j]:
                del colsets[j]
        colsets.pop(c, None)
        rank += 1
    return rank


def rank(M, F: PrimeField, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> int:
    """Rank over F_p of a dense array or ``SparseMatrix``."""
    if isinstance(M, SparseMatrix):
        if M.nnz == 0:
            return 0
        return _sparse_rank(M, density_threshold)
    A = np.asarray(M, dtype=np.int64) % F.p
    if A.ndim != 2:
        raise DimensionMismatch("rank expects a 2-d matrix")
    if A.size == 0:
        return 0
    return _dense_rank(A, F.p)


def dense_rank(M, F: PrimeField) -> int:
    A = as_dense(M, F)
    return _dense_rank(A, F.p) if A.size else 0


def rref(M, F: PrimeField):
    """Reduced row echelon form.  Returns ``(R, pivots)`` with ``R`` holding
    only the nonzero rows."""
    p = F.p
    A = as_dense(M, F).copy()
    if A.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d matrix")
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            A[others] = (A[others] - np.outer(col[others], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def kernel_basis(M, F: PrimeField) -> np.ndarray:
    """Basis of the right kernel, one vector per row of the result."""
    A = as_dense(M, F)
    ncols = A.shape[1]
    R, pivots = rref(A, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = 1
        for i, pc in enumerate(pivots):
            K[k, pc] = (-R[i, f]) % F.p
    return K


def solve(M, v, F: PrimeField) -> np.ndarray:
    """Some ``x`` with ``M x = v`` (free variables set to zero)."""
    A = as_dense(M, F)
    v = np.asarray(v, dtype=np.int64).reshape(-1) % F.p
    if A.shape[0] != v.shape[0]:
        raise DimensionMismatch(f"matrix has {A.shape[0]} rows, vector has length {v.shape[0]}")
    R, pivots = rref(np.column_stack([A, v]), F)
    ncols = A.shape[1]
    if pivots and pivots[-1] == ncols:
        raise NoSolution("system is inconsistent")
    x = np.zeros(ncols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, ncols]
    return x


def inverse(M, F: PrimeField) -> np.ndarray:
    A = as_dense(M, F)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    R, pivots = rref(np.column_stack([A, identity(n)]), F)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise NotInvertible("matrix is singular")
    return R[:, n:].copy()


def column_space_basis(M, F: PrimeField) -> np.ndarray:
    """Columns of ``M`` at the pivot positions (a basis of the image)."""
    A = as_dense(M, F)
    _, pivots = rref(A, F)
    return A[:, pivots]


def matrix_power(M, e: int, F: PrimeField) -> np.ndarray:
    A = as_dense(M, F)
    if e < 0:
        A, e = inverse(A, F), -e
    result = identity(A.shape[0])
    while e:
        if e & 1:
            result = matmul(result, A, F)
        A = matmul(A, A, F)
        e >>= 1
    return result


def matrix_order(M, F: PrimeField, cap: int = 10**6) -> int:
    """Least ``r <= cap`` with ``M**r = I``."""
    A = as_dense(M, F)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("order of a non-square matrix")
    if dense_rank(A, F) < n:
        raise NotInvertible("matrix is singular, it has no finite order")
    eye = identity(n)
    P = A.copy()
    for r in range(1, cap + 1):
        if np.array_equal(P, eye):
            return r
        P = matmul(P, A, F)
    raise CapExceeded(f"order exceeds cap {cap}")


def einsum_mod(subscripts: str, *operands, F: PrimeField) -> np.ndarray:
    """``np.einsum`` reduced mod p; falls back to Python ints when the
    worst-case accumulated value could overflow int64."""
    ops = [np.asarray(o, dtype=np.int64) % F.p for o in operands]
    lhs, rhs = subscripts.split("->")
    dims = {}
    for term, o in zip(lhs.split(","), ops):
        for ch, n in zip(term, o.shape):
            dims[ch] = n
    terms = 1
    for ch in set(lhs.replace(",", "")) - set(rhs):
        terms *= dims[ch]
    if (F.p - 1) ** len(ops) * max(terms, 1) < 2**62:
        return np.einsum(subscripts, *ops) % F.p
    res = np.einsum(subscripts, *[o.astype(object) for o in ops])
    return (np.asarray(res, dtype=object) % F.p).astype(np.int64)
