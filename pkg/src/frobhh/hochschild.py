"""Hochschild cochain complex Hom(A^{(x)n}, A), its cohomology dimensions and
their splitting along a Z/m grading.

Cochains are indexed by ``(inputs, output)`` with the input tuple read in
mixed radix over the allowed input indices and the output as the fastest
digit.  The normalized complex drops the unit from the inputs.

Ranks are taken block by block.  Every grading for which the structure
constants are homogeneous splits the complex, so besides the Z/m class we
use the integer degrees solving ``deg e_i + deg e_j = deg e_k`` whenever
``e_i e_j`` involves ``e_k``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
import sympy

from .algebra import Algebra, unit_adapted
from .errors import DegreeTooLarge, HypothesisFailure
from .exactla import DEFAULT_DENSITY_THRESHOLD, PrimeField, SparseMatrix, dense_rank, rank

DEFAULT_MAX_DEGREE = 3
DEFAULT_BUDGET_MB = 2048


def memory_budget_mb() -> int:
    raw = os.environ.get("FROBHH_MEM_BUDGET_MB")
    return int(raw) if raw else DEFAULT_BUDGET_MB


def input_indices(A: Algebra, normalized: bool) -> np.ndarray:
    """Basis indices allowed as cochain arguments."""
    if not normalized:
        return np.arange(A.dim, dtype=np.int64)
    hits = np.flatnonzero(A.unit)
    if len(hits) != 1 or A.unit[hits[0]] != 1:
        raise HypothesisFailure("normalized complex needs 1_A as a basis vector; use unit_adapted")
    return np.array([k for k in range(A.dim) if k != hits[0]], dtype=np.int64)


def cochain_dim(d: int, r: int, n: int) -> int:
    return r**n * d


def _estimated_entries(A: Algebra, r: int, n: int) -> int:
    nnz = int(np.count_nonzero(A.structure))
    return 2 * r**n * nnz + n * r ** max(n - 1, 0) * nnz * A.dim


def _check_budget(A: Algebra, r: int, n: int):
    need = _estimated_entries(A, r, n) * 3 * 8 * 4 / 2**20
    budget = memory_budget_mb()
    if need > budget:
        raise DegreeTooLarge(
            f"differential out of degree {n} needs about {need:.0f} MB (budget {budget} MB, "
            "set FROBHH_MEM_BUDGET_MB to raise it)"
        )


def cochain_differential(A: Algebra, n: int, inputs=None) -> SparseMatrix:
    """``b : Hom(A^n, A) -> Hom(A^{n+1}, A)`` restricted to the given input
    indices (all of them by default)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    F = A.field
    d = A.dim
    I = np.arange(d, dtype=np.int64) if inputs is None else np.asarray(inputs, dtype=np.int64)
    r = len(I)
    _check_budget(A, r, n)
    C = A.structure
    rn = r**n
    rows, cols, vals = [], [], []

    # x_1 f(x_2..x_{n+1})
    a, j, k = np.nonzero(C[I])
    v = C[I][a, j, k]
    rest = np.arange(rn, dtype=np.int64)
    rows.append(((a[:, None] * rn + rest[None, :]) * d + k[:, None]).ravel())
    cols.append((rest[None, :] * d + j[:, None]).ravel())
    vals.append(np.repeat(v, rn))

    # (-1)^{n+1} f(x_1..x_n) x_{n+1}
    j, b, k = np.nonzero(C[:, I, :])
    v = C[:, I, :][j, b, k] * (-1) ** (n + 1)
    rows.append(((rest[None, :] * r + b[:, None]) * d + k[:, None]).ravel())
    cols.append((rest[None, :] * d + j[:, None]).ravel())
    vals.append(np.repeat(v, rn))

    # (-1)^i f(.. x_i x_{i+1} ..)
    if n >= 1:
        sub = C[np.ix_(I, I, I)]
        a, b, c = np.nonzero(sub)
        v = sub[a, b, c]
        out = np.arange(d, dtype=np.int64)
        for i in range(1, n + 1):
            pre = np.arange(r ** (i - 1), dtype=np.int64)
            suf_n = r ** (n - i)
            suf = np.arange(suf_n, dtype=np.int64)
            # row tuple: pre, a, b, suf ; column tuple: pre, c, suf
            P, E, S, O = np.meshgrid(pre, np.arange(len(a)), suf, out, indexing="ij")
            rt = ((P * r + a[E]) * r + b[E]) * suf_n + S
            ct = (P * r + c[E]) * suf_n + S
            rows.append((rt * d + O).ravel())
            cols.append((ct * d + O).ravel())
            vals.append(np.broadcast_to((-1) ** i * v[E], P.shape).ravel())

    shape = (r ** (n + 1) * d, rn * d)
    return SparseMatrix.from_coo(shape, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), F)


def hochschild_differential(A: Algebra, n: int, normalized: bool = False) -> SparseMatrix:
    inputs = input_indices(A, normalized)
    return cochain_differential(A, n, inputs)


# -- fine gradings ----------------------------------------------------------


def fine_degrees(A: Algebra) -> np.ndarray:
    """Integer degree vectors (one column per independent grading) making
    every structure constant homogeneous."""
    return _fine_degrees(A.structure.tobytes(), A.structure.shape)


@lru_cache(maxsize=64)
def _fine_degrees(raw: bytes, shape: tuple) -> np.ndarray:
    C = np.frombuffer(raw, dtype=np.int64).reshape(shape)
    d = shape[0]
    rels = set()
    for i, j, k in zip(*np.nonzero(C)):
        row = [0] * d
        row[i] += 1
        row[j] += 1
        row[k] -= 1
        rels.add(tuple(row))
    if not rels:
        return np.eye(d, dtype=np.int64)
    ns = sympy.Matrix(sorted(rels)).nullspace()
    cols = []
    for vec in ns:
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
        cols.append([int(x * den) for x in vec])
    if not cols:
        return np.zeros((d, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def cochain_keys(n: int, inputs, d: int, degrees: np.ndarray, classes=None, m: int = 1) -> np.ndarray:
    """Rows of ``deg(out) - sum deg(in)``; the last column is the Z/m class
    when ``classes`` is given."""
    I = np.asarray(inputs, dtype=np.int64)
    feats = [degrees[:, t] for t in range(degrees.shape[1])]
    if classes is not None:
        feats.append(np.asarray(classes, dtype=np.int64))
    out = []
    for t, f in enumerate(feats):
        w_in = np.zeros(1, dtype=np.int64)
        for _ in range(n):
            w_in = (w_in[:, None] + f[I][None, :]).ravel()
        key = (f[None, :] - w_in[:, None]).ravel()
        if classes is not None and t == len(feats) - 1:
            key = key % m
        out.append(key)
    if not out:
        return np.zeros((len(I) ** n * d, 1), dtype=np.int64)
    return np.stack(out, axis=1)


def block_ranks(D: SparseMatrix, col_keys: np.ndarray, row_keys: Optional[np.ndarray] = None, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> dict:
    """Rank of each diagonal block of ``D``, keyed by the column key tuple.
    With ``row_keys`` given, entries off the blocks raise ValueError."""
    if D.nnz == 0:
        return {}
    uniq, kid = np.unique(col_keys, axis=0, return_inverse=True)
    kid = kid.ravel()
    ek = kid[D.cols]
    if row_keys is not None:
        if not np.array_equal(row_keys[D.rows], col_keys[D.cols]):
            raise ValueError("differential mixes grading blocks")
    order = np.argsort(ek, kind="stable")
    ek = ek[order]
    r_, c_, v_ = D.rows[order], D.cols[order], D.vals[order]
    starts = np.flatnonzero(np.r_[True, ek[1:] != ek[:-1]])
    ends = np.r_[starts[1:], len(ek)]
    F = PrimeField(D.p)
    out = {}
    for s, e in zip(starts, ends):
        ru, rl = np.unique(r_[s:e], return_inverse=True)
        cu, cl = np.unique(c_[s:e], return_inverse=True)
        block = SparseMatrix.from_coo((len(ru), len(cu)), rl, cl, v_[s:e], F)
        out[tuple(int(x) for x in uniq[ek[s]])] = rank(block, F, density_threshold)
    return out


def _key_counts(keys: np.ndarray) -> dict:
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    return {tuple(int(x) for x in u): int(c) for u, c in zip(uniq, counts)}


def cohomology_by_key(A: Algebra, n_max: int, normalized: bool = True, classes=None, m: int = 1, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> list:
    """``[ {key: dim H^n on that block} for n in 0..n_max ]``.  ``A`` must have
    ``1_A`` as a basis vector when ``normalized``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    inputs = input_indices(A, normalized)
    degrees = fine_degrees(A)
    d = A.dim
    ranks_prev: dict = {}
    result = []
    keys_n = cochain_keys(0, inputs, d, degrees, classes, m)
    for n in range(n_max + 1):
        keys_next = cochain_keys(n + 1, inputs, d, degrees, classes, m)
        D = cochain_differential(A, n, inputs)
        ranks = block_ranks(D, keys_n, keys_next, density_threshold)
        dims = {}
        for key, cnt in _key_counts(keys_n).items():
            h = cnt - ranks.get(key, 0) - ranks_prev.get(key, 0)
            if h:
                dims[key] = h
        result.append(dims)
        ranks_prev, keys_n = ranks, keys_next
    return result


# -- reports ----------------------------------------------------------------


@dataclass
class CohomologyReport:
    algebra: str
    p: int
    max_degree: int
    dims: list
    normalized: bool
    m: int = 1
    w: Optional[int] = None
    graded_dims: list = field(default_factory=list)
    timings_ms: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "algebra": self.algebra,
            "p": self.p,
            "m": self.m,
            "w": self.w,
            "dims": list(self.dims),
            "graded_dims": [list(r) for r in self.graded_dims],
            "normalized": self.normalized,
        }
        if self.timings_ms is not None:
            out["timings_ms"] = self.timings_ms
        return out


def hh_dims(A: Algebra, n_max: int = DEFAULT_MAX_DEGREE, normalized: bool = True, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> CohomologyReport:
    B = unit_adapted(A)[0] if normalized else A
    per = cohomology_by_key(B, n_max, normalized, density_threshold=density_threshold)
    dims = [sum(x.values()) for x in per]
    return CohomologyReport(A.name, A.p, n_max, dims, normalized, graded_dims=[dims])


def graded_hh_dims(A: Algebra, grading, n_max: int = DEFAULT_MAX_DEGREE, normalized: bool = True, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> CohomologyReport:
    """HH_i^n for the grading; computed on the graded basis of ``grading``."""
    B = grading.algebra
    m = grading.m
    per = cohomology_by_key(B, n_max, normalized, grading.classes, m, density_threshold)
    table = [[0] * (n_max + 1) for _ in range(m)]
    for n, blocks in enumerate(per):
        for key, h in blocks.items():
            table[key[-1]][n] += h
    dims = [sum(table[i][n] for i in range(m)) for n in range(n_max + 1)]
    return CohomologyReport(A.name, A.p, n_max, dims, normalized, m, grading.w, table)


def center_dim(A: Algebra) -> int:
    """dim Z(A) as the kernel of ``a -> [x, a]`` over all basis ``x``."""
    d = A.dim
    M = np.vstack([(A.left_mul_matrix(A.basis(x)) - A.right_mul_matrix(A.basis(x))) % A.p for x in range(d)])
    return d - dense_rank(M, A.field)


def verify_theorem_A(A: Algebra, form=None, n_max: int = DEFAULT_MAX_DEGREE, normalized: bool = True, grading=None, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> dict:
    """dim HH_i^n = 0 for i != 0 and dim HH^n = dim HH_0^n, degree by degree."""
    from .frobenius import eigen_grading, find_frobenius_form, nakayama

    if grading is None:
        form = form if form is not None else find_frobenius_form(A)
        grading = eigen_grading(A, nakayama(A, form))
    rep = graded_hh_dims(A, grading, n_max, normalized, density_threshold)
    per_degree = []
    for n in range(n_max + 1):
        others = {i: rep.graded_dims[i][n] for i in range(1, grading.m)}
        ok = all(v == 0 for v in others.values()) and rep.dims[n] == rep.graded_dims[0][n]
        per_degree.append({"n": n, "dim_hh": rep.dims[n], "dim_hh_0": rep.graded_dims[0][n], "pass": ok})
    return {
        "m": grading.m,
        "w": grading.w,
        "report": rep.to_dict(),
        "per_degree": per_degree,
        "pass": all(r["pass"] for r in per_degree),
    }
