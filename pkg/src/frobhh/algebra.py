"""Finite-dimensional unital algebras given by structure constants.

An algebra of dimension ``d`` stores ``C`` with ``e_i e_j = sum_k C[i, j, k] e_k``.
Elements are length-``d`` coordinate vectors (int64 numpy arrays).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    BadRoot,
    DimensionMismatch,
    NotAssociative,
    NotPrimitivePower,
    ParseError,
)
from .exactla import PrimeField, einsum_mod, inverse, matmul, multiplicative_order

SELF_CHECK_LIMIT = 64


@dataclass(frozen=True, eq=False)
class Algebra:
    field: PrimeField
    structure: np.ndarray
    unit: np.ndarray
    labels: tuple
    name: str = "algebra"
    # constructor provenance, e.g. ("taft", 3, 3); None for user structure
    constructor: Optional[tuple] = None
    # a known Frobenius form for the named constructors (None when unknown)
    preferred_form: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        C = np.asarray(self.structure, dtype=np.int64) % self.field.p
        d = C.shape[0]
        if C.shape != (d, d, d):
            raise DimensionMismatch(f"structure constants must have shape (d, d, d), got {C.shape}")
        u = np.asarray(self.unit, dtype=np.int64).reshape(-1) % self.field.p
        if u.shape != (d,):
            raise DimensionMismatch("unit vector length differs from dimension")
        if len(self.labels) != d:
            raise DimensionMismatch("need one label per basis vector")
        C.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "structure", C)
        object.__setattr__(self, "unit", u)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    @property
    def p(self) -> int:
        return self.field.p

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def element(self, coords) -> np.ndarray:
        v = np.asarray(coords, dtype=np.int64).reshape(-1) % self.p
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"element of length {v.shape[0]} in algebra of dimension {self.dim}")
        return v

    def multiply(self, u, v) -> np.ndarray:
        u, v = self.element(u), self.element(v)
        # sum_ij u_i v_j C[i, j, :]; reduce after each contraction to stay in int64
        t = matmul(u, self.structure.reshape(self.dim, -1), self.field).reshape(self.dim, self.dim)
        return matmul(v, t, self.field)

    def product(self, *elements) -> np.ndarray:
        out = self.unit.copy()
        for e in elements:
            out = self.multiply(out, e)
        return out

    def power(self, u, e: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(e):
            out = self.multiply(out, u)
        return out

    def left_mul_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> u x``."""
        u = self.element(u)
        # column j is u e_j = sum_i u_i C[i, j, :]
        return matmul(u, self.structure.reshape(self.dim, -1), self.field).reshape(self.dim, self.dim).T.copy()

    def right_mul_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> x u``."""
        u = self.element(u)
        # column i is e_i u = sum_j u_j C[i, j, :]
        d = self.dim
        t = matmul(self.structure.transpose(0, 2, 1).reshape(d * d, d), u, self.field).reshape(d, d)
        return t.T.copy()

    def is_associative(self) -> bool:
        C = self.structure
        F = self.field
        d = self.dim
        flat = C.reshape(d * d, d)
        # row (i, j), column (k, m): coefficient of e_m in (e_i e_j) e_k
        left = matmul(flat, C.reshape(d, d * d), F)
        for i in range(d):
            # coefficient of e_m in e_i (e_j e_k), rows (j, k)
            right = matmul(flat, C[i], F).reshape(d, d, d)
            if not np.array_equal(left[i * d : (i + 1) * d].reshape(d, d, d), right):
                return False
        return True

    def is_unit(self, u=None) -> bool:
        u = self.unit if u is None else self.element(u)
        eye = np.eye(self.dim, dtype=np.int64)
        return bool(np.array_equal(self.left_mul_matrix(u), eye) and np.array_equal(self.right_mul_matrix(u), eye))

    def check(self):
        if not self.is_associative():
            raise NotAssociative(f"{self.name}: multiplication is not associative")
        if not self.is_unit():
            raise NotAssociative(f"{self.name}: unit vector is not a two-sided identity")

    def change_basis(self, P, labels=None, name=None) -> "Algebra":
        """Same algebra written in the basis given by the columns of ``P``."""
        F = self.field
        P = np.asarray(P, dtype=np.int64) % F.p
        Pinv = inverse(P, F)
        d = self.dim
        new = np.zeros_like(self.structure)
        for a in range(d):
            La = self.left_mul_matrix(P[:, a])
            prod = matmul(La, P, F)  # column b: coords of P_a P_b
            new[a] = matmul(Pinv, prod, F).T
        unit = matmul(Pinv, self.unit, F)
        if labels is None:
            labels = [f"b{i}" for i in range(d)]
        return Algebra(F, new, unit, tuple(labels), name or self.name, self.constructor, None)

    def subalgebra(self, idx, name=None) -> "Algebra":
        """Restrict to basis vectors ``idx`` spanning a unital subalgebra."""
        idx = list(idx)
        rest = [k for k in range(self.dim) if k not in set(idx)]
        C = self.structure
        sub = C[np.ix_(idx, idx, idx)]
        if rest and np.any(C[np.ix_(idx, idx, rest)]):
            raise DimensionMismatch("indices do not span a subalgebra")
        if np.any(self.unit[rest]):
            raise DimensionMismatch("subalgebra does not contain the unit")
        return Algebra(self.field, sub, self.unit[idx], tuple(self.labels[i] for i in idx), name or f"{self.name}_sub")

    def format_element(self, v) -> str:
        v = self.element(v)
        terms = []
        for c, lab in zip(v.tolist(), self.labels):
            if c:
                terms.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(terms) if terms else "0"


def unit_adapted(A: Algebra) -> tuple[Algebra, int]:
    """Rewrite ``A`` so that ``1_A`` is a basis vector.  Returns ``(A', index)``."""
    hits = np.flatnonzero(A.unit)
    if len(hits) == 1 and A.unit[hits[0]] == 1:
        return A, int(hits[0])
    k = int(hits[0])
    P = np.eye(A.dim, dtype=np.int64)
    P[:, k] = A.unit
    labels = list(A.labels)
    labels[k] = "1"
    B = A.change_basis(P, labels=labels, name=A.name)
    return B, k


def _build(F, C, unit, labels, name, constructor=None, form=None, check=True) -> Algebra:
    A = Algebra(F, C, unit, tuple(labels), name, constructor, None if form is None else np.asarray(form, dtype=np.int64) % F.p)
    if check:
        A.check()
    return A


def matrix_algebra(n: int, F: PrimeField) -> Algebra:
    """M_n(F) in the basis of matrix units e_ab, ordered row-major."""
    d = n * n
    C = np.zeros((d, d, d), dtype=np.int64)
    for a, b, c in itertools.product(range(n), repeat=3):
        C[a * n + b, b * n + c, a * n + c] = 1
    unit = np.zeros(d, dtype=np.int64)
    for a in range(n):
        unit[a * n + a] = 1
    labels = [f"e{a + 1}{b + 1}" for a in range(n) for b in range(n)]
    trace = unit.copy()
    return _build(F, C, unit, labels, f"matrix_algebra({n})", ("matrix", n), trace)


def truncated_poly(N: int, F: PrimeField) -> Algebra:
    """F[x]/(x^N) in the basis 1, x, ..., x^(N-1)."""
    C = np.zeros((N, N, N), dtype=np.int64)
    for i, j in itertools.product(range(N), repeat=2):
        if i + j < N:
            C[i, j, i + j] = 1
    unit = np.zeros(N, dtype=np.int64)
    unit[0] = 1
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, N)]
    top = np.zeros(N, dtype=np.int64)
    top[N - 1] = 1
    return _build(F, C, unit, labels, f"truncated_poly({N})", ("truncated_poly", N), top)


def cyclic_group_algebra(N: int, F: PrimeField) -> Algebra:
    """F[C_N] in the basis 1, g, ..., g^(N-1)."""
    C = np.zeros((N, N, N), dtype=np.int64)
    for i, j in itertools.product(range(N), repeat=2):
        C[i, j, (i + j) % N] = 1
    unit = np.zeros(N, dtype=np.int64)
    unit[0] = 1
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, N)]
    return _build(F, C, unit, labels, f"cyclic_group_algebra({N})", ("cyclic", N), unit.copy())


def diagonal_algebra(n: int, F: PrimeField) -> Algebra:
    """F^n with componentwise product."""
    C = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        C[i, i, i] = 1
    unit = np.ones(n, dtype=np.int64)
    labels = [f"f{i + 1}" for i in range(n)]
    return _build(F, C, unit, labels, f"diagonal_algebra({n})", ("diagonal", n), unit.copy())


def _taft_label(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("g" if j == 1 else f"g^{j}")
    return "".join(parts) or "1"


def taft_index(N: int, i: int, j: int) -> int:
    """Position of x^i g^j in the taft basis."""
    return i * N + (j % N)


def _check_taft_root(N: int, F: PrimeField, w: int):
    w = F(w)
    if N < 1:
        raise BadRoot("N must be positive")
    if w == 0:
        raise BadRoot("w must be nonzero")
    if (F.p - 1) % N:
        raise NotPrimitivePower(f"{F} has no primitive {N}-th root of unity")
    if multiplicative_order(F, w) != N:
        raise BadRoot(f"{w} is not a primitive {N}-th root of unity in {F}")
    return w


def taft(N: int, F: PrimeField, w: Optional[int] = None) -> Algebra:
    """Taft algebra: g^N = 1, x^N = 0, xg = w gx.

    Basis x^i g^j sorted by (i, j); products are normalised with
    g^b x^c = w^(-bc) x^c g^b.
    """
    if w is None:
        if (F.p - 1) % N:
            raise NotPrimitivePower(f"{F} has no primitive {N}-th root of unity")
        w = F.primitive_root_of_unity(N)
    w = _check_taft_root(N, F, w)
    winv = F.inv(w)
    d = N * N
    C = np.zeros((d, d, d), dtype=np.int64)
    for a, b, c, e in itertools.product(range(N), repeat=4):
        if a + c < N:
            C[taft_index(N, a, b), taft_index(N, c, e), taft_index(N, a + c, b + e)] = F.pow(winv, b * c)
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    labels = [_taft_label(i, j) for i in range(N) for j in range(N)]
    return _build(F, C, unit, labels, f"taft({N},{w})", ("taft", N, w))


# -- Hopf data --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HopfData:
    """Comultiplication as explicit summand lists, counit, antipode matrix."""

    algebra: Algebra
    comul: tuple  # comul[h] = tuple of (coef, i, j): Delta(e_h) = sum coef e_i (x) e_j
    counit: np.ndarray
    antipode: np.ndarray

    def comul_tensor(self) -> np.ndarray:
        """``D[h, i, j]`` = coefficient of e_i (x) e_j in Delta(e_h)."""
        d = self.algebra.dim
        D = np.zeros((d, d, d), dtype=np.int64)
        for h, terms in enumerate(self.comul):
            for c, i, j in terms:
                D[h, i, j] = (D[h, i, j] + c) % self.algebra.p
        return D

    def check(self):
        A = self.algebra
        F = A.field
        p = A.p
        d = A.dim
        D = self.comul_tensor()
        eps = self.counit % p
        # coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
        left = einsum_mod("hij,iab->habj", D, D, F=F)
        right = einsum_mod("hij,jab->hiab", D, D, F=F)
        if not np.array_equal(left, right):
            raise NotAssociative("comultiplication is not coassociative")
        eye = np.eye(d, dtype=np.int64)
        if not np.array_equal(einsum_mod("hij,i->hj", D, eps, F=F), eye):
            raise NotAssociative("counit law fails on the left")
        if not np.array_equal(einsum_mod("hij,j->hi", D, eps, F=F), eye):
            raise NotAssociative("counit law fails on the right")
        S = self.antipode % p
        C = A.structure
        # m (S (x) id) Delta and m (id (x) S) Delta, compared with eps(h) 1
        target = np.outer(eps, A.unit) % p
        SD = einsum_mod("hij,ai->haj", D, S, F=F)
        lhs = einsum_mod("haj,ajk->hk", SD, C, F=F)
        DS = einsum_mod("hij,bj->hib", D, S, F=F)
        rhs = einsum_mod("hib,ibk->hk", DS, C, F=F)
        if not (np.array_equal(lhs, target) and np.array_equal(rhs, target)):
            raise NotAssociative("antipode law fails")
        # Delta and eps must be algebra maps
        for a in range(d):
            for b in range(d):
                ab = C[a, b]
                lhs_t = einsum_mod("h,hij->ij", ab, D, F=F)
                rhs_t = _tensor_mul(A, D[a], D[b])
                if not np.array_equal(lhs_t, rhs_t):
                    raise NotAssociative("comultiplication is not multiplicative")
                if int(ab @ eps % p) != eps[a] * eps[b] % p:
                    raise NotAssociative("counit is not multiplicative")


def _tensor_mul(A: Algebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    F = A.field
    C = A.structure
    t = einsum_mod("ij,kl,ikm->jlm", X, Y, C, F=F)
    return einsum_mod("jlm,jln->mn", t, C, F=F)


def _terms(T: np.ndarray, p: int) -> tuple:
    i, j = np.nonzero(T % p)
    return tuple((int(T[a, b] % p), int(a), int(b)) for a, b in zip(i, j))


def taft_hopf(N: int, F: PrimeField, w: Optional[int] = None, algebra: Optional[Algebra] = None) -> HopfData:
    """Hopf structure of the Taft algebra, extended multiplicatively from
    Delta(g) = g(x)g, Delta(x) = 1(x)x + x(x)g, eps(g) = 1, eps(x) = 0,
    S(g) = g^-1, S(x) = -x g^-1."""
    A = algebra if algebra is not None else taft(N, F, w)
    N = A.constructor[1]
    p = A.p
    d = A.dim
    g = A.basis(taft_index(N, 0, 1))
    x = A.basis(taft_index(N, 1, 0)) if N > 1 else np.zeros(d, dtype=np.int64)
    one = A.unit
    Dg = np.outer(g, g) % p
    Dx = (np.outer(one, x) + np.outer(x, g)) % p
    ginv = A.power(g, N - 1)
    Sg = ginv
    Sx = (-A.multiply(x, ginv)) % p
    comul = []
    counit = np.zeros(d, dtype=np.int64)
    S = np.zeros((d, d), dtype=np.int64)
    unit_t = np.outer(one, one) % p
    for i in range(N):
        for j in range(N):
            T = unit_t.copy()
            for _ in range(i):
                T = _tensor_mul(A, T, Dx)
            for _ in range(j):
                T = _tensor_mul(A, T, Dg)
            comul.append(_terms(T, p))
            counit[taft_index(N, i, j)] = 1 if i == 0 else 0
            # antipode reverses products: S(x^i g^j) = S(g)^j S(x)^i
            s = A.product(*([Sg] * j + [Sx] * i))
            S[:, taft_index(N, i, j)] = s
    H = HopfData(A, tuple(comul), counit, S)
    H.check()
    return H


def group_hopf(A: Algebra) -> HopfData:
    """Group-algebra Hopf structure on ``cyclic_group_algebra``."""
    if not A.constructor or A.constructor[0] != "cyclic":
        raise DimensionMismatch("group_hopf expects a cyclic group algebra")
    N = A.constructor[1]
    comul = tuple(((1, j, j),) for j in range(N))
    counit = np.ones(N, dtype=np.int64)
    S = np.zeros((N, N), dtype=np.int64)
    for j in range(N):
        S[(-j) % N, j] = 1
    H = HopfData(A, comul, counit, S)
    H.check()
    return H


# -- spec files -------------------------------------------------------------

_STRUCTURE_KEYS = {"field", "dim", "labels", "unit", "structure", "name", "skip_check"}
_CONSTRUCTOR_KEYS = {
    "taft": {"constructor", "N", "field", "w"},
    "matrix": {"constructor", "n", "field"},
    "truncated_poly": {"constructor", "N", "field"},
    "cyclic": {"constructor", "N", "field"},
    "diagonal": {"constructor", "n", "field"},
}


def _require(doc, key, kind=int):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    val = doc[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ParseError(f"key {key!r} must be an integer")
    return val


def construct(name: str, F: PrimeField, *args) -> Algebra:
    """Named constructor dispatch: taft, matrix, truncated_poly, cyclic, diagonal."""
    if name == "taft":
        return taft(args[0], F, args[1] if len(args) > 1 else None)
    if name == "matrix":
        return matrix_algebra(args[0], F)
    if name == "truncated_poly":
        return truncated_poly(args[0], F)
    if name == "cyclic":
        return cyclic_group_algebra(args[0], F)
    if name == "diagonal":
        return diagonal_algebra(args[0], F)
    raise ParseError(f"unknown constructor {name!r}")


def algebra_from_dict(doc: dict) -> Algebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra spec must be a JSON object")
    if "constructor" in doc:
        name = doc["constructor"]
        allowed = _CONSTRUCTOR_KEYS.get(name)
        if allowed is None:
            raise ParseError(f"unknown constructor {name!r}")
        extra = set(doc) - allowed
        if extra:
            raise ParseError(f"unknown keys for constructor {name!r}: {sorted(extra)}")
        F = PrimeField(_require(doc, "field"))
        if name == "taft":
            w = doc.get("w")
            if w is not None and (not isinstance(w, int) or isinstance(w, bool)):
                raise ParseError("key 'w' must be an integer")
            return taft(_require(doc, "N"), F, w)
        arg = _require(doc, "n" if name in ("matrix", "diagonal") else "N")
        return construct(name, F, arg)
    extra = set(doc) - _STRUCTURE_KEYS
    if extra:
        raise ParseError(f"unknown keys: {sorted(extra)}")
    F = PrimeField(_require(doc, "field"))
    d = _require(doc, "dim")
    labels = doc.get("labels", [f"e{i}" for i in range(d)])
    unit = _require(doc, "unit", list)
    structure = _require(doc, "structure", list)
    try:
        C = np.array(structure, dtype=np.int64)
        u = np.array(unit, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"malformed numeric data: {exc}") from None
    if C.shape != (d, d, d):
        raise ParseError(f"structure must be a {d}x{d}x{d} nested list, got shape {C.shape}")
    if u.shape != (d,) or len(labels) != d:
        raise ParseError("unit and labels must have length dim")
    skip = bool(doc.get("skip_check", False)) and d > SELF_CHECK_LIMIT
    return _build(F, C, u, labels, doc.get("name", "user_algebra"), None, None, check=not skip)


def load_algebra(text: str) -> Algebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return algebra_from_dict(doc)


def algebra_to_dict(A: Algebra) -> dict:
    return {
        "field": A.p,
        "dim": A.dim,
        "labels": list(A.labels),
        "unit": A.unit.tolist(),
        "structure": A.structure.tolist(),
    }
