"""Frobenius forms, the Nakayama automorphism and its eigenspace grading."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Algebra
from .errors import (
    DimensionMismatch,
    HypothesisFailure,
    InconsistentSystem,
    NoRoot,
    NotFrobeniusWithinAttempts,
)
from .exactla import (
    PrimeField,
    column_space_basis,
    dense_rank,
    einsum_mod,
    identity,
    inverse,
    kernel_basis,
    matmul,
    matrix_order,
    primitive_root_of_unity,
)

DEFAULT_ORDER_CAP = 10**6


@dataclass(frozen=True, eq=False)
class FrobeniusForm:
    phi: np.ndarray
    gram: np.ndarray
    gram_inv: np.ndarray


@dataclass(frozen=True, eq=False)
class NakayamaData:
    rho: np.ndarray
    m: int
    w: Optional[int]  # None when F_p has no primitive m-th root
    form: FrobeniusForm


def gram_matrix(A: Algebra, phi) -> np.ndarray:
    """``G[i, j] = phi(e_i e_j)``."""
    phi = np.asarray(phi, dtype=np.int64).reshape(-1) % A.p
    if phi.shape != (A.dim,):
        raise DimensionMismatch("form length differs from algebra dimension")
    d = A.dim
    return matmul(A.structure.reshape(d * d, d), phi, A.field).reshape(d, d)


def frobenius_form(A: Algebra, phi) -> Optional[FrobeniusForm]:
    """Wrap ``phi`` if its Gram matrix is invertible, else return None."""
    G = gram_matrix(A, phi)
    if dense_rank(G, A.field) < A.dim:
        return None
    return FrobeniusForm(np.asarray(phi, dtype=np.int64) % A.p, G, inverse(G, A.field))


def find_frobenius_form(A: Algebra, seed: int = 0, attempts: int = 20) -> FrobeniusForm:
    """Seeded random search for a form with nondegenerate pairing."""
    if attempts < 1:
        raise ValueError("attempts must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        phi = rng.integers(0, A.p, size=A.dim, dtype=np.int64)
        form = frobenius_form(A, phi)
        if form is not None:
            return form
    # det G is a degree-d polynomial in phi: each sample vanishes with
    # probability <= d/p if A is Frobenius
    raise NotFrobeniusWithinAttempts(
        f"{A.name}: Gram determinant vanished on all {attempts} random forms "
        f"(each miss has probability <= {A.dim}/{A.p} if A were Frobenius); "
        "strong evidence, not proof, that A is not Frobenius"
    )


def nakayama_matrix(A: Algebra, form: FrobeniusForm) -> np.ndarray:
    """The unique ``rho`` with ``phi(a x) = phi(rho(x) a)``: ``rho = G^-T G``."""
    F = A.field
    G = form.gram
    return matmul(inverse(G.T, F), G, F)


def is_automorphism(A: Algebra, M) -> bool:
    F = A.field
    M = np.asarray(M, dtype=np.int64) % F.p
    C = A.structure
    d = A.dim
    lhs = matmul(C.reshape(d * d, d), M.T, F).reshape(d, d, d)  # M(e_i e_j)
    rhs = einsum_mod("ai,bj,abk->ijk", M, M, C, F=F)  # M(e_i) M(e_j)
    return bool(np.array_equal(lhs, rhs) and np.array_equal(matmul(M, A.unit, F), A.unit))


def check_nakayama(A: Algebra, form: FrobeniusForm, rho) -> None:
    F = A.field
    G = form.gram
    if not np.array_equal(G, matmul(G.T, rho, F)):
        raise InconsistentSystem("phi(a x) = phi(rho(x) a) fails")
    if not np.array_equal(matmul(form.phi, rho, F), form.phi):
        raise InconsistentSystem("phi o rho != phi")
    if not is_automorphism(A, rho):
        raise InconsistentSystem("Nakayama map is not an algebra automorphism")


def nakayama_order(rho, F: PrimeField, cap: int = DEFAULT_ORDER_CAP) -> int:
    return matrix_order(rho, F, cap)


def nakayama(A: Algebra, form: FrobeniusForm, cap: int = DEFAULT_ORDER_CAP) -> NakayamaData:
    rho = nakayama_matrix(A, form)
    check_nakayama(A, form, rho)
    m = nakayama_order(rho, A.field, cap)
    try:
        w = primitive_root_of_unity(A.field, m)
    except NoRoot:
        w = None
    return NakayamaData(rho, m, w, form)


# -- grading ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Grading:
    """Z/m grading by a basis of homogeneous vectors.

    ``components[i]`` holds the basis of A_i as rows (original coordinates);
    the first vector of A_0 is ``1_A``.  ``algebra`` is ``A`` rewritten in the
    concatenated graded basis and ``classes[k]`` is the class of its k-th
    basis vector.
    """

    m: int
    w: Optional[int]
    components: tuple
    from_graded: np.ndarray
    to_graded: np.ndarray
    algebra: Algebra
    classes: np.ndarray
    strongly_graded: bool

    @property
    def dims(self) -> tuple:
        return tuple(len(c) for c in self.components)

    def indices(self, i: int) -> list:
        """Graded-basis positions of A_i."""
        return [int(k) for k in np.flatnonzero(self.classes == i % self.m)]


def _graded_label(A: Algebra, v) -> str:
    nz = np.flatnonzero(v)
    if len(nz) == 1 and v[nz[0]] == 1:
        return A.labels[nz[0]]
    return A.format_element(v)


def _unit_first(A: Algebra, vectors: np.ndarray) -> np.ndarray:
    stacked = np.column_stack([A.unit] + list(vectors)) if len(vectors) else A.unit[:, None]
    return column_space_basis(stacked, A.field).T


def grading_from_components(A: Algebra, components, w: Optional[int] = None) -> Grading:
    """Build a grading from explicit bases of A_0, ..., A_{m-1}."""
    F = A.field
    m = len(components)
    comps = [np.atleast_2d(np.asarray(c, dtype=np.int64) % F.p) if len(c) else np.zeros((0, A.dim), dtype=np.int64) for c in components]
    comps[0] = _unit_first(A, comps[0])
    if sum(len(c) for c in comps) != A.dim:
        raise DimensionMismatch("component dimensions do not sum to dim A")
    P = np.vstack([c for c in comps if len(c)]).T % F.p
    if dense_rank(P, F) < A.dim:
        raise DimensionMismatch("components are not linearly independent")
    labels = [_graded_label(A, P[:, k]) for k in range(A.dim)]
    B = A.change_basis(P, labels=labels, name=A.name)
    classes = np.concatenate([np.full(len(c), i, dtype=np.int64) for i, c in enumerate(comps)])
    # A_i A_j must land in A_{i+j}
    C = B.structure
    for a in range(A.dim):
        for b in range(A.dim):
            target = (classes[a] + classes[b]) % m
            if np.any(C[a, b][classes != target]):
                raise HypothesisFailure("components do not form an algebra grading")
    Pinv = inverse(P, F)
    g = Grading(m, w, tuple(comps), P, Pinv, B, classes, False)
    object.__setattr__(g, "strongly_graded", is_strongly_graded(A, g))
    return g


def eigen_grading(A: Algebra, nak: NakayamaData) -> Grading:
    """A_i = {a : rho(a) = w^i a}."""
    F = A.field
    m = nak.m
    if nak.w is None or m % F.p == 0:
        raise HypothesisFailure(
            f"no primitive {m}-th root of unity in {F} ({m} does not divide {F.p - 1}); "
            "the eigenspace grading does not exist over this field"
        )
    w = nak.w
    comps = []
    for i in range(m):
        shift = (nak.rho - F.pow(w, i) * identity(A.dim)) % F.p
        comps.append(kernel_basis(shift, F))
    g = grading_from_components(A, comps, w)
    for i, comp in enumerate(g.components):
        for v in comp:
            if not np.array_equal(matmul(nak.rho, v, F), v * F.pow(w, i) % F.p):
                raise InconsistentSystem("eigenvector check failed")
    return g


def is_strongly_graded(A: Algebra, grading: Grading) -> bool:
    """True iff span(A_i A_j) = A_{i+j} for all i, j."""
    F = A.field
    m = grading.m
    C = grading.algebra.structure
    for i in range(m):
        for j in range(m):
            t = (i + j) % m
            tgt = grading.indices(t)
            if not tgt:
                continue
            ai, aj = grading.indices(i), grading.indices(j)
            if not ai or not aj:
                return False
            prods = C[np.ix_(ai, aj, tgt)].reshape(-1, len(tgt))
            if dense_rank(prods, F) < len(tgt):
                return False
    return True


def twist_form(A: Algebra, form: FrobeniusForm, x) -> FrobeniusForm:
    """The form ``x.phi : c -> phi(c x)``."""
    F = A.field
    new_phi = matmul(form.phi, A.right_mul_matrix(x), F)
    twisted = frobenius_form(A, new_phi)
    if twisted is None:
        raise DimensionMismatch("x is not invertible")
    return twisted
