"""Glue between algebras, forms and the verification routines.

The CLI goes through here so that library users get the same form choice
and the same report shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Algebra, taft_hopf
from .exactla import DEFAULT_DENSITY_THRESHOLD
from .frobenius import (
    DEFAULT_ORDER_CAP,
    FrobeniusForm,
    NakayamaData,
    eigen_grading,
    find_frobenius_form,
    frobenius_form,
    nakayama,
)
from .hopf import dual_right_integral


@dataclass(frozen=True, eq=False)
class Analysis:
    algebra: Algebra
    form: FrobeniusForm
    form_source: str
    nak: NakayamaData
    grading: object


def default_form(A: Algebra, seed: int = 0, attempts: int = 20) -> tuple[FrobeniusForm, str]:
    """Taft algebras use the right integral of the dual; other named
    constructors their stored form; anything else a seeded search."""
    if A.constructor and A.constructor[0] == "taft":
        _, N, w = A.constructor
        phi = dual_right_integral(taft_hopf(N, A.field, w, algebra=A))
        form = frobenius_form(A, phi)
        if form is not None:
            return form, "dual_right_integral"
    if A.preferred_form is not None:
        form = frobenius_form(A, A.preferred_form)
        if form is not None:
            return form, "constructor"
    return find_frobenius_form(A, seed, attempts), f"random(seed={seed})"


def analyze(A: Algebra, seed: int = 0, cap: int = DEFAULT_ORDER_CAP, grade: bool = True) -> Analysis:
    form, source = default_form(A, seed)
    nak = nakayama(A, form, cap)
    grading = eigen_grading(A, nak) if grade else None
    return Analysis(A, form, source, nak, grading)


def summary(an: Analysis) -> dict:
    A = an.algebra
    g = an.grading
    out = {
        "algebra": A.name,
        "p": A.p,
        "dim": A.dim,
        "labels": list(A.labels),
        "form": {"phi": an.form.phi.tolist(), "source": an.form_source, "phi_formatted": _dual_str(A, an.form.phi)},
        "nakayama": {"rho": an.nak.rho.tolist(), "m": an.nak.m, "w": an.nak.w},
        "m": an.nak.m,
        "w": an.nak.w,
    }
    if g is not None:
        out["grading"] = {
            "dims": list(g.dims),
            "components": [[A.format_element(v) for v in comp] for comp in g.components],
            "strongly_graded": bool(g.strongly_graded),
        }
    return out


def _dual_str(A: Algebra, phi) -> str:
    terms = []
    for k in np.flatnonzero(phi):
        c = int(phi[k])
        terms.append(f"{A.labels[k]}*" if c == 1 else f"{c}*{A.labels[k]}*")
    return " + ".join(terms) if terms else "0"


def run_props(an: Analysis, n_max: int) -> dict:
    from .bicomplex import verify_props

    return verify_props(an.algebra, an.form, an.nak, an.grading, n_max)


def run_theorem_a(an: Analysis, n_max: int, normalized: bool = True, density_threshold: float = DEFAULT_DENSITY_THRESHOLD) -> dict:
    from .hochschild import verify_theorem_A

    return verify_theorem_A(an.algebra, an.form, n_max, normalized, an.grading, density_threshold)


def run_theorem_b(an: Analysis, n_max: int) -> dict:
    from .action import verify_theorem_B

    return verify_theorem_B(an.algebra, an.form, n_max, an.grading)


def hh_report(A: Algebra, n_max: int, normalized: bool = True, density_threshold: float = DEFAULT_DENSITY_THRESHOLD, grading: Optional[object] = None) -> dict:
    from .hochschild import center_dim, graded_hh_dims, hh_dims

    if grading is not None:
        rep = graded_hh_dims(A, grading, n_max, normalized, density_threshold)
    else:
        rep = hh_dims(A, n_max, normalized, density_threshold)
    out = rep.to_dict()
    z = center_dim(A)
    out["center_dim"] = z
    out["checks"] = {"hh0_equals_center": rep.dims[0] == z}
    return out
