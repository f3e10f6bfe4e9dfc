"""Exact Hochschild cohomology of Frobenius algebras over prime fields."""

from .algebra import Algebra, construct, load_algebra, taft, taft_hopf
from .exactla import PrimeField
from .frobenius import eigen_grading, find_frobenius_form, nakayama
from .hochschild import graded_hh_dims, hh_dims, verify_theorem_A
from .action import verify_theorem_B
from .bicomplex import verify_props

__all__ = [
    "Algebra",
    "PrimeField",
    "construct",
    "eigen_grading",
    "find_frobenius_form",
    "graded_hh_dims",
    "hh_dims",
    "load_algebra",
    "nakayama",
    "taft",
    "taft_hopf",
    "verify_props",
    "verify_theorem_A",
    "verify_theorem_B",
]
