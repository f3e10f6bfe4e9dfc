import numpy as np
import pytest

from frobhh.action import (
    cohomology_action,
    coefficient_complex,
    partition_of_unity,
    presentation,
    rigidity_flag,
    taft_action_formula_check,
    theta_matrix,
    verify_theorem_B,
)
from frobhh.algebra import construct, taft
from frobhh.errors import NotStronglyGraded
from frobhh.exactla import PrimeField, identity, matmul
from frobhh.frobenius import grading_from_components
from frobhh.hochschild import hh_dims
from frobhh.pipeline import analyze, run_theorem_b

F = PrimeField(13)


@pytest.fixture(scope="module", params=[2, 3], ids=["taft2", "taft3"])
def an(request):
    return analyze(taft(request.param, F))


def test_partition_of_unity(an):
    for i in range(an.grading.m):
        part = partition_of_unity(an.algebra, an.grading, i)
        assert part.check(an.grading.algebra)


def test_theta_zero_is_identity(an):
    T = theta_matrix(an.algebra, an.grading, 0, 2, 1)
    assert np.array_equal(T, identity(T.shape[0]))


def test_coefficient_complex_squares_to_zero(an):
    for v in range(an.grading.m):
        for n in range(2):
            assert not matmul(coefficient_complex(an.grading, v, n + 1), coefficient_complex(an.grading, v, n), F).any()


def test_presentation_dims_match_a0_cohomology(an):
    A0 = an.grading.algebra.subalgebra(an.grading.indices(0))
    dims = hh_dims(A0, 2).dims
    assert [presentation(an.grading, 0, n).dim for n in range(3)] == dims


def test_action_cells(an):
    rep = cohomology_action(an.algebra, an.grading, 2)
    for c in rep["cells"]:
        assert c["theta_chain_map"] and c["theta_0_identity"]
        assert c["T_order_divides_m"] and c["theta_i_equals_T_power"]
        assert c["invariants_kernel"] == c["invariants_average"]


def test_theorem_b(an):
    n_max = 3 if an.grading.m == 2 else 2
    rep = run_theorem_b(an, n_max)
    assert rep["pass"]
    assert [r["dim_hh"] for r in rep["per_degree"]] == [1] * (n_max + 1)


def test_rigidity_is_one_directional(an):
    flag = rigidity_flag(an.algebra, an.grading)
    assert flag["rigid"] == "unknown" and flag["dim_hh2_A0"] > 0
    flag = rigidity_flag(*(lambda a: (a.algebra, a.grading))(analyze(construct("matrix", F, 2))))
    assert flag == {"dim_hh2_A0": 0, "rigid": True}


def test_not_strongly_graded_is_reported():
    # F[t]/(t^2) graded by t in degree 1 of Z/2: A_1 A_1 = 0
    A = construct("truncated_poly", F, 2)
    g = grading_from_components(A, [[[1, 0]], [[0, 1]]], 12)
    assert not g.strongly_graded
    with pytest.raises(NotStronglyGraded):
        verify_theorem_B(A, grading=g, n_max=1)


def test_theorem_b_on_symmetric_algebras():
    for name, n in [("matrix", 2), ("cyclic", 3), ("truncated_poly", 2)]:
        assert run_theorem_b(analyze(construct(name, F, n)), 2)["pass"]


def test_action_formula_n2():
    rep = taft_action_formula_check(2, F)
    assert rep["pass"]
    assert all(r["display_is_chain_map"] for r in rep["rows"])


def test_action_formula_n3_inverse_reading():
    rep = taft_action_formula_check(3, F)
    rows = {r["n"]: r for r in rep["rows"]}
    assert rows[0]["equal"]
    assert all(r["equal_with_inverse_on_inputs"] for r in rep["rows"])
    assert not rows[1]["equal"] and not rows[1]["display_is_chain_map"]
