import pytest

from frobhh import bicomplex as bc
from frobhh.algebra import construct, taft
from frobhh.exactla import PrimeField, dense_rank, matmul
from frobhh.hochschild import hh_dims
from frobhh.pipeline import analyze, run_props

F = PrimeField(13)
CORPUS = [("truncated_poly", 2, 3), ("matrix", 2, 2), ("taft", 2, 2), ("cyclic", 3, 2)]


@pytest.fixture(scope="module", params=CORPUS, ids=lambda c: f"{c[0]}{c[1]}")
def props(request):
    name, n, deg = request.param
    an = analyze(construct(name, F, n))
    return an, run_props(an, deg)


def _group(rep, prefix):
    return {k: v for k, v in rep["checks"].items() if k.startswith(prefix)}


def test_all_identities_hold(props):
    _, rep = props
    failed = [k for k, v in rep["checks"].items() if not v]
    assert not failed
    assert rep["pass"]


@pytest.mark.parametrize(
    "prefix",
    ["b0_squared", "sigma_homotopy", "contracting_homotopy", "psi_square", "psi_degree_zero", "upsilon_invertible", "upsilon_b", "upsilon_delta", "prop14"],
)
def test_identity_groups_present(props, prefix):
    _, rep = props
    group = _group(rep, prefix)
    assert group and all(group.values())


def test_prop11_total_dims(props):
    an, rep = props
    p11 = rep["prop11"]
    hh = hh_dims(an.algebra, len(p11["tot"]) - 1).dims
    assert p11["column0"] == hh
    assert p11["matches_column0_plus_column1"]


def test_prop14_matches_hh0(props):
    _, rep = props
    p14 = rep["prop14"]
    assert p14["tot_dims"] == p14["expected_from_hh0"]
    assert p14["blocks_vanish"]


def test_cone_sign_is_forced():
    # with the other sign the total differential does not square to zero
    A = taft(2, F)
    D0, D1 = bc.tot_x_differential(A, 0), bc.tot_x_differential(A, 1)
    assert not matmul(D1, D0, F).any()
    old = bc.CONE_SIGN
    try:
        bc.CONE_SIGN = -1
        D0, D1 = bc.tot_x_differential(A, 0), bc.tot_x_differential(A, 1)
        assert matmul(D1, D0, F).any()
    finally:
        bc.CONE_SIGN = old


def test_delta_anticommutes():
    A = construct("truncated_poly", F, 2)
    assert all(bc.horizontal_sign(A, n) == -1 for n in range(3))


def test_homotopy_sign_pattern_is_forced():
    A = taft(2, F)
    old = bc.HOMOTOPY_SIGNS
    try:
        bc.HOMOTOPY_SIGNS = (1, 1)
        assert not bc.homotopy_identity(A, 1)
    finally:
        bc.HOMOTOPY_SIGNS = old
    assert bc.homotopy_identity(A, 1)


def test_theta_iso_and_upsilon_shapes():
    an = analyze(taft(2, F))
    U = bc.upsilon_iso(an.algebra, an.form, 1)
    assert U.shape == (16, 16) and dense_rank(U, F) == 16
    T = bc.theta_iso(an.form)
    assert dense_rank(T, F) == 4


def test_dual_action_conventions():
    A = taft(2, F)
    an = analyze(A)
    assert bc.twisted_action_ok(A, an.nak.rho)
    assert bc.dual_module_identity(A, an.form.phi, an.nak.rho)


def test_y_delta_scalar_blocks():
    an = analyze(taft(2, F))
    rep = bc.verify_prop_1_4(an.algebra, an.nak, an.grading, 2)
    assert all(rep["scalar_action"])
    assert rep["tot_dims_by_class"][1] == [0, 0, 0]


def test_guard_refuses_huge_dense_maps(monkeypatch):
    from frobhh.errors import DegreeTooLarge

    monkeypatch.setenv("FROBHH_MEM_BUDGET_MB", "0")
    with pytest.raises(DegreeTooLarge):
        bc.x_b1(taft(3, F), 3)
