import numpy as np
import pytest

from frobhh.algebra import cyclic_group_algebra, group_hopf, taft_hopf, taft_index
from frobhh.exactla import PrimeField, inverse, matrix_power
from frobhh.frobenius import frobenius_form, nakayama_matrix
from frobhh.hopf import (
    convolve,
    dual_right_integral,
    finite_order_certificates,
    hopf_check,
    modular_element,
    nakayama_via_hopf,
    resolve_convention,
    right_integral,
    taft_example_values,
)

F = PrimeField(13)


@pytest.fixture(params=[2, 3], ids=["taft2", "taft3"])
def H(request):
    return taft_hopf(request.param, F)


def test_cyclic_integral_and_modular():
    H = group_hopf(cyclic_group_algebra(3, F))
    assert right_integral(H).tolist() == [1, 1, 1]
    assert np.array_equal(modular_element(H, right_integral(H)), H.counit)


def test_cyclic2_dual_integral_is_nondegenerate():
    H = group_hopf(cyclic_group_algebra(2, F))
    assert frobenius_form(H.algebra, dual_right_integral(H)) is not None


def test_integral_is_right_integral(H):
    A = H.algebra
    t = right_integral(H)
    for h in range(A.dim):
        assert np.array_equal(A.multiply(t, A.basis(h)), H.counit[h] * t % 13)


def test_hopf_formula_matches_gram_nakayama(H):
    phi = dual_right_integral(H)
    rho = nakayama_matrix(H.algebra, frobenius_form(H.algebra, phi))
    data = resolve_convention(H)
    target = rho if data.convention[1] == "rho" else inverse(rho, F)
    assert np.array_equal(nakayama_via_hopf(H, 1, data.alpha), target)


def test_convention_is_the_default_triple(H):
    assert resolve_convention(H).convention == ("right", "rho")


def test_powers_and_inverse(H):
    alpha = resolve_convention(H).alpha
    rho = nakayama_via_hopf(H, 1, alpha)
    for l in range(1, 5):
        assert np.array_equal(nakayama_via_hopf(H, l, alpha), matrix_power(rho, l, F))
    assert np.array_equal(nakayama_via_hopf(H, -1, alpha), inverse(rho, F))


def test_counit_is_convolution_identity(H):
    rng = np.random.default_rng(0)
    f = rng.integers(0, 13, size=H.algebra.dim)
    assert np.array_equal(convolve(H, f, H.counit), f)
    assert np.array_equal(convolve(H, H.counit, f), f)


def test_order_certificates(H):
    cert = finite_order_certificates(H)
    assert cert["ord_rho_divides_bound"]
    N = H.algebra.constructor[1]
    assert cert["ord_rho"] == N


def test_hopf_check_passes(H):
    assert hopf_check(H)["pass"]


def test_alpha_on_x_vanishes(H):
    N = H.algebra.constructor[1]
    alpha = resolve_convention(H).alpha
    assert alpha[taft_index(N, 1, 0)] == 0


def test_taft2_example_values():
    ex = taft_example_values(taft_hopf(2, F))
    assert all(ex["checks"].values())


def test_taft3_example_values_under_fixed_convention():
    # with t h = eps(h) t and h t = alpha(h) t the generator g acts by w, and
    # rho(g) = w^-1 g; the closed forms checked by hopf-check use the mirrored
    # conventions (see the decisions ledger)
    ex = taft_example_values(taft_hopf(3, F))
    c = ex["checks"]
    assert c["alpha_x"] and c["rho_x"]
    assert ex["alpha_g"] == 3 and ex["rho_g"] == "9*g"
