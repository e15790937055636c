"""Tests for polynomial determinants, X_m-Jacobi and XR-Jacobi polynomials."""

from fractions import Fraction

import pytest

from src.config import Config
from src.exceptions import DegreeCollapse, DivisionByZero, RangeViolation, SimpleRootViolation, ZeroPolynomial
from src.jacobi import JacobiParams, LambdaPair, jacobi, sample_parameters
from src.ratpoly import ETA, ZERO, RatPoly, wronskian2
from src.xconstruct import (
    SigmaPair,
    factor_pd,
    nominal_kappa,
    normalize_family,
    poly_det,
    s_poly,
    s_poly_alt,
    verify_pd_identities,
    xb_jacobi,
    xm_jacobi,
    xm_leading_coefficient,
    xr_equals_reversed_xm,
    xr_jacobi,
)


def test_normalize_family():
    assert normalize_family('ap') == "a'"
    assert normalize_family(" A' ") == "a'"
    assert normalize_family('b') == 'b'
    with pytest.raises(ValueError):
        normalize_family('c')


def test_sigma_pair_parse_and_indices():
    sigma = SigmaPair.parse('-+')
    assert (sigma.sigma_minus, sigma.sigma_plus) == (-1, 1)
    assert str(sigma) == '-+'
    assert sigma.swapped() == SigmaPair(1, -1)
    assert sigma * sigma == SigmaPair(1, 1)
    lam = LambdaPair(Fraction(11, 2), Fraction(1, 2))
    assert sigma.seed_indices(lam) == JacobiParams(Fraction(1, 2), Fraction(-11, 2))
    with pytest.raises(ValueError):
        SigmaPair.parse('+0')
    with pytest.raises(ValueError):
        SigmaPair(2, 1)


def test_nominal_kappa():
    assert nominal_kappa(SigmaPair(1, 1)) == (1, 1)
    assert nominal_kappa(SigmaPair(-1, 1)) == (0, 1)
    assert nominal_kappa(SigmaPair(-1, -1)) == (0, 0)


def test_s_poly_lowest_degree():
    # S_1 = 1/2 [(lam_- + lam_+ + 2) eta + lam_+ - lam_-]
    s = s_poly(0, 3, 5)
    assert s == RatPoly((-1, 5))
    assert s_poly_alt(0, 3, 5) == s


def test_s_poly_two_forms_agree():
    for n in range(5):
        assert s_poly(n, Fraction(2, 3), Fraction(-7, 4)) == s_poly_alt(n, Fraction(2, 3), Fraction(-7, 4))


def test_same_sign_determinant_is_wronskian():
    lam = LambdaPair(Fraction(7, 3), Fraction(5, 4))
    prm = JacobiParams(lam.lam_plus, lam.lam_minus)
    d = poly_det(1, 2, lam, SigmaPair(1, 1))
    assert d == (ETA * ETA - 1) * wronskian2(jacobi(1, prm), jacobi(2, prm))


def test_xb_jacobi_strips_both_endpoints():
    lam = LambdaPair(Fraction(7, 3), Fraction(5, 4))
    prm = JacobiParams(lam.lam_plus, lam.lam_minus)
    result = xb_jacobi(1, 2, lam, SigmaPair(1, 1))
    assert (result.kappa_minus, result.kappa_plus) == (1, 1)
    assert result.kappa == 2
    assert result.degree == 2
    assert result.poly == wronskian2(jacobi(1, prm), jacobi(2, prm)).monic()
    assert result.family == 'XB'


def test_factor_pd_errors():
    with pytest.raises(ZeroPolynomial):
        factor_pd(ZERO)
    with pytest.raises(SimpleRootViolation):
        factor_pd((ETA - 1) ** 2 * (ETA + 3))
    with pytest.raises(DegreeCollapse):
        factor_pd((ETA - 1) * (ETA + 3), nominal_degree=4)


def test_factor_pd_monic_and_lead():
    result = factor_pd((ETA - 1) * (ETA + 1) * RatPoly((6, 3)))
    assert (result.kappa_minus, result.kappa_plus) == (1, 1)
    assert result.poly == ETA + 2
    assert result.lead == 3


def test_xm_jacobi_codimension_one():
    xm = xm_jacobi(1, 1, JacobiParams(4, 1))
    assert xm.lead == Fraction(-35, 8)
    assert xm.monic == RatPoly((1, Fraction(18, 7), 1))
    assert xm.lead == xm_leading_coefficient(1, 1, JacobiParams(4, 1))


@pytest.mark.parametrize('m,n,alpha,beta', [
    (1, 2, Fraction(4), Fraction(1)),
    (2, 2, Fraction(6), Fraction(1, 2)),
    (2, 3, Fraction(13, 2), Fraction(3, 2)),
])
def test_xm_leading_coefficient_formula(m, n, alpha, beta):
    prm = JacobiParams(alpha, beta)
    xm = xm_jacobi(m, n, prm)
    assert xm.poly.degree == m + n
    assert xm.lead == xm_leading_coefficient(m, n, prm)


def test_xm_jacobi_division_by_zero():
    with pytest.raises(DivisionByZero):
        xm_jacobi(1, 1, JacobiParams(-2, 1))
    with pytest.raises(DivisionByZero):
        xm_leading_coefficient(1, 1, JacobiParams(-2, 1))


@pytest.mark.parametrize('m', [0, 1, 2])
def test_xr_a_ground_state_is_jacobi(lam_11_half, m):
    lm, lp = lam_11_half.as_tuple()
    result = xr_jacobi('a', m, 0, lam_11_half)
    assert result.poly == jacobi(m, JacobiParams(lp + 1, lm - 1)).monic()
    assert (result.kappa_minus, result.kappa_plus) == (0, 1)
    assert result.degree == m


@pytest.mark.parametrize('v', [0, 1])
def test_xr_a_trivial_seed_is_shifted_r_jacobi(lam_11_half, v):
    lm, lp = lam_11_half.as_tuple()
    result = xr_jacobi('a', 0, v, lam_11_half)
    assert result.poly == jacobi(v, JacobiParams(lp + 1, -lm - 1)).monic()


@pytest.mark.parametrize('m', [5, 6])
def test_xr_a_prime_ground_state(lam_11_half, m):
    lm, lp = lam_11_half.as_tuple()
    result = xr_jacobi('ap', m, 0, lam_11_half)
    assert result.poly == jacobi(m - 1, JacobiParams(lp + 1, 1 - lm)).monic()
    assert (result.kappa_minus, result.kappa_plus) == (1, 1)
    assert result.degree == m - 1


@pytest.mark.parametrize('v', [0, 1, 2, 3, 4])
def test_xr_b_trivial_seed(lam_13_3, v):
    lm, lp = lam_13_3.as_tuple()
    result = xr_jacobi('b', 0, v, lam_13_3)
    assert result.poly == jacobi(v, JacobiParams(lp - 1, 1 - lm)).monic()
    assert (result.kappa_minus, result.kappa_plus) == (1, 0)


@pytest.mark.parametrize('m', [0, 1, 2])
def test_xr_b_ground_state(lam_13_3, m):
    lm, lp = lam_13_3.as_tuple()
    result = xr_jacobi('b', m, 0, lam_13_3)
    assert result.poly == jacobi(m, JacobiParams(-lp - 1, 1 - lm)).monic()


def test_xr_degrees(lam_13_3):
    assert xr_jacobi('a', 2, 3, lam_13_3).degree == 5
    assert xr_jacobi('b', 1, 2, lam_13_3).degree == 3
    assert xr_jacobi("a'", 11, 1, lam_13_3).degree == 11


def test_xr_range_violations(lam_11_half, lam_13_3):
    with pytest.raises(RangeViolation):
        xr_jacobi('a', 1, 2, lam_11_half)
    with pytest.raises(RangeViolation):
        xr_jacobi("a'", 4, 0, lam_11_half)
    with pytest.raises(RangeViolation):
        xr_jacobi('b', 3, 0, lam_13_3)
    with pytest.raises(RangeViolation):
        xr_jacobi('b', 1, 0, lam_11_half)
    with pytest.raises(RangeViolation):
        xr_jacobi('a', 0, 0, LambdaPair(Fraction(11, 2), Fraction(-1, 2)))


@pytest.mark.parametrize('m,v', [(0, 0), (1, 0), (1, 1), (2, 1)])
def test_xr_a_matches_reflected_xm(lam_11_half, m, v):
    report = xr_equals_reversed_xm(m, v, lam_11_half)
    assert report.equal
    assert report.as_dict()['equal'] is True


def test_pd_identities_hold():
    report = verify_pd_identities(3, sample_parameters(4, seed=2), pd_max=2)
    assert report.passed
    assert report.checked > 0


def test_pd_identities_hold_to_degree_four():
    report = verify_pd_identities(4, sample_parameters(3, seed=7), pd_max=4)
    assert report.passed
    assert report.checked > 0


def test_pd_identities_draw_samples_from_config():
    config = Config(identity_samples=2, identity_seed=2)
    report = verify_pd_identities(1, pd_max=1, config=config)
    explicit = verify_pd_identities(1, sample_parameters(2, seed=2), pd_max=1)
    assert report.passed
    assert report.checked == explicit.checked > 0
