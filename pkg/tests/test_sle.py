"""Tests for quasi-rational solutions, polynomial fractions and the Heine-type equation."""

from fractions import Fraction

import numpy as np
import pytest

from src.exceptions import XJacobiError
from src.jacobi import LambdaPair
from src.ratpoly import ETA, ONE, rational
from src.seeds import classify_seed, seed_for_family, spectrum, to_csle_energy
from src.sle import (
    QuasiRationalFn,
    base_heine_polynomial,
    csle_residual,
    darboux_transform,
    density,
    eigenfunction_form,
    free_term_from_pfr,
    heine_coeffs,
    heine_residual,
    o_hat,
    o_hat_leading,
    pfr_from_o_hat,
    prime_free_term,
    reciprocal_ff,
    ref_pfr,
    rho_inv_sqrt,
    seed_poly,
    seed_solution,
    transformed_exponents,
    transformed_pfr,
)
from src.xconstruct import XR_FAMILIES, SigmaPair, xr_jacobi

SAMPLE_ETA = np.array([1.5, 2.0, 3.5, 7.0])


def test_quasi_rational_derivative_of_square_root():
    f = QuasiRationalFn(0, Fraction(1, 2), ONE)
    # d/d(eta) sqrt(eta - 1) at eta = 5
    assert np.isclose(f.derivative().evaluate(5.0), 0.25)


def test_quasi_rational_addition_needs_integer_offsets():
    f = QuasiRationalFn(0, Fraction(1, 2), ONE)
    g = QuasiRationalFn(0, Fraction(1, 3), ONE)
    with pytest.raises(ValueError):
        f + g
    h = QuasiRationalFn(0, Fraction(3, 2), ONE)
    total = f + h
    assert total.p_plus == Fraction(1, 2)
    assert total.num == ETA


def test_quasi_rational_proportionality():
    f = QuasiRationalFn(1, 2, ETA + 1)
    assert (f * 3).proportionality(f) == 3
    assert f.proportionality(QuasiRationalFn(1, 2, ETA)) is None
    assert f.proportionality(QuasiRationalFn(0, 2, ETA + 1)) is None


def test_density_and_rho_inv_sqrt():
    values = density().evaluate_float(SAMPLE_ETA)
    np.testing.assert_allclose(values, 1.0 / (4.0 * (SAMPLE_ETA ** 2 - 1.0)))
    np.testing.assert_allclose(rho_inv_sqrt().evaluate(SAMPLE_ETA) ** 2 * values, 1.0)


def test_reference_fraction_exponents(lam_11_half):
    pfr = ref_pfr(lam_11_half)
    assert pfr.exponent_difference(1) == Fraction(1, 2)
    assert pfr.exponent_difference(-1) == Fraction(11, 2)
    assert pfr.limit_at_infinity() == Fraction(1, 4)


def test_reference_fraction_rejects_other_quadrants():
    with pytest.raises(ValueError):
        ref_pfr(LambdaPair(-3, 1))


def test_prime_free_term(lam_13_3):
    lm, lp = lam_13_3.as_tuple()
    expected = (rational(1 - lm ** 2, (ETA + 1) ** 2 * 2)
                + rational(lp ** 2, (ETA * ETA - 1) * 2))
    assert prime_free_term(lam_13_3) == expected


@pytest.mark.parametrize('lam', [
    LambdaPair(Fraction(11, 2), Fraction(1, 2)),
    LambdaPair(Fraction(13, 2), Fraction(1, 2)),
    LambdaPair(Fraction(9), Fraction(5, 2)),
])
def test_reference_eigenfunctions_solve_the_equation(lam):
    pfr = ref_pfr(lam)
    for v, eps in enumerate(spectrum(lam).energies):
        residual = csle_residual(eigenfunction_form(lam, v), to_csle_energy(eps), pfr)
        assert residual.is_zero


def test_ground_state_energy(lam_11_half):
    psi = eigenfunction_form(lam_11_half, 0)
    pfr = ref_pfr(lam_11_half)
    assert csle_residual(psi, -16, pfr).is_zero
    assert not csle_residual(psi, 15, pfr).is_zero


def test_seeds_solve_the_reference_equation(lam_13_half):
    pfr = ref_pfr(lam_13_half)
    checked = 0
    for text in ('++', '-+', '--', '+-'):
        for m in range(4):
            try:
                seed = classify_seed(SigmaPair.parse(text), m, lam_13_half)
            except XJacobiError:
                continue
            phi = seed_solution(lam_13_half, seed)
            assert csle_residual(phi, to_csle_energy(seed.energy), pfr).is_zero
            checked += 1
    assert checked > 0


def test_reciprocal_partner(lam_11_half):
    seed = seed_for_family('a', 1, lam_11_half)
    phi = seed_solution(lam_11_half, seed)
    assert (reciprocal_ff(phi) * phi).proportionality(rho_inv_sqrt()) == 1


def _family_seeds():
    lam_a = LambdaPair(Fraction(11, 2), Fraction(1, 2))
    lam_b = LambdaPair(Fraction(13), Fraction(3))
    lam_c = LambdaPair(Fraction(13, 2), Fraction(3, 2))
    return [
        ('a', 1, lam_a),
        ('a', 2, lam_a),
        ("a'", 5, lam_a),
        ('b', 1, lam_b),
        ('b', 2, lam_b),
        ('b', 0, lam_c),
        ('b', 1, lam_c),
    ]


@pytest.mark.parametrize('family,m,lam', _family_seeds())
def test_transformed_fraction_exponents(family, m, lam):
    seed = seed_for_family(family, m, lam)
    pfr = transformed_pfr(lam, seed)
    lam_minus_hat, lam_plus_hat = transformed_exponents(lam, seed)
    assert pfr.exponent_difference(1) == lam_plus_hat
    assert pfr.exponent_difference(-1) == lam_minus_hat
    assert pfr.limit_at_infinity() == Fraction(1, 4)


@pytest.mark.parametrize('family,m,lam', _family_seeds())
def test_o_hat_rebuilds_transformed_fraction(family, m, lam):
    seed = seed_for_family(family, m, lam)
    assert pfr_from_o_hat(lam, seed) == transformed_pfr(lam, seed)
    assert o_hat(lam, seed).leading == o_hat_leading(lam, seed) * seed_poly(lam, seed).leading


@pytest.mark.parametrize('family,m,lam', _family_seeds())
def test_family_eigenfunctions_solve_transformed_equation(family, m, lam):
    seed = seed_for_family(family, m, lam)
    pfr = transformed_pfr(lam, seed)
    bound = (lam.lam_minus - lam.lam_plus - 1) / 2
    for v, eps in enumerate(spectrum(lam).energies):
        if v >= bound:
            break
        psi = eigenfunction_form(lam, v, family, m)
        assert csle_residual(psi, to_csle_energy(eps), pfr).is_zero


def test_darboux_transform_matches_family_eigenfunction(lam_11_half):
    seed = seed_for_family('a', 1, lam_11_half)
    phi = seed_solution(lam_11_half, seed)
    pfr = transformed_pfr(lam_11_half, seed)
    energies = spectrum(lam_11_half).energies
    for v in (0, 1):
        moved = darboux_transform(phi, eigenfunction_form(lam_11_half, v))
        assert csle_residual(moved, to_csle_energy(energies[v]), pfr).is_zero
        ratio = moved.evaluate(SAMPLE_ETA) / eigenfunction_form(lam_11_half, v, 'a', 1).evaluate(SAMPLE_ETA)
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-9)


def test_base_heine_equation(lam_13_half):
    coeffs = heine_coeffs(lam_13_half)
    assert coeffs.Pi == ONE
    for v, eps in enumerate(spectrum(lam_13_half).energies):
        assert heine_residual(base_heine_polynomial(v, lam_13_half), coeffs, eps).is_zero


def test_base_heine_rejects_wrong_energy(lam_13_half):
    coeffs = heine_coeffs(lam_13_half)
    assert not heine_residual(base_heine_polynomial(1, lam_13_half), coeffs, Fraction(-24)).is_zero


@pytest.mark.parametrize('family,m,lam', _family_seeds())
def test_heine_equation_for_xr_polynomials(family, m, lam):
    seed = seed_for_family(family, m, lam)
    coeffs = heine_coeffs(lam, seed)
    bound = (lam.lam_minus - lam.lam_plus - 1) / 2
    for v, eps in enumerate(spectrum(lam).energies):
        if v >= bound:
            break
        q = xr_jacobi(family, m, v, lam).poly
        assert heine_residual(q, coeffs, eps).is_zero


@pytest.mark.parametrize('family,m,lam', _family_seeds())
def test_heine_free_term_matches_fraction(family, m, lam):
    seed = seed_for_family(family, m, lam)
    coeffs = heine_coeffs(lam, seed)
    assert free_term_from_pfr(coeffs, transformed_pfr(lam, seed)) == rational(coeffs.C0)
    assert coeffs.as_dict()['Pi'] == [str(c) for c in seed_poly(lam, seed).coeffs]


def test_heine_exponents_follow_seed_signs(lam_13_3):
    seed = seed_for_family('b', 1, lam_13_3)
    coeffs = heine_coeffs(lam_13_3, seed)
    assert coeffs.t_plus == Fraction(3, 2)
    assert coeffs.t_minus == Fraction(-13, 2) + 1


def _buildable_levels(lam, m_max=7):
    """(family, m, v, eps) for every XR polynomial that can be built."""
    cases = []
    energies = spectrum(lam).energies
    for family in XR_FAMILIES:
        for m in range(m_max + 1):
            try:
                seed_for_family(family, m, lam)
            except XJacobiError:
                continue
            for v, eps in enumerate(energies):
                try:
                    xr_jacobi(family, m, v, lam)
                except XJacobiError:
                    continue
                cases.append((family, m, v, eps))
    return cases


@pytest.mark.parametrize('lam', [
    LambdaPair(Fraction(11, 2), Fraction(1, 2)),
    LambdaPair(Fraction(13, 2), Fraction(1, 2)),
    LambdaPair(Fraction(13, 2), Fraction(3, 2)),
], ids=['11/2,1/2', '13/2,1/2', '13/2,3/2'])
def test_residuals_vanish_for_every_buildable_polynomial(lam):
    cases = _buildable_levels(lam)
    assert {family for family, _, _, _ in cases} == set(XR_FAMILIES)
    for family, m, v, eps in cases:
        seed = seed_for_family(family, m, lam)
        q = xr_jacobi(family, m, v, lam).poly
        assert heine_residual(q, heine_coeffs(lam, seed), eps).is_zero, (family, m, v)
        psi = eigenfunction_form(lam, v, family, m)
        pfr = transformed_pfr(lam, seed)
        assert csle_residual(psi, to_csle_energy(eps), pfr).is_zero, (family, m, v)


def test_family_b_levels_on_three_halves(lam_13_3_half):
    cases = {(m, v) for family, m, v, _ in _buildable_levels(lam_13_3_half) if family == 'b'}
    assert cases == {(0, 0), (0, 1), (1, 0), (1, 1)}
