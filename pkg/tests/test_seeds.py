"""Tests for seed classification, the discrete spectrum and admissibility."""

from fractions import Fraction

import pytest

from src.exceptions import DegreeCollapse, EmptySpectrum, NoSuchType, RangeViolation
from src.jacobi import LambdaPair
from src.seeds import (
    SEED_TYPES,
    asymptotic_exponent,
    classify,
    classify_seed,
    is_admissible,
    seed_energy,
    seed_for_family,
    seed_polynomial,
    seed_table,
    sigma_infinity,
    spectrum,
    to_csle_energy,
)
from src.xconstruct import SigmaPair


def _sigma(text):
    return SigmaPair.parse(text)


def test_seed_energy(lam_11_half):
    assert asymptotic_exponent(_sigma('++'), 1, lam_11_half) == 9
    assert seed_energy(_sigma('++'), 1, lam_11_half) == -80
    assert to_csle_energy(Fraction(-15)) == -16


def test_classify_type_c(lam_11_half):
    seed = classify(_sigma('-+'), 1, 1, lam_11_half)
    assert seed.type_tag == 'c'
    assert seed.label == 'c1'


def test_classify_degree_range(lam_11_half):
    with pytest.raises(RangeViolation):
        classify(_sigma('-+'), -1, 2, lam_11_half)
    assert classify(_sigma('-+'), -1, 5, lam_11_half).type_tag == "a'"


@pytest.mark.parametrize('text,m', [('-+', 3), ('-+', 4), ('--', 3), ('--', 4), ('--', 5)])
def test_classify_rejects_collapsed_seed_polynomial(lam_11_half, text, m):
    with pytest.raises(DegreeCollapse):
        classify_seed(_sigma(text), m, lam_11_half)


def test_seed_table_skips_collapsed_degrees(lam_11_half):
    table = seed_table(lam_11_half, 6)
    a_prime = table[table['type'] == "a'"]
    d_prime = table[table['type'] == "d'"]
    assert 3 not in set(a_prime['m']) and 4 not in set(a_prime['m'])
    assert 5 in set(a_prime['m'])
    assert list(d_prime['m']) == [6]


def test_classify_type_a(lam_11_half):
    seed = classify(_sigma('++'), -1, 5, lam_11_half)
    assert seed.type_tag == 'a'
    assert seed.energy == 1 - 17 ** 2


def test_classify_unknown_signs(lam_11_half):
    with pytest.raises(NoSuchType):
        classify(_sigma('++'), 1, 0, lam_11_half)


def test_classify_rejects_mismatched_infinity_sign(lam_11_half):
    with pytest.raises(RangeViolation):
        classify(_sigma('-+'), -1, 1, lam_11_half)


def test_classify_needs_reference_parameters():
    with pytest.raises(ValueError):
        classify(_sigma('++'), -1, 0, LambdaPair(-3, 1))


def test_sigma_infinity_at_continuum_edge(lam_11_half):
    with pytest.raises(RangeViolation):
        sigma_infinity(_sigma('-+'), 2, lam_11_half)
    assert sigma_infinity(_sigma('--'), 0, lam_11_half) == 1


@pytest.mark.parametrize('text,m,expected', [
    ('++', 0, 'a'),
    ('-+', 5, "a'"),
    ('--', 0, 'b'),
    ('-+', 0, 'c'),
    ('+-', 1, 'd'),
    ('--', 6, "d'"),
])
def test_classify_seed_types(lam_11_half, text, m, expected):
    assert classify_seed(_sigma(text), m, lam_11_half).type_tag == expected
    assert expected in SEED_TYPES


def test_seed_for_family(lam_11_half):
    assert seed_for_family('a', 1, lam_11_half).sigma == _sigma('++')
    assert seed_for_family('ap', 5, lam_11_half).type_tag == "a'"
    with pytest.raises(RangeViolation):
        seed_for_family("a'", 1, lam_11_half)


def test_spectrum_with_borderline_level(lam_11_half):
    spec = spectrum(lam_11_half)
    assert spec.v_max == 2
    assert spec.energies == [-15, -3, 1]
    assert spec.borderline
    assert [to_csle_energy(e) for e in spec.energies] == [-16, -4, 0]
    frame = spec.frame()
    assert list(frame['square_integrable']) == [True, True, False]


def test_spectrum_three_bound_states(lam_13_half):
    spec = spectrum(lam_13_half)
    assert [to_csle_energy(e) for e in spec.energies] == [-25, -9, -1]
    assert not spec.borderline
    assert spec.as_dict()['energies'] == ['-24', '-8', '0']


def test_spectrum_single_borderline_level():
    spec = spectrum(LambdaPair(Fraction(3, 2), Fraction(1, 2)))
    assert spec.v_max == 0
    assert spec.energies == [1]
    assert spec.borderline


def test_empty_spectrum():
    with pytest.raises(EmptySpectrum):
        spectrum(LambdaPair(1, 2))


def test_type_a_seed_is_admissible(lam_11_half):
    report = is_admissible(seed_for_family('a', 1, lam_11_half))
    assert report.admissible
    assert report.checks == {'coexists': True, 'below_spectrum': True, 'nodeless': True}


def test_type_d_seed_is_admissible():
    lam = LambdaPair(9, Fraction(5, 2))
    seed = classify_seed(_sigma('+-'), 2, lam)
    assert seed.type_tag == 'd'
    report = is_admissible(seed)
    assert report.admissible
    assert 'klein_zero_count=0' in report.diagnostics


def test_non_coexisting_types_are_rejected(lam_11_half):
    d_prime = classify_seed(_sigma('--'), 6, lam_11_half)
    report = is_admissible(d_prime)
    assert not report.admissible
    assert not report.checks['coexists']

    b_prime = classify(_sigma('+-'), 1, 0, LambdaPair(Fraction(1, 2), Fraction(11, 2)))
    assert b_prime.type_tag == "b'"
    assert not is_admissible(b_prime).admissible


def test_type_b_needs_principal_factorization(lam_11_half, lam_13_3):
    report = is_admissible(seed_for_family('b', 0, lam_11_half))
    assert not report.admissible
    assert 'non_principal_ff' in report.diagnostics
    assert is_admissible(seed_for_family('b', 1, lam_13_3)).admissible


def test_seed_with_node_is_rejected(lam_11_half):
    # P_1^(-1/2, -11/2) vanishes at 5/4
    seed = classify_seed(_sigma('--'), 1, lam_11_half)
    assert seed_polynomial(seed)(Fraction(5, 4)) == 0
    report = is_admissible(seed)
    assert not report.checks['nodeless']


def test_seed_table(lam_11_half):
    table = seed_table(lam_11_half, 2)
    assert list(table.columns) == ['type', 'sigma', 'm', 'energy', 'admissible']
    row = table[(table['type'] == 'a') & (table['m'] == 1)].iloc[0]
    assert bool(row['admissible'])
    assert set(table['type']) <= set(SEED_TYPES)


_REFERENCE_PAIRS = [
    LambdaPair(Fraction(11, 2), Fraction(1, 2)),
    LambdaPair(Fraction(13, 2), Fraction(1, 2)),
    LambdaPair(Fraction(13, 2), Fraction(3, 2)),
    LambdaPair(Fraction(13), Fraction(3)),
    LambdaPair(Fraction(9), Fraction(5, 2)),
]


@pytest.mark.parametrize('lam', _REFERENCE_PAIRS, ids=str)
@pytest.mark.parametrize('m', range(10))
def test_type_a_seeds_are_always_admissible(lam, m):
    seed = seed_for_family('a', m, lam)
    assert seed.type_tag == 'a'
    assert seed.energy < spectrum(lam).energies[0]
    report = is_admissible(seed)
    assert report.admissible, report.diagnostics
