"""
Seed solutions of the Jacobi-reference problem: classification, energies and admissibility.

A seed is labelled by its sign pattern (sigma_-, sigma_+), its degree m and
the sign sigma_inf of its behaviour at infinity. The seven recognised types
and their degree ranges are kept in one table below.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

import pandas as pd

from .exceptions import DegreeCollapse, EmptySpectrum, NoSuchType, RangeViolation
from .jacobi import (
    LambdaPair,
    jacobi_leading_coefficient,
    klein_zero_count,
    pochhammer,
    zeros_above_one,
)
from .ratpoly import RatPoly
from .sle import QuasiRationalFn, seed_poly, seed_solution
from .xconstruct import SigmaPair, normalize_family

logger = logging.getLogger(__name__)

SEED_TYPES = ('a', "a'", 'b', "b'", 'c', 'd', "d'")

# (sigma_-, sigma_+, sigma_inf) -> type
_TYPE_BY_SIGNS: Dict[tuple, str] = {
    (1, 1, -1): 'a',
    (-1, 1, -1): "a'",
    (-1, -1, 1): 'b',
    (1, -1, 1): "b'",
    (-1, 1, 1): 'c',
    (1, -1, -1): 'd',
    (-1, -1, -1): "d'",
}

# Types that never coexist with the discrete spectrum
_NON_COEXISTING = ("b'", "d'")

# Seed type used by each XR family
_FAMILY_SEED_TYPES = {'a': 'a', "a'": "a'", 'b': 'b'}


def _sign_char(s: int) -> str:
    return '+' if s > 0 else '-'


def asymptotic_exponent(sigma: SigmaPair, m: int, lam_o: LambdaPair) -> Fraction:
    """s = sigma_- lam_- + sigma_+ lam_+ + 2m + 1; the seed energy is 1 - s^2."""
    return sigma.sigma_minus * lam_o.lam_minus + sigma.sigma_plus * lam_o.lam_plus + 2 * m + 1


def seed_energy(sigma: SigmaPair, m: int, lam_o: LambdaPair) -> Fraction:
    """Energy 1 - (sigma_- lam_- + sigma_+ lam_+ + 2m + 1)^2 of a seed."""
    return 1 - asymptotic_exponent(sigma, m, lam_o) ** 2


def sigma_infinity(sigma: SigmaPair, m: int, lam_o: LambdaPair) -> int:
    """
    Sign of the seed's behaviour at infinity: +1 when it grows, -1 when it decays.

    Raises RangeViolation when the seed sits exactly at the continuum edge.
    """
    s = asymptotic_exponent(sigma, m, lam_o)
    if s == 0:
        raise RangeViolation(f"seed m={m}, sigma={sigma} sits at the continuum edge of {lam_o}")
    return 1 if s < 0 else -1


def to_csle_energy(eps) -> Fraction:
    """
    Map a stored level energy to the canonical-equation energy.

    Stored energies follow 1 - (...)^2; the canonical equation and the
    Schrodinger equation in r both use that value minus one.
    """
    return Fraction(eps) - 1


@dataclass(frozen=True)
class SeedSpec:
    """A classified seed solution."""

    sigma: SigmaPair
    m: int
    lam_o: LambdaPair
    type_tag: str
    energy: Fraction
    sigma_inf: int

    @property
    def label(self) -> str:
        return f"{self.type_tag}{self.m}"

    def as_dict(self) -> dict:
        return {
            'type': self.type_tag,
            'sigma': f"{str(self.sigma)}{_sign_char(self.sigma_inf)}",
            'm': self.m,
            'lam_o': [str(self.lam_o.lam_minus), str(self.lam_o.lam_plus)],
            'energy': str(self.energy),
        }


def classify(sigma: SigmaPair, sigma_inf: int, m: int, lam_o: LambdaPair) -> SeedSpec:
    """
    Assign a seed its type.

    Args:
        sigma: Sign pattern at the endpoints
        sigma_inf: Sign at infinity (+1 or -1)
        m: Degree of the seed polynomial
        lam_o: Reference exponent differences

    Returns:
        SeedSpec with the matching type tag

    Raises:
        NoSuchType: the sign triple matches no type
        RangeViolation: m lies outside the type's degree range
        DegreeCollapse: the seed polynomial P_m^(sigma_+ lam_+, sigma_- lam_-)
            has degree below m
    """
    if not lam_o.is_reference:
        raise ValueError(f"seeds are classified for positive exponent differences, got {lam_o}")
    if sigma_inf not in (1, -1):
        raise ValueError(f"sigma_inf must be +1 or -1, got {sigma_inf}")
    key = (sigma.sigma_minus, sigma.sigma_plus, sigma_inf)
    if key not in _TYPE_BY_SIGNS:
        raise NoSuchType(f"no seed type has signs {sigma}{_sign_char(sigma_inf)}")
    type_tag = _TYPE_BY_SIGNS[key]

    if m < 0:
        raise RangeViolation(f"seed degree must be nonnegative, got {m}")
    s = asymptotic_exponent(sigma, m, lam_o)
    # The sign at infinity is fixed by s, which fixes the type's degree range
    if s == 0 or (s < 0) != (sigma_inf > 0):
        raise RangeViolation(
            f"m={m} outside the degree range of type {type_tag} for lam_o={lam_o}"
        )
    indices = sigma.seed_indices(lam_o)
    if jacobi_leading_coefficient(m, indices) == 0:
        raise DegreeCollapse(m, indices.alpha, indices.beta)
    return SeedSpec(sigma, m, lam_o, type_tag, 1 - s * s, sigma_inf)


def classify_seed(sigma: SigmaPair, m: int, lam_o: LambdaPair) -> SeedSpec:
    """classify with sigma_inf derived from the seed itself."""
    return classify(sigma, sigma_infinity(sigma, m, lam_o), m, lam_o)


def seed_for_family(family: str, seed_m: int, lam_o: LambdaPair) -> SeedSpec:
    """The seed behind an XR family: a -> '++', a' -> '-+', b -> '--'."""
    family = normalize_family(family)
    sigma = {'a': SigmaPair(1, 1), "a'": SigmaPair(-1, 1), 'b': SigmaPair(-1, -1)}[family]
    seed = classify_seed(sigma, seed_m, lam_o)
    if seed.type_tag != _FAMILY_SEED_TYPES[family]:
        raise RangeViolation(
            f"seed m={seed_m} of family {family} classifies as {seed.type_tag} for {lam_o}"
        )
    return seed


def seed_polynomial(seed: SeedSpec) -> RatPoly:
    """P_m^(sigma_+ lam_+, sigma_- lam_-)."""
    return seed_poly(seed.lam_o, seed)


def seed_function(seed: SeedSpec) -> QuasiRationalFn:
    """The quasi-rational seed solution used as factorization function."""
    return seed_solution(seed.lam_o, seed)


# Discrete spectrum

@dataclass
class Spectrum:
    """Levels of the reference problem."""

    lam_o: LambdaPair
    v_max: int
    energies: List[Fraction]
    borderline: bool = False

    def frame(self) -> pd.DataFrame:
        """One row per level with stored and canonical energies."""
        rows = []
        for v, eps in enumerate(self.energies):
            rows.append({
                'v': v,
                'energy': str(eps),
                'csle_energy': str(to_csle_energy(eps)),
                'square_integrable': not (self.borderline and v == self.v_max),
            })
        return pd.DataFrame(rows)

    def as_dict(self) -> dict:
        return {
            'v_max': self.v_max,
            'energies': [str(e) for e in self.energies],
            'borderline': self.borderline,
        }


def spectrum(lam_o: LambdaPair) -> Spectrum:
    """
    Discrete levels 1 - (lam_- - lam_+ - 2v - 1)^2 for 0 <= v <= v_max.

    v_max = floor((lam_- - lam_+ - 1) / 2). When lam_- - lam_+ - 1 is an
    even integer the top level sits at energy 1 and is flagged borderline.

    Raises:
        EmptySpectrum: v_max < 0
    """
    if not lam_o.is_reference:
        raise ValueError(f"the reference problem needs positive exponent differences, got {lam_o}")
    gap = lam_o.lam_minus - lam_o.lam_plus - 1
    v_max = math.floor(gap / 2)
    if v_max < 0:
        raise EmptySpectrum(f"no discrete levels for lam_o={lam_o}")
    energies = [1 - (gap - 2 * v) ** 2 for v in range(v_max + 1)]
    borderline = gap.denominator == 1 and int(gap) % 2 == 0
    return Spectrum(lam_o, v_max, energies, borderline)


# Admissibility

@dataclass
class AdmissibilityReport:
    """Outcome of the admissibility checks of one seed."""

    seed: SeedSpec
    checks: Dict[str, bool] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            'seed': self.seed.as_dict(),
            'admissible': self.admissible,
            'checks': dict(self.checks),
            'diagnostics': list(self.diagnostics),
        }


def is_admissible(seed: SeedSpec) -> AdmissibilityReport:
    """
    Decide whether a seed can serve as factorization function.

    The seed must coexist with the discrete spectrum, lie strictly below
    its lowest level and be nodeless on (1, oo).

    Args:
        seed: A classified seed

    Returns:
        AdmissibilityReport with one entry per check
    """
    report = AdmissibilityReport(seed)
    lam_o = seed.lam_o

    report.checks['coexists'] = seed.type_tag not in _NON_COEXISTING
    if not report.checks['coexists']:
        report.diagnostics.append(f"type {seed.type_tag} does not coexist with the discrete spectrum")

    try:
        lowest = spectrum(lam_o).energies[0]
        report.checks['below_spectrum'] = seed.energy < lowest
        if seed.energy >= lowest:
            report.diagnostics.append(f"energy {seed.energy} is not below the lowest level {lowest}")
    except EmptySpectrum:
        report.checks['below_spectrum'] = False
        report.diagnostics.append('empty_spectrum')

    zeros = zeros_above_one(seed_polynomial(seed))
    report.checks['nodeless'] = zeros == 0
    if zeros:
        report.diagnostics.append(f"seed polynomial has {zeros} zero(s) in (1, oo)")

    if seed.type_tag == 'b':
        if lam_o.lam_plus <= Fraction(1, 2):
            report.checks['principal_ff'] = False
            report.diagnostics.append('non_principal_ff')
        elif lam_o.lam_plus < 1:
            report.diagnostics.append('limit_circle_at_plus_one')

    if seed.type_tag == 'd':
        indices = seed.sigma.seed_indices(lam_o)
        predicted = klein_zero_count(seed.m, indices)
        rising = pochhammer(1 - lam_o.lam_plus, seed.m)
        report.diagnostics.append(f"klein_zero_count={predicted}")
        report.diagnostics.append(f"rising_factorial_positive={rising > 0}")

    logger.debug("Seed %s admissible=%s %s", seed.label, report.admissible, report.checks)
    return report


def seed_table(lam_o: LambdaPair, m_max: int) -> pd.DataFrame:
    """Every classifiable seed with m <= m_max and its admissibility."""
    rows = []
    for sigma_text in ('++', '-+', '--', '+-'):
        sigma = SigmaPair.parse(sigma_text)
        for m in range(m_max + 1):
            try:
                seed = classify_seed(sigma, m, lam_o)
            except (NoSuchType, RangeViolation):
                continue
            except DegreeCollapse as exc:
                logger.debug("Skipping %s%d: %s", sigma_text, m, exc)
                continue
            report = is_admissible(seed)
            rows.append({
                'type': seed.type_tag,
                'sigma': sigma_text,
                'm': m,
                'energy': str(seed.energy),
                'admissible': report.admissible,
            })
    return pd.DataFrame(rows, columns=['type', 'sigma', 'm', 'energy', 'admissible'])
