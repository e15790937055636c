"""
Polynomial determinants and the exceptional Jacobi families built from them.

A polynomial determinant pairs a seed Jacobi polynomial with indices
(sigma_+ lam_+, sigma_- lam_-) against an eigenpolynomial with indices
(lam_+, lam_-). After the endpoint factors (eta -+ 1) are divided out it
gives, for suitable sign patterns and index ranges, the X_m-Jacobi and the
three XR-Jacobi sequences.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .config import DEFAULT_CONFIG, Config
from .exceptions import (
    DegreeCollapse,
    DivisionByZero,
    RangeViolation,
    SimpleRootViolation,
    ZeroPolynomial,
)
from .jacobi import (
    IdentityReport,
    JacobiParams,
    LambdaPair,
    jacobi,
    jacobi_leading_coefficient,
    sample_parameters,
)
from .ratpoly import ETA, RatPoly, Scalar, to_fraction, wronskian2

logger = logging.getLogger(__name__)

FAMILIES = ('PD-raw', 'XB', 'Xm', 'XR-a', "XR-a'", 'XR-b')
XR_FAMILIES = ('a', "a'", 'b')

_SIGN_CHARS = {'+': 1, '-': -1}


def normalize_family(name: str) -> str:
    """Accept 'a', "a'", 'ap' (shell friendly) or 'b'."""
    key = name.strip().lower()
    if key in ('ap', "a'", 'a_prime'):
        return "a'"
    if key in ('a', 'b'):
        return key
    raise ValueError(f"Unknown XR family {name!r}; expected one of a, a' (or ap), b")


@dataclass(frozen=True)
class SigmaPair:
    """Signs (sigma_-, sigma_+) choosing the seed indices at eta = -1 and +1."""

    sigma_minus: int
    sigma_plus: int

    def __post_init__(self):
        if self.sigma_minus not in (1, -1) or self.sigma_plus not in (1, -1):
            raise ValueError(
                f"Sigma components must be +1 or -1, got ({self.sigma_minus}, {self.sigma_plus})"
            )

    @classmethod
    def parse(cls, text: str) -> 'SigmaPair':
        """Read a two-character pattern such as '-+' (sigma_- first)."""
        text = text.strip()
        if len(text) != 2 or any(ch not in _SIGN_CHARS for ch in text):
            raise ValueError(f"Sigma pattern must be two of '+'/'-', got {text!r}")
        return cls(_SIGN_CHARS[text[0]], _SIGN_CHARS[text[1]])

    def __mul__(self, other: 'SigmaPair') -> 'SigmaPair':
        return SigmaPair(self.sigma_minus * other.sigma_minus, self.sigma_plus * other.sigma_plus)

    def swapped(self) -> 'SigmaPair':
        return SigmaPair(self.sigma_plus, self.sigma_minus)

    def seed_indices(self, lam: LambdaPair) -> JacobiParams:
        """Jacobi indices (sigma_+ lam_+, sigma_- lam_-) of the seed polynomial."""
        return JacobiParams(self.sigma_plus * lam.lam_plus, self.sigma_minus * lam.lam_minus)

    def __str__(self) -> str:
        return ('+' if self.sigma_minus > 0 else '-') + ('+' if self.sigma_plus > 0 else '-')


SIGMA_PATTERNS = tuple(SigmaPair.parse(p) for p in ('++', '+-', '-+', '--'))


@dataclass
class XPolyResult:
    """A polynomial determinant with its endpoint factors removed."""

    poly: RatPoly
    kappa_minus: int
    kappa_plus: int
    degree: int
    family: str
    lead: Fraction
    provenance: Dict[str, object] = field(default_factory=dict)

    @property
    def kappa(self) -> int:
        return self.kappa_minus + self.kappa_plus

    def as_dict(self) -> dict:
        return {
            'family': self.family,
            'degree': self.degree,
            'kappa_minus': self.kappa_minus,
            'kappa_plus': self.kappa_plus,
            'lead': str(self.lead),
            'coeffs': [str(c) for c in self.poly.coeffs],
            'provenance': {k: str(v) for k, v in self.provenance.items()},
        }


@dataclass
class XmJacobi:
    """Unnormalized X_m-Jacobi polynomial and its leading coefficient."""

    poly: RatPoly
    lead: Fraction

    @property
    def monic(self) -> RatPoly:
        return self.poly / self.lead


# S-polynomials

def _half_linear(lam_plus: Fraction, lam_minus: Fraction) -> RatPoly:
    """1/2 [(lam_- + lam_+ + 2) eta + lam_+ - lam_-]."""
    return RatPoly.linear(lam_minus + lam_plus + 2, lam_plus - lam_minus) * Fraction(1, 2)


def s_poly(n: int, lam_plus: Scalar, lam_minus: Scalar, check_degree: bool = True) -> RatPoly:
    """
    Supplementary polynomial S_{n+1} paired with P_n^(lam_+, lam_-).

    S_{n+1} = 1/2 [(lam_- + lam_+ + 2) eta + lam_+ - lam_-] P_n + (eta^2 - 1) P_n'
    """
    lp, lm = to_fraction(lam_plus), to_fraction(lam_minus)
    p = jacobi(n, JacobiParams(lp, lm), check_degree)
    return _half_linear(lp, lm) * p + (ETA * ETA - 1) * p.derivative()


def s_poly_alt(n: int, lam_plus: Scalar, lam_minus: Scalar, check_degree: bool = True) -> RatPoly:
    """The same S_{n+1} with the derivative replaced by P_{n-1}^(lam_+ + 1, lam_- + 1)."""
    lp, lm = to_fraction(lam_plus), to_fraction(lam_minus)
    p = jacobi(n, JacobiParams(lp, lm), check_degree)
    lowered = jacobi(n - 1, JacobiParams(lp + 1, lm + 1), check_degree=False)
    return (_half_linear(lp, lm) * p
            + (ETA * ETA - 1) * lowered * Fraction(lp + lm + n + 1, 2))


def s_poly_eliminated(m: int, lam: LambdaPair, sigma: SigmaPair,
                      check_degree: bool = True) -> RatPoly:
    """
    Seed S-polynomial with the derivative eliminated through a lowering relation.

    Only the mixed patterns have such a form: '-+' (seed indices
    (lam_+, -lam_-)) uses the beta-lowering relation, '+-' (seed indices
    (-lam_+, lam_-)) the alpha-lowering one.

    Args:
        m: Seed degree
        lam: Eigenfunction exponent differences
        sigma: '-+' or '+-'
        check_degree: Forwarded to the Jacobi constructor

    Returns:
        S_{m+1} of the seed indices
    """
    lp, lm = lam.lam_plus, lam.lam_minus
    half = _half_linear(lp, lm)
    if sigma == SigmaPair(-1, 1):
        p = jacobi(m, JacobiParams(lp, -lm), check_degree)
        raised = jacobi(m, JacobiParams(lp + 1, -lm - 1), check_degree=False)
        return half * p - (ETA - 1) * raised * (lm - m)
    if sigma == SigmaPair(1, -1):
        p = jacobi(m, JacobiParams(-lp, lm), check_degree)
        raised = jacobi(m, JacobiParams(-lp - 1, lm + 1), check_degree=False)
        return half * p - (ETA + 1) * raised * (lp - m)
    raise ValueError(f"No eliminated form for sigma pattern {sigma}")


# Polynomial determinants

def poly_det(m: int, n: int, lam: LambdaPair, sigma: SigmaPair,
             check_degree: bool = True) -> RatPoly:
    """
    Polynomial determinant of a seed P_m and an eigenpolynomial P_n.

    D = P_m^(s) S_{n+1}^(lam_+, lam_-) - S_{m+1}^(s) P_n^(lam_+, lam_-),
    where s = (sigma_+ lam_+, sigma_- lam_-).

    Args:
        m: Seed degree
        n: Eigenpolynomial degree
        lam: Exponent differences of the eigenfunctions
        sigma: Sign pattern of the seed
        check_degree: Raise DegreeCollapse for a collapsing Jacobi factor

    Returns:
        Polynomial of degree at most m + n + 1
    """
    seed = sigma.seed_indices(lam)
    p_seed = jacobi(m, seed, check_degree)
    s_seed = s_poly(m, seed.alpha, seed.beta, check_degree)
    p_eig = jacobi(n, JacobiParams(lam.lam_plus, lam.lam_minus), check_degree)
    s_eig = s_poly(n, lam.lam_plus, lam.lam_minus, check_degree)
    return p_seed * s_eig - s_seed * p_eig


def nominal_kappa(sigma: SigmaPair) -> Tuple[int, int]:
    """
    Endpoint factors (kappa_-, kappa_+) a determinant carries by construction.

    The factor (eta - 1) appears exactly when the seed keeps the eigenfunction
    index at +1 (sigma_+ = +), and (eta + 1) when it keeps the index at -1.
    """
    return int(sigma.sigma_minus > 0), int(sigma.sigma_plus > 0)


def _divide_endpoint(d: RatPoly, point: int) -> Tuple[RatPoly, int]:
    if d(point) != 0:
        return d, 0
    q = d.exact_div(ETA - point)
    if q(point) == 0:
        raise SimpleRootViolation(f"(1 {'-' if point > 0 else '+'} eta)^2 divides the determinant")
    return q, 1


def factor_pd(d: RatPoly, family: str = 'PD-raw', nominal_degree: Optional[int] = None,
              provenance: Optional[Dict[str, object]] = None) -> XPolyResult:
    """
    Strip the endpoint factors of a determinant and normalize it to monic form.

    Args:
        d: The determinant
        family: Tag stored on the result
        nominal_degree: m_1 + m_2 + 1; when given, the reduced degree must
            equal it minus the number of removed factors
        provenance: Parameters recorded with the result

    Returns:
        XPolyResult with kappa_-, kappa_+ and the monic quotient
    """
    if d.is_zero:
        raise ZeroPolynomial("cannot factor the zero determinant")
    q, kappa_plus = _divide_endpoint(d, 1)
    q, kappa_minus = _divide_endpoint(q, -1)

    degree = q.degree
    if nominal_degree is not None and degree != nominal_degree - kappa_plus - kappa_minus:
        raise DegreeCollapse(
            degree,
            message=(f"{family} determinant dropped to degree {degree}, expected "
                     f"{nominal_degree - kappa_plus - kappa_minus}"),
        )
    lead = q.leading
    logger.debug("Factored %s: kappa=(%d,%d), degree %d", family, kappa_minus, kappa_plus, degree)
    return XPolyResult(
        poly=q / lead,
        kappa_minus=kappa_minus,
        kappa_plus=kappa_plus,
        degree=degree,
        family=family,
        lead=lead,
        provenance=dict(provenance or {}),
    )


def xb_jacobi(m: int, n: int, lam: LambdaPair, sigma: SigmaPair) -> XPolyResult:
    """Exceptional polynomial of a single seed with any sign pattern."""
    d = poly_det(m, n, lam, sigma)
    return factor_pd(d, 'XB', nominal_degree=m + n + 1,
                     provenance={'lam': lam, 'sigma': sigma, 'm': m, 'n': n})


# X_m-Jacobi polynomials

def _xm_numerator(m: int, n: int, lam_minus: Fraction, lam_plus: Fraction,
                  check_degree: bool = True) -> RatPoly:
    """(lam_- - m) P_m^(-lam_- - 1, lam_+ + 1) P_n^(lam_-, lam_+) + (x-1) P_m^(-lam_-, lam_+) P_n'."""
    p_n = jacobi(n, JacobiParams(lam_minus, lam_plus), check_degree)
    first = jacobi(m, JacobiParams(-lam_minus - 1, lam_plus + 1), check_degree) * p_n
    second = (ETA - 1) * jacobi(m, JacobiParams(-lam_minus, lam_plus), check_degree) * p_n.derivative()
    return first * (lam_minus - m) + second


def xm_leading_coefficient(m: int, n: int, prm: JacobiParams) -> Fraction:
    """((alpha+n+1-m)/(alpha+n+1)) k_m^(-alpha-2, beta) k_n^(alpha+1, beta-1)."""
    a, b = prm.alpha, prm.beta
    if a + n + 1 == 0:
        raise DivisionByZero(f"alpha + n + 1 vanishes for alpha={a}, n={n}")
    return (Fraction(a + n + 1 - m) / (a + n + 1)
            * jacobi_leading_coefficient(m, JacobiParams(-a - 2, b))
            * jacobi_leading_coefficient(n, JacobiParams(a + 1, b - 1)))


def xm_jacobi(m: int, n: int, prm: JacobiParams) -> XmJacobi:
    """
    X_m-Jacobi polynomial P^_{m, m+n}^(alpha, beta)(x).

    Built from lam_- = alpha + 1 and lam_+ = beta - 1 as
    [(lam_- - m) P_m^(-lam_- - 1, lam_+ + 1) P_n^(lam_-, lam_+)
    + (x - 1) P_m^(-lam_-, lam_+) P_n'^(lam_-, lam_+)] / (lam_- + n).

    Args:
        m: Codimension of the exceptional family
        n: Index of the classical partner
        prm: (alpha, beta)

    Returns:
        XmJacobi with the polynomial of degree m + n and its leading coefficient
    """
    lam_minus, lam_plus = prm.alpha + 1, prm.beta - 1
    if lam_minus + n == 0:
        raise DivisionByZero(f"alpha + n + 1 vanishes for alpha={prm.alpha}, n={n}")
    poly = _xm_numerator(m, n, lam_minus, lam_plus) / (lam_minus + n)
    if poly.degree != m + n:
        raise DegreeCollapse(m + n, prm.alpha, prm.beta,
                             message=f"X_{m}-Jacobi polynomial of index {n} lost degree for {prm}")
    return XmJacobi(poly, poly.leading)


# XR-Jacobi sequences

@dataclass(frozen=True)
class _XRRecipe:
    sigma: SigmaPair
    kappa: Tuple[int, int]
    degree_shift: int


_XR_RECIPES = {
    'a': _XRRecipe(SigmaPair(-1, 1), (0, 1), 0),
    "a'": _XRRecipe(SigmaPair(1, 1), (1, 1), -1),
    'b': _XRRecipe(SigmaPair(1, -1), (1, 0), 0),
}


def xr_eigen_range(lam_o: LambdaPair) -> Fraction:
    """Upper bound (lam_o- - lam_o+ - 1)/2 of the admissible v (exclusive)."""
    return Fraction(lam_o.lam_minus - lam_o.lam_plus - 1, 2)


def check_xr_range(family: str, seed_m: int, v: int, lam_o: LambdaPair) -> None:
    """Raise RangeViolation unless (seed_m, v) is inside the family's range."""
    if not lam_o.is_reference:
        raise RangeViolation(f"XR sequences need positive exponent differences, got {lam_o}")
    if v < 0 or v >= xr_eigen_range(lam_o):
        raise RangeViolation(
            f"v={v} outside 0 <= v < {xr_eigen_range(lam_o)} for lam_o={lam_o}"
        )
    lm, lp = lam_o.as_tuple()
    if family == 'a':
        if seed_m < 0:
            raise RangeViolation(f"family a needs a nonnegative seed degree, got {seed_m}")
    elif family == "a'":
        if seed_m <= lm - lp - 1:
            raise RangeViolation(f"family a' needs m > {lm - lp - 1}, got {seed_m}")
    elif family == 'b':
        if not lp < lm - 1:
            raise RangeViolation(f"family b needs lam_o+ < lam_o- - 1, got {lam_o}")
        if not 0 <= seed_m < lp:
            raise RangeViolation(f"family b needs 0 <= m < {lp}, got {seed_m}")


def xr_jacobi(family: str, seed_m: int, v: int, lam_o: LambdaPair) -> XPolyResult:
    """
    XR-Jacobi polynomial of one of the families a, a' and b.

    The eigenpolynomial is the R-Jacobi P_v^(lam_o+, -lam_o-); the
    determinant uses lam = (-lam_o-, lam_o+) with the family's sign pattern.

    Args:
        family: 'a', "a'" (or 'ap') or 'b'
        seed_m: Degree of the seed polynomial
        v: Index of the eigenfunction
        lam_o: Reference exponent differences (both positive)

    Returns:
        Monic XPolyResult of degree seed_m + v, or seed_m + v - 1 for a'
    """
    family = normalize_family(family)
    check_xr_range(family, seed_m, v, lam_o)
    recipe = _XR_RECIPES[family]
    lam = LambdaPair(-lam_o.lam_minus, lam_o.lam_plus)

    d = poly_det(seed_m, v, lam, recipe.sigma)
    result = factor_pd(
        d,
        family=f"XR-{family}",
        nominal_degree=seed_m + v + 1,
        provenance={'lam_o': lam_o, 'seed_m': seed_m, 'v': v, 'sigma': recipe.sigma},
    )
    if (result.kappa_minus, result.kappa_plus) != recipe.kappa:
        raise SimpleRootViolation(
            f"XR-{family} determinant for m={seed_m}, v={v} has endpoint factors "
            f"({result.kappa_minus},{result.kappa_plus}), expected {recipe.kappa}"
        )
    return result


@dataclass
class BridgeReport:
    """XR family a against the reflected X_m-Jacobi polynomial."""

    equal: bool
    xr_poly: RatPoly
    reflected_xm: RatPoly

    def as_dict(self) -> dict:
        return {
            'equal': self.equal,
            'xr': [str(c) for c in self.xr_poly.coeffs],
            'reflected_xm': [str(c) for c in self.reflected_xm.coeffs],
        }


def xr_equals_reversed_xm(seed_m: int, v: int, lam_o: LambdaPair) -> BridgeReport:
    """
    Compare the family-a polynomial J[a seed_m, v] with the X_v-Jacobi one.

    The identity reads J(eta) = (-1)^(v+n) P^_{v, v+n}(-eta) / k^ with
    (alpha, beta) = (lam_o- - 1, lam_o+ + 1) and n = seed_m.
    """
    bound = xr_eigen_range(lam_o)
    if not (0 <= v < bound < lam_o.lam_minus - 1):
        raise RangeViolation(
            f"need 0 <= v < {bound} < {lam_o.lam_minus - 1} for the X_m bridge, got v={v}"
        )
    xr = xr_jacobi('a', seed_m, v, lam_o).poly
    xm = xm_jacobi(v, seed_m, JacobiParams(lam_o.lam_minus - 1, lam_o.lam_plus + 1))
    reflected = xm.poly.reflect() * ((-1) ** (v + seed_m)) / xm.lead
    return BridgeReport(xr == reflected, xr, reflected)


# Identity sweep

def verify_pd_identities(n_max: int, samples: Optional[Sequence[JacobiParams]] = None,
                         pd_max: int = 3, config: Config = DEFAULT_CONFIG) -> IdentityReport:
    """
    Check the S-polynomial and determinant identities exactly.

    Each sample pair is read as (lam_+, lam_-). Pairs with a zero component
    are skipped since they sit on a quadrant boundary.

    Args:
        n_max: Largest degree for the S-polynomial identities
        samples: Parameter pairs (defaults to config.identity_samples random
            pairs drawn with config.identity_seed)
        pd_max: Largest m and n for the determinant identities
        config: Supplies the default sample count and seed

    Returns:
        IdentityReport with every failing identity
    """
    if samples is None:
        samples = sample_parameters(config.identity_samples, config.identity_seed)
    report = IdentityReport()

    for prm in samples:
        lp, lm = prm.alpha, prm.beta
        if lp == 0 or lm == 0:
            continue
        lam = LambdaPair(lm, lp)
        params = (lp, lm)

        for n in range(n_max + 1):
            s = s_poly(n, lp, lm, check_degree=False)
            report.record('s_poly_paths', n, params, s - s_poly_alt(n, lp, lm, check_degree=False))

            mirrored = s_poly(n, lm, lp, check_degree=False).reflect() * ((-1) ** (n + 1))
            report.record('s_poly_reflection', n, params, s - mirrored)

            for sigma in (SigmaPair(-1, 1), SigmaPair(1, -1)):
                seed = sigma.seed_indices(lam)
                direct = s_poly(n, seed.alpha, seed.beta, check_degree=False)
                eliminated = s_poly_eliminated(n, lam, sigma, check_degree=False)
                report.record(f'eliminated_seed_{sigma}', n, params, direct - eliminated)

        swapped = LambdaPair(lp, lm)
        for m in range(pd_max + 1):
            for n in range(pd_max + 1):
                for sigma in SIGMA_PATTERNS:
                    d = poly_det(m, n, lam, sigma, check_degree=False)
                    mirror = poly_det(m, n, swapped, sigma.swapped(), check_degree=False)
                    report.record('pd_reflection', m + n, params,
                                  d - mirror.reflect() * ((-1) ** (m + n + 1)))

                d_pp = poly_det(m, n, lam, SigmaPair(1, 1), check_degree=False)
                p_m = jacobi(m, JacobiParams(lp, lm), check_degree=False)
                p_n = jacobi(n, JacobiParams(lp, lm), check_degree=False)
                report.record('pd_wronskian', m + n, params,
                              d_pp - (ETA * ETA - 1) * wronskian2(p_m, p_n))

                # Mixed seed against the X_m-Jacobi numerator in the reflected argument
                d_mp = poly_det(m, n, lam, SigmaPair(-1, 1), check_degree=False)
                numer = _xm_numerator(m, n, lm, lp, check_degree=False)
                report.record('pd_xm_numerator', m + n, params,
                              d_mp - (ETA - 1) * numer.reflect() * ((-1) ** (m + n)))

    logger.info("Determinant identities: %d checked, %d failed",
                report.checked, len(report.failures))
    return report
