"""Classical Jacobi and Romanovski-Jacobi polynomials with rational indices."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, Config
from .exceptions import DegreeCollapse
from .ratpoly import ETA, ZERO, Interval, RatPoly, Scalar, sturm_count, to_fraction

logger = logging.getLogger(__name__)

QUADRANTS = ('I', 'II', 'III', 'IV')


@dataclass(frozen=True)
class JacobiParams:
    """The index pair (alpha, beta) of P_n^(alpha, beta)."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', to_fraction(self.alpha))
        object.__setattr__(self, 'beta', to_fraction(self.beta))

    def shifted(self, d_alpha: Scalar = 0, d_beta: Scalar = 0) -> 'JacobiParams':
        return JacobiParams(self.alpha + d_alpha, self.beta + d_beta)

    def swapped(self) -> 'JacobiParams':
        return JacobiParams(self.beta, self.alpha)

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta})"


@dataclass(frozen=True)
class LambdaPair:
    """
    Exponent differences at eta = -1 (lam_minus) and eta = +1 (lam_plus).

    Both components are nonzero exact rationals; the signs select one of
    four quadrants.
    """

    lam_minus: Fraction
    lam_plus: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lam_minus', to_fraction(self.lam_minus))
        object.__setattr__(self, 'lam_plus', to_fraction(self.lam_plus))
        if self.lam_minus == 0 or self.lam_plus == 0:
            raise ValueError(
                f"LambdaPair components must be nonzero, got ({self.lam_minus}, {self.lam_plus})"
            )

    @property
    def quadrant(self) -> str:
        if self.lam_minus > 0 and self.lam_plus > 0:
            return 'I'
        if self.lam_minus < 0 and self.lam_plus > 0:
            return 'II'
        if self.lam_minus < 0 and self.lam_plus < 0:
            return 'III'
        return 'IV'

    @property
    def is_reference(self) -> bool:
        """Both exponent differences positive, as for the reference problem."""
        return self.quadrant == 'I'

    def shifted(self, delta: Scalar) -> 'LambdaPair':
        return LambdaPair(self.lam_minus + delta, self.lam_plus + delta)

    def as_tuple(self) -> Tuple[Fraction, Fraction]:
        return self.lam_minus, self.lam_plus

    def __str__(self) -> str:
        return f"({self.lam_minus}, {self.lam_plus})"


def pochhammer(a: Scalar, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    result = Fraction(1)
    a = to_fraction(a)
    for j in range(k):
        result *= a + j
    return result


def jacobi_leading_coefficient(n: int, prm: JacobiParams) -> Fraction:
    """k_n = (n+alpha+beta+1)_n / (n! 2^n)."""
    return pochhammer(n + prm.alpha + prm.beta + 1, n) / (math.factorial(n) * 2 ** n)


def jacobi(n: int, prm: JacobiParams, check_degree: bool = True) -> RatPoly:
    """
    Build P_n^(alpha, beta)(eta) exactly.

    The polynomial is summed in powers of (eta-1)/2 with coefficients
    (n+alpha+beta+1)_l (alpha+l+1)_(n-l) / (l! (n-l)!), a closed form whose
    only possible degeneracy is the vanishing of the leading coefficient.

    Args:
        n: Degree, n >= -1 (P_{-1} is the zero polynomial)
        prm: Jacobi indices
        check_degree: Raise DegreeCollapse when the leading coefficient
            vanishes; identity sweeps switch this off because the identities
            hold coefficientwise regardless

    Returns:
        The polynomial in eta
    """
    if n == -1:
        return ZERO
    if n < -1:
        raise ValueError(f"Jacobi degree must be >= -1, got {n}")

    s = n + prm.alpha + prm.beta + 1
    coeffs = []
    for ell in range(n + 1):
        c = pochhammer(s, ell) * pochhammer(prm.alpha + ell + 1, n - ell)
        coeffs.append(c / (math.factorial(ell) * math.factorial(n - ell)))
    in_u = RatPoly(tuple(coeffs))

    if check_degree and in_u.degree != n:
        raise DegreeCollapse(n, prm.alpha, prm.beta)

    return in_u.compose(RatPoly.linear(Fraction(1, 2), Fraction(-1, 2)))


def jacobi_deriv(n: int, prm: JacobiParams, check_degree: bool = True) -> RatPoly:
    """Derivative via P_n' = (alpha+beta+n+1)/2 * P_{n-1}^(alpha+1, beta+1)."""
    if n < 0:
        raise ValueError(f"Jacobi degree must be >= 0, got {n}")
    factor = Fraction(prm.alpha + prm.beta + n + 1, 2)
    return jacobi(n - 1, prm.shifted(1, 1), check_degree) * factor


def r_jacobi(v: int, lam: LambdaPair) -> RatPoly:
    """
    Romanovski-Jacobi polynomial of the reference problem in z = (eta-1)/2.

    Equals P_v^(lam_plus, -lam_minus)(2z+1); the same polynomial is
    (-1)^v P_v^(-lam_minus, lam_plus)(-(2z+1)).
    """
    if lam.lam_minus <= 0 or lam.lam_plus <= 0:
        raise ValueError(f"R-Jacobi polynomials need positive exponent differences, got {lam}")
    p = jacobi(v, JacobiParams(lam.lam_plus, -lam.lam_minus))
    return p.compose(RatPoly.linear(2, 1))


def r_jacobi_eta(v: int, lam: LambdaPair) -> RatPoly:
    """The same polynomial written in eta: P_v^(lam_plus, -lam_minus)(eta)."""
    return jacobi(v, JacobiParams(lam.lam_plus, -lam.lam_minus))


def _szego_e(u: Fraction) -> int:
    if u <= 0:
        return 0
    if u.denominator == 1:
        return int(u) - 1
    return math.floor(u)


def klein_zero_count(n: int, prm: JacobiParams) -> int:
    """
    Zeros of P_n^(alpha, beta) in (1, oo) predicted by Klein's formula.

    Valid away from the degenerate parameter sets where P_n vanishes at an
    endpoint or drops degree.
    """
    a, b = prm.alpha, prm.beta
    z = _szego_e(Fraction(-abs(2 * n + a + b + 1) - abs(a) + abs(b) + 1, 2))
    if pochhammer(n + a + b + 1, n) * pochhammer(a + 1, n) > 0:
        return 2 * ((z + 1) // 2)
    return 2 * (z // 2) + 1


def zeros_above_one(p: RatPoly) -> int:
    return sturm_count(p, Interval(1, math.inf))


# Identity verification

@dataclass
class IdentityFailure:
    """One identity that did not reduce to the zero polynomial."""

    name: str
    n: int
    params: Tuple[Fraction, ...]
    residual: RatPoly

    def as_dict(self) -> dict:
        return {
            'identity': self.name,
            'n': self.n,
            'params': [str(p) for p in self.params],
            'residual': [str(c) for c in self.residual.coeffs],
        }


@dataclass
class IdentityReport:
    """Outcome of an exact identity sweep."""

    checked: int = 0
    failures: List[IdentityFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, name: str, n: int, params: Sequence[Fraction], residual: RatPoly) -> None:
        self.checked += 1
        if not residual.is_zero:
            self.failures.append(IdentityFailure(name, n, tuple(params), residual))

    def merge(self, other: 'IdentityReport') -> 'IdentityReport':
        return IdentityReport(self.checked + other.checked, self.failures + other.failures)

    def as_dict(self) -> dict:
        return {
            'checked': self.checked,
            'failed': len(self.failures),
            'pass': self.passed,
            'failures': [f.as_dict() for f in self.failures],
        }


def sample_parameters(count: int, seed: int = 0, max_num: int = 30,
                      max_den: int = 7) -> List[JacobiParams]:
    """Reproducible random rational parameter pairs."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        nums = rng.integers(-max_num, max_num + 1, size=2)
        dens = rng.integers(1, max_den + 1, size=2)
        out.append(JacobiParams(Fraction(int(nums[0]), int(dens[0])),
                                Fraction(int(nums[1]), int(dens[1]))))
    return out


def verify_contiguous_identities(n_max: int, samples: Optional[Sequence[JacobiParams]] = None,
                                 config: Config = DEFAULT_CONFIG) -> IdentityReport:
    """
    Check the contiguous-index and derivative identities exactly.

    For every n <= n_max and every sampled pair, each identity is turned
    into a difference of polynomials that must vanish identically. The
    sample pair is read as (alpha, beta) for the index-shift identities and
    as (lam_plus, lam_minus) for the two exponent-difference forms.

    Args:
        n_max: Largest degree to check
        samples: Parameter pairs (defaults to config.identity_samples random
            pairs drawn with config.identity_seed)
        config: Supplies the default sample count and seed

    Returns:
        IdentityReport listing any failing identity with its parameters
    """
    if samples is None:
        samples = sample_parameters(config.identity_samples, config.identity_seed)
    report = IdentityReport()

    for prm in samples:
        a, b = prm.alpha, prm.beta
        lp, lm = a, b
        for n in range(n_max + 1):
            def P(alpha, beta, deg=n):
                return jacobi(deg, JacobiParams(alpha, beta), check_degree=False)

            def dP(alpha, beta, deg=n):
                return P(alpha, beta, deg).derivative()

            # lam_- P^(l+,-l-) - (eta+1) P' = (lam_- - n) P^(l+ +1, -l- -1)
            lhs = lm * P(lp, -lm) - (ETA + 1) * dP(lp, -lm)
            report.record('beta_lowering', n, (lp, lm), lhs - (lm - n) * P(lp + 1, -lm - 1))

            # lam_+ P^(-l+,l-) + (1-eta) P' = (lam_+ - n) P^(-l+ -1, l- +1)
            lhs = lp * P(-lp, lm) + (1 - ETA) * dP(-lp, lm)
            report.record('alpha_lowering', n, (lp, lm), lhs - (lp - n) * P(-lp - 1, lm + 1))

            # (alpha+n+1) P = (alpha+beta+n+1) P^(alpha+1,beta) - (beta+n) P^(alpha+1,beta-1)
            rhs = (a + b + n + 1) * P(a + 1, b) - (b + n) * P(a + 1, b - 1)
            report.record('alpha_contiguity', n, (a, b), (a + n + 1) * P(a, b) - rhs)

            # P^(alpha+1,beta) - P^(alpha,beta) = (eta+1)/2 P_{n-1}^(alpha+1,beta+1)
            rhs = (ETA + 1) * P(a + 1, b + 1, n - 1) * Fraction(1, 2)
            report.record('alpha_difference', n, (a, b), P(a + 1, b) - P(a, b) - rhs)

            if n >= 1:
                report.record('derivative', n, (a, b),
                              dP(a, b) - jacobi_deriv(n, prm, check_degree=False))

    logger.info("Contiguous identities: %d checked, %d failed",
                report.checked, len(report.failures))
    return report
