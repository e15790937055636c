"""
Reference polynomial fractions of the Jacobi-reference Sturm-Liouville problem.

The canonical form is Phi'' + (I(eta) + eps * rho(eta)) Phi = 0 on (1, oo) with
rho = 1 / (4 (eta^2 - 1)). Every solution handled here is quasi-rational:
(eta - 1)^p_plus (eta + 1)^p_minus times a rational function, so that
"solves the equation" becomes an exact zero-numerator test.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Union

import numpy as np

from .exceptions import SimpleRootViolation
from .jacobi import JacobiParams, LambdaPair, jacobi, r_jacobi_eta
from .ratpoly import (
    ETA,
    ONE,
    RationalFunction,
    RatPoly,
    Scalar,
    has_simple_roots,
    rational,
    to_fraction,
)

if TYPE_CHECKING:
    from .seeds import SeedSpec

logger = logging.getLogger(__name__)

Factor = Union['QuasiRationalFn', RationalFunction, RatPoly, int, Fraction]


def _is_integer(x: Fraction) -> bool:
    return x.denominator == 1


@dataclass(frozen=True)
class QuasiRationalFn:
    """(eta - 1)^p_plus (eta + 1)^p_minus num(eta) / den(eta) with rational exponents."""

    p_minus: Fraction
    p_plus: Fraction
    num: RatPoly
    den: RatPoly = ONE

    def __post_init__(self):
        object.__setattr__(self, 'p_minus', to_fraction(self.p_minus))
        object.__setattr__(self, 'p_plus', to_fraction(self.p_plus))
        ratio = RationalFunction(self.num, self.den)
        object.__setattr__(self, 'num', ratio.num)
        object.__setattr__(self, 'den', ratio.den)

    @classmethod
    def from_ratio(cls, p_minus: Scalar, p_plus: Scalar, ratio: RationalFunction) -> 'QuasiRationalFn':
        return cls(p_minus, p_plus, ratio.num, ratio.den)

    @property
    def ratio(self) -> RationalFunction:
        return RationalFunction(self.num, self.den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def derivative(self) -> 'QuasiRationalFn':
        """d/d(eta), returned with both exponents lowered by one."""
        r = self.ratio
        log_part = self.p_plus * (ETA + 1) + self.p_minus * (ETA - 1)
        inner = rational(log_part) * r + rational(ETA * ETA - 1) * r.derivative()
        return QuasiRationalFn.from_ratio(self.p_minus - 1, self.p_plus - 1, inner)

    def __mul__(self, other: Factor) -> 'QuasiRationalFn':
        if isinstance(other, QuasiRationalFn):
            return QuasiRationalFn.from_ratio(
                self.p_minus + other.p_minus, self.p_plus + other.p_plus, self.ratio * other.ratio
            )
        if isinstance(other, (RationalFunction, RatPoly, int, Fraction)):
            return QuasiRationalFn.from_ratio(self.p_minus, self.p_plus, self.ratio * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> 'QuasiRationalFn':
        return QuasiRationalFn(self.p_minus, self.p_plus, -self.num, self.den)

    def __add__(self, other: 'QuasiRationalFn') -> 'QuasiRationalFn':
        if not isinstance(other, QuasiRationalFn):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        d_plus, d_minus = self.p_plus - other.p_plus, self.p_minus - other.p_minus
        if not (_is_integer(d_plus) and _is_integer(d_minus)):
            raise ValueError("quasi-rational terms with non-integer exponent offsets cannot be added")
        p_plus, p_minus = min(self.p_plus, other.p_plus), min(self.p_minus, other.p_minus)

        def aligned(f: 'QuasiRationalFn') -> RationalFunction:
            shift = (ETA - 1) ** int(f.p_plus - p_plus) * (ETA + 1) ** int(f.p_minus - p_minus)
            return f.ratio * shift

        return QuasiRationalFn.from_ratio(p_minus, p_plus, aligned(self) + aligned(other))

    def __sub__(self, other: 'QuasiRationalFn') -> 'QuasiRationalFn':
        return self + (-other)

    def log_derivative(self) -> RationalFunction:
        """f'/f as an exact rational function."""
        r = self.ratio
        return (rational(self.p_plus, ETA - 1) + rational(self.p_minus, ETA + 1)
                + r.derivative() / r)

    def reciprocal(self) -> 'QuasiRationalFn':
        return QuasiRationalFn(-self.p_minus, -self.p_plus, self.den, self.num)

    def proportionality(self, other: 'QuasiRationalFn') -> Optional[Fraction]:
        """The constant c with self == c * other, or None."""
        if other.is_zero or self.p_plus != other.p_plus or self.p_minus != other.p_minus:
            return None
        q = self.ratio / other.ratio
        if not q.is_polynomial or q.num.degree > 0:
            return None
        return q.num.coeff(0)

    def evaluate(self, x) -> np.ndarray:
        """Float values at points eta > 1."""
        x = np.asarray(x, dtype=float)
        prefactor = np.power(x - 1.0, float(self.p_plus)) * np.power(x + 1.0, float(self.p_minus))
        return prefactor * self.ratio.evaluate_float(x)

    def as_dict(self) -> dict:
        return {
            'p_minus': str(self.p_minus),
            'p_plus': str(self.p_plus),
            'num': [str(c) for c in self.num.coeffs],
            'den': [str(c) for c in self.den.coeffs],
        }


# Fixed ingredients of the reference problem

def density() -> RationalFunction:
    """rho = 1 / (4 (eta^2 - 1))."""
    return rational(1, (ETA * ETA - 1) * 4)


def prime_lcf() -> RatPoly:
    """Leading coefficient function eta - 1 of the prime self-adjoint form."""
    return ETA - 1


def prime_weight() -> RationalFunction:
    """Weight function 1 / (4 (eta + 1)) of the prime self-adjoint form."""
    return rational(1, (ETA + 1) * 4)


def rho_inv_sqrt() -> QuasiRationalFn:
    """rho^(-1/2) = 2 (eta - 1)^(1/2) (eta + 1)^(1/2)."""
    return QuasiRationalFn(Fraction(1, 2), Fraction(1, 2), RatPoly.constant(2))


@dataclass(frozen=True)
class RefPFr:
    """The polynomial fraction I(eta) of a canonical Sturm-Liouville equation."""

    fn: RationalFunction

    def exponent_difference(self, point: int) -> Fraction:
        """
        Read the exponent difference at eta = point from the double pole.

        The coefficient of (eta - point)^-2 is (1 - lam^2) / 4.
        """
        c = self.fn.double_pole_coefficient(point)
        square = 1 - 4 * c
        lam = _exact_sqrt(square)
        if lam is None:
            raise ValueError(f"exponent difference at {point} is irrational (square {square})")
        return lam

    def limit_at_infinity(self) -> Fraction:
        """lim eta^2 I(eta), equal to 1/4 for every problem of this class."""
        return self.fn.limit_scaled(2)

    def __sub__(self, other: 'RefPFr') -> RationalFunction:
        return self.fn - other.fn


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def _pfr_by_exponents(lam_minus: Fraction, lam_plus: Fraction) -> RationalFunction:
    return (rational(1 - lam_plus ** 2, (ETA - 1) ** 2 * 4)
            + rational(1 - lam_minus ** 2, (ETA + 1) ** 2 * 4)
            + rational(1 - lam_plus ** 2 - lam_minus ** 2, (1 - ETA * ETA) * 4))


def ref_pfr(lam_o: LambdaPair) -> RefPFr:
    """
    Polynomial fraction of the Jacobi-reference problem.

    I = (1 - lam_+^2) / (4 (eta-1)^2) + (1 - lam_-^2) / (4 (eta+1)^2)
        + (1 - lam_+^2 - lam_-^2) / (4 (1 - eta^2))
    """
    if not lam_o.is_reference:
        raise ValueError(f"the reference problem needs positive exponent differences, got {lam_o}")
    return RefPFr(_pfr_by_exponents(lam_o.lam_minus, lam_o.lam_plus))


def prime_free_term(lam_o: LambdaPair) -> RationalFunction:
    """Free term -(eta - 1) I + 1/(4 (eta - 1)) of the prime self-adjoint form."""
    return rational(1 - ETA) * ref_pfr(lam_o).fn + rational(1, (ETA - 1) * 4)


# Seeds and their Darboux transforms

def _seed_exponents(lam_o: LambdaPair, seed: 'SeedSpec'):
    p_plus = Fraction(seed.sigma.sigma_plus * lam_o.lam_plus + 1, 2)
    p_minus = Fraction(seed.sigma.sigma_minus * lam_o.lam_minus + 1, 2)
    return p_minus, p_plus


def seed_poly(lam_o: LambdaPair, seed: 'SeedSpec') -> RatPoly:
    """The Jacobi polynomial P_m^(sigma_+ lam_+, sigma_- lam_-) carried by a seed."""
    return jacobi(seed.m, seed.sigma.seed_indices(lam_o))


def seed_solution(lam_o: LambdaPair, seed: 'SeedSpec') -> QuasiRationalFn:
    """phi = (eta-1)^((s_+ lam_+ + 1)/2) (eta+1)^((s_- lam_- + 1)/2) P_m."""
    p_minus, p_plus = _seed_exponents(lam_o, seed)
    return QuasiRationalFn(p_minus, p_plus, seed_poly(lam_o, seed))


def reciprocal_ff(phi: QuasiRationalFn) -> QuasiRationalFn:
    """The partner solution rho^(-1/2) / phi of the reciprocal factorization."""
    return rho_inv_sqrt() * phi.reciprocal()


def transformed_exponents(lam_o: LambdaPair, seed: 'SeedSpec'):
    """Exponent differences |sigma_+- lam_+- + 1| of the transformed problem."""
    return (abs(seed.sigma.sigma_minus * lam_o.lam_minus + 1),
            abs(seed.sigma.sigma_plus * lam_o.lam_plus + 1))


def transformed_pfr(lam_o: LambdaPair, seed: 'SeedSpec') -> RefPFr:
    """
    Polynomial fraction after a Darboux step with the given seed.

    With L = rho'/(4 rho) + phi'/phi the new fraction is
    I + 2 L' + 2 eta L / (eta^2 - 1).

    Args:
        lam_o: Reference exponent differences
        seed: Classified seed (only sigma and m are used)

    Returns:
        RefPFr of the transformed equation
    """
    phi = seed_solution(lam_o, seed)
    ell = rational(-ETA, (ETA * ETA - 1) * 2) + phi.log_derivative()
    fn = ref_pfr(lam_o).fn + ell.derivative() * 2 + rational(ETA * 2, ETA * ETA - 1) * ell
    return RefPFr(fn)


def o_hat(lam_o: LambdaPair, seed: 'SeedSpec') -> RatPoly:
    """
    Polynomial O^ = -(eps + 2ab) Pi - 4 [a (eta+1) + b (eta-1)] Pi'.

    Here a = sigma_+ lam_+, b = sigma_- lam_- and eps = -(a + b + 2m + 1)^2 is
    the seed energy in the canonical normalization.
    """
    a = seed.sigma.sigma_plus * lam_o.lam_plus
    b = seed.sigma.sigma_minus * lam_o.lam_minus
    eps = -(a + b + 2 * seed.m + 1) ** 2
    pi = seed_poly(lam_o, seed)
    return pi * (-(eps + 2 * a * b)) - (a * (ETA + 1) + b * (ETA - 1)) * pi.derivative() * 4


def o_hat_leading(lam_o: LambdaPair, seed: 'SeedSpec') -> Fraction:
    """Leading coefficient of O^ per unit leading coefficient of Pi."""
    lam_minus_hat, lam_plus_hat = transformed_exponents(lam_o, seed)
    m = seed.m
    return lam_plus_hat ** 2 + lam_minus_hat ** 2 - 1 + 4 * m * (m + 1)


def pfr_from_o_hat(lam_o: LambdaPair, seed: 'SeedSpec') -> RefPFr:
    """The transformed fraction rebuilt from O^ and the seed polynomial."""
    lam_minus_hat, lam_plus_hat = transformed_exponents(lam_o, seed)
    pi = rational(seed_poly(lam_o, seed))
    d_pi = pi.derivative()
    fn = (rational(1 - lam_plus_hat ** 2, (ETA - 1) ** 2 * 4)
          + rational(1 - lam_minus_hat ** 2, (ETA + 1) ** 2 * 4)
          + rational(o_hat(lam_o, seed)) / (pi * (ETA * ETA - 1) * 4)
          + d_pi.derivative() / pi
          - d_pi * d_pi / (pi * pi) * 2)
    return RefPFr(fn)


def darboux_transform(phi: QuasiRationalFn, psi: QuasiRationalFn) -> QuasiRationalFn:
    """rho^(-1/2) (psi' - (phi'/phi) psi): the transformed solution in canonical gauge."""
    return rho_inv_sqrt() * (psi.derivative() - psi * phi.log_derivative())


# Eigenfunctions

def _transformed_eigen_exponents(lam_o: LambdaPair, seed: 'SeedSpec'):
    t_plus = lam_o.lam_plus / 2 + (1 if seed.sigma.sigma_plus > 0 else 0)
    t_minus = -lam_o.lam_minus / 2 + (1 if seed.sigma.sigma_minus < 0 else 0)
    return t_minus, t_plus


def eigenfunction_form(lam_o: LambdaPair, v: int, family: Optional[str] = None,
                       seed_m: int = 0) -> QuasiRationalFn:
    """
    Quasi-rational eigenfunction of the reference or a rationally extended problem.

    Args:
        lam_o: Reference exponent differences
        v: Level index
        family: None for the reference problem, else 'a', "a'" or 'b'
        seed_m: Seed degree of the family

    Returns:
        (eta-1)^t_+ (eta+1)^t_- times the R-Jacobi polynomial, or times the
        XR-Jacobi polynomial over the seed polynomial for a family
    """
    if family is None:
        return QuasiRationalFn(Fraction(1 - lam_o.lam_minus, 2), Fraction(lam_o.lam_plus + 1, 2),
                               r_jacobi_eta(v, lam_o))

    from .seeds import seed_for_family
    from .xconstruct import xr_jacobi

    seed = seed_for_family(family, seed_m, lam_o)
    t_minus, t_plus = _transformed_eigen_exponents(lam_o, seed)
    poly = xr_jacobi(family, seed_m, v, lam_o).poly
    return QuasiRationalFn(t_minus, t_plus, poly, seed_poly(lam_o, seed))


def csle_residual(psi: QuasiRationalFn, eps: Scalar, pfr: RefPFr) -> QuasiRationalFn:
    """
    psi'' + (I + eps rho) psi, exactly.

    eps is the canonical energy, i.e. the stored level energy minus one
    (see seeds.to_csle_energy).
    """
    eps = to_fraction(eps)
    potential = pfr.fn + density() * eps
    return psi.derivative().derivative() + psi * potential


# Heine-type equation

@dataclass
class HeineCoeffs:
    """
    Coefficients of (eta^2 - 1) Pi Q'' + 2 B Q' + (C0 + eps Pi / 4) Q = 0.

    t_minus and t_plus are the eigenfunction exponents at -1 and +1 of the
    transformed problem, so that (eta-1)^t_+ (eta+1)^t_- Q / Pi solves it.
    """

    B: RatPoly
    C0: RatPoly
    Pi: RatPoly
    t_minus: Fraction
    t_plus: Fraction

    def as_dict(self) -> dict:
        return {
            'B': [str(c) for c in self.B.coeffs],
            'C0': [str(c) for c in self.C0.coeffs],
            'Pi': [str(c) for c in self.Pi.coeffs],
            't_minus': str(self.t_minus),
            't_plus': str(self.t_plus),
        }


def heine_coeffs(lam_o: LambdaPair, seed: Optional['SeedSpec'] = None) -> HeineCoeffs:
    """
    Build the Heine-type coefficients for the reference or transformed problem.

    Without a seed the equation is the Jacobi one for P_v^(lam_+, -lam_-).
    With a seed, B = B1 Pi + (1 - eta^2) Pi' and
    C0 = O^/4 - 2 B1 Pi' + (2 t_+ t_- - 1/4) Pi, where
    B1 = t_+ (eta + 1) + t_- (eta - 1).

    Args:
        lam_o: Reference exponent differences
        seed: Optional classified seed

    Returns:
        HeineCoeffs
    """
    if seed is None:
        t_plus, t_minus = (lam_o.lam_plus + 1) / 2, (1 - lam_o.lam_minus) / 2
        b1 = t_plus * (ETA + 1) + t_minus * (ETA - 1)
        diff = lam_o.lam_plus - lam_o.lam_minus
        return HeineCoeffs(b1, RatPoly.constant(diff * (diff + 2) / 4), ONE, t_minus, t_plus)

    pi = seed_poly(lam_o, seed)
    if not has_simple_roots(pi):
        raise SimpleRootViolation(f"seed polynomial {pi} has a multiple root")
    t_minus, t_plus = _transformed_eigen_exponents(lam_o, seed)
    b1 = t_plus * (ETA + 1) + t_minus * (ETA - 1)
    d_pi = pi.derivative()
    b = b1 * pi + (1 - ETA * ETA) * d_pi
    c0 = o_hat(lam_o, seed) / 4 - b1 * d_pi * 2 + pi * (2 * t_plus * t_minus - Fraction(1, 4))
    logger.debug("Heine coefficients for seed m=%d sigma=%s: deg B=%s, deg C0=%s",
                 seed.m, seed.sigma, b.degree, c0.degree)
    return HeineCoeffs(b, c0, pi, t_minus, t_plus)


def free_term_from_pfr(coeffs: HeineCoeffs, pfr: RefPFr) -> RationalFunction:
    """
    C0 recomputed as (eta^2 - 1) Pi (H' + H^2 + I) - Pi/4.

    H is the log-derivative of the gauge (eta-1)^t_+ (eta+1)^t_- / Pi.
    """
    pi = rational(coeffs.Pi)
    h = (rational(coeffs.t_plus, ETA - 1) + rational(coeffs.t_minus, ETA + 1)
         - pi.derivative() / pi)
    return (pi * (ETA * ETA - 1)) * (h.derivative() + h * h + pfr.fn) - pi * Fraction(1, 4)


def heine_residual(q: RatPoly, coeffs: HeineCoeffs, eps: Scalar) -> RatPoly:
    """
    (eta^2 - 1) Pi Q'' + 2 B Q' + (C0 + eps Pi / 4) Q for a stored level energy eps.

    Zero exactly when Q is the polynomial part of a solution at that energy.
    """
    eps = to_fraction(eps)
    d_q = q.derivative()
    return ((ETA * ETA - 1) * coeffs.Pi * d_q.derivative()
            + coeffs.B * d_q * 2
            + (coeffs.C0 + coeffs.Pi * (eps / 4)) * q)


def base_heine_polynomial(v: int, lam_o: LambdaPair) -> RatPoly:
    """Polynomial part of the reference eigenfunction of level v."""
    return jacobi(v, JacobiParams(lam_o.lam_plus, -lam_o.lam_minus))
