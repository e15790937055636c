"""Exact univariate polynomial and rational-function arithmetic over Q.

``RatPoly`` is a thin domain wrapper around ``sympy.Poly`` over ``QQ`` in the
variable eta: arithmetic, division, gcd, squarefree reduction, Sturm
sequences, root counting and cancellation all come from sympy. Coefficients
are exposed as ``Fraction`` values, lowest power first. The compensated
Horner scheme used wherever a polynomial is sampled in floating point also
lives here.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, List, Tuple, Union

import numpy as np
import sympy
from sympy import QQ, Poly

from .exceptions import DivisionByZero, ZeroPolynomial

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Extended = Union[Fraction, float]

NEG_INF = float('-inf')

ETA_SYMBOL = sympy.Symbol('eta')


def to_fraction(value) -> Fraction:
    """
    Convert an exact scalar to a Fraction.

    Accepts ints, Fractions (any ``numbers.Rational``), sympy rationals and
    strings such as ``"-11/2"``. Floats are refused so that no rounding
    sneaks in.

    Args:
        value: The scalar to convert

    Returns:
        The exact Fraction
    """
    if isinstance(value, bool):
        raise ValueError(f"Not a rational scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Malformed rational: {value!r}") from exc
    raise ValueError(f"Not an exact rational: {value!r}")


def to_sympy(value) -> sympy.Rational:
    f = to_fraction(value)
    return sympy.Rational(f.numerator, f.denominator)


def _is_foreign(other) -> bool:
    """True for operands a RatPoly must leave to their own reflected method."""
    return not isinstance(other, (RatPoly, Rational, sympy.Rational, str))


def _qq_poly(coeffs) -> Poly:
    high_first = [to_sympy(c) for c in reversed(list(coeffs))]
    return Poly.from_list(high_first or [0], ETA_SYMBOL, domain=QQ)


class RatPoly:
    """Polynomial in eta with exact rational coefficients, backed by sympy."""

    __slots__ = ('_poly', '_coeffs')

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            poly = coeffs.set_domain(QQ)
        else:
            poly = _qq_poly(coeffs)
        self._poly = poly
        self._coeffs = () if poly.is_zero else tuple(
            to_fraction(c) for c in reversed(poly.all_coeffs()))

    # Construction helpers

    @classmethod
    def constant(cls, c: Scalar) -> 'RatPoly':
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> 'RatPoly':
        return cls((0,) * power + (coeff,))

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar) -> 'RatPoly':
        """The polynomial slope*eta + intercept."""
        return cls((intercept, slope))

    # Basic queries

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def as_sympy(self) -> Poly:
        return self._poly

    @property
    def degree(self) -> Union[int, float]:
        """Degree, with -inf for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (Rational, sympy.Rational)):
            return self._coeffs == RatPoly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        return str(self._poly.as_expr()) if self._coeffs else '0'

    # Arithmetic

    @staticmethod
    def _coerce(other) -> 'RatPoly':
        if isinstance(other, RatPoly):
            return other
        return RatPoly((to_fraction(other),))

    def __add__(self, other) -> 'RatPoly':
        if _is_foreign(other):
            return NotImplemented
        return RatPoly(self._poly + self._coerce(other)._poly)

    __radd__ = __add__

    def __neg__(self) -> 'RatPoly':
        return RatPoly(-self._poly)

    def __sub__(self, other) -> 'RatPoly':
        if _is_foreign(other):
            return NotImplemented
        return RatPoly(self._poly - self._coerce(other)._poly)

    def __rsub__(self, other) -> 'RatPoly':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'RatPoly':
        if _is_foreign(other):
            return NotImplemented
        if not isinstance(other, RatPoly):
            return RatPoly(self._poly.mul_ground(to_sympy(other)))
        return RatPoly(self._poly * other._poly)

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'RatPoly':
        """Division by a nonzero scalar only; polynomial division is divmod."""
        c = to_fraction(other)
        if c == 0:
            raise DivisionByZero("polynomial divided by zero scalar")
        return RatPoly(self._poly.mul_ground(to_sympy(1 / c)))

    def __pow__(self, k: int) -> 'RatPoly':
        if k < 0:
            raise ValueError("negative polynomial power")
        return RatPoly(self._poly ** k)

    def __divmod__(self, other) -> Tuple['RatPoly', 'RatPoly']:
        other = self._coerce(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by the zero polynomial")
        q, r = self._poly.div(other._poly)
        return RatPoly(q), RatPoly(r)

    def __floordiv__(self, other) -> 'RatPoly':
        return divmod(self, other)[0]

    def __mod__(self, other) -> 'RatPoly':
        return divmod(self, other)[1]

    def exact_div(self, other) -> 'RatPoly':
        """Quotient of a division that must leave no remainder."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError(f"{other} does not divide {self}")
        return q

    # Evaluation and transformations

    def __call__(self, x):
        """Exact evaluation at a rational point, or composition with a RatPoly."""
        if isinstance(x, RatPoly):
            return RatPoly(self._poly.compose(x._poly))
        if isinstance(x, (Rational, sympy.Rational, str)):
            return to_fraction(self._poly.eval(to_sympy(x)))
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: 'RatPoly') -> 'RatPoly':
        """The polynomial eta -> self(inner(eta))."""
        return RatPoly(self._poly.compose(RatPoly._coerce(inner)._poly))

    def reflect(self) -> 'RatPoly':
        """The polynomial eta -> self(-eta)."""
        return self.compose(-ETA)

    def reversed(self) -> 'RatPoly':
        """Coefficients of s^deg * self(1/s)."""
        return RatPoly(tuple(reversed(self._coeffs)))

    def derivative(self) -> 'RatPoly':
        return RatPoly(self._poly.diff(ETA_SYMBOL))

    def monic(self) -> 'RatPoly':
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial cannot be made monic")
        return RatPoly(self._poly.monic())

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if self.is_zero:
            raise ZeroPolynomial("content of the zero polynomial")
        return abs(to_fraction(self._poly.content()))

    def primitive(self) -> 'RatPoly':
        return self / self.content()

    def sign_at(self, x: Extended) -> int:
        """Sign of the polynomial at a rational point or at +-inf."""
        if self.is_zero:
            return 0
        if isinstance(x, float) and math.isinf(x):
            s = 1 if self.leading > 0 else -1
            if x < 0 and self.degree % 2 == 1:
                s = -s
            return s
        v = self(to_fraction(x))
        return (v > 0) - (v < 0)


ZERO = RatPoly(())
ONE = RatPoly((1,))
ETA = RatPoly((0, 1))


def as_poly(value) -> RatPoly:
    """Accept a RatPoly, a scalar, or a coefficient sequence."""
    if isinstance(value, RatPoly):
        return value
    if isinstance(value, (list, tuple)):
        return RatPoly(tuple(value))
    return RatPoly.constant(value)


def differentiate(p: RatPoly) -> RatPoly:
    """Return dp/d(eta) exactly."""
    return p.derivative()


def wronskian2(p: RatPoly, q: RatPoly) -> RatPoly:
    """Return W{p, q} = p*q' - p'*q."""
    return p * q.derivative() - p.derivative() * q


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    g = RatPoly(a.as_sympy().gcd(b.as_sympy()))
    return g.monic() if not g.is_zero else g


def squarefree_part(p: RatPoly) -> RatPoly:
    """Monic polynomial with the same distinct roots as p, all simple."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if p.degree < 1:
        return p
    return RatPoly(p.as_sympy().sqf_part())


def has_simple_roots(p: RatPoly) -> bool:
    return p.degree < 1 or p.as_sympy().is_sqf


# Sturm sequences and root counting

def _as_extended(value) -> Extended:
    if isinstance(value, float):
        if math.isinf(value):
            return value
        raise ValueError(f"Finite interval endpoints must be exact: {value!r}")
    return to_fraction(value)


@dataclass(frozen=True)
class Interval:
    """Real interval with rational or infinite endpoints."""

    lo: Extended
    hi: Extended
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'lo', _as_extended(self.lo))
        object.__setattr__(self, 'hi', _as_extended(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"Empty interval: lo={self.lo} must be below hi={self.hi}")
        if self.lo_closed and isinstance(self.lo, float):
            raise ValueError("An infinite endpoint cannot be closed")
        if self.hi_closed and isinstance(self.hi, float):
            raise ValueError("An infinite endpoint cannot be closed")

    @classmethod
    def open(cls, lo, hi) -> 'Interval':
        return cls(lo, hi)

    @classmethod
    def closed(cls, lo, hi) -> 'Interval':
        return cls(lo, hi, True, True)

    def sympy_bounds(self):
        """(inf, sup) for ``Poly.count_roots``; None marks an infinite end."""
        lo = None if isinstance(self.lo, float) else to_sympy(self.lo)
        hi = None if isinstance(self.hi, float) else to_sympy(self.hi)
        return lo, hi


REAL_LINE = Interval(NEG_INF, math.inf)


def sturm_chain(p: RatPoly) -> List[RatPoly]:
    """Sturm sequence of the squarefree part of p."""
    if p.is_zero:
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    return [RatPoly(q) for q in p.as_sympy().sturm()]


def sturm_count(p: RatPoly, iv: Interval = REAL_LINE) -> int:
    """
    Count the distinct real roots of p inside an interval.

    Args:
        p: Polynomial to inspect
        iv: Interval, possibly unbounded, with open/closed ends

    Returns:
        Exact number of distinct roots in iv
    """
    if p.is_zero:
        raise ZeroPolynomial("Sturm count of the zero polynomial")
    if p.degree < 1:
        return 0
    inf, sup = iv.sympy_bounds()
    # count_roots includes finite endpoints.
    count = int(p.as_sympy().count_roots(inf, sup))
    if inf is not None and not iv.lo_closed and p(iv.lo) == 0:
        count -= 1
    if sup is not None and not iv.hi_closed and p(iv.hi) == 0:
        count -= 1
    return count


# Floating-point evaluation

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    err = a_lo * b_lo - (((p - a_hi * b_hi) - a_lo * b_hi) - a_hi * b_lo)
    return p, err


def evaluate_float(p: RatPoly, x) -> np.ndarray:
    """
    Evaluate p at float points with the compensated Horner scheme.

    The running error of every multiply-add is captured by error-free
    transformations and folded back in, giving results as accurate as
    Horner in twice the working precision.

    Args:
        p: Polynomial with exact coefficients (rounded once to float)
        x: Scalar or array of evaluation points

    Returns:
        Array of values with the shape of x
    """
    x = np.asarray(x, dtype=float)
    if p.is_zero:
        return np.zeros_like(x)
    coeffs = [float(c) for c in p.coeffs]
    s = np.full_like(x, coeffs[-1])
    err = np.zeros_like(x)
    for c in reversed(coeffs[:-1]):
        prod, pi = _two_prod(s, x)
        s, sigma = _two_sum(prod, c)
        err = err * x + (pi + sigma)
    return s + err


# Rational functions

@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient num/den of polynomials, den monic."""

    num: RatPoly
    den: RatPoly = ONE

    def __post_init__(self):
        num = as_poly(self.num)
        den = as_poly(self.den)
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero:
            den = ONE
        elif den.degree > 0:
            scale, p, q = num.as_sympy().cancel(den.as_sympy(), include=False)
            num, den = RatPoly(p) * to_fraction(scale), RatPoly(q)
        lead = den.leading
        object.__setattr__(self, 'num', num / lead)
        object.__setattr__(self, 'den', den / lead)

    @staticmethod
    def _coerce(other) -> 'RationalFunction':
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(as_poly(other))

    def __add__(self, other) -> 'RationalFunction':
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> 'RationalFunction':
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> 'RationalFunction':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'RationalFunction':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'RationalFunction':
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'RationalFunction':
        other = self._coerce(other)
        if other.num.is_zero:
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> 'RationalFunction':
        return self._coerce(other) / self

    def derivative(self) -> 'RationalFunction':
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_polynomial(self) -> RatPoly:
        if not self.is_polynomial:
            raise ValueError(f"not a polynomial: denominator {self.den}")
        return self.num

    def __call__(self, x: Scalar) -> Fraction:
        x = to_fraction(x)
        d = self.den(x)
        if d == 0:
            raise DivisionByZero(f"pole at {x}")
        return self.num(x) / d

    def evaluate_float(self, x) -> np.ndarray:
        return evaluate_float(self.num, x) / evaluate_float(self.den, x)

    def double_pole_coefficient(self, point: Scalar) -> Fraction:
        """Coefficient of (eta - point)^-2 in the Laurent expansion at point."""
        point = to_fraction(point)
        shifted = self * (ETA - point) ** 2
        if shifted.den(point) == 0:
            raise ValueError(f"pole of order above two at {point}")
        return shifted(point)

    def limit_scaled(self, k: int) -> Fraction:
        """lim eta^k * f(eta) as eta -> infinity."""
        if self.is_zero:
            return Fraction(0)
        excess = self.num.degree + k - self.den.degree
        if excess > 0:
            raise ValueError(f"eta^{k} * f diverges at infinity")
        if excess < 0:
            return Fraction(0)
        return self.num.leading / self.den.leading


def rational(num, den=ONE) -> RationalFunction:
    return RationalFunction(as_poly(num), as_poly(den))


def sum_of(terms: Iterable[RationalFunction]) -> RationalFunction:
    return reduce(lambda a, b: a + b, terms, RationalFunction(ZERO))
