"""
Numerical orthogonality checks for exceptional and Romanovski-Jacobi polynomials.

Every weight here has the shape (eta - 1)^b (eta + 1)^a / D(eta) with D a
squared seed polynomial. Integrals over [1, oo) are split at a finite point:
the finite part uses Gauss-Jacobi nodes that absorb (eta - 1)^b, the tail is
mapped to s = 1/eta and uses nodes absorbing the power of s left by the
substitution. Rules are doubled until the change from the n-point to the
2n-point rule settles below the quadrature tolerance.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.special import roots_jacobi

from .config import DEFAULT_CONFIG, Config
from .exceptions import DivergentIntegral, RangeViolation, WeightPoleInInterval
from .jacobi import JacobiParams, LambdaPair, jacobi, r_jacobi_eta
from .ratpoly import ONE, Interval, RatPoly, evaluate_float, sturm_count, to_fraction
from .xconstruct import normalize_family, xm_jacobi, xr_eigen_range, xr_jacobi

logger = logging.getLogger(__name__)

WEIGHT_FAMILIES = ('a', "a'", 'b', 'rjacobi', 'cross')


@dataclass(frozen=True)
class WeightSpec:
    """Which weight to build: a family tag plus its parameters."""

    family: str
    lam_o: Optional[LambdaPair] = None
    seed_m: int = 0
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None


@dataclass(frozen=True)
class Weight:
    """(eta - 1)^exp_plus (eta + 1)^exp_minus / den(eta)^2 on [1, oo)."""

    exp_plus: Fraction
    exp_minus: Fraction
    den: RatPoly = ONE
    label: str = ''

    @property
    def den_squared(self) -> RatPoly:
        return self.den * self.den

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        d = evaluate_float(self.den, x)
        return (np.power(x - 1.0, float(self.exp_plus))
                * np.power(x + 1.0, float(self.exp_minus)) / (d * d))

    def in_z(self, z) -> np.ndarray:
        """The same weight in the variable z = (eta - 1) / 2."""
        return self(2.0 * np.asarray(z, dtype=float) + 1.0)


def rjacobi_weight_z(z, lam: LambdaPair) -> np.ndarray:
    """z^lam_+ (1 + z)^(-lam_-), the classical weight of the R-Jacobi polynomials in z."""
    z = np.asarray(z, dtype=float)
    return np.power(z, float(lam.lam_plus)) * np.power(1.0 + z, -float(lam.lam_minus))


def _check_denominator(den: RatPoly, label: str) -> None:
    if den.degree < 1:
        return
    if sturm_count(den, Interval(1, math.inf, lo_closed=True)) > 0:
        raise WeightPoleInInterval(f"denominator of the {label} weight vanishes on [1, oo)")


def weight(ws: WeightSpec) -> Weight:
    """
    Realize a weight from its spec.

    Families a, a' and b are the weights of the XR-Jacobi sequences with the
    squared seed polynomial in the denominator; 'rjacobi' is the seed-free
    reference weight; 'cross' is the reflected weight of the X_m-Jacobi
    cross-orthogonality relation (seed_m plays the role of n).

    Raises:
        WeightPoleInInterval: the seed polynomial vanishes on [1, oo)
    """
    family = ws.family.lower()
    if family == 'cross':
        alpha, beta = to_fraction(ws.alpha), to_fraction(ws.beta)
        den = jacobi(ws.seed_m, JacobiParams(alpha + 1, beta - 1)).reflect()
        w = Weight(beta, -alpha - 2, den, label='cross')
    elif family == 'rjacobi':
        lam_o = ws.lam_o
        w = Weight(lam_o.lam_plus, -lam_o.lam_minus, ONE, label='rjacobi')
    else:
        family = normalize_family(family)
        lp, lm = ws.lam_o.lam_plus, ws.lam_o.lam_minus
        if family == 'a':
            w = Weight(lp + 1, -lm - 1, jacobi(ws.seed_m, JacobiParams(lp, lm)), label='a')
        elif family == "a'":
            w = Weight(lp + 1, 1 - lm, jacobi(ws.seed_m, JacobiParams(lp, -lm)), label="a'")
        else:
            w = Weight(lp - 1, 1 - lm, jacobi(ws.seed_m, JacobiParams(-lp, -lm)), label='b')
    _check_denominator(w.den, w.label)
    return w


# Quadrature

@dataclass
class QuadratureResult:
    """Integral value, error estimate and the rule size used."""

    value: float
    error: float
    nodes: int
    converged: bool = True


def _finite_part(num: RatPoly, w: Weight, split: float, n: int) -> Tuple[float, float]:
    t, wt = roots_jacobi(n, 0.0, float(w.exp_plus))
    half = (split - 1.0) / 2.0
    eta = 1.0 + half * (1.0 + t)
    d = evaluate_float(w.den_squared, eta)
    vals = np.power(eta + 1.0, float(w.exp_minus)) * evaluate_float(num, eta) / d
    scale = half ** (float(w.exp_plus) + 1.0)
    return scale * float(np.dot(wt, vals)), scale * float(np.dot(wt, np.abs(vals)))


def _tail_exponent(num: RatPoly, w: Weight) -> Fraction:
    return -w.exp_plus - w.exp_minus - num.degree + w.den_squared.degree - 2


def _tail_part(num: RatPoly, w: Weight, split: float, n: int) -> Tuple[float, float]:
    gamma = float(_tail_exponent(num, w))
    t, wt = roots_jacobi(n, 0.0, gamma)
    s = (1.0 + t) / (2.0 * split)
    num_rev = evaluate_float(num.reversed(), s)
    den_rev = evaluate_float(w.den_squared.reversed(), s)
    vals = (np.power(1.0 - s, float(w.exp_plus)) * np.power(1.0 + s, float(w.exp_minus))
            * num_rev / den_rev)
    scale = (2.0 * split) ** (-gamma - 1.0)
    return scale * float(np.dot(wt, vals)), scale * float(np.dot(wt, np.abs(vals)))


def refine(rule: Callable[[int], Tuple[float, float]], config: Config = DEFAULT_CONFIG,
           label: str = '') -> QuadratureResult:
    """
    Double a Gauss rule until two successive sizes agree.

    The rule returns the integral and the integral of the absolute integrand
    for a node count. Starting from config.quad_nodes the size is doubled at
    most config.quad_refinements + 1 times; the change between successive
    sizes must drop below config.quad_error_tolerance times the absolute
    integral.

    Returns:
        QuadratureResult of the last rule, with converged=False when the cap
        was reached first
    """
    n = config.quad_nodes
    coarse, _ = rule(n)
    for _ in range(config.quad_refinements + 1):
        n *= 2
        fine, magnitude = rule(n)
        error = abs(fine - coarse)
        if error <= config.quad_error_tolerance * magnitude:
            return QuadratureResult(fine, error, n)
        coarse = fine
    logger.warning("Quadrature %s not settled at %d nodes: change %.3e, magnitude %.3e",
                   label, n, error, magnitude)
    return QuadratureResult(fine, error, n, converged=False)


def integrate_semiinf(num: RatPoly, w: Weight, config: Config = DEFAULT_CONFIG) -> QuadratureResult:
    """
    Integrate num(eta) * w(eta) over [1, oo).

    Args:
        num: Polynomial factor of the integrand
        w: Weight carrying the endpoint powers and the denominator
        config: Supplies the rule size, refinement cap, tolerance and split point

    Returns:
        QuadratureResult with the value of the finest rule used and the last
        change |I_n - I_2n| as error

    Raises:
        DivergentIntegral: the endpoint or the infinity exponent is too low
    """
    if num.is_zero:
        return QuadratureResult(0.0, 0.0, 0)
    if w.exp_plus <= -1:
        raise DivergentIntegral(f"(eta - 1)^{w.exp_plus} is not integrable at eta = 1")
    gamma = _tail_exponent(num, w)
    if gamma <= -1:
        raise DivergentIntegral(
            f"integrand decays like eta^{-gamma - 2}; not integrable at infinity"
        )

    split = float(config.split_point)

    def rule(n: int) -> Tuple[float, float]:
        fv, fm = _finite_part(num, w, split, n)
        tv, tm = _tail_part(num, w, split, n)
        return fv + tv, fm + tm

    return refine(rule, config, w.label)


# Gram matrices

@dataclass
class GramReport:
    """Normalized Gram matrix of a polynomial sequence under a weight."""

    labels: List[str]
    matrix: pd.DataFrame
    errors: pd.DataFrame
    norms: List[float]
    max_offdiag: float
    max_error: float
    tolerance: float
    quad_tolerance: float
    converged: bool = True
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.max_offdiag < self.tolerance and self.max_error <= self.quad_tolerance
                and self.converged and all(n > 0 and math.isfinite(n) for n in self.norms))

    def as_dict(self) -> dict:
        return {
            'labels': self.labels,
            'matrix': self.matrix.to_numpy().tolist(),
            'norms': self.norms,
            'max_offdiag': self.max_offdiag,
            'max_error': self.max_error,
            'tolerance': self.tolerance,
            'quad_tolerance': self.quad_tolerance,
            'converged': self.converged,
            'pass': self.passed,
            'notes': self.notes,
        }


def _gram_report(polys: Sequence[RatPoly], labels: Sequence[str], integrate,
                 config: Config, notes: Optional[List[str]] = None) -> GramReport:
    k = len(polys)
    raw = np.zeros((k, k))
    err = np.zeros((k, k))
    converged = True
    for i in range(k):
        for j in range(i, k):
            res = integrate(polys[i] * polys[j])
            raw[i, j] = raw[j, i] = res.value
            err[i, j] = err[j, i] = res.error
            converged = converged and res.converged
    norms = np.diag(raw).copy()
    scale = np.sqrt(np.outer(np.abs(norms), np.abs(norms)))
    normalized = raw / scale
    normalized_err = err / scale
    offdiag = np.abs(normalized[~np.eye(k, dtype=bool)])
    max_offdiag = float(offdiag.max()) if offdiag.size else 0.0
    labels = list(labels)
    logger.info("Gram matrix %s: max off-diagonal %.3e", labels, max_offdiag)
    return GramReport(
        labels=labels,
        matrix=pd.DataFrame(normalized, index=labels, columns=labels),
        errors=pd.DataFrame(normalized_err, index=labels, columns=labels),
        norms=[float(x) for x in norms],
        max_offdiag=max_offdiag,
        max_error=float(normalized_err.max()),
        tolerance=config.ortho_tolerance,
        quad_tolerance=config.quad_error_tolerance,
        converged=converged,
        notes=list(notes or []),
    )


def square_integrable_levels(lam_o: LambdaPair) -> List[int]:
    """Levels v with 2v < lam_o- - lam_o+ - 1."""
    bound = xr_eigen_range(lam_o)
    return [v for v in range(0, math.floor(bound) + 1) if v < bound]


def gram(family: str, seed_m: int, lam_o: LambdaPair, config: Config = DEFAULT_CONFIG) -> GramReport:
    """
    Gram matrix of an XR-Jacobi sequence, or of the R-Jacobi one for 'rjacobi'.

    Only square-integrable levels enter; a borderline top level (energy
    exactly at the continuum edge) is listed in the notes instead.

    Args:
        family: 'a', "a'" (or 'ap'), 'b' or 'rjacobi'
        seed_m: Seed degree (ignored for 'rjacobi')
        lam_o: Reference exponent differences
        config: Quadrature and tolerance settings

    Returns:
        GramReport
    """
    levels = square_integrable_levels(lam_o)
    notes = []
    gap = lam_o.lam_minus - lam_o.lam_plus - 1
    if gap >= 0 and gap.denominator == 1 and int(gap) % 2 == 0:
        notes.append(f"level v={int(gap) // 2} lies at the continuum edge and is not square integrable")
    if len(levels) < 2:
        raise RangeViolation(f"need at least two square-integrable levels, {lam_o} has {len(levels)}")

    if family.lower() == 'rjacobi':
        polys = [r_jacobi_eta(v, lam_o) for v in levels]
        w = weight(WeightSpec('rjacobi', lam_o))
    else:
        family = normalize_family(family)
        polys = [xr_jacobi(family, seed_m, v, lam_o).poly for v in levels]
        w = weight(WeightSpec(family, lam_o, seed_m))

    return _gram_report(polys, [f"v={v}" for v in levels],
                        lambda p: integrate_semiinf(p, w, config), config, notes)


def cross_ortho(alpha, beta, n: int, m_list: Sequence[int],
                config: Config = DEFAULT_CONFIG) -> GramReport:
    """
    Cross-orthogonality of X_m-Jacobi polynomials of equal n and distinct m.

    The polynomials P^_{m, m+n}^(alpha, beta) are integrated over (-oo, -1]
    against (1 - x)^(-alpha-2) (-1 - x)^beta / P_n^(alpha+1, beta-1)(x)^2,
    evaluated after the reflection x = -eta.

    Raises:
        RangeViolation: some m violates 0 <= m < (alpha - beta + 1)/2, or beta <= 0
    """
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    bound = Fraction(alpha - beta + 1, 2)
    if beta <= 0:
        raise RangeViolation(f"cross-orthogonality needs beta > 0, got {beta}")
    for m in m_list:
        if not 0 <= m < bound or alpha <= m - 1:
            raise RangeViolation(f"m={m} outside 0 <= m < {bound} (alpha={alpha}, beta={beta})")
    if len(set(m_list)) != len(m_list):
        raise ValueError("m values must be distinct")

    prm = JacobiParams(alpha, beta)
    polys = [xm_jacobi(m, n, prm).poly.reflect() for m in m_list]
    w = weight(WeightSpec('cross', seed_m=n, alpha=alpha, beta=beta))
    return _gram_report(polys, [f"m={m}" for m in m_list],
                        lambda p: integrate_semiinf(p, w, config), config)


def xm_gram(m: int, alpha, beta, n_values: Sequence[int],
            config: Config = DEFAULT_CONFIG) -> GramReport:
    """
    Orthogonality of P^_{m, m+n}^(alpha, beta) on [-1, 1].

    The weight is (1 - x)^alpha (1 + x)^beta / P_m^(-alpha-1, beta-1)(x)^2;
    the endpoint powers are absorbed by Gauss-Jacobi nodes.
    """
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    if alpha <= -1 or beta <= -1:
        raise DivergentIntegral(f"(1-x)^{alpha} (1+x)^{beta} is not integrable on [-1, 1]")
    seed = jacobi(m, JacobiParams(-alpha - 1, beta - 1))
    if seed.degree >= 1 and sturm_count(seed, Interval.closed(-1, 1)) > 0:
        raise WeightPoleInInterval(f"P_{m}^({-alpha - 1},{beta - 1}) vanishes on [-1, 1]")

    prm = JacobiParams(alpha, beta)
    polys = [xm_jacobi(m, n, prm).poly for n in n_values]
    seed_sq = seed * seed

    def integrate(p: RatPoly) -> QuadratureResult:
        def rule(nodes: int) -> Tuple[float, float]:
            x, wt = roots_jacobi(nodes, float(alpha), float(beta))
            vals = evaluate_float(p, x) / evaluate_float(seed_sq, x)
            return float(np.dot(wt, vals)), float(np.dot(wt, np.abs(vals)))
        return refine(rule, config, f"X_{m} on [-1, 1]")

    return _gram_report(polys, [f"n={n}" for n in n_values], integrate, config)


# Zero counts

@dataclass
class ZeroCount:
    """Distinct real zeros left of -1, inside (-1, 1) and right of 1."""

    left: int
    inside: int
    right: int
    degree: int

    def as_dict(self) -> Dict[str, int]:
        return {'left': self.left, 'inside': self.inside, 'right': self.right,
                'degree': self.degree}


def exceptional_zero_count(m: int, n: int, alpha, beta) -> ZeroCount:
    """Exact Sturm counts of the zeros of P^_{m, m+n}^(alpha, beta)."""
    p = xm_jacobi(m, n, JacobiParams(alpha, beta)).poly
    return ZeroCount(
        left=sturm_count(p, Interval(-math.inf, -1)),
        inside=sturm_count(p, Interval(-1, 1)),
        right=sturm_count(p, Interval(1, math.inf)),
        degree=int(p.degree),
    )
