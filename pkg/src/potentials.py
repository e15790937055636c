"""
Hyperbolic Poschl-Teller potential and its rational extensions.

The change of variable eta = cosh(2r) maps the canonical equation on
(1, oo) to -psi'' + V(r) psi = E psi on (0, oo) with psi = rho^(1/4) Phi and
E equal to the canonical energy. Potentials are kept exactly as rational
functions of eta; r-space values and the finite-difference spectrum are
derived from them.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np
import pandas as pd
from scipy.linalg import eigh_tridiagonal

from .config import DEFAULT_CONFIG, Config
from .exceptions import (
    AdmissibilityError,
    DegreeCollapse,
    GridTooCoarse,
    PoleInDomain,
    RangeViolation,
)
from .jacobi import LambdaPair
from .ratpoly import ETA, ONE, Interval, RationalFunction, rational, sturm_count
from .seeds import SeedSpec, classify_seed, is_admissible, spectrum, to_csle_energy
from .sle import (
    QuasiRationalFn,
    RefPFr,
    darboux_transform,
    density,
    eigenfunction_form,
    ref_pfr,
    seed_solution,
    transformed_pfr,
)
from .xconstruct import SigmaPair, check_xr_range

logger = logging.getLogger(__name__)

XR_SEED_TYPES = ('a', "a'", 'b')
BQR_TAGS = ('a', 'b', 'd', 'd*', "d'")
_SINGLE_LEVEL_BQR = ('d*', "d'")


def hpt_parameters(lam_o: LambdaPair):
    """(h, g) = (lam_o- - 1/2, lam_o+ + 1/2) of V = -h(h+1)/cosh^2 r + g(g-1)/sinh^2 r."""
    return lam_o.lam_minus - Fraction(1, 2), lam_o.lam_plus + Fraction(1, 2)


def schwarzian_term() -> RationalFunction:
    """rho^-1 (l'/4 - l^2/16) with l = rho'/rho; equals 1 + 3/(eta^2 - 1)."""
    rho = density()
    ell = rho.derivative() / rho
    return (ell.derivative() * Fraction(1, 4) - ell * ell * Fraction(1, 16)) / rho


def liouville_potential(pfr: RefPFr) -> RationalFunction:
    """V(eta) = -I/rho + the Schwarzian part of the change of variable."""
    return schwarzian_term() - pfr.fn / density()


def hpt_closed_form(lam_o: LambdaPair) -> RationalFunction:
    """(1/2 - 2 lam_-^2)/(eta + 1) + (2 lam_+^2 - 1/2)/(eta - 1)."""
    lm, lp = lam_o.as_tuple()
    return (rational(Fraction(1, 2) - 2 * lm * lm, ETA + 1)
            + rational(2 * lp * lp - Fraction(1, 2), ETA - 1))


@dataclass
class PotentialSpec:
    """A potential in both its eta-space algebraic form and as V(r)."""

    lam_o: LambdaPair
    seed: Optional[SeedSpec]
    pfr: RefPFr
    v_eta: RationalFunction
    label: str = 'h-PT'
    diagnostics: List[str] = field(default_factory=list)

    def __call__(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.v_eta.evaluate_float(np.cosh(2.0 * r))

    @property
    def family(self) -> Optional[str]:
        """XR family of the deformation, or None when no XR sequence applies."""
        if self.seed is None or self.seed.type_tag not in XR_SEED_TYPES:
            return None
        try:
            check_xr_range(self.seed.type_tag, self.seed.m, 0, self.lam_o)
        except RangeViolation:
            return None
        return self.seed.type_tag

    def as_dict(self) -> dict:
        return {
            'label': self.label,
            'lam_o': [str(self.lam_o.lam_minus), str(self.lam_o.lam_plus)],
            'seed': self.seed.as_dict() if self.seed else None,
            'v_num': [str(c) for c in self.v_eta.num.coeffs],
            'v_den': [str(c) for c in self.v_eta.den.coeffs],
            'diagnostics': list(self.diagnostics),
        }


@dataclass
class BQRSeed:
    """An m = 1 seed with the location of its single zero."""

    tag: str
    lambda0: Fraction
    lambda1: Fraction
    eta_t1: Fraction
    valid: bool
    seed: Optional[SeedSpec]

    @property
    def nodeless(self) -> bool:
        return self.eta_t1 <= 1


def bqr_seed(tag: str, lam_o: LambdaPair) -> BQRSeed:
    """
    One of the m = 1 seeds a, b, d, d* and d'.

    The seed polynomial is P_1^(lambda1, lambda0), whose zero sits at
    eta_t1 = (lambda0 - lambda1) / (lambda0 + lambda1 + 2).

    Args:
        tag: 'a', 'b', 'd', 'd*' or "d'"
        lam_o: Reference exponent differences

    Returns:
        BQRSeed with the validity of the tag's parameter range
    """
    lm, lp = lam_o.as_tuple()
    if tag == 'a':
        sigma, l0, l1, valid = SigmaPair(1, 1), lm, lp, True
    elif tag == 'b':
        sigma, l0, l1, valid = SigmaPair(-1, -1), -lm, -lp, lp + lm > 3
    elif tag == 'd':
        sigma, l0, l1, valid = SigmaPair(1, -1), lm, -lp, Fraction(1, 2) < lp < 1
    elif tag == 'd*':
        sigma, l0, l1, valid = SigmaPair(1, -1), lm, -lp, 0 < lm < lp - 2
    elif tag == "d'":
        sigma, l0, l1, valid = SigmaPair(-1, -1), -lm, -lp, 2 < lm + lp < 3
    else:
        raise ValueError(f"Unknown m=1 seed tag {tag!r}; expected one of {BQR_TAGS}")

    if l0 + l1 + 2 == 0:
        raise RangeViolation(f"seed {tag} degenerates for {lam_o}")
    eta_t1 = Fraction(l0 - l1) / (l0 + l1 + 2)
    seed = None
    if valid:
        try:
            seed = classify_seed(sigma, 1, lam_o)
        except (RangeViolation, DegreeCollapse):
            valid = False
    return BQRSeed(tag, l0, l1, eta_t1, valid, seed)


def build_potential(lam_o: LambdaPair, seed: Optional[SeedSpec] = None,
                    single_level: bool = False) -> PotentialSpec:
    """
    The reference potential, or its deformation by one seed.

    Args:
        lam_o: Reference exponent differences
        seed: Optional factorization seed
        single_level: Accept a nodeless seed that fails the coexistence test
            (the d* and d' m = 1 cases); recorded in the diagnostics

    Returns:
        PotentialSpec

    Raises:
        AdmissibilityError: the seed is not admissible
        PoleInDomain: the deformed potential has a pole on (1, oo)
    """
    if not lam_o.is_reference:
        raise ValueError(f"the potential needs positive exponent differences, got {lam_o}")
    if seed is None:
        pfr = ref_pfr(lam_o)
        return PotentialSpec(lam_o, None, pfr, liouville_potential(pfr))

    report = is_admissible(seed)
    diagnostics = list(report.diagnostics)
    if not report.admissible:
        failed = [name for name, ok in report.checks.items() if not ok]
        if not (single_level and report.checks.get('nodeless', False)):
            raise AdmissibilityError(f"seed {seed.label} is not admissible: {failed}")
        diagnostics.append(f"single-level seed accepted despite {failed}")

    pfr = transformed_pfr(lam_o, seed)
    v_eta = liouville_potential(pfr)
    if v_eta.den.degree > 0 and sturm_count(v_eta.den, Interval(1, math.inf)) > 0:
        raise PoleInDomain(f"deformation by {seed.label} has a pole on (1, oo)")
    logger.info("Built potential deformed by seed %s for lam_o=%s", seed.label, lam_o)
    return PotentialSpec(lam_o, seed, pfr, v_eta, label=f"h-PT+{seed.label}",
                         diagnostics=diagnostics)


def bqr_potential(tag: str, lam_o: LambdaPair) -> PotentialSpec:
    """Deformation by an m = 1 seed; d* and d' are accepted as single-level cases."""
    bqr = bqr_seed(tag, lam_o)
    if not bqr.valid or bqr.seed is None:
        raise AdmissibilityError(f"m=1 seed {tag} is outside its parameter range for {lam_o}")
    return build_potential(lam_o, bqr.seed, single_level=tag in _SINGLE_LEVEL_BQR)


# Eigenfunctions

@dataclass
class EigenfunctionForm:
    """A bound state as psi(r) = sinh^g_exp r / cosh^h_exp r * R(cosh 2r)."""

    v: int
    family: Optional[str]
    phi: QuasiRationalFn

    @property
    def g_exp(self) -> Fraction:
        return 2 * self.phi.p_plus - Fraction(1, 2)

    @property
    def h_exp(self) -> Fraction:
        return Fraction(1, 2) - 2 * self.phi.p_minus

    def psi(self) -> QuasiRationalFn:
        """rho^(1/4) Phi up to the constant 2^(-1/2)."""
        return self.phi * QuasiRationalFn(Fraction(-1, 4), Fraction(-1, 4), ONE)

    def __call__(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        eta = np.cosh(2.0 * r)
        ratio = self.phi.ratio.evaluate_float(eta)
        return (np.power(np.sinh(r), float(self.g_exp)) / np.power(np.cosh(r), float(self.h_exp))
                * ratio)


def eigenfunction(spec: PotentialSpec, v: int) -> EigenfunctionForm:
    """
    Closed-form bound state of level v.

    XR deformations use their XR-Jacobi polynomial; any other seed goes
    through the Darboux transform of the reference eigenfunction.

    Raises:
        RangeViolation: v is not a square-integrable level
    """
    gap = spec.lam_o.lam_minus - spec.lam_o.lam_plus - 1
    if v < 0 or 2 * v >= gap:
        raise RangeViolation(f"v={v} is not a bound level of {spec.lam_o}")
    if spec.seed is None:
        return EigenfunctionForm(v, None, eigenfunction_form(spec.lam_o, v))
    if spec.family is not None:
        return EigenfunctionForm(v, spec.family,
                                 eigenfunction_form(spec.lam_o, v, spec.family, spec.seed.m))
    base = eigenfunction_form(spec.lam_o, v)
    return EigenfunctionForm(v, None, darboux_transform(seed_solution(spec.lam_o, spec.seed), base))


def analytic_energies(spec: PotentialSpec) -> List[Fraction]:
    """Bound-state energies E_v < 0 in the Schrodinger normalization."""
    energies = [to_csle_energy(e) for e in spectrum(spec.lam_o).energies]
    return [e for e in energies if e < 0]


# Finite-difference spectrum

def fd_levels(potential: Callable, r_min: float, r_max: float, n: int, k: int) -> np.ndarray:
    """
    Lowest k eigenvalues of -psi'' + V psi with Dirichlet ends.

    Uses n interior points of a uniform grid and bisection on the
    symmetric tridiagonal matrix.
    """
    if n < 2 or k < 1 or k > n:
        raise ValueError(f"need 2 <= n and 1 <= k <= n, got n={n}, k={k}")
    h = (r_max - r_min) / (n + 1)
    r = r_min + h * np.arange(1, n + 1)
    diag = 2.0 / h ** 2 + np.asarray(potential(r), dtype=float)
    off = np.full(n - 1, -1.0 / h ** 2)
    return eigh_tridiagonal(diag, off, eigvals_only=True, select='i',
                            select_range=(0, k - 1), lapack_driver='stebz')


@dataclass
class FdSpectrum:
    """Finite-difference levels on two grids and their Richardson extrapolation."""

    coarse: np.ndarray
    fine: np.ndarray
    extrapolated: np.ndarray
    analytic: List[Fraction]
    grid: tuple

    @property
    def exact(self) -> np.ndarray:
        """Analytic energies aligned with the numerical levels, NaN past the last bound state."""
        exact = np.full(len(self.extrapolated), np.nan)
        exact[:len(self.analytic)] = [float(e) for e in self.analytic]
        return exact

    @property
    def relative_errors(self) -> np.ndarray:
        exact = self.exact
        return np.abs(self.extrapolated - exact) / np.abs(exact)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'v': np.arange(len(self.extrapolated)),
            'analytic': self.exact,
            'coarse': self.coarse,
            'fine': self.fine,
            'extrapolated': self.extrapolated,
            'relative_error': self.relative_errors,
        })


def richardson(coarse: np.ndarray, fine: np.ndarray, h_coarse: float, h_fine: float) -> np.ndarray:
    """Remove the h^2 error term from two grid solutions."""
    return (h_coarse ** 2 * fine - h_fine ** 2 * coarse) / (h_coarse ** 2 - h_fine ** 2)


def fd_spectrum(spec: PotentialSpec, r_min: float, r_max: float, n: int,
                config: Config = DEFAULT_CONFIG, k: Optional[int] = None) -> FdSpectrum:
    """
    Numerical bound-state energies of a potential, to compare with the exact ones.

    Args:
        spec: The potential
        r_min: Left Dirichlet end (>= 0; the node itself is never evaluated)
        r_max: Right Dirichlet end
        n: Interior points of the coarse grid; the fine grid uses 2n
        config: Supplies the Richardson tolerance
        k: Number of levels (defaults to the number of bound states); levels
            past the last bound state get NaN analytic values

    Returns:
        FdSpectrum

    Raises:
        GridTooCoarse: the two grids disagree beyond tolerance
    """
    if r_min < 0 or r_max <= r_min:
        raise ValueError(f"need 0 <= r_min < r_max, got [{r_min}, {r_max}]")
    analytic = analytic_energies(spec)
    if k is None:
        k = len(analytic)
    if k > len(analytic):
        logger.info("%s has %d bound states; levels %d..%d have no analytic value",
                    spec.label, len(analytic), len(analytic), k - 1)
    analytic = analytic[:k]

    coarse = fd_levels(spec, r_min, r_max, n, k)
    fine = fd_levels(spec, r_min, r_max, 2 * n, k)
    rel = np.abs(coarse - fine) / np.maximum(np.abs(fine), np.finfo(float).tiny)
    if np.any(rel > config.richardson_tolerance):
        raise GridTooCoarse(
            f"levels at n={n} and n={2 * n} differ by up to {rel.max():.3e}"
        )
    h_coarse = (r_max - r_min) / (n + 1)
    h_fine = (r_max - r_min) / (2 * n + 1)
    extrapolated = richardson(coarse, fine, h_coarse, h_fine)
    logger.info("fd spectrum of %s on [%g, %g] with n=%d: %s",
                spec.label, r_min, r_max, n, np.array2string(extrapolated, precision=8))
    return FdSpectrum(coarse, fine, extrapolated, analytic, (r_min, r_max, n))
