"""Exceptional Jacobi and XR-Jacobi polynomials package."""

from .config import Config, DEFAULT_CONFIG
from .exceptions import XJacobiError
from .ratpoly import RatPoly, RationalFunction, sturm_count
from .jacobi import JacobiParams, LambdaPair, jacobi, r_jacobi
from .xconstruct import SigmaPair, poly_det, xb_jacobi, xm_jacobi, xr_jacobi
from .seeds import classify, is_admissible, spectrum
from .sle import csle_residual, darboux_transform, heine_coeffs, ref_pfr
from .orthocheck import cross_ortho, exceptional_zero_count, gram, integrate_semiinf
from .potentials import build_potential, fd_spectrum, liouville_potential
from .export import export_all

__all__ = [
    'Config',
    'DEFAULT_CONFIG',
    'XJacobiError',
    'RatPoly',
    'RationalFunction',
    'sturm_count',
    'JacobiParams',
    'LambdaPair',
    'jacobi',
    'r_jacobi',
    'SigmaPair',
    'poly_det',
    'xb_jacobi',
    'xm_jacobi',
    'xr_jacobi',
    'classify',
    'is_admissible',
    'spectrum',
    'csle_residual',
    'darboux_transform',
    'heine_coeffs',
    'ref_pfr',
    'cross_ortho',
    'exceptional_zero_count',
    'gram',
    'integrate_semiinf',
    'build_potential',
    'fd_spectrum',
    'liouville_potential',
    'export_all',
]
