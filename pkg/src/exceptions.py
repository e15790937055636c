"""Typed errors raised by the exceptional-polynomial toolkit."""


class XJacobiError(Exception):
    """Base class for every domain error of the package."""


class ZeroPolynomial(XJacobiError):
    """An operation needs a nonzero polynomial (Sturm counts, factorization)."""


class DivisionByZero(XJacobiError, ZeroDivisionError):
    """Exact division by a zero polynomial, or a vanishing normalizer."""


class DegreeCollapse(XJacobiError):
    """A construction lost degree because its leading coefficient vanished."""

    def __init__(self, n, alpha=None, beta=None, message=None):
        self.n = n
        self.alpha = alpha
        self.beta = beta
        if message is None:
            message = f"P_{n}^({alpha},{beta}) collapses: leading coefficient is zero"
        super().__init__(message)


class RangeViolation(XJacobiError, ValueError):
    """An index lies outside the range where a construction is valid."""


class SimpleRootViolation(XJacobiError):
    """(1 +- eta)^2 divides a polynomial determinant, or a seed has a double root."""


class NoSuchType(XJacobiError, ValueError):
    """A sign triple that matches no row of the seed classification."""


class EmptySpectrum(XJacobiError):
    """The reference problem has no discrete levels for these parameters."""


class DivergentIntegral(XJacobiError):
    """A weighted integral fails the endpoint or infinity convergence gate."""


class WeightPoleInInterval(XJacobiError):
    """The weight denominator vanishes inside the integration interval."""


class GridTooCoarse(XJacobiError):
    """Finite-difference levels at N and 2N points disagree beyond tolerance."""


class AdmissibilityError(XJacobiError):
    """A seed cannot serve as factorization function for the deformation."""


class PoleInDomain(XJacobiError):
    """A deformed potential acquires a pole inside the quantization interval."""
