"""Configuration and tolerances for the exceptional-polynomial checks."""

import os
from dataclasses import dataclass, field
from fractions import Fraction


QUAD_LEVEL_ENV = 'XJACOBI_QUAD_LEVEL'
DEFAULT_QUAD_LEVEL = 2

OUTPUT_FORMATS = ['json', 'csv', 'pretty']


def _env_quad_level() -> int:
    raw = os.environ.get(QUAD_LEVEL_ENV)
    if raw is None or raw.strip() == '':
        return DEFAULT_QUAD_LEVEL
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{QUAD_LEVEL_ENV} must be an integer, got {raw!r}") from exc


@dataclass
class Config:
    """Configuration for construction, quadrature and spectrum checks."""

    # Quadrature
    quad_level: int = field(default_factory=_env_quad_level)  # rule size 16 * 2**level
    quad_refinements: int = 3  # extra doublings before a rule counts as unsettled
    split_point: Fraction = Fraction(3)

    # Verification thresholds
    ortho_tolerance: float = 1e-8
    quad_error_tolerance: float = 1e-9
    fd_relative_tolerance: float = 1e-4
    richardson_tolerance: float = 1e-2

    # Identity sweeps
    identity_samples: int = 20
    identity_seed: int = 0

    # Output
    output_format: str = 'json'
    output_path: str = 'outputs/'
    export_formats: list = field(default_factory=lambda: ['csv', 'json'])

    def __post_init__(self):
        """Validate configuration."""
        if not 0 <= self.quad_level <= 8:
            raise ValueError("quad_level must lie in 0..8")

        if not 0 <= self.quad_refinements <= 6:
            raise ValueError("quad_refinements must lie in 0..6")

        self.split_point = Fraction(self.split_point)
        if self.split_point <= 1:
            raise ValueError("split_point must exceed 1")

        for name in ('ortho_tolerance', 'quad_error_tolerance',
                     'fd_relative_tolerance', 'richardson_tolerance'):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

        if self.identity_samples < 1:
            raise ValueError("identity_samples must be at least 1")

        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}")

    @property
    def quad_nodes(self) -> int:
        """Size of the coarse Gauss rule; the error estimate doubles it."""
        return 16 * 2 ** self.quad_level


# Default configuration
DEFAULT_CONFIG = Config()
