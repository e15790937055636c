"""Shared fixtures for the exceptional Jacobi test suite."""

from fractions import Fraction
from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import Config
from src.jacobi import LambdaPair


@pytest.fixture
def lam_11_half():
    """Reference problem with levels -16, -4 and a borderline level at 0."""
    return LambdaPair(Fraction(11, 2), Fraction(1, 2))


@pytest.fixture
def lam_13_half():
    """Reference problem with three bound states -25, -9, -1."""
    return LambdaPair(Fraction(13, 2), Fraction(1, 2))


@pytest.fixture
def lam_13_3():
    """Reference problem where family b has seeds m = 0, 1, 2."""
    return LambdaPair(Fraction(13), Fraction(3))


@pytest.fixture
def fast_config(tmp_path):
    return Config(quad_level=2, output_path=str(tmp_path))


@pytest.fixture
def lam_13_3_half():
    """Reference problem with levels -16, -4, a borderline level and family b seeds m = 0, 1."""
    return LambdaPair(Fraction(13, 2), Fraction(3, 2))
