#!/usr/bin/env python3
"""
CLI entry point for exceptional Jacobi construction and verification.

Usage:
    python xjacobi.py jacobi 3 1/2 1/3                   # Classical Jacobi coefficients
    python xjacobi.py jacobi 3 -- 1/2 -1/3               # Negative parameter after --
    python xjacobi.py xmjacobi 1 1 4 1                    # X_m-Jacobi polynomial
    python xjacobi.py xr a 1 0 11/2 1/2                   # XR-Jacobi, family a
    python xjacobi.py spectrum 11/2 1/2                   # Discrete levels
    python xjacobi.py --format pretty gram a 1 13/2 1/2   # Orthogonality check
    python xjacobi.py potential 13/2 1/2 --fd 0 12 2000   # Finite-difference check
    python xjacobi.py identities --nmax 12                # Exact identity sweep
    python xjacobi.py batch checks.txt                    # One command per line

Negative rational arguments that argparse would read as options go after '--'.
Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or precondition error.
"""

from pathlib import Path
import sys

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import run


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
