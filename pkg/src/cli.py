"""
Command-line surface: construction, verification and reporting.

Every subcommand returns a JSON-convertible payload and a pass flag; exit
codes are 0 when all checks pass, 1 on a verification failure and 2 on a
usage or precondition error (diagnostic as JSON on stderr).
"""

import argparse
import json
import logging
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence, TextIO

import numpy as np
import pandas as pd

from .config import DEFAULT_QUAD_LEVEL, OUTPUT_FORMATS, QUAD_LEVEL_ENV, Config
from .exceptions import EmptySpectrum, XJacobiError
from .export import export_all, samples_frame, to_jsonable
from .jacobi import (
    JacobiParams,
    LambdaPair,
    jacobi,
    jacobi_leading_coefficient,
    sample_parameters,
    verify_contiguous_identities,
)
from .orthocheck import cross_ortho, exceptional_zero_count, gram
from .potentials import (
    analytic_energies,
    bqr_potential,
    build_potential,
    fd_spectrum,
    hpt_parameters,
)
from .ratpoly import to_fraction
from .seeds import (
    classify,
    classify_seed,
    is_admissible,
    seed_for_family,
    seed_function,
    spectrum,
    to_csle_energy,
)
from .sle import (
    csle_residual,
    eigenfunction_form,
    heine_coeffs,
    heine_residual,
    ref_pfr,
)
from .xconstruct import (
    SigmaPair,
    normalize_family,
    verify_pd_identities,
    xm_jacobi,
    xm_leading_coefficient,
    xr_jacobi,
)

logger = logging.getLogger(__name__)

RESIDUAL_CASES = ('seeds', 'eigenfunctions', 'heine')

RATIONAL_EPILOG = (
    "Rationals are written p/q. Negative values that would read as options go "
    "after '--', e.g. xjacobi jacobi 2 -- 1/2 -3/2"
)


class UsageError(Exception):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Outcome:
    """Result of one subcommand."""

    title: str
    payload: Dict[str, object]
    passed: bool = True
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)


def _rational(text: str):
    return to_fraction(text)


def _sign(text: str) -> int:
    if text in ('+', '+1', '1'):
        return 1
    if text in ('-', '-1'):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog='xjacobi',
        description='Exceptional Jacobi and XR-Jacobi polynomials: construction and checks',
        epilog=RATIONAL_EPILOG,
    )
    parser.add_argument('--format', '-f', choices=OUTPUT_FORMATS, default='json',
                        help='Output format (default: json)')
    parser.add_argument('--output', '-o', type=str, default=None,
                        help='Also export results to this directory')
    parser.add_argument('--quad-level', type=int, default=None,
                        help=f'Quadrature level (default: ${QUAD_LEVEL_ENV} or {DEFAULT_QUAD_LEVEL})')
    parser.add_argument('--tol', type=float, default=None,
                        help='Orthogonality tolerance (default: 1e-8)')
    parser.add_argument('--verbose', '-v', action='count', default=0,
                        help='Log progress to stderr (-vv for debug)')

    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('jacobi', help='Classical Jacobi polynomial P_n^(alpha,beta)',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('n', type=int)
    p.add_argument('alpha', type=_rational)
    p.add_argument('beta', type=_rational)

    p = sub.add_parser('xmjacobi', help='X_m-Jacobi polynomial',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('m', type=int)
    p.add_argument('n', type=int)
    p.add_argument('alpha', type=_rational)
    p.add_argument('beta', type=_rational)

    p = sub.add_parser('xr', help="XR-Jacobi polynomial of family a, a' (ap) or b",
                       epilog=RATIONAL_EPILOG)
    p.add_argument('family', type=str)
    p.add_argument('m', type=int)
    p.add_argument('v', type=int)
    p.add_argument('lam_minus', type=_rational)
    p.add_argument('lam_plus', type=_rational)

    p = sub.add_parser('classify', help='Classify a seed solution',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('sigma_minus', type=_sign)
    p.add_argument('sigma_plus', type=_sign)
    p.add_argument('sigma_inf', type=_sign)
    p.add_argument('m', type=int)
    p.add_argument('lam_minus', type=_rational)
    p.add_argument('lam_plus', type=_rational)

    p = sub.add_parser('spectrum', help='Discrete levels of the reference problem',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('lam_minus', type=_rational)
    p.add_argument('lam_plus', type=_rational)

    p = sub.add_parser('gram', help='Gram matrix of an XR-Jacobi (or rjacobi) sequence',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('family', type=str)
    p.add_argument('m', type=int)
    p.add_argument('lam_minus', type=_rational)
    p.add_argument('lam_plus', type=_rational)

    p = sub.add_parser('cross-ortho', help='Cross-orthogonality of X_m-Jacobi polynomials',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('alpha', type=_rational)
    p.add_argument('beta', type=_rational)
    p.add_argument('n', type=int)
    p.add_argument('m', type=int, nargs='+')

    p = sub.add_parser('zeros', help='Zero counts of an X_m-Jacobi polynomial',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('m', type=int)
    p.add_argument('n', type=int)
    p.add_argument('alpha', type=_rational)
    p.add_argument('beta', type=_rational)

    p = sub.add_parser('identities', help='Exact identity sweep')
    p.add_argument('--nmax', type=int, default=12)
    p.add_argument('--samples', type=int, default=None,
                   help='Random parameter pairs (default: config identity_samples)')
    p.add_argument('--seed', type=int, default=None,
                   help='Random seed (default: config identity_seed)')

    p = sub.add_parser('residuals', help='Exact residuals of seeds, eigenfunctions or Heine equations',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('case', choices=RESIDUAL_CASES)
    p.add_argument('lam_minus', type=_rational)
    p.add_argument('lam_plus', type=_rational)
    p.add_argument('--m-max', type=int, default=2)

    p = sub.add_parser('potential', help='h-PT potential, optionally deformed',
                       epilog=RATIONAL_EPILOG)
    p.add_argument('lam_minus', type=_rational)
    p.add_argument('lam_plus', type=_rational)
    p.add_argument('--seed', type=str, default=None, help="Seed as TYPE,M (e.g. a,1 or ap,5)")
    p.add_argument('--bqr', type=str, default=None, help="m=1 seed tag: a, b, d, d* or d'")
    p.add_argument('--fd', nargs=3, metavar=('RMIN', 'RMAX', 'N'), default=None,
                   help='Finite-difference check on [RMIN, RMAX] with N interior points')
    p.add_argument('--dump-samples', type=str, default=None,
                   help='Write (eta, V) samples to this CSV file')

    p = sub.add_parser('batch', help='Run one command per line, line-delimited JSON out')
    p.add_argument('file', type=str)

    return parser


def _lam(args) -> LambdaPair:
    return LambdaPair(args.lam_minus, args.lam_plus)


# Handlers

def _cmd_jacobi(args, config: Config) -> Outcome:
    prm = JacobiParams(args.alpha, args.beta)
    p = jacobi(args.n, prm)
    return Outcome('JACOBI POLYNOMIAL', {
        'n': args.n, 'alpha': prm.alpha, 'beta': prm.beta,
        'coeffs': p, 'leading': jacobi_leading_coefficient(args.n, prm),
    })


def _cmd_xmjacobi(args, config: Config) -> Outcome:
    prm = JacobiParams(args.alpha, args.beta)
    xm = xm_jacobi(args.m, args.n, prm)
    expected = xm_leading_coefficient(args.m, args.n, prm)
    return Outcome('X_m-JACOBI POLYNOMIAL', {
        'm': args.m, 'n': args.n, 'alpha': prm.alpha, 'beta': prm.beta,
        'coeffs': xm.poly, 'leading': xm.lead, 'leading_formula': expected,
        'pass': xm.lead == expected,
    }, passed=xm.lead == expected)


def _cmd_xr(args, config: Config) -> Outcome:
    result = xr_jacobi(args.family, args.m, args.v, _lam(args))
    return Outcome('XR-JACOBI POLYNOMIAL', result.as_dict())


def _cmd_classify(args, config: Config) -> Outcome:
    seed = classify(SigmaPair(args.sigma_minus, args.sigma_plus), args.sigma_inf, args.m, _lam(args))
    report = is_admissible(seed)
    return Outcome('SEED CLASSIFICATION', report.as_dict())


def _cmd_spectrum(args, config: Config) -> Outcome:
    try:
        spec = spectrum(_lam(args))
    except EmptySpectrum:
        return Outcome('SPECTRUM', {'v_max': -1, 'energies': [], 'empty': True})
    return Outcome('SPECTRUM', spec.as_dict(), tables={'levels': spec.frame()})


def _gram_outcome(title: str, report) -> Outcome:
    matrix = report.matrix.reset_index().rename(columns={'index': 'label'})
    return Outcome(title, report.as_dict(), passed=report.passed, tables={'gram_matrix': matrix})


def _cmd_gram(args, config: Config) -> Outcome:
    family = args.family if args.family.lower() == 'rjacobi' else normalize_family(args.family)
    return _gram_outcome('GRAM MATRIX', gram(family, args.m, _lam(args), config))


def _cmd_cross_ortho(args, config: Config) -> Outcome:
    return _gram_outcome('CROSS-ORTHOGONALITY',
                         cross_ortho(args.alpha, args.beta, args.n, args.m, config))


def _cmd_zeros(args, config: Config) -> Outcome:
    counts = exceptional_zero_count(args.m, args.n, args.alpha, args.beta)
    ok = (counts.left, counts.inside, counts.right) == (args.m, args.n, 0)
    payload = counts.as_dict()
    payload['pass'] = ok
    return Outcome('EXCEPTIONAL ZEROS', payload, passed=ok)


def _cmd_identities(args, config: Config) -> Outcome:
    count = config.identity_samples if args.samples is None else args.samples
    seed = config.identity_seed if args.seed is None else args.seed
    samples = sample_parameters(count, seed)
    report = verify_contiguous_identities(args.nmax, samples)
    report = report.merge(verify_pd_identities(args.nmax, samples))
    payload = report.as_dict()
    payload.update({'samples': count, 'seed': seed})
    return Outcome('IDENTITY SWEEP', payload, passed=report.passed)


def _cmd_residuals(args, config: Config) -> Outcome:
    lam_o = _lam(args)
    rows = []
    if args.case == 'seeds':
        base = ref_pfr(lam_o)
        for sigma_text in ('++', '-+', '--', '+-'):
            for m in range(args.m_max + 1):
                try:
                    seed = classify_seed(SigmaPair.parse(sigma_text), m, lam_o)
                    res = csle_residual(seed_function(seed), to_csle_energy(seed.energy), base)
                except XJacobiError as exc:
                    logger.debug("Skipping %s%d: %s", sigma_text, m, exc)
                    continue
                rows.append({'case': seed.label, 'sigma': sigma_text, 'zero': res.is_zero})
    elif args.case == 'eigenfunctions':
        base = ref_pfr(lam_o)
        for v, eps in enumerate(spectrum(lam_o).energies):
            res = csle_residual(eigenfunction_form(lam_o, v), to_csle_energy(eps), base)
            rows.append({'case': f"v={v}", 'sigma': '', 'zero': res.is_zero})
    else:
        levels = spectrum(lam_o).energies
        for family in ('a', "a'", 'b'):
            for m in range(args.m_max + 1):
                try:
                    seed = seed_for_family(family, m, lam_o)
                    coeffs = heine_coeffs(lam_o, seed)
                except XJacobiError as exc:
                    logger.debug("Skipping %s%d: %s", family, m, exc)
                    continue
                for v, eps in enumerate(levels):
                    try:
                        q = xr_jacobi(family, m, v, lam_o).poly
                    except XJacobiError:
                        continue
                    res = heine_residual(q, coeffs, eps)
                    rows.append({'case': f"{family}{m},v={v}", 'sigma': str(seed.sigma),
                                 'zero': res.is_zero})
    frame = pd.DataFrame(rows, columns=['case', 'sigma', 'zero'])
    ok = bool(frame['zero'].all()) if len(frame) else True
    return Outcome('RESIDUALS', {'case': args.case, 'checked': len(frame), 'results': frame,
                                 'pass': ok}, passed=ok, tables={'residual_checks': frame})


def _parse_seed(text: str, lam_o: LambdaPair):
    try:
        tag, m_text = text.split(',')
    except ValueError as exc:
        raise ValueError(f"--seed must look like TYPE,M, got {text!r}") from exc
    return seed_for_family(tag, int(m_text), lam_o)


def _cmd_potential(args, config: Config) -> Outcome:
    lam_o = _lam(args)
    if args.seed and args.bqr:
        raise ValueError('--seed and --bqr are mutually exclusive')
    if args.bqr:
        spec = bqr_potential(args.bqr, lam_o)
    elif args.seed:
        spec = build_potential(lam_o, _parse_seed(args.seed, lam_o))
    else:
        spec = build_potential(lam_o)

    h, g = hpt_parameters(lam_o)
    payload = spec.as_dict()
    payload.update({'h': h, 'g': g, 'energies': analytic_energies(spec)})
    tables = {}
    passed = True

    if args.fd:
        r_min, r_max, n = float(args.fd[0]), float(args.fd[1]), int(args.fd[2])
        fd = fd_spectrum(spec, r_min, r_max, n, config)
        frame = fd.frame()
        passed = bool((frame['relative_error'] < config.fd_relative_tolerance).all())
        payload['fd'] = frame
        payload['pass'] = passed
        tables['fd_spectrum'] = frame

    if args.dump_samples:
        eta = 1.0 + np.geomspace(1e-3, 1e2, 400)
        samples = samples_frame(eta, spec.v_eta.evaluate_float(eta))
        samples.to_csv(args.dump_samples, index=False)
        payload['samples'] = args.dump_samples

    return Outcome('POTENTIAL', payload, passed=passed, tables=tables)


HANDLERS = {
    'jacobi': _cmd_jacobi,
    'xmjacobi': _cmd_xmjacobi,
    'xr': _cmd_xr,
    'classify': _cmd_classify,
    'spectrum': _cmd_spectrum,
    'gram': _cmd_gram,
    'cross-ortho': _cmd_cross_ortho,
    'zeros': _cmd_zeros,
    'identities': _cmd_identities,
    'residuals': _cmd_residuals,
    'potential': _cmd_potential,
}


# Output

def _emit(outcome: Outcome, fmt: str, out: TextIO) -> None:
    if fmt == 'csv' and outcome.tables:
        for frame in outcome.tables.values():
            out.write(frame.to_csv(index=False))
        return
    if fmt == 'csv':
        logger.warning("no table for %s; writing JSON", outcome.title)
    if fmt == 'pretty':
        out.write("=" * 60 + "\n")
        out.write(outcome.title + "\n")
        out.write("=" * 60 + "\n")
        for i, (key, value) in enumerate(to_jsonable(outcome.payload).items(), start=1):
            out.write(f"{i:>3}. {key}: {json.dumps(value)}\n")
        out.write("=" * 60 + "\n")
        out.write(("PASS" if outcome.passed else "FAIL") + "\n")
        return
    out.write(json.dumps(to_jsonable(outcome.payload)) + "\n")


_GLOBAL_FLAGS = ('format', 'output', 'quad_level', 'tol', 'verbose', 'command')


def _inputs(args) -> Dict[str, object]:
    return {k: v for k, v in vars(args).items() if k not in _GLOBAL_FLAGS and v is not None}


def _diagnostic(exc: Exception, err: TextIO) -> int:
    err.write(json.dumps({'error': type(exc).__name__, 'message': str(exc)}) + "\n")
    return 2


def _build_config(args) -> Config:
    kwargs = {'output_format': args.format}
    if args.quad_level is not None:
        kwargs['quad_level'] = args.quad_level
    if args.tol is not None:
        kwargs['ortho_tolerance'] = args.tol
    if args.output is not None:
        kwargs['output_path'] = args.output
    return Config(**kwargs)


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    logging.basicConfig(
        level=logging.DEBUG if verbosity > 1 else logging.INFO,
        format='%(asctime)s %(name)s %(levelname)s %(message)s',
        stream=sys.stderr,
    )


def _run_batch(path: str, config: Config, out: TextIO, err: TextIO) -> int:
    worst = 0
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        code = run(['--format', 'json'] + shlex.split(line), out=out, err=err, config=config)
        worst = max(worst, code)
    return worst


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
        err: Optional[TextIO] = None, config: Optional[Config] = None) -> int:
    """
    Execute one command line.

    Args:
        argv: Arguments without the program name
        out: Stream for results (default stdout)
        err: Stream for diagnostics (default stderr)
        config: Base configuration for the command and any batch lines

    Returns:
        Exit code: 0 pass, 1 verification failure, 2 usage or precondition error
    """
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)

    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        if config is None or args.quad_level is not None or args.tol is not None:
            config = _build_config(args)
        if args.command == 'batch':
            return _run_batch(args.file, config, out, err)
        outcome = HANDLERS[args.command](args, config)
        outcome.payload = {'inputs': _inputs(args), **outcome.payload}
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, XJacobiError, ValueError, ZeroDivisionError, OSError) as exc:
        return _diagnostic(exc, err)

    _emit(outcome, args.format, out)
    if args.output:
        results = {args.command.replace('-', '_'): outcome.payload}
        results.update(outcome.tables)
        results['summary'] = {'command': argv, 'pass': outcome.passed}
        export_all(results, config)
    return 0 if outcome.passed else 1
