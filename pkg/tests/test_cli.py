"""Tests for the command-line surface."""

import io
import json

import pandas as pd
import pytest

from src.cli import build_parser, run
from src.config import Config


def _run(argv, config=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err, config=config)
    return code, out.getvalue(), err.getvalue()


def test_jacobi():
    code, out, _ = _run(['jacobi', '1', '1/2', '3/2'])
    assert code == 0
    payload = json.loads(out)
    assert payload['coeffs'] == ['-1/2', '2']
    assert payload['leading'] == '2'


def test_xmjacobi_leading_coefficient():
    code, out, _ = _run(['xmjacobi', '1', '1', '4', '1'])
    assert code == 0
    payload = json.loads(out)
    assert payload['leading'] == '-35/8'
    assert payload['pass'] is True


def test_spectrum():
    code, out, _ = _run(['spectrum', '11/2', '1/2'])
    assert code == 0
    payload = json.loads(out)
    assert payload['energies'] == ['-15', '-3', '1']
    assert payload['borderline'] is True


def test_empty_spectrum_is_not_an_error():
    code, out, _ = _run(['spectrum', '1', '2'])
    assert code == 0
    payload = json.loads(out)
    assert payload['inputs'] == {'lam_minus': '1', 'lam_plus': '2'}
    assert payload['energies'] == []
    assert payload['empty'] is True


def test_classify_with_sign_arguments():
    code, out, _ = _run(['classify', '-', '+', '+', '1', '11/2', '1/2'])
    assert code == 0
    assert json.loads(out)['seed']['type'] == 'c'


def test_classify_unknown_signs_is_a_precondition_error():
    code, out, err = _run(['classify', '+', '+', '+', '0', '11/2', '1/2'])
    assert code == 2
    assert out == ''
    assert json.loads(err)['error'] == 'NoSuchType'


def test_zero_counts():
    code, out, _ = _run(['zeros', '1', '1', '4', '1'])
    assert code == 0
    payload = json.loads(out)
    assert (payload['left'], payload['inside'], payload['right']) == (1, 1, 0)


def test_csv_format():
    code, out, _ = _run(['--format', 'csv', 'spectrum', '11/2', '1/2'])
    assert code == 0
    assert out.splitlines()[0] == 'v,energy,csle_energy,square_integrable'
    assert len(out.splitlines()) == 4


def test_pretty_format():
    code, out, _ = _run(['-f', 'pretty', 'zeros', '1', '1', '4', '1'])
    assert code == 0
    assert out.startswith('=' * 60)
    assert 'EXCEPTIONAL ZEROS' in out
    assert out.rstrip().endswith('PASS')


@pytest.mark.parametrize('argv', [
    ['bogus'],
    [],
    ['jacobi', '1', 'x', '1'],
    ['classify', '*', '+', '+', '1', '11/2', '1/2'],
])
def test_usage_errors(argv):
    code, _, err = _run(argv)
    assert code == 2
    assert 'error' in json.loads(err)


def test_range_violation_exit_code():
    code, _, err = _run(['xr', 'b', '1', '0', '11/2', '1/2'])
    assert code == 2
    assert json.loads(err)['error'] == 'RangeViolation'


def test_verification_failure_exit_code():
    code, out, _ = _run(['--tol', '1e-300', 'gram', 'rjacobi', '0', '13/2', '1/2'])
    assert code == 1
    assert json.loads(out)['pass'] is False


def test_gram_passes():
    code, out, _ = _run(['gram', 'a', '1', '11/2', '1/2'])
    assert code == 0
    assert json.loads(out)['labels'] == ['v=0', 'v=1']


def test_residual_cases():
    code, out, _ = _run(['residuals', 'eigenfunctions', '13/2', '1/2'])
    assert code == 0
    payload = json.loads(out)
    assert payload['checked'] == 3
    assert payload['pass'] is True

    code, out, _ = _run(['residuals', 'heine', '11/2', '1/2', '--m-max', '1'])
    assert code == 0
    assert json.loads(out)['checked'] > 0


@pytest.mark.parametrize('argv', [
    ['residuals', 'seeds', '13/2', '1/2', '--m-max', '5'],
    ['residuals', 'seeds', '11/2', '1/2', '--m-max', '6'],
    ['residuals', 'heine', '11/2', '1/2', '--m-max', '7'],
])
def test_residuals_skip_collapsed_seeds(argv):
    code, out, err = _run(argv)
    assert code == 0, err
    payload = json.loads(out)
    assert payload['pass'] is True
    assert payload['checked'] > 0


def test_identities_sweep():
    code, out, _ = _run(['identities', '--nmax', '3', '--samples', '2'])
    assert code == 0
    assert json.loads(out)['pass'] is True


def test_identities_default_to_configured_samples():
    config = Config(identity_samples=3, identity_seed=1)
    code, out, _ = _run(['identities', '--nmax', '2'], config=config)
    assert code == 0
    payload = json.loads(out)
    assert (payload['samples'], payload['seed']) == (3, 1)
    assert payload['pass'] is True

    code, out, _ = _run(['identities', '--nmax', '2', '--samples', '2'], config=config)
    assert code == 0
    assert (json.loads(out)['samples'], json.loads(out)['seed']) == (2, 1)


def test_potential_with_seed(tmp_path):
    samples = tmp_path / 'v.csv'
    code, out, _ = _run(['potential', '11/2', '1/2', '--seed', 'a,1', '--dump-samples', str(samples)])
    assert code == 0
    payload = json.loads(out)
    assert payload['energies'] == ['-16', '-4']
    assert len(pd.read_csv(samples)) == 400


def test_potential_rejects_both_seed_options():
    code, _, err = _run(['potential', '11/2', '1/2', '--seed', 'a,1', '--bqr', 'a'])
    assert code == 2
    assert json.loads(err)['error'] == 'ValueError'


def test_output_directory(tmp_path):
    code, _, _ = _run(['--output', str(tmp_path), 'spectrum', '11/2', '1/2'])
    assert code == 0
    assert json.loads((tmp_path / 'spectrum.json').read_text())['v_max'] == 2
    assert (tmp_path / 'levels.csv').exists()
    summary = json.loads((tmp_path / 'run_summary.json').read_text())
    assert summary['pass'] is True


def test_batch(tmp_path):
    script = tmp_path / 'commands.txt'
    script.write_text("# two checks\nspectrum 11/2 1/2\n\nzeros 1 1 4 1\n")
    code, out, _ = _run(['batch', str(script)])
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 2
    assert lines[1]['inside'] == 1


def test_batch_reports_worst_exit_code(tmp_path):
    script = tmp_path / 'commands.txt'
    script.write_text("spectrum 11/2 1/2\nxr b 1 0 11/2 1/2\n")
    code, out, err = _run(['batch', str(script)])
    assert code == 2
    assert len(out.splitlines()) == 1
    assert 'RangeViolation' in err


def test_parser_lists_subcommands():
    help_text = build_parser().format_help()
    for name in ('jacobi', 'xmjacobi', 'xr', 'classify', 'spectrum', 'gram',
                 'cross-ortho', 'zeros', 'identities', 'residuals', 'potential', 'batch'):
        assert name in help_text


def test_help_explains_negative_rationals():
    parser = build_parser()
    assert "after '--'" in parser.format_help()
    code, out, _ = _run(['jacobi', '2', '--', '1/2', '-3/2'])
    assert code == 0
    assert json.loads(out)['inputs']['beta'] == '-3/2'
