"""Tests for JSON conversion and result export."""

import json
from fractions import Fraction

import numpy as np
import pandas as pd

from src.config import Config
from src.export import export_all, samples_frame, to_jsonable
from src.ratpoly import RatPoly


def test_to_jsonable_exact_values():
    assert to_jsonable(Fraction(-35, 8)) == '-35/8'
    assert to_jsonable(RatPoly((Fraction(1, 2), 2))) == ['1/2', '2']
    assert to_jsonable((1, Fraction(3))) == [1, '3']


def test_to_jsonable_numpy_and_floats():
    assert to_jsonable(np.float64(0.5)) == 0.5
    assert to_jsonable(np.int64(3)) == 3
    assert to_jsonable(np.bool_(True)) is True
    assert to_jsonable(float('nan')) == 'nan'
    assert to_jsonable(np.array([1.0, 2.0])) == [1.0, 2.0]


def test_to_jsonable_frames_and_nested():
    frame = pd.DataFrame({'v': [0, 1], 'zero': [True, False]})
    assert to_jsonable({'rows': frame}) == {'rows': [{'v': 0, 'zero': True}, {'v': 1, 'zero': False}]}


def test_samples_frame():
    frame = samples_frame([1.5, 2.0], [-1.0, -0.5])
    assert list(frame.columns) == ['eta', 'value']
    assert frame['value'].tolist() == [-1.0, -0.5]


def test_export_all(tmp_path):
    config = Config(output_path=str(tmp_path / 'out'))
    results = {
        'spectrum': {'energies': [Fraction(-15), Fraction(-3)]},
        'levels': pd.DataFrame({'v': [0, 1]}),
        'summary': {'pass': True},
    }
    exported = export_all(results, config, run_id='test')

    assert set(exported) == {'spectrum', 'levels', 'summary'}
    assert json.loads((tmp_path / 'out' / 'spectrum.json').read_text()) == {'energies': ['-15', '-3']}
    assert pd.read_csv(tmp_path / 'out' / 'levels.csv')['v'].tolist() == [0, 1]
    summary = json.loads((tmp_path / 'out' / 'run_summary.json').read_text())
    assert summary['run_id'] == 'test'
    assert summary['pass'] is True


def test_export_respects_formats(tmp_path):
    config = Config(output_path=str(tmp_path), export_formats=['json'])
    exported = export_all({'levels': pd.DataFrame({'v': [0]}), 'note': 'x'}, config)
    assert 'levels' not in exported
    assert (tmp_path / 'note.json').exists()
