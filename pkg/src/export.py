"""Export utilities for check results."""

import json
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from .config import DEFAULT_CONFIG, Config
from .ratpoly import RatPoly


def to_jsonable(obj: Any) -> Any:
    """
    Convert a result structure into plain JSON types.

    Fractions become "p/q" strings, polynomials their coefficient lists,
    numpy values Python numbers and DataFrames lists of records. Objects
    with an ``as_dict`` method are converted through it.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return obj if np.isfinite(obj) else str(obj)
    if isinstance(obj, np.generic):
        return to_jsonable(obj.item())
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, RatPoly):
        return [str(c) for c in obj.coeffs]
    if isinstance(obj, pd.DataFrame):
        return [{k: to_jsonable(v) for k, v in row.items()} for row in obj.to_dict(orient='records')]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, 'as_dict'):
        return to_jsonable(obj.as_dict())
    return str(obj)


def samples_frame(xs, values) -> pd.DataFrame:
    """(eta, value) pairs for external plotting."""
    return pd.DataFrame({'eta': np.asarray(xs, dtype=float), 'value': np.asarray(values, dtype=float)})


def export_all(
    results: Dict[str, Any],
    config: Config = DEFAULT_CONFIG,
    run_id: Optional[str] = None,
) -> Dict[str, str]:
    """
    Export check results to the configured formats.

    Args:
        results: Mapping of result names to DataFrames (written as CSV) or
            to JSON-convertible structures; a 'summary' entry becomes
            run_summary.json
        config: Configuration object
        run_id: Optional identifier for this run (defaults to timestamp)

    Returns:
        Dictionary mapping result names to output file paths
    """
    output_dir = Path(config.output_path)
    output_dir.mkdir(parents=True, exist_ok=True)

    if run_id is None:
        run_id = datetime.now().strftime('%Y%m%d_%H%M%S')

    exported = {}

    for name, value in results.items():
        if name == 'summary' or value is None:
            continue
        if isinstance(value, pd.DataFrame):
            if 'csv' in config.export_formats:
                path = output_dir / f"{name}.csv"
                value.to_csv(path, index=False)
                exported[name] = str(path)
        elif 'json' in config.export_formats:
            path = output_dir / f"{name}.json"
            with open(path, 'w') as f:
                json.dump(to_jsonable(value), f, indent=2)
            exported[name] = str(path)

    # Export summary/metadata
    summary = dict(results.get('summary') or {})
    summary['run_id'] = run_id
    summary['exported_at'] = datetime.now().isoformat()
    path = output_dir / "run_summary.json"
    with open(path, 'w') as f:
        json.dump(to_jsonable(summary), f, indent=2, default=str)
    exported['summary'] = str(path)

    return exported
