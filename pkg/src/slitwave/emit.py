"""Deterministic CSV/JSON text for pattern series and reports.

Floats are always written as ``%.11e`` (12 significant digits), which
does not depend on locale.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

COLUMN_ORDER = ("beta_rad", "sin_beta", "screen_y_m", "intensity_quantum", "intensity_classical")


def fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".11e")


def series_columns(quantum=None, classical=None, normalize: str = "none") -> dict:
    """Ordered output columns from one or two series on the same grid."""
    base = quantum if quantum is not None else classical
    if base is None:
        raise ValueError("no series to emit")
    cols = {
        "beta_rad": base.beta,
        "sin_beta": base.sin_beta,
        "screen_y_m": base.screen_y(),
    }
    for key, series in (("intensity_quantum", quantum), ("intensity_classical", classical)):
        if series is None:
            continue
        values = series.intensity
        if normalize == "peak" and values.max() > 0:
            values = values / values.max()
        cols[key] = values
    return {k: cols[k] for k in COLUMN_ORDER if k in cols}


def to_csv(columns: dict) -> str:
    names = list(columns)
    rows = [",".join(names)]
    for row in zip(*(columns[n] for n in names)):
        rows.append(",".join(fmt(v) for v in row))
    return "\n".join(rows) + "\n"


def _json(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        text = fmt(obj)
        # JSON has no nan/inf literals
        return text if text not in ("nan", "inf", "-inf") else f'"{text}"'
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json(str(k), indent, 0)}: {_json(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{end}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_json(v, indent, 0) for v in obj) + "]"
        items = [pad + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{end}]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(payload: dict, indent: int = 2) -> str:
    return _json(payload, indent, 0) + "\n"


def write_text(path, text: str) -> None:
    """Write output; an unwritable destination raises OSError."""
    Path(path).write_text(text, encoding="utf-8", newline="\n")
