"""
Writers for amplitude series and run metadata.

JSON uses 17 significant digits so values round-trip exactly; CSV uses 12 and
is meant for plotting.
"""

import io
import json
import math
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from model.walk import AmplitudeSeries

JSON_DIGITS = 17
CSV_FLOAT_FORMAT = "%.12g"


def _number(x: float, digits: int) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, f".{digits}g")


def to_json(obj: Any, digits: int = JSON_DIGITS, indent: Optional[int] = None, _level: int = 0) -> str:
    """
    JSON text with every float printed to `digits` significant digits.

    Handles dicts, lists/tuples, numpy scalars and arrays, str, int, bool and None.
    """
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, np.generic):
        obj = obj.item()

    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _number(obj, digits)
    if isinstance(obj, str):
        return json.dumps(obj)

    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}:{'' if indent is None else ' '}"
                 f"{to_json(v, digits, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{to_json(v, digits, indent, _level + 1)}" for v in obj]
        return "[" + ",".join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pairs(matrix: np.ndarray) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def series_to_dict(series: AmplitudeSeries) -> Dict:
    doc = {
        "time_scale": float(series.time_scale),
        "times": [float(t) for t in series.times],
        "krylov": _pairs(series.krylov),
    }
    if series.vertex is not None:
        doc["vertex"] = _pairs(series.vertex)
    return doc


def series_frame(series: AmplitudeSeries) -> pd.DataFrame:
    """One row per time: t, then re/im of every Krylov and vertex amplitude."""
    columns = {"t": series.times}
    for k in range(series.dim):
        columns[f"q{k}_re"] = series.krylov[:, k].real
        columns[f"q{k}_im"] = series.krylov[:, k].imag
    if series.vertex is not None:
        for v in range(series.vertex.shape[1]):
            columns[f"v{v}_re"] = series.vertex[:, v].real
            columns[f"v{v}_im"] = series.vertex[:, v].imag
    return pd.DataFrame(columns)


def series_to_csv(series: AmplitudeSeries) -> str:
    buffer = io.StringIO()
    series_frame(series).to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()
