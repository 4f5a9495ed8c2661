"""
CSV / JSON emission. Every float in a CSV is written with 17 significant
digits; JSON floats use Python's shortest round-trip repr, which reads back
to the same double.
"""

import csv
import json
import math
import os
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

from constants import FLOAT_FORMAT

PathLike = Union[str, Path]


def format_value(value: Any) -> str:
    """One CSV cell."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _ensure_parent(path: Path) -> None:
    if path.parent and not path.parent.exists():
        os.makedirs(path.parent, exist_ok=True)


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a header line and one line per row; returns the path written."""
    path = Path(path)
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row has {len(row)} cells, header has {len(header)}")
            writer.writerow([format_value(v) for v in row])
    return path


def jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, enums and tuples into plain JSON types."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return None
        return value
    if isinstance(value, Path):
        return str(value)
    return value


def dumps(payload: Any) -> str:
    return json.dumps(jsonable(payload), indent=2, sort_keys=True)


def write_json(path: PathLike, payload: Any) -> Path:
    path = Path(path)
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(payload))
        handle.write("\n")
    return path


def write_gnuplot_script(
    path: PathLike,
    data_file: PathLike,
    slope: Optional[float] = None,
    intercept: Optional[float] = None,
    title: str = "pulse position",
) -> Path:
    """
    A gnuplot script plotting xi against ln t from a trajectory CSV (columns
    t, xi, umax). With a fitted slope/intercept the fitted line is overlaid.
    """
    path = Path(path)
    _ensure_parent(path)
    data_name = Path(data_file).name
    lines = [
        "set datafile separator ','",
        "set key left top",
        "set xlabel 'ln t'",
        "set ylabel 'xi'",
        f"set title '{title}'",
    ]
    plot = f"plot '{data_name}' using (log($1)):2 every ::1 with points pt 7 ps 0.5 title 'xi(t)'"
    if slope is not None and intercept is not None:
        lines.append(f"fit_line(s) = {format(slope, FLOAT_FORMAT)} * s + {format(intercept, FLOAT_FORMAT)}")
        plot += ", fit_line(x) with lines lw 2 title 'fit'"
    lines.append(plot)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    return path
