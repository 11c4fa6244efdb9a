"""CSV loading and differencing of time series."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InsufficientDataError, SeriesFileError
from .simulate import TimeSeries


@dataclass
class SeriesFile:
    path: Path
    labels: list[str]
    values: list[float]
    header: list[str] | None
    column: int
    skipped: list[tuple[int, str]] = field(default_factory=list)  # (line number, reason)

    def to_series(self) -> TimeSeries:
        return TimeSeries(
            np.asarray(self.values, dtype=float),
            labels=self.labels,
            meta={"path": str(self.path), "column": self.column, "skipped": len(self.skipped)},
        )


def _number(text: str) -> float | None:
    try:
        v = float(text.strip())
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _resolve_column(value_column, header: list[str] | None, rows: list[list[str]]) -> int:
    if isinstance(value_column, int):
        return value_column
    if isinstance(value_column, str) and value_column.lstrip("-").isdigit():
        return int(value_column)
    if value_column is not None:
        if header is None:
            raise SeriesFileError(f"column {value_column!r} requested but file has no header")
        matches = [i for i, h in enumerate(header) if h.strip() == value_column]
        if len(matches) != 1:
            raise SeriesFileError(
                f"column {value_column!r} is {'ambiguous' if matches else 'missing'} in header {header}"
            )
        return matches[0]
    # default: last column that parses as a number in most rows
    width = max((len(r) for r in rows), default=0)
    for j in reversed(range(width)):
        hits = sum(1 for r in rows if j < len(r) and _number(r[j]) is not None)
        if hits and hits * 2 >= len(rows):
            return j
    raise SeriesFileError("no numeric column found")


def read_csv(path, value_column: int | str | None = None, header: str = "auto") -> SeriesFile:
    """Parse a comma-separated file into labels and float values.

    ``header`` is ``"auto"``, ``"yes"`` or ``"no"``; in auto mode the first row
    is a header when none of its fields parse as numbers. Rows whose value
    field is not a finite number are skipped and recorded.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh)]
    except (OSError, UnicodeDecodeError) as exc:
        raise SeriesFileError(f"cannot read {path}: {exc}") from exc
    offset = 1
    while rows and not any(f.strip() for f in rows[0]):
        rows.pop(0)
        offset += 1
    if not rows:
        raise SeriesFileError(f"{path} contains no numeric data")

    if header not in ("auto", "yes", "no"):
        raise ValueError(f"header must be auto, yes or no (got {header!r})")
    has_header = header == "yes" or (header == "auto" and all(_number(f) is None for f in rows[0]))
    head = rows[0] if has_header else None
    body = rows[1:] if has_header else rows
    first_line = offset + (1 if has_header else 0)

    col = _resolve_column(value_column, head, body)
    labels, values, skipped = [], [], []
    for i, row in enumerate(body):
        lineno = first_line + i
        if not any(f.strip() for f in row):
            continue
        if col >= len(row) or -col > len(row):
            skipped.append((lineno, "missing value column"))
            continue
        v = _number(row[col])
        if v is None:
            skipped.append((lineno, f"non-numeric value {row[col]!r}"))
            continue
        # first field is the label unless it is the value itself
        labels.append(row[0].strip() if col % len(row) != 0 else str(len(values)))
        values.append(v)
    if not values:
        raise SeriesFileError(f"{path} contains no numeric data")
    return SeriesFile(path, labels, values, head, col, skipped)


def load_csv(path, value_column: int | str | None = None, header: str = "auto") -> TimeSeries:
    return read_csv(path, value_column, header).to_series()


def write_csv(path, series: TimeSeries | Sequence[float], value_name: str = "value") -> None:
    """Write ``t,value`` rows; floats use ``repr`` so they round-trip exactly."""
    ts = series if isinstance(series, TimeSeries) else TimeSeries(np.asarray(series, dtype=float))
    labels = ts.labels or [str(i) for i in range(len(ts))]
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        fh.write(format_csv(ts, value_name, labels))


def format_csv(ts: TimeSeries, value_name: str = "value", labels: list[str] | None = None) -> str:
    labels = labels or ts.labels or [str(i) for i in range(len(ts))]
    lines = [f"t,{value_name}"] + [f"{lab},{float(v)!r}" for lab, v in zip(labels, ts.values)]
    return "\n".join(lines) + "\n"


def first_difference(series: TimeSeries | Sequence[float]) -> TimeSeries:
    """``out[t] = x[t+1] - x[t]``; labels follow the later observation."""
    ts = series if isinstance(series, TimeSeries) else TimeSeries(np.asarray(series, dtype=float))
    if len(ts) < 2:
        raise InsufficientDataError("first_difference needs at least two values")
    labels = ts.labels[1:] if ts.labels is not None else None
    return TimeSeries(np.diff(ts.values), labels=labels)
