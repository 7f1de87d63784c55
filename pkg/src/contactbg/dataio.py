"""CSV ingestion and emission.

All files are UTF-8 CSV with SI units and explicit headers: ``d_m,va_V``
for minimizing-voltage data and ``d_m,F_N`` for force data.  Loaders sort
rows by separation and reject duplicates; writers serialize floats in
scientific notation with 17 significant digits so that written files
round-trip exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import DataError, InsufficientDataError
from .force import ForceCurve, Provenance

FLOAT_FORMAT = "{:.16e}"  # 17 significant digits


def _load_table(path, expected_header: list[str]) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    rows = list(csv.reader(text.splitlines()))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [c.strip() for c in rows[0]]
    if header != expected_header:
        raise DataError(
            f"{path}: expected header {','.join(expected_header)!r}, got {','.join(header)!r}")
    if len(rows) == 1:
        raise InsufficientDataError(f"{path}: no data rows")
    data = np.empty((len(rows) - 1, len(expected_header)))
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != len(expected_header):
            raise DataError(f"{path}: line {k}: expected {len(expected_header)} fields, got {len(row)}")
        for j, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError as exc:
                raise DataError(f"{path}: line {k}: cannot parse {cell.strip()!r} as a number") from exc
            if not np.isfinite(value):
                raise DataError(f"{path}: line {k}: non-finite value {cell.strip()!r}")
            data[k - 2, j] = value
    if np.any(data[:, 0] <= 0.0):
        bad = int(np.flatnonzero(data[:, 0] <= 0.0)[0]) + 2
        raise DataError(f"{path}: line {bad}: separation must be > 0")
    order = np.argsort(data[:, 0], kind="stable")
    data = data[order]
    dupes = np.flatnonzero(np.diff(data[:, 0]) == 0.0)
    if dupes.size:
        raise DataError(f"{path}: duplicate separation {data[dupes[0], 0]:g} m")
    return data


def load_va_measurements(path) -> np.ndarray:
    """Read a ``d_m,va_V`` CSV into an (n, 2) array sorted by separation."""
    return _load_table(path, ["d_m", "va_V"])


def load_force_measurements(path) -> ForceCurve:
    """Read a ``d_m,F_N`` CSV into a measured :class:`ForceCurve`."""
    data = _load_table(path, ["d_m", "F_N"])
    return ForceCurve(data[:, 0], data[:, 1], Provenance.MEASURED)


def write_csv(path, header: list[str], columns: list[np.ndarray]) -> None:
    """Write columns as CSV with 17-significant-digit scientific notation."""
    path = Path(path)
    n = len(columns[0])
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(FLOAT_FORMAT.format(float(col[i])) for col in columns))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_csv_columns(path) -> tuple[list[str], np.ndarray]:
    """Read back any result CSV: (header, data) with no schema assumptions."""
    text = Path(path).read_text(encoding="utf-8")
    rows = [r for r in csv.reader(text.splitlines()) if r]
    header = [c.strip() for c in rows[0]]
    data = np.array([[float(c) for c in row] for row in rows[1:]])
    return header, data
