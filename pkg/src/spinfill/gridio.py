"""Plain-text grid rasters.

Format: three header lines, then one line of space-separated values per row::

    ncols 4
    nrows 3
    nodata NA
    12.5 3.0 NA 7.25
    ...

Missing nodes are written as the literal token ``NA``.  Class fields use the
same layout with integer values.
"""

from __future__ import annotations

import numpy as np

from .discretize import ClassField
from .grid import GridField


class GridFormatError(ValueError):
    """Raised when a grid file cannot be parsed; messages name the line."""


def _read_lines(path) -> list[str]:
    with open(path, encoding="ascii") as fh:
        return fh.read().splitlines()


def _parse_header(lines: list[str]) -> tuple[int, int]:
    if len(lines) < 3:
        raise GridFormatError("file ends before the 3-line header is complete")
    for lineno, key in ((1, "ncols"), (2, "nrows")):
        tokens = lines[lineno - 1].split()
        if len(tokens) != 2 or tokens[0] != key:
            raise GridFormatError(f"line {lineno}: expected '{key} <int>'")
        try:
            value = int(tokens[1])
        except ValueError:
            raise GridFormatError(f"line {lineno}: {tokens[1]!r} is not an integer") from None
        if value < 1:
            raise GridFormatError(f"line {lineno}: {key} must be >= 1")
        if key == "ncols":
            ncols = value
        else:
            nrows = value
    if lines[2].split() != ["nodata", "NA"]:
        raise GridFormatError("line 3: expected 'nodata NA'")
    return ncols, nrows


def _parse_rows(lines: list[str], ncols: int, nrows: int):
    values = np.empty((nrows, ncols))
    missing = np.zeros((nrows, ncols), dtype=bool)
    for r in range(nrows):
        lineno = 4 + r
        if 3 + r >= len(lines):
            raise GridFormatError(f"line {lineno}: missing data row {r + 1} of {nrows}")
        tokens = lines[3 + r].split()
        if len(tokens) != ncols:
            raise GridFormatError(
                f"line {lineno}: expected {ncols} values, got {len(tokens)}"
            )
        for c, token in enumerate(tokens):
            if token == "NA":
                values[r, c] = np.nan
                missing[r, c] = True
            else:
                try:
                    values[r, c] = float(token)
                except ValueError:
                    raise GridFormatError(
                        f"line {lineno}: non-numeric value {token!r}"
                    ) from None
    for extra in range(3 + nrows, len(lines)):
        if lines[extra].strip():
            raise GridFormatError(f"line {extra + 1}: unexpected data past row {nrows}")
    return values, missing


def load_grid(path) -> GridField:
    """Parse a grid file; NA tokens become missing nodes."""
    lines = _read_lines(path)
    ncols, nrows = _parse_header(lines)
    values, missing = _parse_rows(lines, ncols, nrows)
    if not np.all(np.isfinite(values[~missing])):
        raise GridFormatError("grid holds non-finite numeric values")
    return GridField(values, missing)


def _write(path, ncols: int, nrows: int, rows) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"ncols {ncols}\n")
        fh.write(f"nrows {nrows}\n")
        fh.write("nodata NA\n")
        for row in rows:
            fh.write(" ".join(row))
            fh.write("\n")


def save_grid(path, field: GridField) -> None:
    """Write a grid file; values round-trip exactly via shortest repr."""
    rows = (
        ["NA" if m else repr(float(v)) for v, m in zip(vrow, mrow)]
        for vrow, mrow in zip(field.values, field.missing)
    )
    _write(path, field.lx, field.ly, rows)


def save_class_grid(path, classes: ClassField) -> None:
    """Write a class field as an integer grid; unassigned nodes become NA."""
    rows = (
        [str(int(v)) if v > 0 else "NA" for v in vrow] for vrow in classes.values
    )
    _write(path, classes.lx, classes.ly, rows)


def load_class_grid(path) -> ClassField:
    """Parse an integer class grid; NA nodes stay unassigned.

    The file does not record conditioning information, so every assigned
    node comes back frozen.
    """
    grid = load_grid(path)
    known = ~grid.missing
    rounded = np.zeros(grid.values.shape, dtype=np.int32)
    rounded[known] = np.rint(grid.values[known]).astype(np.int32)
    if not np.allclose(grid.values[known], rounded[known]):
        raise GridFormatError("class grid holds non-integer values")
    if (rounded[known] < 1).any():
        raise GridFormatError("class indices must be >= 1")
    return ClassField(rounded, known)


def save_mask(path, mask: np.ndarray) -> None:
    """Write a boolean mask as a 0/1 integer grid."""
    mask = np.asarray(mask, dtype=bool)
    rows = (["1" if m else "0" for m in mrow] for mrow in mask)
    _write(path, mask.shape[1], mask.shape[0], rows)


def load_mask(path) -> np.ndarray:
    """Parse a 0/1 integer grid into a boolean mask."""
    grid = load_grid(path)
    if grid.n_missing:
        raise GridFormatError("mask grid must not hold NA entries")
    if not np.isin(grid.values, (0.0, 1.0)).all():
        raise GridFormatError("mask grid entries must be 0 or 1")
    return grid.values.astype(bool)
