"""Reading samples and curves, writing curves.

Samples: one number per line, optional ``value`` header.  Curves: ``t`` plus
one or more value columns; a repeated ``t`` marks a jump, left limit first.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from trimdist.core import GridFunction, Interp
from trimdist.errors import InvalidInput


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise InvalidInput(f"{path} is not UTF-8") from exc


def read_sample(path) -> np.ndarray:
    lines = [ln.strip() for ln in _read_text(path).splitlines()]
    lines = [ln for ln in lines if ln]
    if lines and lines[0].lower() == "value":
        lines = lines[1:]
    out = []
    for k, ln in enumerate(lines, 1):
        if "," in ln or ";" in ln or len(ln.split()) > 1:
            raise InvalidInput(f"{path}: line {k} holds more than one value; use one value per line")
        try:
            v = float(ln)
        except ValueError as exc:
            raise InvalidInput(f"{path}: line {k} is not a number: {ln!r}") from exc
        if not np.isfinite(v):
            raise InvalidInput(f"{path}: line {k} is not finite")
        out.append(v)
    if not out:
        raise InvalidInput(f"{path}: empty sample")
    return np.array(out)


def _parse_rows(path) -> tuple[list[str], np.ndarray]:
    rows = [r for r in csv.reader(io.StringIO(_read_text(path))) if r and any(c.strip() for c in r)]
    if not rows:
        raise InvalidInput(f"{path}: empty curve file")
    header = [c.strip() for c in rows[0]]
    try:
        [float(c) for c in header]
        header = ["t"] + [f"v{i}" for i in range(1, len(rows[0]))]
        body = rows
    except ValueError:
        body = rows[1:]
    if len(header) < 2:
        raise InvalidInput(f"{path}: need a t column and at least one value column")
    try:
        data = np.array([[float(c) for c in r] for r in body], dtype=float)
    except ValueError as exc:
        raise InvalidInput(f"{path}: non-numeric entry") from exc
    if data.ndim != 2 or data.shape[1] != len(header):
        raise InvalidInput(f"{path}: ragged rows")
    return header, data


def _to_function(path, t: np.ndarray, v: np.ndarray, interp: Interp) -> GridFunction:
    if np.any(np.diff(t) < 0):
        raise InvalidInput(f"{path}: t must be nondecreasing")
    nodes, first = np.unique(t, return_index=True)
    counts = np.diff(np.append(first, len(t)))
    if np.any(counts > 2):
        raise InvalidInput(f"{path}: a t value may appear at most twice")
    left = v[first]
    right = v[first + counts - 1]
    if interp is Interp.STEP_LEFT:
        if np.any(counts > 1):
            raise InvalidInput(f"{path}: step curves take one row per node")
        return GridFunction(nodes, left, Interp.STEP_LEFT)
    return GridFunction.from_limits(nodes, left, right)


def read_curve(path, column: str | int = 1, interp: Interp = Interp.LINEAR) -> GridFunction:
    """One value column of a curve file as a :class:`GridFunction`."""
    header, data = _parse_rows(path)
    if isinstance(column, str):
        if column not in header:
            raise InvalidInput(f"{path}: no column {column!r}")
        column = header.index(column)
    if not 1 <= column < len(header):
        raise InvalidInput(f"{path}: no value column {column}")
    return _to_function(path, data[:, 0], data[:, column], Interp(interp))


def curve_rows(fns: Sequence[GridFunction]) -> Iterable[list[float]]:
    """Rows ``t, v1, v2, ...`` on the union of nodes, duplicating jump nodes."""
    nodes = fns[0].nodes
    for fn in fns[1:]:
        nodes = np.union1d(nodes, fn.nodes)
    lims = [fn.limits_at(nodes) for fn in fns]
    for k, t in enumerate(nodes):
        lefts = [lm[0][k] for lm in lims]
        rights = [lm[1][k] for lm in lims]
        yield [t, *lefts]
        if lefts != rights:
            yield [t, *rights]


def write_curves(path_or_file, names: Sequence[str], fns: Sequence[GridFunction]) -> None:
    if len(names) != len(fns):
        raise InvalidInput("one column name per function")
    own = not hasattr(path_or_file, "write")
    fh = open(path_or_file, "w", encoding="utf-8", newline="") if own else path_or_file
    try:
        fh.write(",".join(["t", *names]) + "\n")
        for row in curve_rows(fns):
            fh.write(",".join(_fmt(x) for x in row) + "\n")
    finally:
        if own:
            fh.close()
