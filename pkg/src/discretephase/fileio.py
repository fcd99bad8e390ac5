"""Text exports (grids, spectra, time series) and grayscale heatmaps.

Numbers are written with ``repr``, the shortest decimal string that parses
back to the identical float, so every file round-trips bit for bit.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .lattice import LatticeDim
from .mapping import PhaseGrid, angle_of

GRID_COLUMNS = ("m", "n", "theta_n", "value")


def fmt(x) -> str:
    return repr(float(x))


def _header(meta: Dict[str, object]) -> List[str]:
    return [f"# {k}={v}" for k, v in meta.items()]


def write_table(path, columns: Sequence[str], rows: Iterable[Sequence], meta: Dict[str, object]) -> Path:
    """Write a comma-separated table preceded by ``# key=value`` lines."""
    lines = _header(meta)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) if isinstance(v, float) else str(v)
                              for v in row))
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_table(path) -> Tuple[Dict[str, str], List[str], List[List[str]]]:
    meta: Dict[str, str] = {}
    columns: List[str] = []
    rows: List[List[str]] = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key.strip()] = value.strip()
        elif not columns:
            columns = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, columns, rows


def write_grid(path, grid: PhaseGrid, digest: str = "") -> Path:
    """Write a grid file: header lines, then ``m,n,theta_n,value`` rows."""
    vals = np.asarray(grid.values)
    if np.iscomplexobj(vals) or not np.all(np.isfinite(vals)):
        raise ValueError("grid files hold finite real values only")
    d = grid.dim
    meta = {"n_dim": d.n_dim, "kind": grid.kind,
            "time": "" if grid.time is None else fmt(grid.time),
            "params_digest": digest}
    rows = [(int(m), int(n), float(angle_of(d, n)), float(vals[m + d.ell, n + d.ell]))
            for m in d.labels for n in d.labels]
    return write_table(path, GRID_COLUMNS, rows, meta)


def read_grid(path) -> Tuple[PhaseGrid, Dict[str, str]]:
    """Parse a grid file back into a :class:`PhaseGrid` and its header."""
    meta, columns, rows = read_table(path)
    if tuple(columns) != GRID_COLUMNS:
        raise ValueError(f"{path}: not a grid file (columns {columns})")
    try:
        d = LatticeDim(int(meta["n_dim"]))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{path}: bad n_dim header") from exc
    if len(rows) != d.n_dim ** 2:
        raise ValueError(f"{path}: expected {d.n_dim ** 2} rows, found {len(rows)}")
    vals = np.full((d.n_dim, d.n_dim), np.nan)
    for row in rows:
        m, n, value = int(row[0]), int(row[1]), float(row[3])
        vals[d.index(m), d.index(n)] = value
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"{path}: missing or non-finite grid values")
    time = float(meta["time"]) if meta.get("time") else None
    return PhaseGrid(d, meta.get("kind", "generic"), vals, time), meta


def heatmap_bytes(values: np.ndarray) -> bytes:
    """Binary PGM (P5) image, one pixel per lattice site.

    Row 0 is the largest ``m``; columns run over ascending ``n``.  The minimum
    maps to black and the maximum to white; a constant grid renders mid-gray.
    """
    vals = np.asarray(values, dtype=float)
    lo, hi = vals.min(), vals.max()
    if hi > lo:
        pix = np.rint((vals - lo) / (hi - lo) * 255)
    else:
        pix = np.full(vals.shape, 128.0)
    img = pix[::-1].astype(np.uint8)
    rows, cols = img.shape
    return f"P5\n{cols} {rows}\n255\n".encode("ascii") + img.tobytes()


def write_heatmap(path, grid: PhaseGrid) -> Path:
    path = Path(path)
    path.write_bytes(heatmap_bytes(grid.values))
    return path
