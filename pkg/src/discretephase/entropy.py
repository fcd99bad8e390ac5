"""Wehrl-type entropies of Husimi grids and the mutual-correlation functional."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .dynamics import TimeSeries
from .errors import InvalidStateError
from .mapping import PhaseGrid, marginals

NEGATIVE_TOL = 1e-10
TINY = 1e-300


@dataclass(frozen=True)
class EntropyRecord:
    time: float
    s_husimi: float
    s_momentum: float
    s_angle: float
    mutual: float


def _entropy(p: np.ndarray, n_dim: int) -> float:
    p = np.asarray(p, dtype=float)
    if p.min() < -NEGATIVE_TOL:
        raise InvalidStateError(f"distribution has a negative entry {p.min():.3e}")
    # 0 log 0 := 0; tiny negative round-off is treated as zero
    q = p[p >= TINY]
    # entries rounding to just above 1 would give a -1e-17 residue
    return max(0.0, float(-np.sum(q * np.log(q)) / n_dim))


def wehrl_entropy(h: PhaseGrid) -> float:
    """``-(1/N) sum H log H`` with the natural logarithm."""
    return _entropy(h.values, h.n_dim)


def marginal_entropies(h: PhaseGrid) -> Tuple[float, float]:
    """Entropies of the angular-momentum and angle marginals, same functional form."""
    jm, th = marginals(h)
    return _entropy(jm, h.n_dim), _entropy(th, h.n_dim)


def mutual_correlation(rec) -> float:
    """``S(J) + S(Theta) - S(H)`` from ``(s_momentum, s_angle, s_husimi)``."""
    s_mom, s_ang, s_hus = rec
    value = s_mom + s_ang - s_hus
    if value < -NEGATIVE_TOL:
        raise InvalidStateError(f"mutual correlation is negative ({value:.3e})")
    return value


def entropy_record(h: PhaseGrid, time: Optional[float] = None) -> EntropyRecord:
    s_h = wehrl_entropy(h)
    s_m, s_a = marginal_entropies(h)
    t = h.time if time is None else time
    return EntropyRecord(float("nan") if t is None else float(t),
                         s_h, s_m, s_a, mutual_correlation((s_m, s_a, s_h)))


def entropy_trace(grids: Sequence[PhaseGrid], times=None):
    """Entropy records for a sequence of Husimi grids.

    Returns the Wehrl-entropy :class:`TimeSeries` together with the list of
    per-step :class:`EntropyRecord`.
    """
    if times is None:
        times = [g.time for g in grids]
    if len(times) != len(grids):
        raise ValueError("grids and times have different lengths")
    records = [entropy_record(g, t) for g, t in zip(grids, times)]
    series = TimeSeries(np.asarray(times, dtype=float),
                        np.array([r.s_husimi for r in records]))
    return series, records


def mutual_series(records: Sequence[EntropyRecord]) -> TimeSeries:
    return TimeSeries(np.array([r.time for r in records]),
                      np.array([r.mutual for r in records]))


__all__: List[str] = [
    "EntropyRecord", "wehrl_entropy", "marginal_entropies", "mutual_correlation",
    "entropy_record", "entropy_trace", "mutual_series",
]
