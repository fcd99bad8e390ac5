"""Discrete Liouvillian, Wigner-function propagation and revival analysis.

Time is measured in K^-1 with hbar = 1 and energies in kelvin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .errors import ConvergenceError, LatticeError, NoRevivalError, NotHermitianError
from .fe8 import SpectrumResult
from .lattice import LatticeDim, as_dim, wigner_kernel_stack
from .mapping import PhaseGrid, check_state

SERIES_TOLERANCE = 1e-12
SERIES_MAX_ORDER = 40
REVIVAL_FRACTION = 0.9


@dataclass(frozen=True)
class Superoperator:
    """Liouvillian acting on flattened grids, ``matrix[(u, v), (r, s)]``."""

    dim: LatticeDim
    matrix: np.ndarray

    def apply(self, values: np.ndarray) -> np.ndarray:
        n = self.dim.n_dim
        return (self.matrix @ np.asarray(values).reshape(n * n)).reshape(n, n)


@dataclass(frozen=True)
class EvolutionConfig:
    dt: float = 0.05
    steps: int = 50
    series_order_tolerance: float = SERIES_TOLERANCE
    max_order: int = SERIES_MAX_ORDER

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 0:
            raise ValueError(f"steps must be a non-negative integer, got {self.steps}")
        if not self.series_order_tolerance > 0:
            raise ValueError("series_order_tolerance must be positive")

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.steps + 1)


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.times.size


def build_liouvillian(h: np.ndarray, tol: float = 1e-10) -> Superoperator:
    """Superoperator with ``i dW/dt = L W`` for the Hamiltonian ``h``.

    Entries are ``L(u, v; r, s) = (1/N) Tr[G^dag(u, v) [h, G(r, s)]]``.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise LatticeError(f"Hamiltonian must be square, got {h.shape}")
    if np.abs(h - h.conj().T).max() > tol * max(1.0, np.abs(h).max()):
        raise NotHermitianError("Hamiltonian is not Hermitian")
    d = as_dim(h.shape[0])
    n = d.n_dim
    g = wigner_kernel_stack(n).reshape(n * n, n, n)
    comm = np.matmul(h, g) - np.matmul(g, h)
    # Tr[G_a^dag C_b] = sum_ij conj(G_a)_ij (C_b)_ij
    mat = np.conj(g.reshape(n * n, n * n)) @ comm.reshape(n * n, n * n).T / n
    return Superoperator(d, mat)


def propagate_exact(psi0, spec: SpectrumResult, t: float) -> np.ndarray:
    """Evolve a state with ``exp(-i H t)`` in the eigenbasis of ``spec``."""
    psi0 = check_state(psi0, tol=1e-10)
    vecs = spec.eigenvectors
    if vecs.shape[0] != psi0.size:
        raise LatticeError("state and spectrum dimensions differ")
    if t == 0:
        return psi0.copy()
    amps = vecs.conj().T @ psi0
    return vecs @ (np.exp(-1j * spec.eigenvalues * t) * amps)


def series_step(values: np.ndarray, lv: Superoperator, dt: float,
                tol: float = SERIES_TOLERANCE, max_order: int = SERIES_MAX_ORDER) -> np.ndarray:
    """One step of ``sum_p (-i dt)^p / p! L^p W``, truncated on the term max-norm."""
    term = np.asarray(values, dtype=complex)
    acc = term.copy()
    for p in range(1, max_order + 1):
        term = lv.apply(term) * (-1j * dt / p)
        acc += term
        if np.abs(term).max() < tol:
            return acc
    raise ConvergenceError(
        f"propagator series not converged after {max_order} orders "
        f"(last term {np.abs(term).max():.2e}); try a smaller dt")


def propagate_series(w0: PhaseGrid, lv: Superoperator,
                     cfg: EvolutionConfig) -> List[PhaseGrid]:
    """Wigner grids at ``t = 0, dt, ..., steps*dt`` from the truncated series."""
    if w0.dim != lv.dim:
        raise LatticeError("grid and Liouvillian dimensions differ")
    t0 = 0.0 if w0.time is None else w0.time
    out = [PhaseGrid(w0.dim, w0.kind, np.asarray(w0.values, dtype=float), t0)]
    current = np.asarray(w0.values, dtype=complex)
    total0 = float(np.real(current.sum()))
    for i in range(1, cfg.steps + 1):
        current = series_step(current, lv, cfg.dt, cfg.series_order_tolerance, cfg.max_order)
        if np.abs(current.imag).max() > 1e-8:
            raise ConvergenceError(f"propagated grid acquired an imaginary part at step {i}")
        if abs(current.real.sum() - total0) > 1e-8:
            raise ConvergenceError(f"grid normalization drifted at step {i}")
        out.append(PhaseGrid(w0.dim, w0.kind, np.ascontiguousarray(current.real), t0 + i * cfg.dt))
    return out


def correlation(wi: PhaseGrid, wf: PhaseGrid) -> float:
    """Lattice inner product ``sum_{m,n} W_i(m, n) W_f(m, n)``."""
    if wi.dim != wf.dim:
        raise LatticeError("grids have different dimensions")
    return float(np.sum(np.asarray(wi.values) * np.asarray(wf.values)))


def correlation_series(grids: Sequence[PhaseGrid], times=None) -> TimeSeries:
    """Correlation of every grid with the first one."""
    if times is None:
        times = [g.time for g in grids]
    return TimeSeries(np.asarray(times, dtype=float),
                      np.array([correlation(grids[0], g) for g in grids]))


def _refine(t: np.ndarray, y: np.ndarray, i: int) -> float:
    # vertex of the parabola through three neighbouring samples
    if i <= 0 or i >= y.size - 1:
        return float(t[i])
    denom = y[i - 1] - 2 * y[i] + y[i + 1]
    if denom == 0:
        return float(t[i])
    delta = 0.5 * (y[i - 1] - y[i + 1]) / denom
    step = t[i + 1] - t[i] if delta > 0 else t[i] - t[i - 1]
    return float(t[i] + delta * step)


def _overlap_ratio(ref: np.ndarray, other: np.ndarray) -> float:
    return float(np.sum(ref * other) / np.sum(ref * ref))


def extract_period(ts: TimeSeries, mode: str = "max", grids: Sequence[PhaseGrid] = None,
                   fraction: float = REVIVAL_FRACTION) -> float:
    """Revival time of the initial value of a sampled signal.

    ``mode="max"`` (correlation functions): the series must first fall below
    ``fraction * v0``; the period is the first later local maximum above that
    threshold.

    ``mode="min"`` (entropies, which start at a minimum): without ``grids`` the
    first local minimum after the signal has left a band of ``1 - fraction`` of
    its excursion around ``v0``.  An entropy cannot tell apart equally
    concentrated distributions in different parts of phase space, so when the
    grids behind the series are given a minimum only counts once the grid there
    overlaps the initial grid by at least ``fraction`` of its self-overlap,
    after having left that region.

    The matching sample is refined with three-point quadratic interpolation.
    """
    t, y = ts.times, ts.values
    if y.size < 3:
        raise NoRevivalError("series too short to contain a revival")
    if np.ptp(y) == 0:
        raise NoRevivalError("series is constant; no revival to locate")
    if mode == "max":
        y_work = y
    elif mode == "min":
        y_work = -y
    else:
        raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")

    if grids is not None:
        if len(grids) != y.size:
            raise ValueError("grids and series have different lengths")
        ref = np.asarray(grids[0].values)
        inside = np.array([_overlap_ratio(ref, np.asarray(g.values)) >= fraction
                           for g in grids])
    elif mode == "max":
        inside = y_work >= y_work[0] - (1 - fraction) * abs(y_work[0])
    else:
        inside = y_work >= y_work[0] - (1 - fraction) * np.ptp(y_work)

    left = False
    for i in range(2, y.size - 1):
        if not inside[i]:
            left = True
            continue
        if left and y_work[i] >= y_work[i - 1] and y_work[i] >= y_work[i + 1]:
            return _refine(t, y_work, i)
    raise NoRevivalError("no revival of the initial value found within the series")


def gap_from_period(tau: float) -> float:
    """Energy gap ``2 pi / tau`` in K for a period in K^-1."""
    if not tau > 0:
        raise ValueError(f"period must be positive, got {tau}")
    return 2 * math.pi / tau
