"""Schwinger operators and mod-N invariant kernels on an odd N x N lattice.

Operators act on the N-dimensional space spanned by ``|u_k>``, with labels
``k`` running over ``[-ell, ell]`` (``ell = (N - 1) / 2``) and stored at row
``k + ell``.  Conventions:

* clock ``U|u_k> = exp(2 pi i k / N)|u_k>``
* shift ``V|u_k> = |u_{k-1}>`` (cyclic), so that ``V U = exp(2 pi i / N) U V``
* ``S(k, l) = N^{-1/2} U^k V^l exp(i pi k l / N)``, hence ``S(k, l)^dag = S(-k, -l)``

With this pair the Fourier phase ``phi(k, l; N)`` of the Wigner kernel can be
taken identically zero; see :func:`zero_phase`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ConvergenceError, KernelConstructionError, LatticeError

THETA_TOLERANCE = 1e-15
THETA_MAX_TERMS = 500
REAL_TOLERANCE = 1e-10


@dataclass(frozen=True)
class LatticeDim:
    """Odd state-space dimension ``n_dim`` and its half-width ``ell``."""

    n_dim: int

    def __post_init__(self):
        n = self.n_dim
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise LatticeError(f"n_dim must be an integer, got {n!r}")
        if n < 3 or n % 2 == 0:
            raise LatticeError(f"n_dim must be odd and >= 3, got {n}")
        object.__setattr__(self, "n_dim", int(n))

    @property
    def ell(self) -> int:
        return (self.n_dim - 1) // 2

    @property
    def labels(self) -> np.ndarray:
        return np.arange(-self.ell, self.ell + 1)

    def check_label(self, k: int, name: str = "label") -> int:
        if not -self.ell <= k <= self.ell:
            raise LatticeError(f"{name}={k} outside [{-self.ell}, {self.ell}]")
        return int(k)

    def index(self, k: int) -> int:
        """Storage position of label ``k``."""
        return self.check_label(k) + self.ell

    def wrap(self, k):
        """Representative of ``k`` mod N inside ``[-ell, ell]``."""
        return (np.asarray(k) + self.ell) % self.n_dim - self.ell


DimLike = Union[int, LatticeDim]


def as_dim(dim: DimLike) -> LatticeDim:
    return dim if isinstance(dim, LatticeDim) else LatticeDim(dim)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


# ---------------------------------------------------------------------------
# clock, shift and the Schwinger basis
# ---------------------------------------------------------------------------

def build_clock(dim: DimLike) -> np.ndarray:
    """Diagonal clock operator ``U`` with eigenvalues ``exp(2 pi i k / N)``."""
    d = as_dim(dim)
    return np.diag(np.exp(2j * np.pi * d.labels / d.n_dim))


def build_shift(dim: DimLike) -> np.ndarray:
    """Cyclic shift ``V|u_k> = |u_{k-1}>``, with ``|u_{-ell}>`` sent to ``|u_ell>``."""
    d = as_dim(dim)
    return np.roll(np.eye(d.n_dim, dtype=complex), -1, axis=0)


def _schwinger(d: LatticeDim, k, l) -> np.ndarray:
    # <a|U^k V^l|b> = exp(2 pi i k a / N) delta(a, b - l mod N)
    n = d.n_dim
    labels = d.labels
    rows = (np.arange(n) - l) % n
    out = np.zeros((n, n), dtype=complex)
    out[rows, np.arange(n)] = np.exp(2j * np.pi * k * labels[rows] / n)
    return out * np.exp(1j * np.pi * k * l / n) / np.sqrt(n)


def schwinger_s(dim: DimLike, k: int, l: int) -> np.ndarray:
    """Schwinger basis element ``S(k, l)``; labels must lie in ``[-ell, ell]``."""
    d = as_dim(dim)
    d.check_label(k, "k")
    d.check_label(l, "l")
    return _schwinger(d, k, l)


@functools.lru_cache(maxsize=None)
def schwinger_stack(n_dim: int) -> np.ndarray:
    """All ``S(k, l)`` as an array indexed ``[k + ell, l + ell, row, col]``."""
    d = as_dim(n_dim)
    stack = np.array([[_schwinger(d, k, l) for l in d.labels] for k in d.labels])
    return _readonly(stack)


# ---------------------------------------------------------------------------
# Wigner kernel
# ---------------------------------------------------------------------------

PhaseFunction = Callable[[np.ndarray, np.ndarray, int], np.ndarray]


def zero_phase(k: np.ndarray, l: np.ndarray, n_dim: int) -> np.ndarray:
    """Fourier phase ``phi(k, l; N)`` (in units of pi) used by the shipped kernels.

    The symmetric factor ``exp(i pi k l / N)`` inside ``S(k, l)`` together with
    the chosen shift direction already makes ``S^dag(k, l) = S(-k, -l)``, so no
    extra phase is needed for Hermiticity, unit trace or mod-N invariance.
    """
    return np.zeros(np.broadcast(k, l).shape)


def _fourier_weights(d: LatticeDim, m, n, phase: PhaseFunction) -> np.ndarray:
    kk, ll = np.meshgrid(d.labels, d.labels, indexing="ij")
    return np.exp(1j * np.pi * phase(kk, ll, d.n_dim)
                  - 2j * np.pi * (m * kk + n * ll) / d.n_dim)


def wigner_kernel(dim: DimLike, m: int, n: int,
                  phase: PhaseFunction = zero_phase) -> np.ndarray:
    """Mod-N invariant operator basis element ``G(m, n)``.

    ``m`` and ``n`` may be any integers; shifting either by N reproduces the
    same matrix.
    """
    d = as_dim(dim)
    w = _fourier_weights(d, m, n, phase)
    return np.tensordot(w, schwinger_stack(d.n_dim), axes=([0, 1], [0, 1])) / np.sqrt(d.n_dim)


def _kernel_stack(d: LatticeDim, weights_kl: np.ndarray, phase: PhaseFunction) -> np.ndarray:
    # weights_kl multiplies S(k, l) before the double Fourier sum
    n = d.n_dim
    labels = d.labels
    kk, ll = np.meshgrid(labels, labels, indexing="ij")
    f = np.exp(-2j * np.pi * np.outer(labels, labels) / n)  # f[m, k]
    coeff = np.exp(1j * np.pi * phase(kk, ll, n)) * weights_kl
    scaled = schwinger_stack(n) * coeff[:, :, None, None]
    # sum_k f[m,k] sum_l f[n,l] scaled[k,l]
    tmp = np.tensordot(f, scaled, axes=([1], [0]))          # [m, l, i, j]
    out = np.tensordot(f, tmp, axes=([1], [1]))              # [n, m, i, j]
    return np.swapaxes(out, 0, 1) / np.sqrt(n)


def check_wigner_kernels(stack: np.ndarray, d: LatticeDim, phase: PhaseFunction,
                         tol: float = 1e-10) -> None:
    """Raise :class:`KernelConstructionError` if a kernel stack misbehaves."""
    n = d.n_dim
    herm = np.abs(stack - np.conj(np.swapaxes(stack, 2, 3))).max()
    if herm > tol:
        raise KernelConstructionError(f"G(m,n) not Hermitian (residual {herm:.2e})")
    traces = np.einsum("mnii->mn", stack)
    if np.abs(traces - 1).max() > tol:
        raise KernelConstructionError("Tr G(m,n) != 1")
    flat = stack.reshape(n * n, n * n)
    gram = np.conj(flat) @ flat.T
    if np.abs(gram - n * np.eye(n * n)).max() > tol * n:
        raise KernelConstructionError("Tr[G^dag G'] != N delta delta")
    for m, nn in ((d.ell, 0), (0, -d.ell), (1, 1)):
        shifted = wigner_kernel(d, m + n, nn - n, phase)
        if np.abs(shifted - stack[m + d.ell, nn + d.ell]).max() > tol:
            raise KernelConstructionError(f"mod-N invariance fails at ({m}, {nn})")


@functools.lru_cache(maxsize=None)
def wigner_kernel_stack(n_dim: int) -> np.ndarray:
    """Cached ``G(m, n)`` for all lattice points, indexed ``[m + ell, n + ell]``."""
    d = as_dim(n_dim)
    stack = _kernel_stack(d, np.ones((n_dim, n_dim)), zero_phase)
    check_wigner_kernels(stack, d, zero_phase)
    return _readonly(stack)


# ---------------------------------------------------------------------------
# Jacobi theta functions and the bell-shaped kernel
# ---------------------------------------------------------------------------

def theta(kind: int, z, tau: complex, tol: float = THETA_TOLERANCE,
          max_terms: int = THETA_MAX_TERMS):
    """Jacobi theta function ``theta_kind(z | tau)`` for kind 2, 3 or 4.

    Uses the nome ``q = exp(i pi tau)``::

        theta_2 = 2 sum_{n>=0} q^{(n+1/2)^2} cos((2n+1) z)
        theta_3 = 1 + 2 sum_{n>=1} q^{n^2} cos(2 n z)
        theta_4 = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n z)

    Terms are accumulated in ascending order until an upper bound on the term
    magnitude drops below ``tol``.  ``z`` may be an array.
    """
    if kind not in (2, 3, 4):
        raise ValueError(f"theta kind must be 2, 3 or 4, got {kind}")
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"theta series needs Im(tau) > 0, got tau={tau}")
    z = np.asarray(z, dtype=complex)
    growth = float(np.max(np.abs(z.imag))) if z.size else 0.0

    if kind == 2:
        total = np.zeros(z.shape, dtype=complex)
        start = 0
    else:
        total = np.ones(z.shape, dtype=complex)
        start = 1
    for p in range(start, start + max_terms):
        freq = 2 * p + 1 if kind == 2 else 2 * p
        expo = (p + 0.5) ** 2 if kind == 2 else p * p
        weight = np.exp(1j * np.pi * tau * expo)
        if kind == 4 and p % 2:
            weight = -weight
        total = total + 2 * weight * np.cos(freq * z)
        bound = 2 * abs(weight) * np.exp(freq * growth)
        if bound < tol and freq * growth < np.pi * tau.imag * expo:
            break
    else:
        raise ConvergenceError(
            f"theta_{kind} series did not converge within {max_terms} terms")
    return total[()] if total.ndim == 0 else total


def _bell_kernel_raw(d: LatticeDim, eta, xi) -> np.ndarray:
    n = d.n_dim
    a = 1.0 / (2 * n)
    t3 = lambda z, t: theta(3, z, t)
    t4 = lambda z, t: theta(4, z, t)
    norm = 2 * (t3(0, 1j * a) * t3(0, 4j * a) + t4(0, 1j * a) * theta(2, 0, 4j * a))
    eta = np.asarray(eta)
    xi = np.asarray(xi)
    ze, zx = np.pi * a * eta, np.pi * a * xi
    val = (t3(ze, 1j * a) * t3(zx, 1j * a)
           + t3(ze, 1j * a) * t4(zx, 1j * a) * np.exp(1j * np.pi * eta)
           + t4(ze, 1j * a) * t3(zx, 1j * a) * np.exp(1j * np.pi * xi)
           + t4(ze, 1j * a) * t4(zx, 1j * a) * np.exp(1j * np.pi * (eta + xi + n)))
    return val / norm


@functools.lru_cache(maxsize=None)
def bell_kernel_grid(n_dim: int) -> np.ndarray:
    """``K(eta, xi)`` on the whole lattice, indexed ``[eta + ell, xi + ell]``."""
    d = as_dim(n_dim)
    ee, xx = np.meshgrid(d.labels, d.labels, indexing="ij")
    vals = _bell_kernel_raw(d, ee, xx)
    if np.abs(vals.imag).max() > 1e-12:
        raise KernelConstructionError("bell kernel has a non-negligible imaginary part")
    return _readonly(np.ascontiguousarray(vals.real))


def bell_kernel(dim: DimLike, eta: int, xi: int) -> float:
    """Theta-product weight ``K(eta, xi)`` with nome parameter ``a = 1/(2N)``."""
    d = as_dim(dim)
    return float(bell_kernel_grid(d.n_dim)[d.index(eta), d.index(xi)])


# ---------------------------------------------------------------------------
# s-parametrized kernels and the Wigner -> Husimi smoothing kernel
# ---------------------------------------------------------------------------

def _s_weights(d: LatticeDim, s: float) -> np.ndarray:
    if not np.isfinite(s) or abs(s) > 1:
        raise ValueError(f"|s| must not exceed 1, got s={s}")
    k = bell_kernel_grid(d.n_dim)
    if s == 0:
        return np.ones_like(k)
    if s > 0 and np.abs(k).min() < 1e-300:
        raise KernelConstructionError("K(eta, xi) vanishes: K^{-s} has a pole for s > 0")
    if np.any(k < 0) and float(s) != int(s):
        raise ValueError("negative K(eta, xi) with non-integer s")
    return k ** (-s)


def s_kernel(dim: DimLike, s: float, m: int, n: int) -> np.ndarray:
    """s-parametrized basis element ``T^(s)(m, n)``; ``T^(0)`` equals ``G``."""
    d = as_dim(dim)
    d.check_label(m, "m")
    d.check_label(n, "n")
    w = _fourier_weights(d, m, n, zero_phase) * _s_weights(d, s)
    return np.tensordot(w, schwinger_stack(d.n_dim), axes=([0, 1], [0, 1])) / np.sqrt(d.n_dim)


@functools.lru_cache(maxsize=None)
def s_kernel_stack(n_dim: int, s: float) -> np.ndarray:
    """Cached ``T^(s)(m, n)`` for all lattice points."""
    d = as_dim(n_dim)
    return _readonly(_kernel_stack(d, _s_weights(d, s), zero_phase))


@dataclass(frozen=True)
class SmoothingKernel:
    """Translation-invariant kernel ``E(dm, dn)``, indexed ``[dm + ell, dn + ell]``."""

    dim: LatticeDim
    values: np.ndarray

    @property
    def total(self) -> float:
        """Sum over all differences; the Husimi rescale constant."""
        return float(self.values.sum())

    def at(self, dm, dn):
        """Kernel value for arbitrary integer differences (reduced mod N)."""
        d = self.dim
        return self.values[d.wrap(dm) + d.ell, d.wrap(dn) + d.ell]


def _smoothing_from_base(d: LatticeDim, m0: int, n0: int) -> np.ndarray:
    g = wigner_kernel_stack(d.n_dim)[m0 + d.ell, n0 + d.ell]
    t = s_kernel_stack(d.n_dim, -1.0)
    rows = d.wrap(m0 + d.labels) + d.ell
    cols = d.wrap(n0 + d.labels) + d.ell
    shifted = t[rows][:, cols]
    # Tr[G T'] = sum_ij G_ij T'_ji
    return np.einsum("ij,abji->ab", g, shifted)


@functools.lru_cache(maxsize=None)
def _smoothing_cached(n_dim: int) -> SmoothingKernel:
    d = as_dim(n_dim)
    base = _smoothing_from_base(d, 0, 0)
    other = _smoothing_from_base(d, d.wrap(1), d.wrap(-1))
    if np.abs(base - other).max() > REAL_TOLERANCE:
        raise KernelConstructionError("smoothing kernel is not translation invariant")
    if np.abs(base.imag).max() > REAL_TOLERANCE:
        raise KernelConstructionError("smoothing kernel has a non-negligible imaginary part")
    return SmoothingKernel(d, _readonly(np.ascontiguousarray(base.real)))


def smoothing_kernel(dim: DimLike) -> SmoothingKernel:
    """Wigner -> Husimi kernel ``E(m' - m, n' - n) = Tr[T^(0)(m, n) T^(-1)(m', n')]``."""
    return _smoothing_cached(as_dim(dim).n_dim)
