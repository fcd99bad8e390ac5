"""Operators, states and their discrete phase-space representatives.

Normalization used throughout:

* the symbol of an operator is ``O(m, n) = Tr[G^dag(m, n) O]``, so the
  identity maps to 1 and ``J_z`` to ``m``;
* reconstruction is ``O = (1/N) sum_{m,n} O(m, n) G(m, n)``;
* the Wigner function is ``W(m, n) = (1/N) Tr[G^dag(m, n) rho]`` and sums to 1;
* the Husimi grid is the Wigner grid smoothed by ``E`` and divided by the
  kernel total, so it also sums to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidStateError, LatticeError
from .lattice import LatticeDim, as_dim, smoothing_kernel, wigner_kernel_stack

GRID_KINDS = ("wigner", "husimi", "generic")
REAL_TOL = 1e-10


@dataclass(frozen=True)
class PhaseGrid:
    """Values on the N x N lattice indexed ``[m + ell, n + ell]``.

    ``m`` is the angular-momentum label and ``n`` the angle label.
    """

    dim: LatticeDim
    kind: str
    values: np.ndarray
    time: Optional[float] = None

    def __post_init__(self):
        if self.kind not in GRID_KINDS:
            raise ValueError(f"unknown grid kind {self.kind!r}")
        vals = np.asarray(self.values)
        n = self.dim.n_dim
        if vals.shape != (n, n):
            raise LatticeError(f"grid shape {vals.shape} does not match N={n}")
        object.__setattr__(self, "values", vals)

    @property
    def n_dim(self) -> int:
        return self.dim.n_dim

    def at(self, m: int, n: int):
        return self.values[self.dim.index(m), self.dim.index(n)]

    def total(self) -> float:
        return self.values.sum()


def angle_of(dim, n):
    """Polar angle ``theta_n = pi n / ell`` attached to angle label ``n``."""
    d = as_dim(dim)
    return np.pi * np.asarray(n) / d.ell


def _dim_of_matrix(op: np.ndarray) -> LatticeDim:
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise LatticeError(f"operator must be square, got shape {op.shape}")
    return as_dim(op.shape[0])


def _maybe_real(values: np.ndarray, tol: float = REAL_TOL) -> np.ndarray:
    if np.abs(values.imag).max() <= tol:
        return np.ascontiguousarray(values.real)
    return values


def _check_dim(d: LatticeDim, dim) -> None:
    if dim is not None and as_dim(dim) != d:
        raise LatticeError(f"operator dimension {d.n_dim} does not match lattice {as_dim(dim).n_dim}")


def map_operator(op: np.ndarray, dim=None) -> PhaseGrid:
    """Phase-space symbol ``Tr[G^dag(m, n) op]`` of a matrix.

    The grid is real when ``op`` is Hermitian (imaginary residue <= 1e-10 is
    dropped); otherwise it stays complex.
    """
    op = np.asarray(op)
    d = _dim_of_matrix(op)
    _check_dim(d, dim)
    g = wigner_kernel_stack(d.n_dim)
    # Tr[G^dag O] = sum_ij conj(G_ij) O_ij
    vals = np.einsum("mnij,ij->mn", np.conj(g), op)
    return PhaseGrid(d, "generic", _maybe_real(vals))


def reconstruct_operator(grid: PhaseGrid, dim=None) -> np.ndarray:
    """Inverse of :func:`map_operator`: ``(1/N) sum grid(m, n) G(m, n)``."""
    d = grid.dim
    _check_dim(d, dim)
    g = wigner_kernel_stack(d.n_dim)
    return np.tensordot(grid.values, g, axes=([0, 1], [0, 1])) / d.n_dim


def check_state(psi, tol: float = 1e-12) -> np.ndarray:
    """Return ``psi`` as a complex vector, rejecting unnormalized input."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise InvalidStateError(f"state must be a vector, got shape {psi.shape}")
    as_dim(psi.size)
    norm = np.vdot(psi, psi).real
    if norm == 0:
        raise InvalidStateError("zero-norm state vector")
    if abs(norm - 1) > tol:
        raise InvalidStateError(f"state is not normalized (norm^2 = {norm:.15g})")
    return psi


def wigner_from_state(psi) -> PhaseGrid:
    """Wigner function of a pure state from its amplitudes ``C_k``.

    Evaluates ``W(m, n) = (1/N) sum_{r,s} exp[2 pi i (m r + n s)/N] g(r, s)`` with
    ``g(r, s) = (1/N) sum_k C_k C*_{k+s} exp[-2 pi i r (k + s/2)/N]`` and the
    index ``k + s`` taken cyclically.
    """
    c = check_state(psi)
    d = as_dim(c.size)
    n = d.n_dim
    labels = d.labels
    idx = np.arange(n)
    # prod[s, k] = C_k conj(C_{k+s})
    prod = c[None, :] * np.conj(c[(idx[None, :] + labels[:, None]) % n])
    rk = np.exp(-2j * np.pi * np.outer(labels, labels) / n)           # [r, k]
    g = (rk @ prod.T) * np.exp(-1j * np.pi * np.outer(labels, labels) / n) / n  # [r, s]
    f = np.exp(2j * np.pi * np.outer(labels, labels) / n)             # [m, r]
    w = f @ g @ f.T / n
    if np.abs(w.imag).max() > REAL_TOL:
        raise InvalidStateError("Wigner grid came out complex; state is malformed")
    return PhaseGrid(d, "wigner", np.ascontiguousarray(w.real))


def check_density(rho, tol: float = 1e-10) -> np.ndarray:
    """Validate a density matrix; the error message names the failed condition."""
    rho = np.asarray(rho, dtype=complex)
    _dim_of_matrix(rho)
    if np.abs(rho - rho.conj().T).max() > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise InvalidStateError(f"density matrix trace is {tr:.12g}, expected 1")
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -tol:
        raise InvalidStateError(f"density matrix is not positive semidefinite (min eigenvalue {lo:.3e})")
    return rho


def wigner_from_density(rho) -> PhaseGrid:
    """Wigner function ``(1/N) Tr[G^dag(m, n) rho]`` of a density matrix."""
    rho = check_density(rho)
    d = as_dim(rho.shape[0])
    vals = map_operator(rho).values / d.n_dim
    if np.iscomplexobj(vals):
        raise InvalidStateError("Wigner grid came out complex")
    return PhaseGrid(d, "wigner", vals)


def husimi_from_wigner(w: PhaseGrid) -> PhaseGrid:
    """Smooth a Wigner grid into the Husimi distribution.

    ``H(m, n) = sum_{m', n'} E(m' - m, n' - n) W(m', n') / c_E`` with cyclic
    differences and ``c_E`` the sum of the kernel, so ``sum H = sum W``.
    """
    if w.kind != "wigner":
        raise ValueError(f"expected a wigner grid, got kind {w.kind!r}")
    vals = np.asarray(w.values)
    if np.iscomplexobj(vals):
        raise InvalidStateError("Wigner grid must be real")
    d = w.dim
    ker = smoothing_kernel(d)
    n = d.n_dim
    idx = np.arange(n)
    # diff[i, i'] = position of (label_i' - label_i) in the kernel array
    diff = (idx[None, :] - idx[:, None] + d.ell) % n
    e = ker.values[diff[:, None, :, None], diff[None, :, None, :]]   # [m, n, m', n']
    h = np.tensordot(e, vals, axes=([2, 3], [0, 1])) / ker.total
    return PhaseGrid(d, "husimi", h, w.time)


def marginals(grid: PhaseGrid):
    """Angular-momentum marginal ``sum_n grid`` and angle marginal ``sum_m grid``."""
    vals = np.asarray(grid.values)
    return vals.sum(axis=1), vals.sum(axis=0)


def angle_amplitudes(psi) -> np.ndarray:
    """Amplitudes ``<v_n|psi>`` with ``<v_n|u_k> = N^{-1/2} exp(-2 pi i k n / N)``."""
    c = np.asarray(psi, dtype=complex)
    d = as_dim(c.size)
    f = np.exp(-2j * np.pi * np.outer(d.labels, d.labels) / d.n_dim) / np.sqrt(d.n_dim)
    return f @ c
