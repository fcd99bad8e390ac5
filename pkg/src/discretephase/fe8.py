"""Giant-spin Hamiltonian of the Fe8 cluster and its reference states.

Energies are in kelvin (``E / k_B``), fields in tesla.  The angular momentum
basis ``|j, k>`` coincides with the clock eigenbasis ``|u_k>``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass
from typing import List

import numpy as np

from .errors import InvalidStateError, NotHermitianError
from .lattice import DimLike, LatticeDim, as_dim
from .mapping import PhaseGrid, map_operator

MU_B_OVER_KB = 0.671714  # K / T
D_FE8 = -0.275
E_FE8 = 0.046
J_FE8 = 10


@dataclass(frozen=True)
class Fe8Params:
    """Physical parameters of the giant-spin model.

    ``alpha`` is the angle of the transverse field in radians.
    """

    j: int = J_FE8
    d_anis: float = D_FE8
    e_anis: float = E_FE8
    h_par: float = 0.0
    h_perp: float = 0.0
    alpha: float = 0.0
    g_factor: float = 2.0
    mu_b_over_kb: float = MU_B_OVER_KB

    def __post_init__(self):
        if isinstance(self.j, bool) or int(self.j) != self.j or self.j <= 0:
            raise ValueError(f"j must be a positive integer, got {self.j!r}")
        object.__setattr__(self, "j", int(self.j))
        if not self.d_anis < 0:
            raise ValueError(f"d_anis must be negative (easy axis), got {self.d_anis}")
        for name in ("e_anis", "h_par", "h_perp", "alpha", "g_factor", "mu_b_over_kb"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def n_dim(self) -> int:
        return 2 * self.j + 1

    @property
    def zeeman(self) -> float:
        """``g mu_B / k_B`` in K/T."""
        return self.g_factor * self.mu_b_over_kb

    @property
    def a_coef(self) -> float:
        return self.zeeman * self.h_par

    @property
    def b_coef(self) -> float:
        return self.zeeman * math.cos(self.alpha) * self.h_perp

    @property
    def c_coef(self) -> float:
        return self.zeeman * math.sin(self.alpha) * self.h_perp

    def digest(self) -> str:
        """Short stable hash of the parameter record."""
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending eigenvalues and eigenvectors (columns) of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vector(self, i: int) -> np.ndarray:
        return self.eigenvectors[:, i]

    def gap(self, i: int = 0, j: int = 1) -> float:
        return float(self.eigenvalues[j] - self.eigenvalues[i])


def build_jz(dim: DimLike) -> np.ndarray:
    d = as_dim(dim)
    return np.diag(d.labels.astype(complex))


def build_jplus(dim: DimLike) -> np.ndarray:
    """Raising operator, ``J_+|j,k> = sqrt((j-k)(j+k+1)) |j,k+1>``; no cyclic wrap."""
    d = as_dim(dim)
    j = d.ell
    k = d.labels[:-1]
    return np.diag(np.sqrt((j - k) * (j + k + 1.0)), -1).astype(complex)


def build_jminus(dim: DimLike) -> np.ndarray:
    return build_jplus(dim).conj().T


def build_hamiltonian(p: Fe8Params) -> np.ndarray:
    """``D Jz^2 + (E/2)(J+^2 + J-^2) + A Jz + B(J+ + J-) + iC(J+ - J-)``.

    The last term carries a factor ``i`` so the operator is Hermitian.
    """
    n = p.n_dim
    jz, jp, jm = build_jz(n), build_jplus(n), build_jminus(n)
    h0 = p.d_anis * jz @ jz + 0.5 * p.e_anis * (jp @ jp + jm @ jm)
    h1 = p.a_coef * jz + p.b_coef * (jp + jm) + 1j * p.c_coef * (jp - jm)
    return h0 + h1


def diagonalize(h: np.ndarray, tol: float = 1e-10) -> SpectrumResult:
    """Ascending spectrum of a Hermitian matrix with deterministic phases.

    Every eigenvector is rotated so its largest-magnitude component is real
    and positive (the first such component on ties).
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"matrix must be square, got shape {h.shape}")
    scale = max(1.0, np.abs(h).max())
    if np.abs(h - h.conj().T).max() > tol * scale:
        raise NotHermitianError("matrix is not Hermitian")
    vals, vecs = np.linalg.eigh(0.5 * (h + h.conj().T))
    mags = np.abs(vecs)
    lead = np.argmax(mags >= mags.max(axis=0) * (1 - 1e-9), axis=0)
    ph = vecs[lead, np.arange(vecs.shape[1])]
    vecs = vecs * (np.abs(ph) / ph)[None, :]
    return SpectrumResult(vals, vecs)


def mapped_hamiltonian(p: Fe8Params) -> PhaseGrid:
    """Phase-space symbol ``h(m, n)`` of the Fe8 Hamiltonian, obtained by tracing."""
    return map_operator(build_hamiltonian(p))


def potential(theta, p: Fe8Params):
    """Double-well potential ``V(theta)`` of the angle-based picture, in K."""
    jj = p.j * (p.j + 1)
    c = np.cos(theta)
    return ((p.d_anis + p.e_anis) * jj * c ** 2
            - p.zeeman * p.h_par * math.sqrt(jj) * c
            - p.e_anis * jj)


def sharp_angle_state(dim: DimLike, n0: int) -> np.ndarray:
    """Angle eigenstate ``|v_n0>`` expanded in the ``|u_k>`` basis."""
    d = as_dim(dim)
    d.check_label(n0, "n0")
    return np.exp(2j * np.pi * d.labels * n0 / d.n_dim) / np.sqrt(d.n_dim)


def eigenstate(spec: SpectrumResult, i: int) -> np.ndarray:
    if not 0 <= i < spec.eigenvalues.size:
        raise IndexError(f"eigen-index {i} out of range")
    return spec.vector(i).copy()


def doublet_combination(spec: SpectrumResult, i: int, j: int, sign: int = 1) -> np.ndarray:
    """``(|i> + sign |j>) / sqrt(2)`` built from two eigenvectors."""
    size = spec.eigenvalues.size
    for idx in (i, j):
        if not 0 <= idx < size:
            raise IndexError(f"eigen-index {idx} out of range")
    if i == j:
        raise InvalidStateError("doublet needs two distinct eigen-indices")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    psi = (spec.vector(i) + sign * spec.vector(j)) / np.sqrt(2)
    return psi / np.linalg.norm(psi)


def spectrum(p: Fe8Params) -> SpectrumResult:
    return diagonalize(build_hamiltonian(p))


def lattice_of(p: Fe8Params) -> LatticeDim:
    return LatticeDim(p.n_dim)


__all__: List[str] = [
    "Fe8Params", "SpectrumResult", "build_jz", "build_jplus", "build_jminus",
    "build_hamiltonian", "diagonalize", "mapped_hamiltonian", "potential",
    "sharp_angle_state", "eigenstate", "doublet_combination", "spectrum",
    "MU_B_OVER_KB",
]
