import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discretephase.errors import InvalidStateError, LatticeError, NotHermitianError
from discretephase.fe8 import (
    Fe8Params, build_hamiltonian, build_jminus, build_jplus, build_jz,
    diagonalize, doublet_combination, eigenstate, mapped_hamiltonian,
    potential, sharp_angle_state, spectrum,
)
from discretephase.lattice import LatticeDim
from discretephase.mapping import map_operator


def test_params_defaults_and_coefficients():
    p = Fe8Params(h_par=0.11, h_perp=2.0, alpha=math.pi / 3)
    assert p.n_dim == 21
    assert p.zeeman == pytest.approx(2 * 0.671714)
    assert p.a_coef == pytest.approx(2 * 0.671714 * 0.11)
    assert p.b_coef == pytest.approx(2 * 0.671714 * 2.0 * 0.5)
    assert p.c_coef == pytest.approx(2 * 0.671714 * 2.0 * math.sin(math.pi / 3))


def test_params_validation():
    with pytest.raises(ValueError):
        Fe8Params(d_anis=0.1)
    with pytest.raises(ValueError):
        Fe8Params(h_par=float("nan"))


def test_params_digest_is_stable():
    assert Fe8Params().digest() == Fe8Params().digest()
    assert Fe8Params(h_par=0.11).digest() != Fe8Params().digest()


# -- angular momentum operators ---------------------------------------------

def test_ladder_coefficients():
    d = LatticeDim(21)
    jp = build_jplus(21)
    # J+|10, -10> = sqrt(20) |10, -9>
    assert jp[d.index(-9), d.index(-10)] == pytest.approx(math.sqrt(20))
    # J+|10, 10> = 0, no wrap to -10
    assert np.abs(jp[:, d.index(10)]).max() == 0
    assert np.abs(build_jminus(21)[:, d.index(-10)]).max() == 0


@pytest.mark.parametrize("n", (3, 7, 21))
def test_angular_momentum_algebra(n):
    jz, jp, jm = build_jz(n), build_jplus(n), build_jminus(n)
    assert np.abs(jz @ jp - jp @ jz - jp).max() < 1e-12
    assert np.abs(jp @ jm - jm @ jp - 2 * jz).max() < 1e-12
    j = (n - 1) / 2
    casimir = jz @ jz + 0.5 * (jp @ jm + jm @ jp)
    assert np.abs(casimir - j * (j + 1) * np.eye(n)).max() < 1e-10


def test_hamiltonian_matrix_elements():
    p = Fe8Params(h_par=0.11)
    d = LatticeDim(21)
    h = build_hamiltonian(p)
    assert h[d.index(-10), d.index(-10)].real == pytest.approx(-0.275 * 100 - p.a_coef * 10)
    assert h[d.index(-8), d.index(-10)].real == pytest.approx(0.023 * math.sqrt(760), abs=1e-12)
    assert h[d.index(-8), d.index(-10)].real == pytest.approx(0.63406, abs=1e-5)
    assert abs(h[d.index(-9), d.index(-10)]) == 0


def test_hamiltonian_is_hermitian_with_transverse_field():
    h = build_hamiltonian(Fe8Params(h_par=0.01, h_perp=2.0, alpha=math.pi / 4))
    assert np.abs(h - h.conj().T).max() < 1e-14
    # <k+1|H|k> picks up (B + iC) from the transverse terms
    d = LatticeDim(21)
    p = Fe8Params(h_par=0.01, h_perp=2.0, alpha=math.pi / 4)
    elem = h[d.index(1), d.index(0)]
    assert elem == pytest.approx((p.b_coef + 1j * p.c_coef) * math.sqrt(110), abs=1e-12)


# -- diagonalization --------------------------------------------------------

def test_reference_spectrum():
    spec = spectrum(Fe8Params(h_par=0.11))
    assert spec.eigenvalues[0] == pytest.approx(-29.01745, rel=5e-3)
    assert spec.eigenvalues[1] == pytest.approx(-26.06441, rel=5e-3)
    assert spec.gap(0, 1) == pytest.approx(2.95304, rel=5e-3)


def test_zero_field_gap_smaller():
    assert spectrum(Fe8Params()).gap() < spectrum(Fe8Params(h_par=0.11)).gap()


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.5, 0.5))
def test_spectrum_symmetric_under_field_reversal(h):
    a = spectrum(Fe8Params(h_par=h)).eigenvalues
    b = spectrum(Fe8Params(h_par=-h)).eigenvalues
    assert np.abs(a - b).max() < 1e-10


def test_eigenpairs_and_phase_convention(doublet_spectrum, doublet_params):
    h = build_hamiltonian(doublet_params)
    vecs, vals = doublet_spectrum.eigenvectors, doublet_spectrum.eigenvalues
    assert np.all(np.diff(vals) >= 0)
    assert np.abs(h @ vecs - vecs * vals).max() < 1e-10
    assert np.abs(vecs.conj().T @ vecs - np.eye(21)).max() < 1e-12
    for i in range(21):
        v = vecs[:, i]
        lead = v[np.argmax(np.abs(v))]
        assert abs(lead.imag) < 1e-14 and lead.real > 0


def test_diagonalize_is_deterministic(doublet_params):
    a = diagonalize(build_hamiltonian(doublet_params))
    b = diagonalize(build_hamiltonian(doublet_params))
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_diagonalize_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        diagonalize(np.triu(np.ones((3, 3))))


# -- mapped Hamiltonian and potential ----------------------------------------

def test_mapped_hamiltonian_matches_trace_route(doublet_params):
    grid = mapped_hamiltonian(doublet_params)
    assert not np.iscomplexobj(grid.values)
    assert np.abs(grid.values - map_operator(build_hamiltonian(doublet_params)).values).max() == 0
    # mean of the symbol is Tr H / N
    h = build_hamiltonian(doublet_params)
    assert grid.values.mean() == pytest.approx(np.trace(h).real / 21, abs=1e-10)


def test_mapped_hamiltonian_longitudinal_part_is_diagonal_in_m():
    # without ladder couplings the symbol depends on m alone
    p = Fe8Params(e_anis=0.0, h_par=0.11)
    vals = mapped_hamiltonian(p).values
    assert np.abs(vals - vals[:, :1]).max() < 1e-10


def test_potential_values():
    p = Fe8Params(h_par=0.11)
    assert potential(math.pi / 2, p) == pytest.approx(-5.06, abs=1e-12)
    theta = np.linspace(-math.pi, math.pi, 721)
    v = potential(theta, p)
    assert np.abs(v - v[::-1]).max() < 1e-12
    interior = np.flatnonzero((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])) + 1
    assert sorted(theta[interior].round(6)) == [0.0]
    # the endpoints +-pi are the second well
    assert v[0] < v[1] and v[-1] < v[-2]


# -- states -----------------------------------------------------------------

def test_sharp_angle_state_normalized_and_orthogonal():
    a = sharp_angle_state(21, 0)
    b = sharp_angle_state(21, 3)
    assert np.vdot(a, a).real == pytest.approx(1.0)
    assert abs(np.vdot(a, b)) < 1e-12
    with pytest.raises(LatticeError):
        sharp_angle_state(21, 11)


def test_doublet_combination(doublet_spectrum):
    psi = doublet_combination(doublet_spectrum, 0, 1, 1)
    assert np.linalg.norm(psi) == pytest.approx(1.0)
    v0 = eigenstate(doublet_spectrum, 0)
    assert abs(np.vdot(v0, psi)) ** 2 == pytest.approx(0.5)
    with pytest.raises(InvalidStateError):
        doublet_combination(doublet_spectrum, 1, 1)
    with pytest.raises(ValueError):
        doublet_combination(doublet_spectrum, 0, 1, 2)
    with pytest.raises(IndexError):
        eigenstate(doublet_spectrum, 21)
