import math

import numpy as np
import pytest

from discretephase import Fe8Params, build_hamiltonian, diagonalize

_ACCEPTANCE = {}


def record_criterion(number, name, passed, detail=""):
    _ACCEPTANCE[number] = (name, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        name, passed, detail = _ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {name}: {detail}")


def random_state(rng, n):
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    return c / np.linalg.norm(c)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def doublet_params():
    return Fe8Params(h_par=0.11, h_perp=0.0)


@pytest.fixture(scope="session")
def sharp_params():
    return Fe8Params(h_par=0.01, h_perp=2.0, alpha=math.pi / 4)


@pytest.fixture(scope="session")
def doublet_spectrum(doublet_params):
    return diagonalize(build_hamiltonian(doublet_params))


@pytest.fixture(scope="session")
def sharp_spectrum(sharp_params):
    return diagonalize(build_hamiltonian(sharp_params))


@pytest.fixture(scope="session")
def doublet_liouvillian(doublet_params):
    from discretephase.dynamics import build_liouvillian
    return build_liouvillian(build_hamiltonian(doublet_params))


@pytest.fixture(scope="session")
def sharp_liouvillian(sharp_params):
    from discretephase.dynamics import build_liouvillian
    return build_liouvillian(build_hamiltonian(sharp_params))
