"""Exception types raised by the toolkit."""


class PhaseSpaceError(Exception):
    """Base class for every error raised by :mod:`discretephase`."""


class LatticeError(PhaseSpaceError, ValueError):
    """Invalid lattice dimension, label or array shape."""


class KernelConstructionError(PhaseSpaceError, RuntimeError):
    """A kernel failed one of its construction-time self checks."""


class ConvergenceError(PhaseSpaceError, RuntimeError):
    """A truncated series did not reach its tolerance within the term cap."""


class InvalidStateError(PhaseSpaceError, ValueError):
    """A state vector or density matrix violated its preconditions."""


class NotHermitianError(PhaseSpaceError, ValueError):
    """An operator required to be Hermitian was not."""


class NoRevivalError(PhaseSpaceError, ValueError):
    """No revival of the initial value was found in a time series."""
