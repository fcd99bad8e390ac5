"""Discrete N x N phase-space quantum mechanics with the Fe8 cluster as reference model.

Submodules:

- ``lattice``: clock/shift operators, Schwinger basis, Wigner and s-kernels, theta functions
- ``mapping``: operator symbols, Wigner and Husimi grids, marginals
- ``fe8``: giant-spin Hamiltonian, spectrum, potential, initial states
- ``dynamics``: discrete Liouvillian, series propagation, correlation periods
- ``entropy``: Wehrl-type and marginal entropies, mutual correlation
- ``config``, ``fileio``, ``cli``: command-line surface and file formats
"""

from .dynamics import (
    EvolutionConfig, Superoperator, TimeSeries, build_liouvillian, correlation,
    correlation_series, extract_period, gap_from_period, propagate_exact, propagate_series,
)
from .entropy import (
    EntropyRecord, entropy_trace, marginal_entropies, mutual_correlation, wehrl_entropy,
)
from .fe8 import (
    Fe8Params, SpectrumResult, build_hamiltonian, build_jminus, build_jplus, build_jz,
    diagonalize, doublet_combination, mapped_hamiltonian, potential, sharp_angle_state,
)
from .lattice import (
    LatticeDim, SmoothingKernel, bell_kernel, build_clock, build_shift, s_kernel,
    schwinger_s, smoothing_kernel, theta, wigner_kernel,
)
from .mapping import (
    PhaseGrid, husimi_from_wigner, map_operator, marginals, reconstruct_operator,
    wigner_from_density, wigner_from_state,
)

__version__ = "0.1.0"
