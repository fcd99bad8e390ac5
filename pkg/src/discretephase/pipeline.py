"""End-to-end runs: Hamiltonian -> Wigner/Husimi trajectories -> periods and gaps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .dynamics import (
    EvolutionConfig, TimeSeries, build_liouvillian, correlation_series,
    extract_period, gap_from_period, propagate_series,
)
from .entropy import EntropyRecord, entropy_trace, mutual_series
from .errors import NoRevivalError
from .fe8 import Fe8Params, SpectrumResult, build_hamiltonian, diagonalize
from .mapping import PhaseGrid, husimi_from_wigner, wigner_from_state


@dataclass
class EvolutionResult:
    spectrum: SpectrumResult
    wigner: List[PhaseGrid]
    husimi: List[PhaseGrid]
    correlation: Optional[TimeSeries]
    entropy: Optional[TimeSeries]
    records: List[EntropyRecord]

    @property
    def reference_gap(self) -> float:
        return self.spectrum.gap(0, 1)

    def mutual(self) -> TimeSeries:
        return mutual_series(self.records)

    def correlation_period(self) -> float:
        return extract_period(self.correlation, "max")

    def entropy_period(self) -> float:
        return extract_period(self.entropy, "min", self.husimi)

    def mutual_period(self) -> float:
        return extract_period(self.mutual(), "min", self.husimi)

    def summary(self) -> Dict[str, object]:
        """Period of the correlation revival and the gap it implies.

        Fields that cannot be extracted (no revival inside the run) are None.
        """
        ref = self.reference_gap
        out: Dict[str, object] = {"gap_reference_kelvin": ref}
        for key, fn in (("period_internal", self.correlation_period),
                        ("entropy_period_internal", self.entropy_period),
                        ("mutual_period_internal", self.mutual_period)):
            try:
                out[key] = fn() if self.correlation is not None else None
            except NoRevivalError:
                out[key] = None
        tau = out["period_internal"]
        out["gap_kelvin"] = gap_from_period(tau) if tau else None
        out["deviation_percent"] = (100 * (out["gap_kelvin"] - ref) / ref
                                    if out["gap_kelvin"] is not None else None)
        tau_s = out["entropy_period_internal"]
        out["entropy_gap_kelvin"] = gap_from_period(tau_s) if tau_s else None
        return out


def evolve_state(params: Fe8Params, psi0: np.ndarray, cfg: EvolutionConfig,
                 spec: Optional[SpectrumResult] = None) -> EvolutionResult:
    """Propagate the Wigner function of ``psi0`` with the series propagator."""
    h = build_hamiltonian(params)
    if spec is None:
        spec = diagonalize(h)
    w0 = wigner_from_state(psi0)
    w0 = PhaseGrid(w0.dim, w0.kind, w0.values, 0.0)
    if cfg.steps:
        grids = propagate_series(w0, build_liouvillian(h), cfg)
    else:
        grids = [w0]
    husimi = [husimi_from_wigner(g) for g in grids]
    if cfg.steps:
        corr = correlation_series(grids)
        ent, records = entropy_trace(husimi)
    else:
        corr, ent, records = None, None, entropy_trace(husimi)[1]
    return EvolutionResult(spec, grids, husimi, corr, ent, records)
