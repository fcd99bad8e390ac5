import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from conftest import random_state
from discretephase.dynamics import EvolutionConfig, propagate_exact, propagate_series
from discretephase.entropy import (
    entropy_record, entropy_trace, marginal_entropies, mutual_correlation,
    mutual_series, wehrl_entropy,
)
from discretephase.errors import InvalidStateError
from discretephase.fe8 import doublet_combination
from discretephase.lattice import LatticeDim
from discretephase.mapping import PhaseGrid, husimi_from_wigner, wigner_from_state

D21 = LatticeDim(21)


def _husimi(values, dim=D21):
    return PhaseGrid(dim, "husimi", np.asarray(values, dtype=float))


def test_flat_grid_entropies():
    flat = _husimi(np.full((21, 21), 1 / 441))
    assert wehrl_entropy(flat) == pytest.approx(2 / 21 * math.log(21), abs=1e-14)
    assert wehrl_entropy(flat) == pytest.approx(0.28994, abs=2e-5)
    s_m, s_a = marginal_entropies(flat)
    assert s_m == pytest.approx(math.log(21) / 21, abs=1e-14)
    assert s_a == pytest.approx(0.14497, abs=2e-5)
    assert entropy_record(flat).mutual == pytest.approx(0.0, abs=1e-14)


def test_delta_grid_has_zero_entropy():
    vals = np.zeros((21, 21))
    vals[3, 7] = 1.0
    assert wehrl_entropy(_husimi(vals)) == 0.0


def test_delta_in_momentum_flat_in_angle():
    vals = np.zeros((21, 21))
    vals[10, :] = 1 / 21
    s_m, s_a = marginal_entropies(_husimi(vals))
    assert s_m == 0.0
    assert s_a == pytest.approx(math.log(21) / 21, abs=1e-14)


def test_negative_entries_rejected():
    vals = np.full((3, 3), 1 / 9)
    vals[0, 0] = -1e-6
    with pytest.raises(InvalidStateError):
        wehrl_entropy(_husimi(vals, LatticeDim(3)))
    vals[0, 0] = -1e-12
    assert math.isfinite(wehrl_entropy(_husimi(vals, LatticeDim(3))))


def test_mutual_correlation_rejects_negative():
    assert mutual_correlation((0.2, 0.3, 0.4)) == pytest.approx(0.1)
    with pytest.raises(InvalidStateError):
        mutual_correlation((0.1, 0.1, 0.3))


def test_product_grid_has_zero_mutual_correlation(rng):
    a = rng.random(21)
    b = rng.random(21)
    vals = np.outer(a / a.sum(), b / b.sum())
    rec = entropy_record(_husimi(vals))
    assert rec.mutual == pytest.approx(0.0, abs=1e-14)


@settings(max_examples=50, deadline=None)
@given(hnp.arrays(np.float64, (5, 5), elements=st.floats(0, 1)))
def test_entropy_properties(raw):
    if raw.sum() < 1e-6:
        return
    h = _husimi(raw / raw.sum(), LatticeDim(5))
    rec = entropy_record(h)
    assert rec.s_husimi >= 0 and rec.s_momentum >= 0 and rec.s_angle >= 0
    assert rec.mutual >= -1e-10
    # cyclic translations permute entries, leaving entropies unchanged
    moved = _husimi(np.roll(h.values, (2, -1), axis=(0, 1)), LatticeDim(5))
    assert entropy_record(moved).s_husimi == pytest.approx(rec.s_husimi, abs=1e-14)


def test_mutual_correlation_nonnegative_over_random_states(rng):
    for _ in range(200):
        h = husimi_from_wigner(wigner_from_state(random_state(rng, 21)))
        assert entropy_record(h).mutual >= -1e-10


def test_entropy_trace_and_series():
    grids = [PhaseGrid(D21, "husimi", np.full((21, 21), 1 / 441), t) for t in (0.0, 0.5)]
    ts, records = entropy_trace(grids)
    assert ts.times.tolist() == [0.0, 0.5]
    assert len(records) == 2
    assert mutual_series(records).values == pytest.approx([0.0, 0.0], abs=1e-14)
    with pytest.raises(ValueError):
        entropy_trace(grids, times=[0.0])


def test_series_and_exact_entropies_agree(doublet_spectrum, doublet_liouvillian):
    psi0 = doublet_combination(doublet_spectrum, 0, 1, 1)
    cfg = EvolutionConfig(dt=0.05, steps=50)
    grids = propagate_series(wigner_from_state(psi0), doublet_liouvillian, cfg)
    series_ts, _ = entropy_trace([husimi_from_wigner(g) for g in grids])
    exact = [wehrl_entropy(husimi_from_wigner(wigner_from_state(propagate_exact(psi0, doublet_spectrum, t))))
             for t in cfg.times]
    assert np.abs(series_ts.values - np.array(exact)).max() < 1e-7
