"""JSON run configuration for the command-line tools.

A configuration is a single JSON object.  Every Fe8 parameter is a top-level
key (defaults are the published Fe8 constants); ``evolution``,
``initial_state`` and ``outputs`` are nested objects::

    {
      "h_par": 0.11, "h_perp": 0.0, "alpha": 0.0,
      "evolution": {"dt": 0.05, "steps": 50},
      "initial_state": {"type": "doublet", "i": 0, "j": 1, "sign": 1},
      "outputs": {"emit": "both", "snapshots": [0, 5, 10]}
    }

``initial_state.type`` is one of ``sharp_angle`` (``n0``), ``doublet``
(``i``, ``j``, ``sign``), ``eigenstate`` (``i``) or ``raw`` (``amplitudes``: 2N
reals, interleaved real and imaginary parts).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .dynamics import EvolutionConfig
from .fe8 import Fe8Params, SpectrumResult, doublet_combination, eigenstate, sharp_angle_state

EMIT_CHOICES = ("wigner", "husimi", "both")
STATE_FIELDS = {
    "sharp_angle": ("n0",),
    "doublet": ("i", "j", "sign"),
    "eigenstate": ("i",),
    "raw": ("amplitudes",),
}
STATE_DEFAULTS = {"sign": 1, "n0": 0, "j": 1, "i": 0}
PARAM_FIELDS = tuple(f.name for f in fields(Fe8Params))
TOP_LEVEL = set(PARAM_FIELDS) | {"evolution", "initial_state", "outputs", "theta_samples"}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    params: Fe8Params = field(default_factory=Fe8Params)
    evolution: EvolutionConfig = field(default_factory=EvolutionConfig)
    initial_state: Dict[str, Any] = field(default_factory=lambda: {"type": "doublet", "i": 0, "j": 1, "sign": 1})
    emit: str = "both"
    snapshots: Optional[Tuple[int, ...]] = None
    theta_samples: int = 361

    def snapshot_steps(self) -> Tuple[int, ...]:
        """Requested snapshot step indices, default every fifth step."""
        steps = self.evolution.steps
        if self.snapshots is None:
            return tuple(range(0, steps + 1, 5))
        return tuple(sorted(set(s for s in self.snapshots)))

    def canonical(self) -> Dict[str, Any]:
        return {
            "params": asdict(self.params),
            "evolution": {"dt": self.evolution.dt, "steps": self.evolution.steps},
            "initial_state": self.initial_state,
            "emit": self.emit,
            "snapshots": list(self.snapshot_steps()),
            "theta_samples": self.theta_samples,
        }

    def digest(self) -> str:
        """Stable hash of the normalized configuration."""
        blob = json.dumps(self.canonical(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def initial_vector(self, spec: SpectrumResult) -> np.ndarray:
        st = self.initial_state
        kind = st["type"]
        n = self.params.n_dim
        if kind == "sharp_angle":
            return sharp_angle_state(n, st["n0"])
        if kind == "doublet":
            return doublet_combination(spec, st["i"], st["j"], st["sign"])
        if kind == "eigenstate":
            return eigenstate(spec, st["i"])
        amps = np.asarray(st["amplitudes"], dtype=float)
        return amps[0::2] + 1j * amps[1::2]


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{name}': expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"field '{name}': must be finite")
    return float(value)


def _integer(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{name}': expected an integer, got {value!r}")
    return value


def _object(value, name: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(f"field '{name}': expected an object")
    return value


def _parse_state(raw, n_dim: int) -> Dict[str, Any]:
    raw = _object(raw, "initial_state")
    kind = raw.get("type")
    if kind not in STATE_FIELDS:
        raise ConfigError(f"field 'initial_state.type': expected one of {sorted(STATE_FIELDS)}, got {kind!r}")
    allowed = set(STATE_FIELDS[kind]) | {"type"}
    extra = set(raw) - allowed
    if extra:
        raise ConfigError(f"field 'initial_state': unexpected keys {sorted(extra)} for type {kind!r}")
    out: Dict[str, Any] = {"type": kind}
    ell = (n_dim - 1) // 2
    for key in STATE_FIELDS[kind]:
        name = f"initial_state.{key}"
        if key == "amplitudes":
            amps = raw.get(key)
            if not isinstance(amps, list) or len(amps) != 2 * n_dim:
                raise ConfigError(f"field '{name}': expected a list of {2 * n_dim} numbers")
            vals = [_number(a, name) for a in amps]
            norm = sum(v * v for v in vals)
            if abs(norm - 1) > 1e-10:
                raise ConfigError(f"field '{name}': state is not normalized (norm^2 = {norm:.12g})")
            out[key] = vals
            continue
        val = _integer(raw.get(key, STATE_DEFAULTS[key]), name)
        if key == "n0" and not -ell <= val <= ell:
            raise ConfigError(f"field '{name}': must lie in [{-ell}, {ell}]")
        if key in ("i", "j") and not 0 <= val < n_dim:
            raise ConfigError(f"field '{name}': eigen-index must lie in [0, {n_dim - 1}]")
        if key == "sign" and val not in (1, -1):
            raise ConfigError(f"field '{name}': must be +1 or -1")
        out[key] = val
    if kind == "doublet" and out["i"] == out["j"]:
        raise ConfigError("field 'initial_state': doublet needs i != j")
    return out


def parse_config(doc: Dict[str, Any]) -> RunConfig:
    """Validate a decoded JSON document into a :class:`RunConfig`."""
    doc = _object(doc, "<root>")
    unknown = set(doc) - TOP_LEVEL
    if unknown:
        raise ConfigError(f"unknown field(s): {sorted(unknown)}")

    kwargs = {}
    for name in PARAM_FIELDS:
        if name in doc:
            kwargs[name] = _integer(doc[name], name) if name == "j" else _number(doc[name], name)
    try:
        params = Fe8Params(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"Fe8 parameters: {exc}") from None

    evo = _object(doc.get("evolution", {}), "evolution")
    extra = set(evo) - {"dt", "steps"}
    if extra:
        raise ConfigError(f"field 'evolution': unexpected keys {sorted(extra)}")
    dt = _number(evo.get("dt", 0.05), "evolution.dt")
    steps = _integer(evo.get("steps", 50), "evolution.steps")
    try:
        evolution = EvolutionConfig(dt=dt, steps=steps)
    except ValueError as exc:
        raise ConfigError(f"field 'evolution': {exc}") from None

    state = _parse_state(doc.get("initial_state", {"type": "doublet"}), params.n_dim)

    outs = _object(doc.get("outputs", {}), "outputs")
    extra = set(outs) - {"emit", "snapshots"}
    if extra:
        raise ConfigError(f"field 'outputs': unexpected keys {sorted(extra)}")
    emit = outs.get("emit", "both")
    if emit not in EMIT_CHOICES:
        raise ConfigError(f"field 'outputs.emit': expected one of {EMIT_CHOICES}, got {emit!r}")
    snaps = outs.get("snapshots")
    if snaps is not None:
        snaps = tuple(check_snapshots(snaps, steps))

    samples = _integer(doc.get("theta_samples", 361), "theta_samples")
    if samples < 2:
        raise ConfigError("field 'theta_samples': must be at least 2")
    return RunConfig(params, evolution, state, emit, snaps, samples)


def check_snapshots(snaps, steps: int):
    if not isinstance(snaps, (list, tuple)):
        raise ConfigError("field 'outputs.snapshots': expected a list of step indices")
    out = []
    for s in snaps:
        s = _integer(s, "outputs.snapshots")
        if not 0 <= s <= steps:
            raise ConfigError(f"field 'outputs.snapshots': step {s} outside [0, {steps}]")
        out.append(s)
    return out


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(doc)
