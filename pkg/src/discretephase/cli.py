"""Command-line entry point: ``discretephase {spectrum,evolve,potential,heatmap}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from .config import ConfigError, RunConfig, check_snapshots, load_config
from .errors import PhaseSpaceError
from .fe8 import build_hamiltonian, diagonalize, potential
from .fileio import fmt, read_grid, write_grid, write_heatmap, write_table
from .pipeline import evolve_state

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def cmd_spectrum(cfg: RunConfig, out: Path) -> List[Path]:
    spec = diagonalize(build_hamiltonian(cfg.params))
    vals = spec.eigenvalues
    rows = [(i, float(e), float(e - vals[0])) for i, e in enumerate(vals)]
    path = write_table(out / "spectrum.csv", ("index", "energy_kelvin", "gap_from_ground_kelvin"),
                       rows, {"params_digest": cfg.digest()})
    print(f"E_0 = {fmt(vals[0])} K")
    print(f"E_1 = {fmt(vals[1])} K")
    print(f"E_1 - E_0 = {fmt(vals[1] - vals[0])} K")
    return [path]


def cmd_evolve(cfg: RunConfig, out: Path) -> List[Path]:
    spec = diagonalize(build_hamiltonian(cfg.params))
    psi0 = cfg.initial_vector(spec)
    result = evolve_state(cfg.params, psi0, cfg.evolution, spec)
    digest = cfg.digest()
    written = []
    for step in cfg.snapshot_steps():
        if cfg.emit in ("wigner", "both"):
            written.append(write_grid(out / f"wigner_step{step:04d}.csv", result.wigner[step], digest))
        if cfg.emit in ("husimi", "both"):
            written.append(write_grid(out / f"husimi_step{step:04d}.csv", result.husimi[step], digest))
    meta = {"params_digest": digest}
    if result.correlation is not None:
        corr = result.correlation
        written.append(write_table(out / "correlation.csv", ("time", "correlation"),
                                   zip(corr.times.tolist(), corr.values.tolist()), meta))
        rows = [(r.time, r.s_husimi, r.s_momentum, r.s_angle, r.mutual) for r in result.records]
        written.append(write_table(out / "entropy.csv",
                                   ("time", "s_husimi", "s_momentum", "s_angle", "mutual"), rows, meta))
    summary = result.summary()
    summary["params_digest"] = digest
    path = out / "summary.json"
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    written.append(path)
    if summary["gap_kelvin"] is not None:
        print(f"period = {fmt(summary['period_internal'])} K^-1, "
              f"gap = {fmt(summary['gap_kelvin'])} K "
              f"(reference {fmt(summary['gap_reference_kelvin'])} K, "
              f"deviation {summary['deviation_percent']:.3f}%)")
    else:
        print("no correlation revival within the run")
    return written


def cmd_potential(cfg: RunConfig, out: Path, theta_samples: Optional[int] = None) -> List[Path]:
    samples = cfg.theta_samples if theta_samples is None else theta_samples
    if samples < 2:
        raise ConfigError("field 'theta_samples': must be at least 2")
    theta = np.linspace(-np.pi, np.pi, samples)
    v = potential(theta, cfg.params)
    path = write_table(out / "potential.csv", ("theta", "potential_kelvin"),
                       zip(theta.tolist(), v.tolist()), {"params_digest": cfg.digest()})
    return [path]


def cmd_heatmap(gridfile, out: Path) -> List[Path]:
    grid, _ = read_grid(gridfile)
    return [write_heatmap(out / (Path(gridfile).stem + ".pgm"), grid)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discretephase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("spectrum", "diagonalize the Fe8 Hamiltonian"),
                       ("evolve", "propagate Wigner/Husimi functions"),
                       ("potential", "tabulate the double-well potential")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", help="JSON configuration file (defaults if omitted)")
        p.add_argument("--out", default=".", help="output directory")
        if name == "evolve":
            p.add_argument("--snapshots", help="comma-separated step indices, e.g. 0,8,16")
            p.add_argument("--emit", choices=("wigner", "husimi", "both"))
        if name == "potential":
            p.add_argument("--theta-samples", type=int)
    p = sub.add_parser("heatmap", help="render a grid file as a PGM image")
    p.add_argument("gridfile")
    p.add_argument("--out", default=".", help="output directory")
    return parser


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if getattr(args, "snapshots", None):
        try:
            steps = [int(s) for s in args.snapshots.split(",")]
        except ValueError:
            raise ConfigError("--snapshots: expected comma-separated integers") from None
        cfg = RunConfig(cfg.params, cfg.evolution, cfg.initial_state, cfg.emit,
                        tuple(check_snapshots(steps, cfg.evolution.steps)), cfg.theta_samples)
    if getattr(args, "emit", None):
        cfg = RunConfig(cfg.params, cfg.evolution, cfg.initial_state, args.emit,
                        cfg.snapshots, cfg.theta_samples)
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = Path(args.out)
    try:
        if args.command == "heatmap":
            out.mkdir(parents=True, exist_ok=True)
            cmd_heatmap(args.gridfile, out)
            return EXIT_OK
        cfg = _config(args)
        if args.command == "potential" and args.theta_samples is not None and args.theta_samples < 2:
            raise ConfigError("--theta-samples: must be at least 2")
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "spectrum":
            cmd_spectrum(cfg, out)
        elif args.command == "evolve":
            cmd_evolve(cfg, out)
        else:
            cmd_potential(cfg, out, args.theta_samples)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhaseSpaceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        if args.command == "heatmap":
            print(f"cannot read grid file: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
