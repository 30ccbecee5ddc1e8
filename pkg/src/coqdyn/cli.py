"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error,
3 null generator (state-level dynamics requested on the null boundary),
4 null state (vanishing norm).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .classify import RegimeKind, classify, orbit_diagnostics
from .dynamics import (
    INVARIANTS,
    StateVector,
    Trajectory,
    check_bloch_point,
    evolve_bloch,
    evolve_state,
    state_norms,
)
from .errors import InvalidBlochPoint, NullGenerator, NullState, StepTooLarge
from .matrix2 import build_hamiltonian, spectrum_of
from .oracle import evolve_exact_series
from .trajio import COLUMNS, write_trajectory

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NULL_GENERATOR, EXIT_NULL_STATE = 0, 1, 2, 3, 4

DEFAULT_TOLERANCES = {"norm": 1e-8, "state": 1e-7, "reduced": 1e-8, "cylinder": 1e-7, "aux": 1e-7}
COMPARE_TOL = 1e-6
COMPARE_SAMPLES = 500


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    u: tuple
    psi0: Optional[tuple] = None
    bloch0: Optional[tuple] = None
    t_max: float = 10.0
    dt: float = 1e-3
    output_path: Optional[str] = None
    output_format: str = "csv"
    seed: Optional[int] = None

    def validate(self) -> "RunConfig":
        if self.u is None or len(self.u) != 6:
            raise ConfigError("u needs six reals u0..u5")
        if self.psi0 is not None and self.bloch0 is not None:
            raise ConfigError("psi0 and bloch0 are mutually exclusive")
        if self.psi0 is not None and len(self.psi0) != 8:
            raise ConfigError("psi0 needs eight reals (two coquaternions)")
        if self.bloch0 is not None:
            try:
                check_bloch_point(self.bloch0)
            except InvalidBlochPoint as exc:
                raise ConfigError(str(exc)) from None
        if not (self.t_max >= 0 and math.isfinite(self.t_max)):
            raise ConfigError("t_max must be a non-negative number")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ConfigError("dt must be positive")
        if self.output_format not in ("csv", "json-lines"):
            raise ConfigError("format must be csv or json-lines")
        return self


def random_state(seed: Optional[int]) -> tuple:
    """A random state with ``<psi|psi> = 1``."""
    rng = np.random.default_rng(seed)
    while True:
        x = rng.normal(size=8)
        n = float(state_norms(x))
        if n > 0.1:
            return tuple(float(v) for v in x / math.sqrt(n))


def _reals(text: str, count: Optional[int] = None) -> tuple:
    try:
        vals = tuple(float(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} reals, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return vals


def _tolerance(text: str) -> tuple[str, float]:
    name, _, value = text.partition("=")
    if name not in INVARIANTS or not value:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {INVARIANTS}, got {text!r}")
    return name, float(value)


def load_config(args) -> RunConfig:
    """Merge an optional JSON config file with command-line flags (flags win)."""
    values: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {f.name for f in fields(RunConfig)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(raw)
    flag_map = {"u": "u", "psi0": "psi0", "bloch0": "bloch0", "t_max": "t_max", "dt": "dt",
                "out": "output_path", "format": "output_format", "seed": "seed"}
    for flag, key in flag_map.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[key] = v
            # an initial condition on the command line replaces the file's, whichever kind
            if key in ("psi0", "bloch0"):
                values.pop("bloch0" if key == "psi0" else "psi0", None)
    if "u" not in values:
        raise ConfigError("Hamiltonian parameters --u are required")
    for key in ("u", "psi0", "bloch0"):
        if values.get(key) is not None:
            try:
                values[key] = tuple(float(x) for x in values[key])
            except (TypeError, ValueError):
                raise ConfigError(f"{key} must be a list of reals") from None
    try:
        cfg = RunConfig(**values)
        cfg.t_max, cfg.dt = float(cfg.t_max), float(cfg.dt)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if cfg.psi0 is None and cfg.bloch0 is None:
        cfg.psi0 = random_state(cfg.seed)
    return cfg.validate()


def run(cfg: RunConfig) -> Trajectory:
    if cfg.bloch0 is not None:
        return evolve_bloch(cfg.u, cfg.bloch0, cfg.t_max, cfg.dt)
    h = build_hamiltonian(cfg.u)
    return evolve_state(h, StateVector.from_array(cfg.psi0), cfg.t_max, cfg.dt)


def _open_out(path: Optional[str]):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


# -- subcommands ------------------------------------------------------------------

def cmd_classify(args) -> int:
    u = args.u
    regime = classify(u)
    spectrum = spectrum_of(u)
    diag = orbit_diagnostics(u)
    nu = math.sqrt(abs(u[2] ** 2 - u[4] ** 2 - u[5] ** 2))
    print(f"regime: {regime.kind.value}")
    if regime.kind is RegimeKind.NULL:
        print("case: none (Null regime: u2^2 = u4^2 + u5^2)")
    else:
        print(f"case: {regime.case_label.value if regime.case_label else 'none (exceptional point)'}")
    print(f"spectrum: {spectrum.kind.value}")
    print(f"eigenvalues: {spectrum}")
    print(f"gap2: {spectrum.gap2!r}")
    print(f"nu: {nu!r}")
    rate = "unset" if diag.rate is None else repr(diag.rate)
    print(f"orbit: {diag.kind.value}")
    print(f"rate: {rate}")
    if diag.period is not None:
        print(f"period: {diag.period!r}")
    print(f"axis: ({diag.axis[0]!r}, {diag.axis[1]!r}, {diag.axis[2]!r})")
    print(f"axis_angle: {diag.axis_angle!r}")
    return EXIT_OK


def cmd_evolve(args) -> int:
    cfg = load_config(args)
    traj = run(cfg)
    fh, close = _open_out(cfg.output_path)
    try:
        write_trajectory(traj, fh, cfg.output_format)
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = load_config(args)
    tolerances = dict(DEFAULT_TOLERANCES)
    tolerances.update(dict(args.tol or []))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", StepTooLarge)
        traj = run(cfg)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if cfg.output_path:
        fh, close = _open_out(cfg.output_path)
        try:
            write_trajectory(traj, fh, cfg.output_format)
        finally:
            if close:
                fh.close()
    ok = True
    for name, drift in traj.max_drift().items():
        if math.isnan(drift):
            print(f"{name:9s} n/a")
            continue
        passed = drift <= tolerances[name]
        ok &= passed
        print(f"{name:9s} max drift {drift:.3e}  tol {tolerances[name]:.1e}  {'PASS' if passed else 'FAIL'}")
    print("verify: PASS" if ok else "verify: FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def compare(cfg: RunConfig) -> tuple[float, float]:
    """Largest component gap between the RK4 and matrix-exponential states.

    Returns ``(absolute, scaled)``; the scaled figure divides by
    ``max(1, max |psi|)``.
    """
    if cfg.bloch0 is not None:
        raise ConfigError("compare works on state vectors; give psi0, not bloch0")
    h = build_hamiltonian(cfg.u)
    psi0 = StateVector.from_array(cfg.psi0)
    traj = evolve_state(h, psi0, cfg.t_max, cfg.dt)
    stride = max(1, len(traj.times) // COMPARE_SAMPLES)
    idx = np.unique(np.r_[np.arange(0, len(traj.times), stride), len(traj.times) - 1])
    exact = evolve_exact_series(h, psi0, traj.times[idx])
    gap = np.abs(traj.psi[idx] - exact)
    absolute = float(gap.max())
    scaled = float(np.max(gap.max(axis=1) / np.maximum(1.0, np.abs(exact).max(axis=1))))
    return absolute, scaled


def cmd_compare(args) -> int:
    cfg = load_config(args)
    absolute, scaled = compare(cfg)
    print(f"max component deviation: {absolute:.3e}")
    print(f"scaled deviation: {scaled:.3e}  tol {COMPARE_TOL:.0e}")
    ok = scaled <= COMPARE_TOL
    print("compare: PASS" if ok else "compare: FAIL")
    return EXIT_OK if ok else EXIT_FAIL


FIGURE_STATE = (1.0, 0.2, 0.0, 0.1, 0.3, 0.0, 0.4, 0.2)

FIGURE_SCENARIOS = {
    "fig1_caseA_sphere": {
        "u": (0.2, 0.6, 1.0, 0.4, 0.3, 0.4),
        "periods": 1.0,
        "shows": "Rabi oscillation on the reduced two-sphere (time-like, real spectrum)",
        "certificate": "inv_reduced (sx^2+sy^2+sz^2) constant",
    },
    "fig1_caseB_open": {
        "u": (0.0, 1.0, 0.5, 0.3, 0.8, 0.6),
        "t_max": 4.0,
        "shows": "open orbit on the reduced hyperboloid (space-like, real spectrum)",
        "certificate": "inv_reduced (sx^2-sy^2+sz^2) constant while |(sx,sy,sz)| grows",
    },
    "fig2_caseC_closed": {
        "u": (0.0, 0.3, 0.5, 0.2, 1.0, 0.6),
        "periods": 1.0,
        "shows": "closed hyperbolic Rabi orbit (space-like, complex-conjugate spectrum)",
        "certificate": "inv_reduced (sx^2-sy^2+sz^2) constant and last row equals first",
    },
}


def figure_trajectory(name: str, dt: float = 1e-3) -> tuple[Trajectory, dict]:
    spec = FIGURE_SCENARIOS[name]
    u = spec["u"]
    diag = orbit_diagnostics(u)
    t_max = spec["t_max"] if "t_max" in spec else spec["periods"] * diag.period
    norm = float(state_norms(np.array(FIGURE_STATE)))
    psi0 = StateVector.from_array(np.array(FIGURE_STATE) / math.sqrt(norm))
    traj = evolve_state(build_hamiltonian(u), psi0, t_max, dt)
    regime = classify(u)
    meta = {
        "file": f"{name}.csv",
        "u": list(u),
        "psi0": list(psi0.as_array()),
        "t_max": t_max,
        "dt": dt,
        "regime": regime.kind.value,
        "case": regime.case_label.value,
        "orbit": diag.kind.value,
        "rate": diag.rate,
        "shows": spec["shows"],
        "certificate": spec["certificate"],
        "max_drift": traj.max_drift(),
    }
    return traj, meta


GNUPLOT_TEMPLATE = """\
# Reduced-spin orbits; columns are addressed by name.
set datafile separator ','
set key autotitle columnhead
set xlabel 'sx'; set ylabel 'sy'; set zlabel 'sz'
{plots}
"""


def cmd_figures(args) -> int:
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        print(f"error: cannot write to {out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with ThreadPoolExecutor(max_workers=len(FIGURE_SCENARIOS)) as pool:
        results = dict(zip(FIGURE_SCENARIOS, pool.map(
            lambda n: figure_trajectory(n, args.dt), FIGURE_SCENARIOS)))
    manifest = {"columns": COLUMNS, "scenarios": {}}
    plots = []
    for name, (traj, meta) in results.items():
        with open(out / meta["file"], "w", newline="") as fh:
            write_trajectory(traj, fh, "csv")
        manifest["scenarios"][name] = meta
        plots.append(f"set title '{meta['shows']}'\n"
                     f"splot '{meta['file']}' using (column('sx')):(column('sy')):(column('sz')) "
                     f"with lines title '{name}'\npause -1")
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    (out / "plot_orbits.gp").write_text(GNUPLOT_TEMPLATE.format(plots="\n".join(plots)))
    for name, meta in manifest["scenarios"].items():
        print(f"{meta['file']}: case {meta['case']}, {meta['orbit']}")
    return EXIT_OK


# -- entry point ------------------------------------------------------------------

def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--u", type=lambda s: _reals(s, 6), help="u0,...,u5 (use --u=-1,... for a leading minus)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--psi0", type=lambda s: _reals(s, 8), help="eight reals: psi1 then psi2 components")
    group.add_argument("--bloch0", type=lambda s: _reals(s, 5), help="five reals on the hyperbolic state space")
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json-lines"))
    p.add_argument("--config", help="flat JSON object with RunConfig fields")
    p.add_argument("--seed", type=int, help="seed for a random psi0 when none is given")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coqdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="report regime, case, spectrum and orbit diagnostics")
    p.add_argument("--u", type=lambda s: _reals(s, 6), required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evolve", help="integrate and write the trajectory")
    _add_run_flags(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", help="integrate and check conserved quantities")
    _add_run_flags(p)
    p.add_argument("--tol", type=_tolerance, action="append", metavar="NAME=VALUE",
                   help=f"override a drift tolerance; NAME in {', '.join(INVARIANTS)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="compare RK4 against the matrix-exponential oracle")
    _add_run_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("figures", help="write data for the three orbit families")
    p.add_argument("--out", dest="out_dir", default="figures")
    p.add_argument("--dt", type=float, default=1e-3)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NullGenerator as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NULL_GENERATOR
    except NullState as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NULL_STATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
