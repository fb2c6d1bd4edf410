"""Command-line front end.

Subcommands: spectrum | dynamics | sweep | field | validate. Tables go to CSV, scalar
reports to JSON, field dumps to CSV triplets with a JSON sidecar. Floats are written
with 9 significant digits so repeated runs are byte-identical.

Exit codes: 0 success, 1 usage error, 2 computation failure, 3 validation failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .coupled import coupled_eigensystem
from .dynamics import ORTH_THRESHOLD, T_MAX, NoOrthogonalState, correlation, orthogonality_time, speed_limit
from .entanglement import closed_form_rms, concurrence, concurrence_average, concurrence_initial
from .potential import PotentialParams, SingleWellSolution, solve_single_well
from .validation import run_checks
from .wavepacket import PRESETS, Grid, Wavepacket, custom, grid_norm, grid_overlap, preset, psi_grid

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VALIDATION = 0, 1, 2, 3
DEFAULTS: dict[str, Any] = {
    "hbar": 1.0,
    "mass": 1.0,
    "xi": 1.0,
    "kappa": 1.0,
    "g": "0,0.1,0.2",
    "tmax": 200.0,
    "dt": 0.05,
    "grid": "201,-3.5,3.5",
    "threshold": ORTH_THRESHOLD,
    "format": "csv",
}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".9g")


def _clean(obj: Any) -> Any:
    # round floats to the CSV precision so JSON output is just as stable
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return float(fmt(v)) if np.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def parse_g(text: str) -> list[float]:
    """``"0,0.1,0.2"`` or ``"start:stop:n"`` (inclusive linspace)."""
    text = str(text).strip()
    try:
        if ":" in text:
            start, stop, n = text.split(":")
            values = np.linspace(float(start), float(stop), int(n)).tolist()
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse g values {text!r}") from exc
    if not values:
        raise UsageError("no g values given")
    if any(not np.isfinite(v) or v < 0 for v in values):
        raise UsageError("g values must be finite and >= 0")
    return sorted(set(values))


def parse_grid(text: str) -> Grid:
    try:
        n, lo, hi = str(text).split(",")
        return Grid(int(n), float(lo), float(hi))
    except ValueError as exc:
        raise UsageError(f"grid must be 'n,lo,hi', got {text!r}") from exc


def parse_times(text: str, tau: float | None) -> list[float]:
    """Comma list of times; entries like ``tau`` or ``3tau`` are multiples of the orthogonality time."""
    out = []
    for tok in str(text).split(","):
        tok = tok.strip()
        m = re.fullmatch(r"([0-9.eE+-]*)\*?tau", tok)
        try:
            if m:
                if tau is None:
                    raise UsageError("time given in units of tau but no orthogonal state exists")
                out.append((float(m.group(1)) if m.group(1) else 1.0) * tau)
            else:
                out.append(float(tok))
        except ValueError as exc:
            raise UsageError(f"cannot parse time {tok!r}") from exc
    return out


def parse_coeffs(text: str) -> Wavepacket:
    try:
        values = [float(v) for v in text.split(",")]
        return custom(values)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


@dataclass
class SweepSpec:
    packets: list[Wavepacket]
    g_values: list[float]
    tmax: float = T_MAX
    dt: float | None = None
    threshold: float = ORTH_THRESHOLD
    fmt: str = "csv"

    def __post_init__(self):
        if self.g_values != sorted(set(self.g_values)) or any(g < 0 for g in self.g_values):
            raise UsageError("g values must be sorted, unique and >= 0")
        if self.dt is not None and self.dt <= 0:
            raise UsageError("time step must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; CLI flags take precedence")
    common.add_argument("--hbar", type=float)
    common.add_argument("--mass", type=float)
    common.add_argument("--xi", type=float)
    common.add_argument("--kappa", type=float)
    common.add_argument("--out", help="output directory (default: print to stdout)")
    common.add_argument("--format", choices=("csv", "json"))

    state = argparse.ArgumentParser(add_help=False)
    pick = state.add_mutually_exclusive_group()
    pick.add_argument("--preset", help="A, B, C or D (comma list or 'all' for sweep)")
    pick.add_argument("--coeffs", help="custom real coefficients a0,a1,a2,a3")
    state.add_argument("--threshold", type=float, help="orthogonality threshold on Gamma")

    parser = _Parser(prog="razavy-dw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="single-well data and E_nu(g)")
    p.add_argument("--g", help="list a,b,c or start:stop:n")

    p = sub.add_parser("dynamics", parents=[common, state], help="Gamma(t), C(t) and scalar report")
    p.add_argument("--g", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--dt", type=float)

    p = sub.add_parser("sweep", parents=[common, state], help="tau, tau_min, C(0), C_av per g")
    p.add_argument("--g", help="list a,b,c or start:stop:n")
    p.add_argument("--tmax", type=float, help="orthogonality search window")
    p.add_argument("--dt", type=float, help="scan step (default: Nyquist rule)")
    p.add_argument("--no-mean", action="store_true", help="skip numeric time averages")

    p = sub.add_parser("field", parents=[common, state], help="|Psi(x1,x2,t)|^2 grid dumps")
    p.add_argument("--g", type=float)
    p.add_argument("--times", default="0", help="comma list; 'tau', '3tau' allowed")
    p.add_argument("--grid", help="n,lo,hi")

    p = sub.add_parser("validate", parents=[common], help="oracle and regression checks")
    return parser


def _load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    cp = configparser.ConfigParser()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    cp.read_string("[razavy]\n" + text)
    return dict(cp["razavy"])


def _resolve(args: argparse.Namespace, config: dict[str, str], key: str, cast=str):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        try:
            return cast(config[key])
        except ValueError as exc:
            raise UsageError(f"bad config value for {key}: {config[key]!r}") from exc
    default = DEFAULTS.get(key)
    return cast(default) if default is not None else None


def _params(args, config) -> PotentialParams:
    kw = {k: _resolve(args, config, k, float) for k in ("hbar", "mass", "xi", "kappa")}
    try:
        return PotentialParams(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _packets(args, config, allow_many: bool) -> list[Wavepacket]:
    coeffs = args.coeffs or config.get("coeffs")
    if coeffs and not args.preset:
        return [parse_coeffs(coeffs)]
    names = args.preset or config.get("preset") or ("all" if allow_many else None)
    if names is None:
        raise UsageError("give --preset or --coeffs")
    names = list(PRESETS) if names.strip().lower() == "all" else [n.strip().upper() for n in names.split(",")]
    if len(names) > 1 and not allow_many:
        raise UsageError("this command takes a single preset")
    try:
        return [preset(n) for n in names]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


class _Sink:
    """Writes named artifacts into ``out`` or concatenates them onto stdout."""

    def __init__(self, out: str | None):
        self.dir = Path(out) if out else None
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)
        self.written: list[str] = []

    def emit(self, name: str, text: str) -> None:
        if self.dir is None:
            sys.stdout.write(text)
        else:
            (self.dir / name).write_text(text)
            self.written.append(str(self.dir / name))


def _single_well_dict(s: SingleWellSolution) -> dict:
    return {
        "params": {"hbar": s.params.hbar, "mass": s.params.mass, "xi": s.params.xi, "kappa": s.params.kappa},
        "eps": list(s.eps),
        "norm0": s.norm0,
        "norm1": s.norm1,
        "gamma": s.gamma,
        "eps_sum": s.eps_sum,
        "eps_diff": s.eps_diff,
        "well_minimum_x": s.well_minimum_x,
        "well_minimum_v": s.well_minimum_v,
        "barrier_top_v": s.barrier_top_v,
    }


SPECTRUM_HEADER = ["g", "E0", "E1", "E2", "E3", "theta", "omega1", "omega2", "omega3"]


def cmd_spectrum(args, config) -> int:
    s = solve_single_well(_params(args, config))
    rows = []
    for g in parse_g(_resolve(args, config, "g")):
        cs = coupled_eigensystem(s, g)
        rows.append([g, *cs.E, cs.theta, *cs.omega])
    sink = _Sink(args.out)
    if _resolve(args, config, "format") == "json":
        table = [dict(zip(SPECTRUM_HEADER, r)) for r in rows]
        sink.emit("spectrum.json", dumps({"single_well": _single_well_dict(s), "coupled": table}))
    else:
        sink.emit("spectrum.csv", _csv(SPECTRUM_HEADER, rows))
        if sink.dir:
            sink.emit("single_well.json", dumps(_single_well_dict(s)))
    return EXIT_OK


def dynamics_report(w: Wavepacket, s: SingleWellSolution, g: float, threshold: float = ORTH_THRESHOLD,
                    t_max: float = T_MAX, dt: float | None = None, averages: bool = True) -> dict:
    """Scalar summary for one wavepacket at one coupling (also one sweep row)."""
    cs = coupled_eigensystem(s, g)
    row: dict[str, Any] = {"preset": w.name or "custom", "g": g, "status": "ok"}
    try:
        orth = orthogonality_time(w, cs, threshold=threshold, t_max=t_max, dt=dt)
        row.update(tau=orth.tau, tau_method=orth.method, gamma_residual=orth.gamma_residual)
    except NoOrthogonalState as exc:
        row.update(status="no_orthogonal_state", tau=float("nan"), tau_method="numeric",
                   gamma_residual=exc.gamma_min)
    except ValueError:
        row.update(status="stationary", tau=float("nan"), tau_method="", gamma_residual=float("nan"))
    try:
        sl = speed_limit(w, cs, row["tau"] if row["status"] == "ok" else None)
        row.update(tau_min=sl.tau_min, ratio=sl.ratio, mean_energy=sl.mean_energy, energy_spread=sl.energy_spread)
    except ValueError:
        row.update(tau_min=float("nan"), ratio=float("nan"), mean_energy=0.0, energy_spread=0.0)
    if averages:
        rep = concurrence_average(w, cs)
        row.update(c0=rep.c0, c_av=rep.c_rms, c_av_method=rep.method, c_av_numeric=rep.c_rms_numeric,
                   c_mean=rep.c_mean)
    else:
        rms = closed_form_rms(w, cs)
        row.update(c0=concurrence_initial(w, cs), c_av=float("nan") if rms is None else rms,
                   c_av_method="analytic" if rms is not None else "", c_av_numeric=float("nan"),
                   c_mean=float("nan"))
    row.update(theta=cs.theta, omega1=cs.omega[0], omega2=cs.omega[1], omega3=cs.omega[2])
    return row


def cmd_dynamics(args, config) -> int:
    s = solve_single_well(_params(args, config))
    (w,) = _packets(args, config, allow_many=False)
    g = _resolve(args, config, "g", float) if args.g is not None or "g" in config else 0.0
    if g < 0:
        raise UsageError("g must be >= 0")
    tmax = _resolve(args, config, "tmax", float)
    dt = _resolve(args, config, "dt", float)
    if dt <= 0 or tmax <= 0:
        raise UsageError("tmax and dt must be positive")
    threshold = _resolve(args, config, "threshold", float)
    report = dynamics_report(w, s, g, threshold=threshold)
    report["coefficients"] = list(w.a)
    cs = coupled_eigensystem(s, g)
    t = np.arange(0.0, tmax + 0.5 * dt, dt)
    gam, conc = correlation(w, cs, t), concurrence(w, cs, t)
    sink = _Sink(args.out)
    if _resolve(args, config, "format") == "json":
        report["series"] = {"t": t.tolist(), "gamma": gam.tolist(), "concurrence": conc.tolist()}
        sink.emit("dynamics.json", dumps(report))
        return EXIT_OK
    sink.emit("report.json", dumps(report))
    if sink.dir:
        sink.emit("timeseries.csv", _csv(["t", "gamma", "concurrence"], list(zip(t, gam, conc))))
    return EXIT_OK


SWEEP_HEADER = [
    "preset", "g", "status", "tau", "tau_method", "gamma_residual", "tau_min", "ratio",
    "mean_energy", "energy_spread", "c0", "c_av", "c_av_method", "c_av_numeric", "c_mean",
    "theta", "omega1", "omega2", "omega3",
]


def run_sweep(spec: SweepSpec, s: SingleWellSolution, averages: bool = True) -> list[dict]:
    rows = []
    for w in spec.packets:
        for g in spec.g_values:
            rows.append(dynamics_report(w, s, g, spec.threshold, spec.tmax, spec.dt, averages))
    return rows


def cmd_sweep(args, config) -> int:
    s = solve_single_well(_params(args, config))
    spec = SweepSpec(
        packets=_packets(args, config, allow_many=True),
        g_values=parse_g(_resolve(args, config, "g")),
        tmax=args.tmax if args.tmax is not None else float(config.get("tmax", T_MAX)),
        dt=args.dt,
        threshold=_resolve(args, config, "threshold", float),
        fmt=_resolve(args, config, "format"),
    )
    rows = run_sweep(spec, s, averages=not args.no_mean)
    sink = _Sink(args.out)
    if spec.fmt == "json":
        sink.emit("sweep.json", dumps(rows))
    else:
        sink.emit("sweep.csv", _csv(SWEEP_HEADER, [[r[k] for k in SWEEP_HEADER] for r in rows]))
    return EXIT_OK


def cmd_field(args, config) -> int:
    s = solve_single_well(_params(args, config))
    (w,) = _packets(args, config, allow_many=False)
    g = args.g if args.g is not None else float(config.get("g", 0.0))
    if g < 0:
        raise UsageError("g must be >= 0")
    grid = parse_grid(_resolve(args, config, "grid"))
    cs = coupled_eigensystem(s, g)
    threshold = _resolve(args, config, "threshold", float)
    try:
        tau = orthogonality_time(w, cs, threshold=threshold).tau
    except (NoOrthogonalState, ValueError):
        tau = None
    times = parse_times(args.times, tau)
    sink = _Sink(args.out)
    first = psi_grid(w, cs, s, 0.0, grid)
    x = grid.x
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    for k, t in enumerate(times):
        f = psi_grid(w, cs, s, t, grid)
        meta = {
            "preset": w.name or "custom",
            "coefficients": list(w.a),
            "g": g,
            "t": t,
            "tau": tau,
            "grid": {"n": grid.n, "lo": grid.lo, "hi": grid.hi},
            "integral": grid_norm(f),
            "overlap_with_t0": abs(grid_overlap(first, f)),
            "gamma_analytic": correlation(w, cs, t),
            "columns": ["x1", "x2", "density"],
        }
        stem = f"field_{k:03d}"
        body = np.column_stack([x1.ravel(), x2.ravel(), f.density.ravel()])
        if sink.dir is None:
            sink.emit(f"{stem}.json", dumps(meta))
            continue
        sink.emit(f"{stem}.csv", _csv(["x1", "x2", "density"], body.tolist()))
        sink.emit(f"{stem}.json", dumps(meta))
    return EXIT_OK


def cmd_validate(args, config) -> int:
    checks = run_checks()
    report = {
        "passed": all(c.passed for c in checks),
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "checks": [c.to_dict() for c in checks],
    }
    _Sink(args.out).emit("validation.json", dumps(report))
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name}: value={fmt(c.value)} ref={fmt(c.reference)} err={c.error:.2e}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


COMMANDS = {
    "spectrum": cmd_spectrum,
    "dynamics": cmd_dynamics,
    "sweep": cmd_sweep,
    "field": cmd_field,
    "validate": cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
        return COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"razavy-dw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"razavy-dw: I/O error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        print(f"razavy-dw: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
