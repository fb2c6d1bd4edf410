"""One pass/fail line per acceptance criterion, tolerances as specified.

Lines are printed and collected into the terminal summary (see conftest.py).
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import ACCEPTANCE_LINES
from razavy_dw import PotentialParams, coupled_eigensystem, solve_single_well
from razavy_dw.coupled import energy_matrix
from razavy_dw.dynamics import correlation, orthogonality_time, speed_limit
from razavy_dw.entanglement import (
    closed_form_rms,
    concurrence,
    concurrence_from_amplitudes,
    concurrence_initial,
    time_average,
)
from razavy_dw.oracle import FdSolverConfig, fd_eigenpairs, fd_overlap_gamma, numeric_4x4_eigen
from razavy_dw.potential import locate_minimum, potential
from razavy_dw.wavepacket import Grid, custom, grid_norm, grid_overlap, preset, product_amplitudes, psi_grid

G = (0.0, 0.1, 0.2)
P = PotentialParams()
S = solve_single_well(P)


def _record(n, text, failures):
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"
    if failures:
        line += " -- " + "; ".join(failures[:5])
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _close(label, value, ref, tol, failures, relative=False):
    err = abs(value - ref) / (abs(ref) if relative else 1.0)
    if not (np.isfinite(value) and err <= tol):
        failures.append(f"{label}: {value:.6g} vs {ref:.6g}")


def test_criterion_01_single_well_spectrum():
    f = []
    for n, ref in enumerate((-4.73205, -4.64575, -1.26795, 0.645751)):
        _close(f"eps{n}", S.eps[n], ref, 5e-6, f)
    fd = fd_eigenpairs(P, FdSolverConfig())
    for n in (0, 1):
        _close(f"FD eps{n}", fd.energies[n], (-4.73205, -4.64575)[n], 1e-4, f)
    _record(1, "single-well spectrum (closed form to 6 digits, FD within 1e-4)", f)


def test_criterion_02_landmarks():
    f = []
    if potential(0.0, P) != -2.0:
        f.append(f"V(0) = {potential(0.0, P)!r}")
    x_s, v_s = locate_minimum(P)
    _close("x_s", x_s, 1.38433, 1e-4, f)
    _close("V(x_s)", v_s, -8.125, 1e-4, f)
    _close("V(-x_s)", potential(-x_s, P), -8.125, 1e-4, f)
    _record(2, "V(0) = -2 exactly; minimum at +-1.38433 with V = -8.125 within 1e-4", f)


def test_criterion_03_overlap():
    f = []
    _close("gamma quadrature", S.gamma, 1.13823, 1e-4, f)
    _close("gamma FD", fd_overlap_gamma(fd_eigenpairs(P, FdSolverConfig())), 1.13823, 1e-4, f)
    _record(3, "gamma = 1.13823 +- 1e-4 from quadrature and FD", f)


def test_criterion_04_derived_constants():
    f = []
    _close("eps", S.eps_sum, -9.3778, 1e-3, f)
    _close("delta", S.eps_diff, 0.0863, 1e-4, f)
    _record(4, "eps = -9.3778 +- 1e-3, delta = 0.0863 +- 1e-4", f)


TAU = {
    "A": (36.40, 121.0, 218.8),
    "B": (18.2, 10.1, 5.75),
    "C": (36.40, 120.3, 224.5),
    "D": (36.40, 11.02, 5.903),
}


def test_criterion_05_orthogonality_times():
    f = []
    for name, refs in TAU.items():
        for g, ref in zip(G, refs):
            tau = orthogonality_time(preset(name), coupled_eigensystem(S, g), analytic=False).tau
            _close(f"tau {name} g={g}", tau, ref, 5e-3, f, relative=True)
    _record(5, "orthogonality times, numeric search, 0.5% relative (12 values)", f)


C0 = {
    "A": (0.0, 0.223, 0.342),
    "B": (1.0, 0.554, 0.316),
    "C": (0.5, 0.0839, 0.0256),
    "D": (0.5, 0.277, 0.158),
}


def test_criterion_06_initial_concurrence():
    f = []
    for name, refs in C0.items():
        for g, ref in zip(G, refs):
            cs = coupled_eigensystem(S, g)
            _close(f"C(0) {name} g={g}", concurrence_initial(preset(name), cs), ref, 1e-3, f)
            _close(f"C(t=0) {name} g={g}", concurrence(preset(name), cs, 0.0), ref, 1e-3, f)
    _record(6, "initial concurrences within 1e-3 (12 values)", f)


CAV = {
    "A": {0.0: 0.0, "0+": 0.707, 0.1: 0.643, 0.2: 0.622},
    "B": {0.0: 1.0, 0.1: 0.808, 0.2: 0.742},
    "C": {0.0: 0.5, 0.1: 0.651, 0.2: 0.689},
    "D": {0.0: 0.5, "0+": 0.612, 0.1: 0.537, 0.2: 0.512},
}
G_ZERO_PLUS = 1e-9  # closed form just off resonance
G_ZERO_PLUS_NUMERIC = 1e-3  # slowest beat ~ 2 g gamma^2 must fit the averaging window


@pytest.mark.slow
def test_criterion_07_averaged_concurrence():
    f = []
    for name, refs in CAV.items():
        w = preset(name)
        for g, ref in refs.items():
            gc = G_ZERO_PLUS if g == "0+" else g
            _close(f"C_av {name} g={g}", closed_form_rms(w, coupled_eigensystem(S, gc)), ref, 1e-3, f)
            gn = G_ZERO_PLUS_NUMERIC if g == "0+" else g
            numeric, _, _ = time_average(w, coupled_eigensystem(S, gn))
            if ref == 0.0:
                _close(f"numeric C_av {name} g={g}", numeric, 0.0, 1e-12, f)
            else:
                _close(f"numeric C_av {name} g={g}", numeric, ref, 1e-2, f, relative=True)
    _record(7, "C_av closed forms within 1e-3; numeric long-time averages within 1% relative", f)


def _ratio(name, g):
    cs = coupled_eigensystem(S, g)
    w = preset(name)
    return speed_limit(w, cs, orthogonality_time(w, cs).tau).ratio


def test_criterion_08_speed_limit_ratios():
    f = []
    for g, ref in zip(G, (1.414, 7.00, 20.0)):
        _close(f"ratio A g={g}", _ratio("A", g), ref, 5e-3, f, relative=True)
    for name in "BC":
        for g in np.linspace(0.0, 1.0, 41):
            _close(f"ratio {name} g={g:.3f}", _ratio(name, g), 1.0, 1e-6, f)
    _close("ratio D g=0", _ratio("D", 0.0), 1.414, 5e-3, f, relative=True)
    for g in np.linspace(0.06, 1.0, 48):
        r = _ratio("D", g)
        if round(r, 1) != 1.0:
            f.append(f"ratio D g={g:.3f} = {r:.4f}")
    # crossover: ratio within 2% of unity
    g_x = brentq(lambda g: _ratio("D", g) - 1.02, 1e-3, 0.5, xtol=1e-6)
    _close("D crossover", g_x, 0.06, 5e-3, f)
    _record(8, f"speed-limit ratios: A 0.5%, B/C = 1 within 1e-6, D 1.414 -> 1.0 (crossover g = {g_x:.4f})", f)


def test_criterion_09_identity_b():
    from razavy_dw.cli import SweepSpec, run_sweep

    f = []
    rows = run_sweep(SweepSpec([preset("B")], list(np.linspace(0.0, 1.0, 51))), S, averages=False)
    k = math.pi / (2.0 * S.eps_diff)
    for r in rows:
        tau = r["tau"]
        if r["status"] != "ok":
            f.append(f"g={r['g']}: {r['status']}")
            continue
        if abs(tau - k * math.sqrt(2.0 * r["c_av"] ** 2 - 1.0)) >= 1e-6 * tau:
            f.append(f"C_av form g={r['g']:.3f}")
        if abs(tau - k * r["c0"]) >= 1e-6 * tau:
            f.append(f"C(0) form g={r['g']:.3f}")
    _record(9, f"preset B tau = (pi/2 delta) sqrt(2 C_av^2 - 1) = (pi/2 delta) C(0) on {len(rows)} sweep rows", f)


def test_criterion_10_properties():
    f = []
    rng = np.random.default_rng(10)
    gs = np.concatenate([[0.0], np.logspace(-8, 1, 60), rng.uniform(0, 2, 40)])
    for g in gs:
        cs = coupled_eigensystem(S, g)
        o1, o2, o3 = cs.omega
        if o3 != o1 + o2:
            f.append(f"Omega3 != Omega1 + Omega2 at g={g:.3g}")
        num = numeric_4x4_eigen(energy_matrix(S, g))
        if np.max(np.abs(num - cs.E) / np.abs(cs.E)) > 1e-12:
            f.append(f"4x4 eigenvalues at g={g:.3g}")
    packets = [preset(n) for n in "ABCD"]
    for _ in range(20):
        v = rng.normal(size=4)
        packets.append(custom(v / np.linalg.norm(v)))
    t = np.concatenate([[0.0], rng.uniform(0, 1000, 400)])
    for w in packets:
        for g in (0.0, 0.05, 0.1, 0.2, 0.7):
            cs = coupled_eigensystem(S, g)
            gam = correlation(w, cs, t)
            if gam[0] != pytest.approx(1.0, abs=1e-15) or gam.min() < 0 or gam.max() > 1 + 1e-12:
                f.append(f"Gamma range {w} g={g}")
            c = concurrence(w, cs, t)
            if c.min() < 0 or c.max() > 1 + 1e-12:
                f.append(f"C range {w} g={g}")
            if np.max(np.abs(c - concurrence_from_amplitudes(w, cs, t))) > 1e-12:
                f.append(f"dual path {w} g={g}")
            norm = np.sum(np.abs(product_amplitudes(w, cs, t)) ** 2, axis=-1)
            if np.max(np.abs(norm - 1.0)) > 1e-12:
                f.append(f"norm {w} g={g}")
            if g == 0.0 and np.ptp(c) > 1e-12:
                f.append(f"g=0 time dependence {w}")
            try:
                tau = orthogonality_time(w, cs).tau
            except (RuntimeError, ValueError):
                continue
            if tau < speed_limit(w, cs, tau).tau_min * (1 - 1e-9):
                f.append(f"tau < tau_min {w} g={g}")
    grid = Grid(161, -3.5, 3.5)
    for w in packets[:4]:
        cs = coupled_eigensystem(S, 0.1)
        for tt in (0.0, 3.7, 55.0, 400.0):
            n = grid_norm(psi_grid(w, cs, S, tt, grid))
            if abs(n - 1.0) > 1e-6:
                f.append(f"grid norm {w} t={tt}: {n:.9f}")
    _record(10, "property suites (Omega identity, Gamma/C ranges, norms, dual path, 4x4, g=0, tau >= tau_min)", f)


def _peak_quadrant(density, x, region=None):
    d = density if region is None else np.where(region, density, -np.inf)
    i, j = np.unravel_index(np.argmax(d), d.shape)
    side = lambda v: "R" if v > 0 else "L"  # noqa: E731
    return side(x[i]) + side(x[j])


def test_criterion_11_field_dumps():
    f = []
    grid = Grid()
    w, cs = preset("D"), coupled_eigensystem(S, 0.1)
    tau = orthogonality_time(w, cs).tau
    _close("tau D g=0.1", tau, 11.02, 5e-3, f, relative=True)
    f0 = psi_grid(w, cs, S, 0.0, grid)
    for k in (1, 3, 5):
        ov = abs(grid_overlap(f0, psi_grid(w, cs, S, k * tau, grid)))
        if ov >= 1e-3:
            f.append(f"|<Psi(0)|Psi({k} tau)>| = {ov:.2e}")
    # Fig. 3 panels: g = 0, t = 0
    cs0 = coupled_eigensystem(S, 0.0)
    x = grid.x
    for name in "ACD":
        q = _peak_quadrant(psi_grid(preset(name), cs0, S, 0.0, grid).density, x)
        if q != "RR":
            f.append(f"{name} peak in {q}")
    d = psi_grid(preset("B"), cs0, S, 0.0, grid).density
    if np.max(np.abs(d - d[::-1, ::-1])) > 1e-12 * d.max():
        f.append("B not symmetric under (x1, x2) -> (-x1, -x2)")
    upper = np.add.outer(x, x) > 0
    peaks = (_peak_quadrant(d, x, upper), _peak_quadrant(d, x, ~upper))
    if peaks != ("RR", "LL"):
        f.append(f"B peaks in {peaks}")
    _record(11, "field overlaps < 1e-3 at tau, 3 tau, 5 tau (D, g=0.1); peak quadrants of A-D at g=0", f)
