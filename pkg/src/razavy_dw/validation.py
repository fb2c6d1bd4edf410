"""Regression checks of every closed form against its oracle and against published values."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .coupled import coupled_eigensystem, energy_matrix
from .dynamics import orthogonality_time, speed_limit
from .entanglement import closed_form_rms, concurrence, concurrence_from_amplitudes, concurrence_initial
from .oracle import FdSolverConfig, fd_eigenpairs, fd_overlap_gamma, numeric_4x4_eigen
from .potential import PotentialParams, locate_minimum, potential, solve_single_well
from .wavepacket import preset

# published numbers for hbar = m = xi = kappa = 1
REFERENCE = {
    "eps": (-4.73205, -4.64575, -1.26795, 0.645751),
    "gamma": 1.13823,
    "eps_sum": -9.3778,
    "eps_diff": 0.0863,
    "x_s": 1.38433,
    "v_s": -8.125,
    "v0": -2.0,
    "tau": {
        "A": (36.40, 121.0, 218.8),
        "B": (18.2, 10.1, 5.75),
        "C": (36.40, 120.3, 224.5),
        "D": (36.40, 11.02, 5.903),
    },
    "c0": {
        "A": (0.0, 0.223, 0.342),
        "B": (1.0, 0.554, 0.316),
        "C": (0.5, 0.0839, 0.0256),
        "D": (0.5, 0.277, 0.158),
    },
    "c_av": {
        "A": (0.0, 0.643, 0.622),
        "B": (1.0, 0.808, 0.742),
        "C": (0.5, 0.651, 0.689),
        "D": (0.5, 0.537, 0.512),
    },
    "c_av_0plus": {"A": 0.707, "D": 0.612},
    "ratio_A": (1.414, 7.00, 20.0),
}
G_TABLE = (0.0, 0.1, 0.2)


@dataclass
class Check:
    name: str
    value: float
    reference: float
    tolerance: float
    relative: bool = False

    @property
    def error(self) -> float:
        err = abs(self.value - self.reference)
        return err / abs(self.reference) if self.relative else err

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.error <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["error"] = self.error
        d["passed"] = self.passed
        return d


def run_checks(fd_points: int = 2001) -> list[Check]:
    p = PotentialParams()
    s = solve_single_well(p)
    checks: list[Check] = []
    add = checks.append

    for n, ref in enumerate(REFERENCE["eps"]):
        add(Check(f"eps{n} closed form", float(s.eps[n]), ref, 5e-6))
    fd = fd_eigenpairs(p, FdSolverConfig(half_width=6.0, n_points=fd_points, order=4))
    for n in (0, 1):
        add(Check(f"eps{n} finite-difference vs closed form", float(fd.energies[n]), float(s.eps[n]), 1e-4))
    add(Check("V(0)", potential(0.0, p), REFERENCE["v0"], 1e-12))
    x_s, v_s = locate_minimum(p)
    add(Check("minimum position (1D minimization)", x_s, REFERENCE["x_s"], 1e-4))
    add(Check("minimum depth", v_s, REFERENCE["v_s"], 1e-4))
    add(Check("gamma quadrature", s.gamma, REFERENCE["gamma"], 1e-4))
    add(Check("gamma finite-difference", fd_overlap_gamma(fd), REFERENCE["gamma"], 1e-4))
    add(Check("eps sum", s.eps_sum, REFERENCE["eps_sum"], 1e-3))
    add(Check("eps diff", s.eps_diff, REFERENCE["eps_diff"], 1e-4))

    worst_identity = worst_eig = 0.0
    for g in np.concatenate([[0.0], np.logspace(-6, 0, 25)]):
        cs = coupled_eigensystem(s, g)
        o1, o2, o3 = cs.omega
        worst_identity = max(worst_identity, abs(o3 - o1 - o2))
        num = numeric_4x4_eigen(energy_matrix(s, g))
        worst_eig = max(worst_eig, float(np.max(np.abs(num - cs.E) / np.abs(cs.E))))
    add(Check("Omega3 - Omega1 - Omega2", worst_identity, 0.0, 0.0))
    add(Check("closed-form vs numeric 4x4 eigenvalues (rel)", worst_eig, 0.0, 1e-12))

    rng = np.random.default_rng(7)
    worst_dual = 0.0
    for name in "ABCD":
        for k, g in enumerate(G_TABLE):
            cs = coupled_eigensystem(s, g)
            w = preset(name)
            tau = orthogonality_time(w, cs, analytic=False).tau
            add(Check(f"tau {name} g={g}", tau, REFERENCE["tau"][name][k], 5e-3, relative=True))
            add(Check(f"C(0) {name} g={g}", concurrence_initial(w, cs), REFERENCE["c0"][name][k], 1e-3))
            add(Check(f"C_av {name} g={g}", closed_form_rms(w, cs), REFERENCE["c_av"][name][k], 1e-3))
            if name == "A":
                ratio = speed_limit(w, cs, tau).ratio
                add(Check(f"tau/tau_min A g={g}", ratio, REFERENCE["ratio_A"][k], 5e-3, relative=True))
            t = rng.uniform(0.0, 500.0, 20)
            worst_dual = max(worst_dual, float(np.max(np.abs(concurrence(w, cs, t) - concurrence_from_amplitudes(w, cs, t)))))
    add(Check("closed-form vs definition concurrence", worst_dual, 0.0, 1e-12))
    for name, ref in REFERENCE["c_av_0plus"].items():
        cs = coupled_eigensystem(s, 1e-9)
        add(Check(f"C_av {name} g=0+", closed_form_rms(preset(name), cs), ref, 1e-3))
    return checks
