"""Survival amplitude, orthogonality time and quantum-speed-limit bound."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from .coupled import CoupledSpectrum
from .wavepacket import Wavepacket

ORTH_THRESHOLD = 5e-3
T_MAX = 400.0
_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class OrthogonalityResult:
    tau: float
    gamma_residual: float
    method: str  # "analytic" | "numeric"
    bracket: tuple[float, float]


@dataclass(frozen=True)
class SpeedLimit:
    mean_energy: float
    energy_spread: float
    tau_min: float
    ratio: float
    tau_ml: float
    tau_mt: float


class NoOrthogonalState(RuntimeError):
    """Gamma(t) never dropped below the threshold inside the scan window.

    Not a numerical failure: with incommensurate frequencies the state may only
    approach orthogonality. ``t_min``/``gamma_min`` record the deepest minimum seen.
    """

    def __init__(self, t_min: float, gamma_min: float, t_max: float, threshold: float):
        super().__init__(
            f"no orthogonal state found in (0, {t_max:g}]: min Gamma = {gamma_min:.3e} "
            f"at t = {t_min:.6g} (threshold {threshold:g})"
        )
        self.t_min = t_min
        self.gamma_min = gamma_min
        self.t_max = t_max
        self.threshold = threshold


def _amplitude(w: Wavepacket, cs: CoupledSpectrum, t: ArrayLike) -> NDArray:
    t = np.asarray(t, dtype=float)
    return np.exp(-1j * np.multiply.outer(t, cs.all_frequencies)) @ w.weights


def correlation(w: Wavepacket, cs: CoupledSpectrum, t: ArrayLike) -> NDArray | float:
    """``Gamma(t) = | sum_nu |a_nu|^2 exp(-i Omega_nu t) |``."""
    out = np.abs(_amplitude(w, cs, t))
    return float(out) if out.ndim == 0 else out


def _gamma_sq(w: Wavepacket, cs: CoupledSpectrum):
    # |.|^2 stays smooth at exact zeros, unlike |.|
    def f(t: float) -> float:
        return float(abs(_amplitude(w, cs, t)) ** 2)

    return f


def default_step(cs: CoupledSpectrum) -> float:
    o3 = cs.omega[2]
    return min(0.01 * 2.0 * np.pi / o3, 0.05) if o3 > 0 else 0.05


def analytic_tau(w: Wavepacket, cs: CoupledSpectrum) -> float | None:
    """Closed-form orthogonality time when the weight pattern admits one.

    Two equal weights on levels i, j give tau = pi / |Omega_i - Omega_j|. Four equal
    weights factorize as (1 + e^{-i Omega_1 t})(1 + e^{-i Omega_2 t}) / 4, giving
    tau = pi / max(Omega_1, Omega_2). Returns ``None`` otherwise.
    """
    p = w.weights
    freqs = cs.all_frequencies
    nonzero = np.flatnonzero(p > _WEIGHT_TOL)
    if len(nonzero) == 2:
        i, j = nonzero
        if abs(p[i] - p[j]) <= _WEIGHT_TOL:
            gap = abs(freqs[j] - freqs[i])
            return np.pi / gap if gap > 0 else None
        return None
    if len(nonzero) == 4 and np.all(np.abs(p - 0.25) <= _WEIGHT_TOL):
        top = max(cs.omega[0], cs.omega[1])
        return np.pi / top if top > 0 else None
    return None


def orthogonality_time(
    w: Wavepacket,
    cs: CoupledSpectrum,
    *,
    threshold: float = ORTH_THRESHOLD,
    t_max: float = T_MAX,
    dt: float | None = None,
    analytic: bool = True,
) -> OrthogonalityResult:
    """Earliest ``t > 0`` at which ``Gamma(t)`` reaches zero (or drops below ``threshold``).

    The numeric path scans ``Gamma^2`` on a uniform step, refines every bracketed local
    minimum with bounded Brent minimization, and returns the earliest refined minimum
    under the threshold.

    Raises
    ------
    ValueError
        If fewer than two coefficients are nonzero.
    NoOrthogonalState
        If no minimum clears the threshold within ``t_max``.
    """
    if np.count_nonzero(w.weights > _WEIGHT_TOL) < 2:
        raise ValueError("a single eigenstate never evolves into an orthogonal state")
    if analytic:
        tau = analytic_tau(w, cs)
        if tau is not None:
            return OrthogonalityResult(float(tau), 0.0, "analytic", (0.0, float(tau)))

    step = default_step(cs) if dt is None else float(dt)
    if step <= 0:
        raise ValueError("time step must be positive")
    t = np.arange(0.0, t_max + step, step)
    f = _gamma_sq(w, cs)
    v = np.abs(_amplitude(w, cs, t)) ** 2
    interior = np.flatnonzero((v[1:-1] <= v[:-2]) & (v[1:-1] < v[2:])) + 1

    best_t, best_v = float("nan"), np.inf
    for i in interior:
        lo, hi = t[i - 1], t[i + 1]
        res = optimize.minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
        tm, gm = float(res.x), float(np.sqrt(max(res.fun, 0.0)))
        if gm < best_v:
            best_t, best_v = tm, gm
        if gm < threshold and tm > 0.0:
            # later brackets start at least one step further out, so this is the earliest
            return OrthogonalityResult(tm, gm, "numeric", (0.0, float(t_max)))
    raise NoOrthogonalState(best_t, float(best_v), float(t_max), threshold)


def speed_limit(w: Wavepacket, cs: CoupledSpectrum, tau: float | None = None) -> SpeedLimit:
    """Mandelstam-Tamm / Margolus-Levitin bound ``tau_min = max(pi hbar/2E, pi hbar/2dE)``.

    ``E`` and ``dE`` are measured from the ground level ``E_0``. ``ratio`` is NaN when
    ``tau`` is not supplied.
    """
    p = w.weights
    hbar = cs.hbar
    levels = hbar * cs.all_frequencies
    mean = float(p @ levels)
    var = float(p @ levels**2) - mean**2
    spread = float(np.sqrt(max(var, 0.0)))
    if mean <= 0.0 and spread <= 0.0:
        raise ValueError("speed limit undefined: no excited-state weight")
    tau_ml = np.pi * hbar / (2.0 * mean) if mean > 0 else np.inf
    tau_mt = np.pi * hbar / (2.0 * spread) if spread > 0 else np.inf
    tau_min = max(tau_ml, tau_mt)
    ratio = float(tau / tau_min) if tau is not None else float("nan")
    return SpeedLimit(mean, spread, float(tau_min), ratio, float(tau_ml), float(tau_mt))
