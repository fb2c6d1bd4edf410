"""Concurrence of the two-well state and its temporal averages.

Two independent routes to C(t) are kept side by side: the reduced closed form in the
mixing angle and transition frequencies, and the pure-state definition
``C = 2 |c00 c11 - c01 c10|`` applied to the product-basis amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .coupled import CoupledSpectrum
from .dynamics import default_step
from .wavepacket import Wavepacket, product_amplitudes

AVERAGE_PERIODS = 2000
AVERAGE_T_CAP = 1e5
_CHUNK = 1 << 17


@dataclass(frozen=True)
class ConcurrenceReport:
    c0: float
    c_rms: float
    c_mean: float
    method: str  # how c_rms was obtained: "analytic" | "numeric"
    c_rms_numeric: float
    window: float
    samples: NDArray | None = None


def _terms(w: Wavepacket, cs: CoupledSpectrum) -> tuple[NDArray, NDArray]:
    """Weights and angular frequencies of the exponentials summed inside |.| for C(t)."""
    a0, a1, a2, a3 = w.a
    o1, o2, o3 = cs.omega
    s2, c2 = np.sin(2.0 * cs.theta), np.cos(2.0 * cs.theta)
    weights = np.array([a0**2 * s2, -(a3**2) * s2, 2.0 * a0 * a3 * c2, -(a1**2), a2**2])
    freqs = np.array([0.0, 2.0 * o3, o3, 2.0 * o1, 2.0 * o2])
    return weights, freqs


def concurrence(w: Wavepacket, cs: CoupledSpectrum, t: ArrayLike) -> NDArray | float:
    """Closed-form ``C(t)`` for real coefficients."""
    weights, freqs = _terms(w, cs)
    t = np.asarray(t, dtype=float)
    out = np.abs(np.exp(-1j * np.multiply.outer(t, freqs)) @ weights)
    return float(out) if out.ndim == 0 else out


def concurrence_from_amplitudes(w: Wavepacket, cs: CoupledSpectrum, t: ArrayLike) -> NDArray | float:
    """``C(t) = 2 |c00 c11 - c01 c10|`` from the evolved product-basis amplitudes."""
    # the global phase cancels in |c00 c11 - c01 c10|
    c = product_amplitudes(w, cs, t, relative=True)
    out = 2.0 * np.abs(c[..., 0] * c[..., 3] - c[..., 1] * c[..., 2])
    return float(out) if np.ndim(out) == 0 else out


def concurrence_initial(w: Wavepacket, cs: CoupledSpectrum) -> float:
    """``C(0)``; presets use their reduced forms in ``cos 2 theta`` / ``sin 2 theta``."""
    s2, c2 = np.sin(2.0 * cs.theta), np.cos(2.0 * cs.theta)
    if w.name == "A":
        return 0.5 * abs(1.0 - c2)
    if w.name == "B":
        return abs(c2)
    if w.name == "C":
        return 0.5 * abs(1.0 - s2)
    if w.name == "D":
        return 0.5 * abs(c2)
    a0, a1, a2, a3 = w.a
    return abs((a0**2 - a3**2) * s2 + 2.0 * a0 * a3 * c2 - a1**2 + a2**2)


def closed_form_rms(w: Wavepacket, cs: CoupledSpectrum) -> float | None:
    """``C_av = sqrt(<C(t)^2>)`` for the presets, ``None`` for custom coefficients.

    A and D are discontinuous at the resonance Omega_1 = Omega_2 (g = 0), where
    phase averaging no longer removes the cross terms.
    """
    sq = np.sin(2.0 * cs.theta) ** 2
    if w.name == "A":
        value = 0.0 if cs.degenerate else (4.0 - sq) / 8.0
    elif w.name == "B":
        value = 1.0 - 0.5 * sq
    elif w.name == "C":
        value = 0.25 * (1.0 + sq)
    elif w.name == "D":
        value = 0.25 if cs.degenerate else (3.0 - sq) / 8.0
    else:
        return None
    return float(np.sqrt(value))


def slowest_beat(w: Wavepacket, cs: CoupledSpectrum) -> float:
    """Smallest nonzero angular frequency present in ``C(t)^2`` (0 if C is constant)."""
    weights, freqs = _terms(w, cs)
    active = freqs[np.abs(weights) > 1e-15]
    diffs = np.abs(np.subtract.outer(active, active)).ravel()
    scale = max(float(np.max(np.abs(freqs))), 1e-300)
    diffs = diffs[diffs > 1e-12 * scale]
    return float(diffs.min()) if diffs.size else 0.0


def averaging_window(w: Wavepacket, cs: CoupledSpectrum) -> float:
    beat = slowest_beat(w, cs)
    base = 2.0 * np.pi / beat if beat > 0 else 2.0 * np.pi / max(cs.omega[2], 1e-300)
    return float(min(AVERAGE_PERIODS * base, AVERAGE_T_CAP))


def time_average(
    w: Wavepacket,
    cs: CoupledSpectrum,
    window: float | None = None,
    dt: float | None = None,
) -> tuple[float, float, float]:
    """Trapezoidal long-time averages ``(sqrt<C^2>, <C>, T)`` over ``[0, T]``."""
    T = averaging_window(w, cs) if window is None else float(window)
    step = default_step(cs) if dt is None else float(dt)
    n = max(int(np.ceil(T / step)), 2)
    step = T / n
    weights, freqs = _terms(w, cs)
    sum_c = sum_c2 = 0.0
    for start in range(0, n + 1, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, n + 1))
        c = np.abs(np.exp(-1j * np.multiply.outer(idx * step, freqs)) @ weights)
        # endpoint halves of the trapezoid rule
        wgt = np.ones_like(c)
        wgt[idx == 0] = 0.5
        wgt[idx == n] = 0.5
        sum_c += float(wgt @ c)
        sum_c2 += float(wgt @ c**2)
    mean = sum_c * step / T
    mean_sq = sum_c2 * step / T
    return float(np.sqrt(mean_sq)), float(mean), T


def concurrence_average(
    w: Wavepacket,
    cs: CoupledSpectrum,
    window: float | None = None,
    dt: float | None = None,
) -> ConcurrenceReport:
    rms_num, mean, T = time_average(w, cs, window, dt)
    rms = closed_form_rms(w, cs)
    method = "analytic"
    if rms is None:
        rms, method = rms_num, "numeric"
    return ConcurrenceReport(
        c0=concurrence_initial(w, cs),
        c_rms=rms,
        c_mean=mean,
        method=method,
        c_rms_numeric=rms_num,
        window=T,
    )
