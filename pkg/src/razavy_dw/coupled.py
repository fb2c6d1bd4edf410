"""Exact spectrum of two Razavy wells coupled by ``-g x1 x2`` in the two-level product basis.

Basis order is ``|00>, |01>, |10>, |11>`` with ``|kl> = phi_k(x1) phi_l(x2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .potential import SingleWellSolution

# relative guard for treating computed frequencies as resonant
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class CoupledSpectrum:
    g: float
    hbar: float
    E: NDArray
    theta: float
    omega: NDArray  # (Omega_1, Omega_2, Omega_3)
    eps_sum: float
    eps_diff: float
    coupling: float  # g * gamma**2

    @property
    def degenerate(self) -> bool:
        """True at exact resonance ``Omega_1 == Omega_2`` (uncoupled wells)."""
        if self.g == 0.0:
            return True
        o1, o2, _ = self.omega
        return abs(o2 - o1) <= DEGENERACY_RTOL * max(abs(o1), abs(o2))

    @property
    def all_frequencies(self) -> NDArray:
        """``Omega_nu`` for nu = 0..3 (Omega_0 = 0)."""
        return np.concatenate([[0.0], self.omega])

    def eigenvectors(self) -> NDArray:
        """Columns are the coupled eigenstates in the product basis."""
        return eigenvectors(self.theta)


def energy_matrix(s: SingleWellSolution, g: float) -> NDArray:
    e0, e1 = s.eps[0], s.eps[1]
    c = -g * s.gamma**2
    return np.array([
        [2.0 * e0, 0.0, 0.0, c],
        [0.0, e0 + e1, c, 0.0],
        [0.0, c, e0 + e1, 0.0],
        [c, 0.0, 0.0, 2.0 * e1],
    ])


def eigenvectors(theta: float) -> NDArray:
    c, s = np.cos(theta), np.sin(theta)
    r = 1.0 / np.sqrt(2.0)
    return np.array([
        [c, 0.0, 0.0, -s],
        [0.0, r, -r, 0.0],
        [0.0, r, r, 0.0],
        [s, 0.0, 0.0, c],
    ])


def coupled_eigensystem(s: SingleWellSolution, g: float) -> CoupledSpectrum:
    """Closed-form eigenvalues, mixing angle and transition frequencies.

    Raises
    ------
    ValueError
        If ``g < 0``. Negative couplings are rejected rather than mapped onto a
        phase convention for ``theta``.
    """
    if not np.isfinite(g) or g < 0.0:
        raise ValueError(f"coupling g must be >= 0, got {g!r}")
    eps = s.eps_sum
    delta = s.eps_diff
    G = g * s.gamma**2
    root = np.hypot(delta, G)
    E = np.array([eps - root, eps - G, eps + G, eps + root])
    theta = 0.5 * np.arctan2(G, delta)
    theta = float(np.clip(theta, -np.pi / 4.0, np.pi / 4.0))
    hbar = s.params.hbar
    o1 = (root - G) / hbar
    o2 = (root + G) / hbar
    # summed rather than 2 * root / hbar so that Omega_3 = Omega_1 + Omega_2 holds bitwise
    omega = np.array([o1, o2, o1 + o2])
    return CoupledSpectrum(
        g=float(g),
        hbar=hbar,
        E=E,
        theta=theta,
        omega=omega,
        eps_sum=eps,
        eps_diff=delta,
        coupling=G,
    )
