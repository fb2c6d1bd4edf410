"""Initial states over the coupled eigenbasis, their time evolution and spatial fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate

from .coupled import CoupledSpectrum, eigenvectors
from .potential import SingleWellSolution, eigenfunction

NORM_RENORMALIZE_TOL = 1e-9
_R = 1.0 / np.sqrt(2.0)

PRESETS: dict[str, tuple[float, float, float, float]] = {
    "A": (0.5, _R, 0.0, 0.5),
    "B": (_R, 0.0, 0.0, _R),
    "C": (_R, _R, 0.0, 0.0),
    "D": (0.5, 0.5, 0.5, 0.5),
}


@dataclass(frozen=True)
class Wavepacket:
    """Real expansion coefficients ``a_nu`` over the coupled eigenstates ``Phi_nu``.

    ``name`` is the preset label (A-D) or ``None`` for custom coefficients.
    """

    a: tuple[float, float, float, float]
    name: str | None = None

    @property
    def weights(self) -> NDArray:
        return np.asarray(self.a) ** 2

    def __str__(self):
        label = self.name or "custom"
        return f"{label}({', '.join(f'{v:.6g}' for v in self.a)})"


def preset(name: str) -> Wavepacket:
    key = name.strip().upper()
    if key not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    return Wavepacket(PRESETS[key], key)


def custom(coeffs: ArrayLike) -> Wavepacket:
    """Wavepacket from four real coefficients.

    Coefficients within 1e-9 of unit norm are renormalized; anything further off is
    treated as a user error. Complex coefficients are rejected because the closed-form
    concurrence assumes real ``a_nu``.
    """
    arr = np.asarray(coeffs)
    if arr.shape != (4,):
        raise ValueError(f"expected 4 coefficients, got shape {arr.shape}")
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0.0):
            raise ValueError("complex expansion coefficients are not supported")
        arr = arr.real
    arr = arr.astype(float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    norm2 = float(np.sum(arr**2))
    if abs(norm2 - 1.0) > NORM_RENORMALIZE_TOL:
        raise ValueError(f"coefficients are not normalized: sum a^2 = {norm2:.12g}")
    arr = arr / np.sqrt(norm2)
    return Wavepacket(tuple(float(v) for v in arr), None)


def as_wavepacket(spec: str | ArrayLike | Wavepacket) -> Wavepacket:
    if isinstance(spec, Wavepacket):
        return spec
    if isinstance(spec, str):
        return preset(spec)
    return custom(spec)


@dataclass(frozen=True)
class BasisAmplitudes:
    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def as_array(self) -> NDArray:
        return np.array([self.c00, self.c01, self.c10, self.c11])

    def as_matrix(self) -> NDArray:
        """2x2 coefficient matrix ``c[k, l]``."""
        return self.as_array().reshape(2, 2)


def _phases(cs: CoupledSpectrum, t: ArrayLike, relative: bool = False) -> NDArray:
    t = np.asarray(t, dtype=float)
    if relative:
        return np.exp(-1j * np.multiply.outer(t, cs.all_frequencies))
    return np.exp(-1j * np.multiply.outer(t, cs.E) / cs.hbar)


def product_amplitudes(w: Wavepacket, cs: CoupledSpectrum, t: ArrayLike, relative: bool = False) -> NDArray:
    """Vectorized product-basis amplitudes, shape ``t.shape + (4,)`` ordered 00, 01, 10, 11.

    ``relative=True`` drops the global phase ``exp(-i E_0 t / hbar)``; phases then come
    from the transition frequencies, which keeps round-off small at long times.
    """
    coeffs = np.asarray(w.a) * _phases(cs, t, relative)
    return coeffs @ eigenvectors(cs.theta).T


def basis_amplitudes(w: Wavepacket, cs: CoupledSpectrum, t: float) -> BasisAmplitudes:
    c = product_amplitudes(w, cs, float(t))
    return BasisAmplitudes(*(complex(v) for v in c))


@dataclass(frozen=True)
class Grid:
    """Square lattice ``n x n`` on ``[lo, hi]**2``."""

    n: int = 201
    lo: float = -3.5
    hi: float = 3.5

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("grid needs at least 3 points per axis")
        if not self.hi > self.lo:
            raise ValueError("grid upper bound must exceed lower bound")

    @property
    def x(self) -> NDArray:
        return np.linspace(self.lo, self.hi, self.n)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)


@dataclass(frozen=True)
class Field:
    grid: Grid
    t: float
    psi: NDArray  # psi[i, j] = Psi(x1 = x[i], x2 = x[j])

    @property
    def density(self) -> NDArray:
        return np.abs(self.psi) ** 2


def _basis_on_grid(s: SingleWellSolution, grid: Grid) -> NDArray:
    x = grid.x
    return np.stack([eigenfunction(0, x, s), eigenfunction(1, x, s)])


def psi_grid(
    w: Wavepacket,
    cs: CoupledSpectrum,
    s: SingleWellSolution,
    t: float,
    grid: Grid | None = None,
) -> Field:
    """``Psi(x1, x2, t) = sum_kl c_kl(t) phi_k(x1) phi_l(x2)`` on a square lattice."""
    grid = grid or Grid()
    phi = _basis_on_grid(s, grid)
    c = product_amplitudes(w, cs, float(t)).reshape(2, 2)
    psi = np.einsum("kl,ki,lj->ij", c, phi, phi)
    return Field(grid, float(t), psi)


def grid_integral(values: NDArray, grid: Grid) -> complex | float:
    """2D trapezoidal integral; spectrally accurate for the rapidly decaying fields here."""
    x = grid.x
    out = integrate.trapezoid(integrate.trapezoid(values, x, axis=1), x)
    return out


def grid_norm(f: Field) -> float:
    return float(grid_integral(f.density, f.grid))


def grid_overlap(f0: Field, f1: Field) -> complex:
    """``<Psi_0 | Psi_1>`` by 2D quadrature on the shared lattice."""
    if f0.grid != f1.grid:
        raise ValueError("fields live on different grids")
    return complex(grid_integral(np.conj(f0.psi) * f1.psi, f0.grid))
