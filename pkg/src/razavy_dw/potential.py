"""
Razavy's hyperbolic double-well potential and its quasi-exact single-well eigenpairs.

Only the four lowest levels of the quasi-exact set are available in closed form.
The two lowest (even ``phi_0`` and odd ``phi_1``) are normalized numerically and
carry the dipole overlap ``gamma`` that couples two wells.

Conventions
-----------
- Energies are in units where the prefactor ``hbar**2 * kappa**2 / (2 m)`` multiplies
  the dimensionless bracket; with ``hbar = m = xi = kappa = 1`` this prefactor is 1/2.
- ``phi_1`` is positive for ``x > 0`` which makes ``gamma > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate, optimize

# cosh(4 * 177.7) overflows a double
SAFE_KAPPA_X = 170.0
# integrand below ~1e-60 of its peak beyond |kappa x| = 6 for xi >= 1
TRUNCATION_KAPPA_X = 6.0
QUAD_TOL = 1e-12


class DomainError(ValueError):
    """Raised when a coordinate falls outside the overflow-safe range."""


class QuadratureError(ArithmeticError):
    """Raised when an adaptive integral fails to meet its tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (error estimate {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class PotentialParams:
    """Physical constants of one well plus the inter-well coupling ``g``."""

    hbar: float = 1.0
    mass: float = 1.0
    xi: float = 1.0
    kappa: float = 1.0
    g: float = 0.0

    def __post_init__(self):
        for name in ("hbar", "mass", "xi", "kappa"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if not np.isfinite(self.g) or self.g < 0.0:
            raise ValueError(f"coupling g must be >= 0, got {self.g!r}")

    @property
    def energy_scale(self) -> float:
        """``hbar**2 kappa**2 / (2 m)``."""
        return self.hbar**2 * self.kappa**2 / (2.0 * self.mass)

    def with_g(self, g: float) -> "PotentialParams":
        return PotentialParams(self.hbar, self.mass, self.xi, self.kappa, g)


def _check_domain(u: NDArray) -> None:
    if not np.all(np.isfinite(u)):
        raise DomainError("position must be finite")
    if np.any(np.abs(u) > SAFE_KAPPA_X):
        raise DomainError(
            f"|kappa x| exceeds the safe cosh range ({SAFE_KAPPA_X:g}); "
            f"max |kappa x| = {np.max(np.abs(u)):.6g}"
        )


def potential(x: ArrayLike, p: PotentialParams) -> NDArray | float:
    """Razavy potential ``V(x)``.

    V(x) = (hbar^2 kappa^2 / 2m) [ (xi^2/8) cosh 4 kappa x - 4 xi cosh 2 kappa x - xi^2/8 ]
    """
    u = p.kappa * np.asarray(x, dtype=float)
    _check_domain(u)
    xi = p.xi
    v = p.energy_scale * (xi**2 / 8.0 * np.cosh(4.0 * u) - 4.0 * xi * np.cosh(2.0 * u) - xi**2 / 8.0)
    return float(v) if v.ndim == 0 else v


def well_minimum(p: PotentialParams) -> tuple[float, float]:
    """Closed-form position and depth of the right-hand minimum.

    Setting dV/du = 0 with u = cosh 2 kappa x gives u = 8 / xi (valid for xi < 8);
    for xi >= 8 the potential has a single well at the origin.
    """
    u = 8.0 / p.xi
    if u <= 1.0:
        return 0.0, potential(0.0, p)
    x_s = np.arccosh(u) / (2.0 * p.kappa)
    return float(x_s), potential(x_s, p)


def locate_minimum(p: PotentialParams, bracket: tuple[float, float] | None = None) -> tuple[float, float]:
    """Locate the right-hand minimum of ``V`` by bounded 1D minimization."""
    if bracket is None:
        bracket = (1e-6 / p.kappa, TRUNCATION_KAPPA_X / p.kappa)
    res = optimize.minimize_scalar(
        lambda x: potential(x, p), bounds=bracket, method="bounded", options={"xatol": 1e-12}
    )
    return float(res.x), float(res.fun)


def _roots(xi: float) -> tuple[float, float]:
    return np.sqrt(4.0 - 2.0 * xi + xi**2), np.sqrt(4.0 + 2.0 * xi + xi**2)


def single_well_energies(p: PotentialParams) -> NDArray:
    """Quasi-exact energies ``eps_0 < eps_1 < eps_2 < eps_3``."""
    xi = p.xi
    r0, r1 = _roots(xi)
    bracket = np.array([
        -xi - 5.0 - 2.0 * r0,
        xi - 5.0 - 2.0 * r1,
        -xi - 5.0 + 2.0 * r0,
        xi - 5.0 + 2.0 * r1,
    ])
    return p.energy_scale * bracket


def _unnormalized(n: int, x: ArrayLike, p: PotentialParams) -> NDArray:
    # exp(-xi cosh(2u)/4) * [c1 cosh u + c3 cosh 3u]; the factor exp(3|u|) is moved into the
    # exponent so that large |u| neither overflows nor produces inf * 0.
    u = p.kappa * np.asarray(x, dtype=float)
    _check_domain(u)
    xi = p.xi
    r0, r1 = _roots(xi)
    a = np.abs(u)
    envelope = np.exp(-xi * np.cosh(2.0 * u) / 4.0 + 3.0 * a)
    if n == 0:
        c3 = 4.0 - xi + 2.0 * r0
        poly = 3.0 * xi * np.cosh(u) * np.exp(-3.0 * a) + c3 * 0.5 * (1.0 + np.exp(-6.0 * a))
        return envelope * poly
    if n == 1:
        c3 = 4.0 + xi + 2.0 * r1
        poly = 3.0 * xi * np.sinh(a) * np.exp(-3.0 * a) + c3 * 0.5 * (1.0 - np.exp(-6.0 * a))
        return np.sign(u) * envelope * poly
    raise ValueError(f"level index must be 0 or 1, got {n!r}")


def _quad(f, half_width: float) -> float:
    val, err = integrate.quad(f, -half_width, half_width, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=400)
    if err > 1e-10 * max(1.0, abs(val)):
        raise QuadratureError("quadrature did not converge", err)
    return val


@dataclass(frozen=True)
class SingleWellSolution:
    """Exact single-well data needed by the coupled problem."""

    params: PotentialParams
    eps: NDArray
    norm0: float
    norm1: float
    gamma: float
    well_minimum_x: float
    well_minimum_v: float
    barrier_top_v: float
    half_width: float = field(default=TRUNCATION_KAPPA_X)

    @property
    def eps_sum(self) -> float:
        return float(self.eps[0] + self.eps[1])

    @property
    def eps_diff(self) -> float:
        return float(self.eps[1] - self.eps[0])

    def eigenfunction(self, n: int, x: ArrayLike) -> NDArray | float:
        return eigenfunction(n, x, self)


def solve_single_well(p: PotentialParams, half_width: float | None = None) -> SingleWellSolution:
    """Energies, normalization factors and overlap for one Razavy well.

    ``half_width`` is the integration cut-off |x| <= L (default ``6 / kappa``).
    """
    L = TRUNCATION_KAPPA_X / p.kappa if half_width is None else float(half_width)
    n0 = _quad(lambda x: _unnormalized(0, x, p) ** 2, L)
    n1 = _quad(lambda x: _unnormalized(1, x, p) ** 2, L)
    A0, A1 = 1.0 / np.sqrt(n0), 1.0 / np.sqrt(n1)
    raw = _quad(lambda x: _unnormalized(0, x, p) * x * _unnormalized(1, x, p), L)
    x_s, v_s = well_minimum(p)
    return SingleWellSolution(
        params=p,
        eps=single_well_energies(p),
        norm0=float(A0),
        norm1=float(A1),
        gamma=float(A0 * A1 * raw),
        well_minimum_x=x_s,
        well_minimum_v=v_s,
        barrier_top_v=potential(0.0, p),
        half_width=L,
    )


def eigenfunction(n: int, x: ArrayLike, s: SingleWellSolution) -> NDArray | float:
    """Normalized ``phi_n(x)`` for n in {0, 1}."""
    if n not in (0, 1):
        raise ValueError(f"level index must be 0 or 1, got {n!r}")
    norm = s.norm0 if n == 0 else s.norm1
    out = norm * _unnormalized(n, x, s.params)
    return float(out) if np.ndim(out) == 0 else out


def overlap_gamma(s: SingleWellSolution) -> float:
    """Recompute ``gamma = int phi_0 x phi_1 dx`` from the normalized eigenfunctions."""
    return _quad(lambda x: eigenfunction(0, x, s) * x * eigenfunction(1, x, s), s.half_width)
