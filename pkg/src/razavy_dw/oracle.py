"""Brute-force counterparts of the closed forms.

A finite-difference Schrodinger solver for a single well, grid quadrature of the
dipole overlap, and direct diagonalization of the 4x4 energy matrix. None of these
use the analytic eigenfunctions, so agreement is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy import linalg, sparse
from scipy.sparse import linalg as sparse_linalg

from .potential import PotentialParams, potential


class FdConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class FdSolverConfig:
    """Uniform grid on ``(-half_width, half_width)`` with Dirichlet walls.

    ``v_cap`` clips the potential: the Razavy walls reach ~1e20 by |kappa x| = 12 and
    would otherwise swamp the eigensolver's absolute accuracy (~eps * ||H||). The
    eigenfunctions are below exp(-1000) wherever the cap is active.
    """

    half_width: float = 6.0
    n_points: int = 2001
    order: int = 4
    v_cap: float = 1e6

    def validate(self, kappa: float) -> None:
        if self.n_points < 501:
            raise ValueError(f"n_points must be >= 501, got {self.n_points}")
        if self.half_width < 5.0 / kappa:
            raise ValueError(f"half_width must be >= 5/kappa = {5.0 / kappa:g}")
        if self.order not in (2, 4):
            raise ValueError(f"stencil order must be 2 or 4, got {self.order}")

    @property
    def step(self) -> float:
        return 2.0 * self.half_width / (self.n_points + 1)

    @property
    def x(self) -> NDArray:
        # interior nodes; psi = 0 at x = +-half_width
        return -self.half_width + self.step * np.arange(1, self.n_points + 1)


@dataclass(frozen=True)
class FdResult:
    x: NDArray
    energies: NDArray
    states: NDArray  # states[n] sampled on x, sum(states[n]**2) * h = 1

    @property
    def step(self) -> float:
        return float(self.x[1] - self.x[0])


def _fix_signs(x: NDArray, states: NDArray) -> NDArray:
    out = states.copy()
    for n, psi in enumerate(out):
        # even states: positive at the centre; odd states: positive on the right
        ref = psi.sum() if n % 2 == 0 else psi[x > 0].sum()
        if ref < 0:
            out[n] = -psi
    return out


def fd_eigenpairs(
    p: PotentialParams,
    cfg: FdSolverConfig | None = None,
    k: int = 2,
    v: Callable[[NDArray], NDArray] | None = None,
) -> FdResult:
    """Lowest ``k`` eigenpairs of ``-(hbar^2/2m) d^2/dx^2 + V`` with Dirichlet walls.

    ``v`` replaces the Razavy potential (used for self-tests against known spectra).
    """
    cfg = cfg or FdSolverConfig()
    cfg.validate(p.kappa)
    x, h = cfg.x, cfg.step
    vx = potential(x, p) if v is None else np.asarray(v(x), dtype=float)
    vx = np.minimum(vx, cfg.v_cap)
    t = p.hbar**2 / (2.0 * p.mass * h**2)
    try:
        if cfg.order == 2:
            d = 2.0 * t + vx
            e = -t * np.ones(len(x) - 1)
            w, vecs = linalg.eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))
        else:
            # 5-point stencil (-1, 16, -30, 16, -1) / 12, shift-inverted just below min V
            n = len(x)
            h_op = sparse.diags(
                [t / 12.0, -16.0 * t / 12.0, 30.0 * t / 12.0 + vx, -16.0 * t / 12.0, t / 12.0],
                [-2, -1, 0, 1, 2],
                shape=(n, n),
                format="csc",
            )
            w, vecs = sparse_linalg.eigsh(h_op, k=k, sigma=float(vx.min()) - 1.0, which="LM", tol=1e-14)
            order = np.argsort(w)
            w, vecs = w[order], vecs[:, order]
    except (linalg.LinAlgError, sparse_linalg.ArpackNoConvergence) as exc:
        raise FdConvergenceError(f"finite-difference eigensolve failed: {exc}") from exc
    states = vecs.T / np.sqrt(h)
    return FdResult(x=x, energies=np.asarray(w), states=_fix_signs(x, states))


def fd_overlap_gamma(fd: FdResult) -> float:
    """``sum phi_0 x phi_1 h`` on the solver grid."""
    return float(np.sum(fd.states[0] * fd.x * fd.states[1]) * fd.step)


def numeric_4x4_eigen(m: NDArray) -> NDArray:
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4) or not np.allclose(m, m.T, rtol=0.0, atol=1e-14 * max(1.0, np.abs(m).max())):
        raise ValueError("expected a symmetric 4x4 matrix")
    return np.sort(np.linalg.eigvalsh(m))
