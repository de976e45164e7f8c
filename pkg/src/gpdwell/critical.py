"""Critical well depth a_c(beta) and critical energy E_c(beta).

At a_c the ground-state curvature at the origin changes sign: below it
the state has a single central peak, above it the origin becomes a local
minimum between two peaks. a_c is bracketed and bisected on that sign;
E_c is the per-particle energy of the critical ground state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid, TrapConfig, make_grid
from .hamiltonian import second_derivative_at
from .scf import ScfConfig, solve_state


@dataclass(frozen=True)
class CriticalResult:
    beta: float
    a_c: float
    E_c: float
    curvature_at_ac: float
    bracket: tuple[float, float]
    tolerance: float


@dataclass(frozen=True)
class QuadraticFit:
    c0: float
    c1: float
    c2: float
    residual_rms: float

    def __call__(self, beta):
        return self.c0 + self.c1 * np.asarray(beta) + self.c2 * np.asarray(beta) ** 2


def curvature_sign(trap: TrapConfig, grid: Grid, cfg: ScfConfig | None = None) -> float:
    """Ground-state curvature at the origin, sign-normalized so psi(0) > 0."""
    result = solve_state(grid, trap, 0, cfg)
    psi = result.state.psi
    mid = result.state.grid.D // 2
    if psi[mid] < 0:
        psi = -psi
    return second_derivative_at(result.state.grid, psi, mid)


def find_critical_a(
    beta: float,
    bracket: tuple[float, float] = (0.5, 3.0),
    tol: float = 1e-4,
    grid: Grid | None = None,
    cfg: ScfConfig | None = None,
) -> CriticalResult:
    """Bisect the curvature sign change in a to width tol; evaluate E_c there."""
    grid = grid or make_grid(6.0, 4000)
    a_lo, a_hi = bracket
    if not a_lo < a_hi:
        raise ValueError("bracket must satisfy a_lo < a_hi")
    c_lo = curvature_sign(TrapConfig(a=a_lo, beta=beta), grid, cfg)
    c_hi = curvature_sign(TrapConfig(a=a_hi, beta=beta), grid, cfg)
    if np.sign(c_lo) == np.sign(c_hi):
        raise ValueError(
            f"curvature has the same sign ({np.sign(c_lo):+g}) at both bracket ends"
        )

    lo, hi = a_lo, a_hi
    c_mid = c_lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        c_mid = curvature_sign(TrapConfig(a=mid, beta=beta), grid, cfg)
        if np.sign(c_mid) == np.sign(c_lo):
            lo = mid
        else:
            hi = mid
    a_c = 0.5 * (lo + hi)

    trap_c = TrapConfig(a=a_c, beta=beta)
    result = solve_state(grid, trap_c, 0, cfg)  # fills state.energy
    e_c = result.state.energy
    curv = curvature_sign(trap_c, grid, cfg)
    return CriticalResult(
        beta=beta, a_c=a_c, E_c=e_c, curvature_at_ac=curv,
        bracket=(a_lo, a_hi), tolerance=tol,
    )


def fit_quadratic(points: list[tuple[float, float]]) -> QuadraticFit:
    """Ordinary least squares for value = c0 + c1*beta + c2*beta^2."""
    if len(points) < 4:
        raise ValueError(f"need at least 4 points, got {len(points)}")
    beta = np.array([p[0] for p in points])
    value = np.array([p[1] for p in points])
    if len(np.unique(beta)) < 3:
        raise ValueError("beta values are too degenerate for a quadratic fit")
    design = np.column_stack([np.ones_like(beta), beta, beta**2])
    coeffs, _, rank, _ = np.linalg.lstsq(design, value, rcond=None)
    if rank < 3:
        raise ValueError("rank-deficient design matrix (collinear beta samples)")
    resid = value - design @ coeffs
    return QuadraticFit(
        c0=float(coeffs[0]), c1=float(coeffs[1]), c2=float(coeffs[2]),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
    )
