"""Finite-difference operator assembly.

The discrete Hamiltonian is a symmetric tridiagonal matrix acting on the
D-1 interior nodes (hard Dirichlet walls at +-L): kinetic 3-point stencil
-(1/2) d^2/dx^2, trap potential on the diagonal, plus beta times the
density |psi|^2 for the self-consistent interaction term.

Wavefunctions cross module boundaries as length-(D+1) arrays with zeros at
alpha = 0, D; operators act on the interior slice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid, TrapConfig, potential


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal operator on the D-1 interior nodes."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != len(self.diag) - 1:
            raise ValueError("offdiag must have length size-1")

    @property
    def size(self) -> int:
        return len(self.diag)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product on an interior-node vector."""
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def dense(self) -> np.ndarray:
        """Materialize as a dense array (small sizes / tests)."""
        m = np.diag(self.diag)
        idx = np.arange(self.size - 1)
        m[idx, idx + 1] = self.offdiag
        m[idx + 1, idx] = self.offdiag
        return m


def kinetic_operator(grid: Grid) -> TridiagonalOperator:
    """-(1/2) times the 3-point second-difference operator, m = hbar = 1."""
    n = grid.D - 1
    inv_d2 = 1.0 / grid.delta**2
    return TridiagonalOperator(
        diag=np.full(n, inv_d2),
        offdiag=np.full(n - 1, -0.5 * inv_d2),
    )


def assemble(grid: Grid, trap: TrapConfig, density: np.ndarray) -> TridiagonalOperator:
    """Kinetic + V(x) + beta*density on the interior nodes.

    density is |psi|^2 sampled at interior nodes of a unit-normalized state.
    """
    density = np.asarray(density, dtype=float)
    if density.shape != (grid.D - 1,):
        raise ValueError(f"density must have length D-1={grid.D - 1}, got {density.shape}")
    if np.any(density < 0):
        raise ValueError("density entries must be nonnegative")
    kin = kinetic_operator(grid)
    diag = kin.diag + potential(grid.interior, trap.a) + trap.beta * density
    return TridiagonalOperator(diag=diag, offdiag=kin.offdiag)


def second_derivative_at(grid: Grid, psi, alpha: int) -> float:
    """3-point second-derivative stencil at interior node alpha."""
    if not 1 <= alpha <= grid.D - 1:
        raise ValueError(f"alpha must be an interior index in [1, {grid.D - 1}], got {alpha}")
    psi = np.asarray(psi)
    if psi.shape[-1] != grid.D + 1:
        raise ValueError(f"psi must have length D+1={grid.D + 1}")
    return float((psi[alpha + 1] - 2.0 * psi[alpha] + psi[alpha - 1]) / grid.delta**2)
