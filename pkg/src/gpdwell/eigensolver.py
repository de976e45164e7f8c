"""Lowest eigenpairs of symmetric tridiagonal operators.

Thin wrapper around LAPACK's tridiagonal solvers that fixes the
conventions the rest of the package relies on: ascending eigenvalues,
discrete-L2 normalization delta*sum(v^2) = 1, deterministic sign (largest
magnitude entry positive), and even-before-odd ordering inside
quasidegenerate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded

from .grid import Grid
from .hamiltonian import TridiagonalOperator

DEGENERACY_GAP = 1e-12
RESIDUAL_TOL = 1e-10
REFINE_STEPS = 3


class EigensolverError(RuntimeError):
    """Underlying iteration failed or produced an unusable pair."""


@dataclass(frozen=True)
class Eigenpair:
    value: float
    vector: np.ndarray  # interior nodes, delta*sum(v^2) = 1


def _fix_sign(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))  # argmax takes the lowest index on ties
    return -v if v[i] < 0 else v


def _parity_score(v: np.ndarray) -> float:
    """Overlap of v with its own reversal; +1 even, -1 odd."""
    return float(np.dot(v, v[::-1]) / np.dot(v, v))


def _refine(op: TridiagonalOperator, lam: float, v: np.ndarray, delta: float):
    """Rayleigh-quotient refinement with extended-precision residuals.

    At large D the float64 residual of even an exact pair sits near
    eps*||A|| ~ 1e-10, so both the correction residual and the final
    check are evaluated in longdouble; corrections are solved in float64.
    """
    ld = np.longdouble
    diag, off = op.diag.astype(ld), op.offdiag.astype(ld)

    def apply_ld(w):
        out = diag * w
        out[:-1] += off * w[1:]
        out[1:] += off * w[:-1]
        return out

    ab = np.zeros((3, op.size))
    ab[0, 1:] = op.offdiag
    ab[2, :-1] = op.offdiag

    def resid_norm(lam_, v_):
        r = apply_ld(v_.astype(ld)) - ld(lam_) * v_.astype(ld)
        return float(np.sqrt(ld(delta) * np.dot(r, r))), r

    best = resid_norm(lam, v) + (lam, v)
    for _ in range(REFINE_STEPS):
        rnorm, r = resid_norm(lam, v)
        if rnorm < best[0]:
            best = (rnorm, r, lam, v)
        ab[1, :] = op.diag - lam
        try:
            d = solve_banded((1, 1), ab, r.astype(float))
        except np.linalg.LinAlgError:
            break
        v = v - d
        v /= np.sqrt(delta * np.dot(v, v))
        vl = v.astype(ld)
        lam = float(np.dot(vl, apply_ld(vl)) / np.dot(vl, vl))
    rnorm, r = resid_norm(lam, v)
    if rnorm < best[0]:
        best = (rnorm, r, lam, v)
    return best[2], best[3], best[0]


def lowest_eigenpairs(op: TridiagonalOperator, k: int, grid: Grid) -> list[Eigenpair]:
    """k lowest eigenpairs, ascending, normalized and sign-fixed."""
    if not 1 <= k <= op.size:
        raise ValueError(f"k must be in [1, {op.size}], got {k}")
    try:
        vals, vecs = eigh_tridiagonal(
            op.diag, op.offdiag, select="i", select_range=(0, k - 1)
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise EigensolverError(f"tridiagonal eigensolver failed: {exc}") from exc

    pairs = []
    for j in range(k):
        v = vecs[:, j] / np.sqrt(grid.delta * np.dot(vecs[:, j], vecs[:, j]))
        lam, v, resid_norm = _refine(op, float(vals[j]), v, grid.delta)
        v = _fix_sign(v)
        if resid_norm > RESIDUAL_TOL * (1.0 + abs(lam)):
            raise EigensolverError(
                f"eigenpair {j} residual {resid_norm:.3e} exceeds tolerance"
            )
        pairs.append(Eigenpair(value=lam, vector=v))

    # Quasidegenerate pairs come back in index order with the even vector first.
    for j in range(k - 1):
        if abs(pairs[j + 1].value - pairs[j].value) < DEGENERACY_GAP:
            if _parity_score(pairs[j].vector) < _parity_score(pairs[j + 1].vector):
                pairs[j], pairs[j + 1] = pairs[j + 1], pairs[j]
    return pairs
