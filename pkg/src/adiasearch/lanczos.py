"""Lanczos tridiagonalization started from a marked vertex."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, VertexOutOfRange
from .graphs import Graph

BREAKDOWN_TOL = 1e-12


@dataclass(frozen=True)
class KrylovReduction:
    """Jacobi coefficients and orthonormal Krylov basis.

    ``betas[k]`` holds beta_{k+1}, the coupling between basis vectors k and
    k + 1, so ``len(betas) == dim - 1``. ``basis`` has shape ``(dim, N)``.
    """

    marked: int
    dim: int
    alphas: np.ndarray
    betas: np.ndarray
    basis: np.ndarray
    breakdown_residual: float

    def jacobi(self) -> np.ndarray:
        return np.diag(self.alphas) + np.diag(self.betas, 1) + np.diag(self.betas, -1)

    def to_dict(self) -> dict:
        return {
            "marked": self.marked,
            "dim": self.dim,
            "alphas": self.alphas.tolist(),
            "betas": self.betas.tolist(),
            "breakdownResidual": self.breakdown_residual,
        }


def lanczos_matrix(a: np.ndarray, start: np.ndarray, scale: float | None = None,
                   tol: float = BREAKDOWN_TOL, marked: int = -1) -> KrylovReduction:
    """Run Lanczos on a symmetric matrix from a unit start vector.

    Iteration stops once the next beta falls to ``tol * scale`` or below
    (``scale`` defaults to the infinity norm of ``a``). Every new vector is
    reorthogonalized twice against the whole basis.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if scale is None:
        scale = float(np.abs(a).sum(axis=1).max()) if n else 1.0
    threshold = tol * max(scale, 1.0)

    phi = np.asarray(start, dtype=float)
    phi = phi / np.linalg.norm(phi)
    basis = [phi]
    alphas: list[float] = []
    betas: list[float] = []
    residual = 0.0
    for i in range(n):
        v = a @ basis[i]
        alpha = float(basis[i] @ v)
        alphas.append(alpha)
        v = v - alpha * basis[i]
        if i > 0:
            v = v - betas[i - 1] * basis[i - 1]
        q = np.array(basis)
        for _ in range(2):
            v = v - q.T @ (q @ v)
        beta = float(np.linalg.norm(v))
        if beta <= threshold or i == n - 1:
            residual = beta
            break
        betas.append(beta)
        basis.append(v / beta)

    return KrylovReduction(
        marked=marked,
        dim=len(alphas),
        alphas=np.array(alphas),
        betas=np.array(betas),
        basis=np.array(basis),
        breakdown_residual=residual,
    )


def lanczos(g: Graph, marked: int = 0) -> KrylovReduction:
    """Tridiagonalize the adjacency matrix in the Krylov space of ``|marked>``."""
    if not 0 <= marked < g.n:
        raise VertexOutOfRange(f"marked vertex {marked} outside 0..{g.n - 1}")
    start = np.zeros(g.n)
    start[marked] = 1.0
    return lanczos_matrix(g.adjacency, start, scale=float(g.degree), marked=marked)


def project_state(kr: KrylovReduction, v: np.ndarray) -> tuple[np.ndarray, float]:
    """Coordinates of ``v`` in the Krylov basis and the norm of what is left over."""
    v = np.asarray(v)
    if v.shape != (kr.basis.shape[1],):
        raise DimensionMismatch(f"state has shape {v.shape}, expected ({kr.basis.shape[1]},)")
    coords = kr.basis @ v
    residual = float(np.linalg.norm(v - kr.basis.T @ coords))
    return coords, residual


def recursion_residuals(kr: KrylovReduction, a: np.ndarray) -> np.ndarray:
    """Norm of ``A phi_i - beta_{i+1} phi_{i+1} - alpha_i phi_i - beta_i phi_{i-1}`` per i.

    The final beta_d term is omitted, so the last entry equals the breakdown
    residual up to rounding.
    """
    out = np.empty(kr.dim)
    for i in range(kr.dim):
        r = a @ kr.basis[i] - kr.alphas[i] * kr.basis[i]
        if i > 0:
            r -= kr.betas[i - 1] * kr.basis[i - 1]
        if i < kr.dim - 1:
            r -= kr.betas[i] * kr.basis[i + 1]
        out[i] = np.linalg.norm(r)
    return out
