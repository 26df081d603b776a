"""Orthogonal polynomials of a Jacobi matrix and the induced spectral measure.

For a Krylov reduction with coefficients ``alpha_0..alpha_{d-1}`` and
``beta_1..beta_{d-1}`` the orthonormal polynomials obey

    beta_{k+1} P_{k+1}(x) = (x - alpha_k) P_k(x) - beta_k P_{k-1}(x),

and the monic ones ``Q_k = beta_1 ... beta_k P_k`` obey

    Q_{k+1}(x) = (x - alpha_k) Q_k(x) - beta_k^2 Q_{k-1}(x).

``Q_d`` is the characteristic polynomial of the Jacobi matrix, so its roots
are the eigenvalues of the adjacency matrix visible from the marked vertex.
Eigenvalues are found by Sturm-count bisection on the Jacobi matrix; the
monic coefficients are kept only for display.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import IndexOutOfRange, NumericalInconsistency
from .lanczos import KrylovReduction


@dataclass(frozen=True)
class PolynomialTable:
    alphas: np.ndarray
    betas: np.ndarray
    monic: tuple[np.ndarray, ...]  # ascending-power coefficients of Q_0..Q_d
    scales: np.ndarray  # scales[k] = beta_1 ... beta_k, scales[0] = 1

    @property
    def dim(self) -> int:
        return len(self.alphas)

    def q(self, k: int, x):
        """Monic polynomial Q_k at ``x`` via the recursion (k <= d)."""
        if not 0 <= k <= self.dim:
            raise IndexOutOfRange(f"Q_{k} undefined for d = {self.dim}")
        x = np.asarray(x, dtype=float)
        prev, cur = np.zeros_like(x), np.ones_like(x)
        for j in range(k):
            b2 = self.betas[j - 1] ** 2 if j > 0 else 0.0
            prev, cur = cur, (x - self.alphas[j]) * cur - b2 * prev
        return cur

    def p(self, k: int, x):
        """Orthonormal polynomial P_k at ``x`` (k < d)."""
        if not 0 <= k < self.dim:
            raise IndexOutOfRange(f"P_{k} undefined for d = {self.dim}")
        return self.p_all(x)[k]

    def p_all(self, x) -> np.ndarray:
        """Stack of P_0(x)..P_{d-1}(x), shape ``(d,) + x.shape``."""
        x = np.asarray(x, dtype=float)
        out = np.empty((self.dim,) + x.shape)
        out[0] = 1.0
        for k in range(self.dim - 1):
            val = (x - self.alphas[k]) * out[k]
            if k > 0:
                val = val - self.betas[k - 1] * out[k - 1]
            out[k + 1] = val / self.betas[k]
        return out

    def to_dict(self) -> dict:
        return {
            "monic": [c.tolist() for c in self.monic],
            "scales": self.scales.tolist(),
        }


def build_polynomials(kr: KrylovReduction) -> PolynomialTable:
    return polynomials_from_coefficients(kr.alphas, kr.betas)


def polynomials_from_coefficients(alphas, betas) -> PolynomialTable:
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    d = len(alphas)
    monic = [np.array([1.0])]
    prev = np.array([0.0])
    for k in range(d):
        nxt = npoly.polymul([-alphas[k], 1.0], monic[-1])
        if k > 0:
            nxt = npoly.polysub(nxt, betas[k - 1] ** 2 * prev)
        prev = monic[-1]
        monic.append(np.trim_zeros(np.asarray(nxt, dtype=float), "b"))
    scales = np.concatenate([[1.0], np.cumprod(betas)])
    return PolynomialTable(alphas, betas, tuple(monic), scales)


# -- eigenvalues -------------------------------------------------------------

# pivots smaller than this are nudged negative; keeps b^2 / q finite
PIVMIN = 1e-200


def sturm_count(alphas, betas, x: float) -> int:
    """Number of eigenvalues of the Jacobi matrix strictly below ``x``."""
    count = 0
    q = 1.0
    for k, a in enumerate(alphas):
        b2 = betas[k - 1] ** 2 if k > 0 else 0.0
        q = (a - x) - b2 / q
        if abs(q) < PIVMIN:
            q = -PIVMIN
        if q < 0:
            count += 1
    return count


def tridiagonal_eigenvalues(alphas, betas, tol: float | None = None) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.

    Each eigenvalue is bracketed to an absolute width of
    ``4 eps (1 + max|x|)`` unless ``tol`` is given; the contract only needs
    ``1e-12 (1 + max|x|)``.
    """
    alphas = np.asarray(alphas, dtype=float)
    betas = np.abs(np.asarray(betas, dtype=float))
    d = len(alphas)
    a_list, b_list = alphas.tolist(), betas.tolist()
    if d == 0:
        return np.empty(0)
    off = np.zeros(d)
    off[:-1] += betas
    off[1:] += betas
    lo = float(np.min(alphas - off))
    hi = float(np.max(alphas + off))
    radius = max(abs(lo), abs(hi))
    if tol is None:
        tol = 4.0 * np.finfo(float).eps * (1.0 + radius)
    lo -= tol
    hi += tol

    roots = np.empty(d)
    for i in range(d):
        # smallest x with count(x) > i, i.e. the i-th eigenvalue
        a, b = lo, hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if sturm_count(a_list, b_list, mid) > i:
                b = mid
            else:
                a = mid
        roots[i] = 0.5 * (a + b)
    return roots


def _newton_root(alphas, betas, x: float, steps: int = 8) -> float:
    """Polish a root of Q_d with Newton's method, rescaling to avoid overflow."""
    for _ in range(steps):
        q_prev, q = 0.0, 1.0
        dq_prev, dq = 0.0, 0.0
        for k, a in enumerate(alphas):
            b2 = betas[k - 1] ** 2 if k > 0 else 0.0
            q_next = (x - a) * q - b2 * q_prev
            dq_next = q + (x - a) * dq - b2 * dq_prev
            q_prev, q, dq_prev, dq = q, q_next, dq, dq_next
            scale = max(abs(q), abs(q_prev), 1e-300)
            if scale > 1e100:
                q_prev, q, dq_prev, dq = q_prev / scale, q / scale, dq_prev / scale, dq / scale
        if dq == 0.0 or q == 0.0:
            break
        step = q / dq
        x -= step
        if abs(step) <= 1e-15 * max(1.0, abs(x)):
            break
    return x


def eigenvalues(kr: KrylovReduction) -> np.ndarray:
    """Ascending eigenvalues of the Jacobi matrix.

    Bisection results are cross-checked against Newton-polished roots of Q_d;
    a disagreement above ``1e-9`` raises :class:`NumericalInconsistency`.
    """
    roots = tridiagonal_eigenvalues(kr.alphas, kr.betas)
    tol = 1e-9 * (1.0 + float(np.max(np.abs(roots)))) if len(roots) else 0.0
    for x in roots:
        polished = _newton_root(kr.alphas.tolist(), kr.betas.tolist(), float(x))
        if abs(polished - x) > tol:
            raise NumericalInconsistency(
                f"bisection eigenvalue {x!r} and root of Q_d {polished!r} disagree"
            )
    return roots


# -- spectral measure --------------------------------------------------------


@dataclass(frozen=True)
class SpectralTable:
    """Spectral data of the marked vertex.

    ``pvalues[l, i] = P_l(x_i)``; ``eigvecs[i]`` is the unit eigenvector of
    the Jacobi matrix for ``roots[i]``; ``weights[i] = 1 / norms[i]``.
    """

    roots: np.ndarray
    pvalues: np.ndarray
    norms: np.ndarray
    weights: np.ndarray
    eigvecs: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.roots)

    def to_dict(self) -> dict:
        return {
            "roots": self.roots.tolist(),
            "weights": self.weights.tolist(),
            "norms": self.norms.tolist(),
        }


def spectral_table(kr: KrylovReduction, polys: PolynomialTable | None = None) -> SpectralTable:
    polys = polys or build_polynomials(kr)
    roots = eigenvalues(kr)
    pvalues = polys.p_all(roots)
    norms = np.sum(pvalues**2, axis=0)
    eigvecs = (pvalues / np.sqrt(norms)).T
    return SpectralTable(roots, pvalues, norms, 1.0 / norms, eigvecs)


def eigenvector(st: SpectralTable, i: int) -> np.ndarray:
    """Unit eigenvector with components ``P_l(x_i) / sqrt(N_i)``."""
    if not 0 <= i < st.dim:
        raise IndexOutOfRange(f"level {i} outside 0..{st.dim - 1}")
    return st.eigvecs[i].copy()


def spectral_moments(st: SpectralTable, mmax: int) -> np.ndarray:
    """Moments ``sum_i mu_i x_i^m`` for m = 0..mmax."""
    if mmax < 0:
        raise IndexOutOfRange(f"mmax must be >= 0, got {mmax}")
    powers = st.roots[None, :] ** np.arange(mmax + 1)[:, None]
    return powers @ st.weights
