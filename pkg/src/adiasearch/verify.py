"""Exact reference computations for the search Hamiltonian.

Everything runs in the Krylov space of the marked vertex. That space is
invariant under both the Laplacian and the marked projector and contains the
uniform state, so the reduced dynamics are exact. :func:`full_space_crosscheck`
exists to confirm this on small graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, NonPositiveGap, NormDriftExceeded, TooLarge
from .graphs import Graph
from .lanczos import KrylovReduction, lanczos

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
FULL_SPACE_LIMIT = 512


@dataclass(frozen=True)
class ReducedHamiltonian:
    """``gamma (1 - s) (D I - J) + s (I - e_0 e_0^T)`` on the Krylov space.

    The identity shift is kept so absolute energies match the full operator.
    """

    jacobi: np.ndarray
    degree: int

    @property
    def dim(self) -> int:
        return self.jacobi.shape[0]

    @classmethod
    def from_reduction(cls, kr: KrylovReduction, degree: int) -> ReducedHamiltonian:
        return cls(kr.jacobi(), int(degree))

    def coefficients(self, s, gamma: float):
        """``(c_id, c_jac, c_mark)`` with ``H = c_id I + c_jac J + c_mark e_0 e_0^T``."""
        return gamma * self.degree * (1.0 - s) + s, -gamma * (1.0 - s), -s

    def matrix(self, s: float, gamma: float) -> np.ndarray:
        _check_s_gamma(s, gamma)
        c_id, c_jac, c_mark = self.coefficients(s, gamma)
        h = c_id * np.eye(self.dim) + c_jac * self.jacobi
        h[0, 0] += c_mark
        return h


def _check_s_gamma(s: float, gamma: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")


def reduced_hamiltonian(kr: KrylovReduction, degree: int, s: float, gamma: float) -> np.ndarray:
    return ReducedHamiltonian.from_reduction(kr, degree).matrix(s, gamma)


def exact_gap(rh: ReducedHamiltonian, s: float, gamma: float) -> float:
    """Difference of the two lowest eigenvalues of the reduced Hamiltonian."""
    if rh.dim < 2:
        raise DomainError("exact gap needs Krylov dimension >= 2")
    w = np.linalg.eigvalsh(rh.matrix(s, gamma))
    return float(max(w[1] - w[0], 0.0))


def minimize_gap(gapfn: Callable[[float], float], grid: int = 1001, tol: float = 1e-10,
                 lo: float = 0.0, hi: float = 1.0) -> tuple[float, float]:
    """Minimize ``gapfn`` on ``[lo, hi]``: uniform scan, then golden section.

    The golden-section search runs inside the two grid cells around the best
    grid point until the bracket is narrower than ``tol``.
    """
    s_grid = np.linspace(lo, hi, grid)
    values = np.array([gapfn(float(s)) for s in s_grid])
    k = int(np.argmin(values))
    best_s, best_g = float(s_grid[k]), float(values[k])

    a = float(s_grid[max(k - 1, 0)])
    b = float(s_grid[min(k + 1, grid - 1)])
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = gapfn(c), gapfn(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = gapfn(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = gapfn(d)
    s_mid = 0.5 * (a + b)
    g_mid = gapfn(s_mid)
    if g_mid <= best_g:
        best_s, best_g = s_mid, g_mid
    return best_s, best_g


def min_gap(rh: ReducedHamiltonian, gamma: float, grid: int = 1001) -> tuple[float, float]:
    """``(s_star, g_min)`` of the exact gap over ``s`` in [0, 1]."""
    return minimize_gap(lambda s: exact_gap(rh, s, gamma), grid=grid)


# -- local adiabatic schedule ------------------------------------------------


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, rtol: float = 1e-8,
                     max_depth: int = 50, min_depth: int = 2) -> float:
    """Adaptive Simpson quadrature with a relative stopping rule."""
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    total = []
    stack = [(a, b, fa, fm, fb, whole, 0)]
    while stack:
        a0, b0, fa0, fm0, fb0, s0, depth = stack.pop()
        m0 = 0.5 * (a0 + b0)
        fl, fr = f(0.5 * (a0 + m0)), f(0.5 * (m0 + b0))
        left = (m0 - a0) / 6.0 * (fa0 + 4.0 * fl + fm0)
        right = (b0 - m0) / 6.0 * (fm0 + 4.0 * fr + fb0)
        err = left + right - s0
        if depth >= min_depth and (abs(err) <= 15.0 * rtol * abs(left + right) or depth >= max_depth):
            total.append(left + right + err / 15.0)
        else:
            stack.append((m0, b0, fm0, fr, fb0, right, depth + 1))
            stack.append((a0, m0, fa0, fl, fm0, left, depth + 1))
    return math.fsum(total)


@dataclass(frozen=True)
class ScheduleResult:
    """Samples of the local adiabatic schedule ``t(s)``."""

    epsilon: float
    s: np.ndarray
    t: np.ndarray
    gap: np.ndarray

    @property
    def total_time(self) -> float:
        return float(self.t[-1])

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.s.tolist(), self.t.tolist(), self.gap.tolist()))


def local_schedule(gapfn: Callable[[float], float], epsilon: float, s_min: float = 0.0,
                   grid: int = 1001, rtol: float = 1e-8) -> ScheduleResult:
    """Integrate ``dt/ds = 1 / (epsilon g(s)^2)`` from ``s_min`` to 1.

    Each grid cell is integrated separately by adaptive Simpson, so every
    sample of ``t`` carries the same relative accuracy.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0.0 <= s_min < 1.0:
        raise DomainError(f"s_min must lie in [0, 1), got {s_min}")
    if grid < 2:
        raise DomainError(f"grid needs at least 2 points, got {grid}")

    def rate(s: float) -> float:
        g = gapfn(s)
        if not g > 0.0:
            raise NonPositiveGap(f"gap is {g!r} at s = {s!r}")
        return 1.0 / (epsilon * g * g)

    s = np.linspace(s_min, 1.0, grid)
    gaps = np.array([gapfn(float(x)) for x in s])
    bad = np.flatnonzero(~(gaps > 0.0))
    if bad.size:
        k = int(bad[0])
        raise NonPositiveGap(f"gap is {gaps[k]!r} at s = {s[k]!r}")
    pieces = [adaptive_simpson(rate, float(s[k]), float(s[k + 1]), rtol) for k in range(grid - 1)]
    t = np.concatenate([[0.0], np.cumsum(pieces)])
    return ScheduleResult(float(epsilon), s, t, gaps)


# -- Schrodinger propagation -------------------------------------------------


@dataclass(frozen=True)
class EvolutionResult:
    final_fidelity: float
    t: np.ndarray
    fidelity: np.ndarray
    norm: np.ndarray
    norm_drift: float
    steps: int
    final_state: np.ndarray

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.t.tolist(), self.fidelity.tolist(), self.norm.tolist()))


def evolve(rh: ReducedHamiltonian, schedule: ScheduleResult, initial: np.ndarray, gamma: float,
           step_scale: float = 0.01, samples: int = 1001,
           drift_limit: float = 1e-4) -> EvolutionResult:
    """Propagate ``i dpsi/dt = H(s(t)) psi`` with classic RK4.

    ``s(t)`` inverts the tabulated schedule by monotone cubic interpolation.
    The step is at most ``min(smallest schedule interval, step_scale / ||H||)``.
    Fidelity is the population of the marked direction ``e_0``.
    """
    psi = np.asarray(initial, dtype=complex)
    if psi.shape != (rh.dim,):
        raise DomainError(f"initial state has shape {psi.shape}, expected ({rh.dim},)")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise DomainError("initial state must be normalized")
    if schedule.s[0] != 0.0:
        raise DomainError("evolution needs a schedule that starts at s = 0")

    total = schedule.total_time
    s_of_t = PchipInterpolator(schedule.t, schedule.s)
    h_norm = max(
        float(np.max(np.abs(np.linalg.eigvalsh(rh.matrix(float(s), gamma))))) for s in schedule.s
    )
    dt_max = min(float(np.min(np.diff(schedule.t))), step_scale / max(h_norm, 1e-300))
    steps = max(1, math.ceil(total / dt_max))
    h = total / steps

    times = h * np.arange(steps + 1)
    s_nodes = np.clip(s_of_t(times), 0.0, 1.0)
    s_mids = np.clip(s_of_t(times[:-1] + 0.5 * h), 0.0, 1.0)
    s_nodes[0], s_nodes[-1] = 0.0, 1.0
    c_node = np.stack(rh.coefficients(s_nodes, gamma))
    c_mid = np.stack(rh.coefficients(s_mids, gamma))
    jac = rh.jacobi.astype(complex)

    def deriv(c, y):
        out = c[0] * y + c[1] * (jac @ y)
        out[0] += c[2] * y[0]
        return -1j * out

    stride = max(1, steps // max(samples - 1, 1))
    rec_t, rec_f, rec_n = [0.0], [abs(psi[0]) ** 2], [1.0]
    drift = abs(np.linalg.norm(psi) - 1.0)
    for k in range(steps):
        cm = c_mid[:, k]
        k1 = deriv(c_node[:, k], psi)
        k2 = deriv(cm, psi + 0.5 * h * k1)
        k3 = deriv(cm, psi + 0.5 * h * k2)
        k4 = deriv(c_node[:, k + 1], psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nrm = math.sqrt(float(np.vdot(psi, psi).real))
        drift = max(drift, abs(nrm - 1.0))
        if (k + 1) % stride == 0 or k + 1 == steps:
            rec_t.append(float(times[k + 1]))
            rec_f.append(float(abs(psi[0]) ** 2))
            rec_n.append(nrm)
    if drift > drift_limit:
        raise NormDriftExceeded(f"norm drifted by {drift:.3e} (> {drift_limit:g}); reduce the step")
    return EvolutionResult(
        final_fidelity=float(abs(psi[0]) ** 2),
        t=np.array(rec_t),
        fidelity=np.array(rec_f),
        norm=np.array(rec_n),
        norm_drift=float(drift),
        steps=steps,
        final_state=psi,
    )


# -- full-space check --------------------------------------------------------


@dataclass(frozen=True)
class Crosscheck:
    full_levels: tuple[float, float]
    reduced_levels: tuple[float, float]
    reachable_levels: tuple[float, float]
    subset_error: float  # max distance of a reduced eigenvalue to the full spectrum
    reachable_error: float  # max |reachable - reduced| over the two lowest levels

    @property
    def full_gap(self) -> float:
        return self.full_levels[1] - self.full_levels[0]

    @property
    def reduced_gap(self) -> float:
        return self.reduced_levels[1] - self.reduced_levels[0]

    @property
    def max_abs_diff(self) -> float:
        return max(self.subset_error, self.reachable_error)

    def to_dict(self) -> dict:
        return {
            "full_levels": list(self.full_levels),
            "reduced_levels": list(self.reduced_levels),
            "reachable_levels": list(self.reachable_levels),
            "full_gap": self.full_gap,
            "reduced_gap": self.reduced_gap,
            "max_abs_diff": self.max_abs_diff,
        }


def full_hamiltonian(g: Graph, marked: int, s: float, gamma: float) -> np.ndarray:
    _check_s_gamma(s, gamma)
    h = gamma * (1.0 - s) * g.laplacian() + s * np.eye(g.n)
    h[marked, marked] -= s
    return h


def full_space_crosscheck(g: Graph, marked: int, s: float, gamma: float,
                          kr: KrylovReduction | None = None) -> Crosscheck:
    """Compare reduced and full-space spectra of the search Hamiltonian.

    "Reachable" levels are full eigenspaces with non-negligible weight on the
    Krylov space; the two lowest of them must match the reduced ground and
    first excited levels.
    """
    if g.n > FULL_SPACE_LIMIT:
        raise TooLarge(f"full diagonalization limited to N <= {FULL_SPACE_LIMIT}, got {g.n}")
    kr = kr or lanczos(g, marked)
    reduced = np.linalg.eigvalsh(reduced_hamiltonian(kr, g.degree, s, gamma))
    w, v = np.linalg.eigh(full_hamiltonian(g, marked, s, gamma))

    subset_error = float(max(np.min(np.abs(w - x)) for x in reduced))

    scale = 1.0 + float(np.max(np.abs(w)))
    cluster_tol = 1e-8 * scale
    clusters: list[list[int]] = [[0]]
    for k in range(1, len(w)):
        if w[k] - w[clusters[-1][-1]] <= cluster_tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    reachable = []
    for idx in clusters:
        weight = float(np.sum((kr.basis @ v[:, idx]) ** 2))
        if weight > 1e-8:
            reachable.append(float(np.mean(w[idx])))
    reachable_pair = (reachable + reachable[-1:])[:2]
    reduced_pair = (float(reduced[0]), float(reduced[1]) if len(reduced) > 1 else float(reduced[0]))
    reachable_error = max(abs(a - b) for a, b in zip(reachable_pair, reduced_pair))
    return Crosscheck(
        full_levels=(float(w[0]), float(w[1])),
        reduced_levels=reduced_pair,
        reachable_levels=(reachable_pair[0], reachable_pair[1]),
        subset_error=subset_error,
        reachable_error=float(reachable_error),
    )


# -- complete graph closed forms ---------------------------------------------


@dataclass(frozen=True)
class CompleteGraphClosedForms:
    """Closed-form gap and schedule for K_N with ``gamma = 1/N``."""

    n: int
    epsilon: float

    @property
    def g_min(self) -> float:
        return 1.0 / math.sqrt(self.n)

    @property
    def s_star(self) -> float:
        return 0.5

    def gap(self, s):
        n = self.n
        return np.sqrt((n - 4.0 * s * (1.0 - s) * (n - 1)) / n)

    def time(self, s):
        n = self.n
        root = math.sqrt(n - 1)
        return (n / (2.0 * self.epsilon * root)) * (np.arctan(root * (2.0 * s - 1.0)) + math.atan(root))

    @property
    def total_time(self) -> float:
        return float(self.time(1.0))

    @property
    def t_asymptotic(self) -> float:
        return math.pi / (2.0 * self.epsilon) * math.sqrt(self.n)


def complete_graph_closed_forms(n: int, epsilon: float) -> CompleteGraphClosedForms:
    if n < 2:
        raise DomainError(f"complete graph needs N >= 2, got {n}")
    return CompleteGraphClosedForms(int(n), float(epsilon))
