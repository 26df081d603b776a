"""Second-order perturbative model of the search gap.

In the Krylov basis the interpolating Hamiltonian is, up to a multiple of the
identity, ``gamma (s - 1) J - s e_0 e_0^T`` with J the Jacobi matrix. Treating
the marked projector as the perturbation, the gap between two chosen levels
``x0``, ``x1`` of J is

    g(s) ~ gamma (s - 1) (x1 - x0) - s A + s^2 B / (gamma (s - 1))

with A and B built from the spectral norms ``N_i = sum_l P_l(x_i)^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import (
    DegenerateLevels,
    DomainError,
    IndexOutOfRange,
    NegativeDiscriminant,
    UnknownFamily,
    ZeroDenominator,
)
from .graphs import FAMILIES, build_family
from .lanczos import lanczos
from .polynomials import SpectralTable, spectral_table

Levels = Literal["lowest", "highest"]


@dataclass(frozen=True)
class GapModel:
    """Gap terms for the level pair ``(x0, x1)``.

    With ``levels="lowest"`` (the default) the pair is the two smallest Jacobi
    eigenvalues. ``levels="highest"`` takes ``x0`` as the largest and ``x1`` as
    the second largest, which are the two lowest energies of
    ``gamma (s - 1) J`` for s < 1; then ``x1 - x0 < 0``.
    """

    x0: float
    x1: float
    term_a: float
    term_b: float
    table: SpectralTable
    levels: str = "lowest"
    i0: int = 0
    i1: int = 1

    @property
    def spread(self) -> float:
        return self.x1 - self.x0

    def discriminant(self) -> float:
        """``B (x1 - x0)``, which must be non-negative for the closed forms."""
        return self.term_b * self.spread

    def to_dict(self) -> dict:
        return {
            "levels": self.levels,
            "x0": self.x0,
            "x1": self.x1,
            "termA": self.term_a,
            "termB": self.term_b,
        }


def first_order(st: SpectralTable, i: int) -> float:
    """First-order energy shift ``<psi_i|e_0 e_0^T|psi_i> = 1 / N_i``."""
    if not 0 <= i < st.dim:
        raise IndexOutOfRange(f"level {i} outside 0..{st.dim - 1}")
    return float(1.0 / st.norms[i])


def _level_indices(st: SpectralTable, levels: str) -> tuple[int, int]:
    if st.dim < 2:
        raise DomainError(f"gap needs at least two levels, Krylov dimension is {st.dim}")
    if levels == "lowest":
        return 0, 1
    if levels == "highest":
        return st.dim - 1, st.dim - 2
    raise DomainError(f"levels must be 'lowest' or 'highest', got {levels!r}")


def _second_order_sum(st: SpectralTable, i: int) -> float:
    """``sum_{j != i} 1 / ((x_i - x_j) N_i N_j)``."""
    x, norms = st.roots, st.norms
    scale = max(1.0, float(np.max(np.abs(x))))
    terms = []
    for j in range(st.dim):
        if j == i:
            continue
        diff = x[i] - x[j]
        if abs(diff) < 1e-9 * scale:
            raise DegenerateLevels(f"levels {i} and {j} coincide (x = {x[i]!r})")
        terms.append(1.0 / (diff * norms[i] * norms[j]))
    return math.fsum(terms)


def gap_terms(st: SpectralTable, levels: Levels = "lowest") -> tuple[float, float]:
    """The first-order (A) and second-order (B) gap coefficients."""
    i0, i1 = _level_indices(st, levels)
    term_a = first_order(st, i1) - first_order(st, i0)
    term_b = _second_order_sum(st, i1) - _second_order_sum(st, i0)
    return term_a, term_b


def gap_model(st: SpectralTable, levels: Levels = "lowest") -> GapModel:
    i0, i1 = _level_indices(st, levels)
    term_a, term_b = gap_terms(st, levels)
    return GapModel(float(st.roots[i0]), float(st.roots[i1]), term_a, term_b, st, levels, i0, i1)


def gap_perturbative(gm: GapModel, s: float, gamma: float) -> float:
    """Signed second-order gap estimate.

    The value is negative whenever the level ordering of the unperturbed
    Hamiltonian is reversed; callers wanting a physical gap take ``abs``.
    """
    if not 0.0 <= s < 1.0:
        raise DomainError(f"perturbative gap needs 0 <= s < 1, got s={s}")
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    lead = gamma * (s - 1.0)
    return lead * gm.spread - s * gm.term_a + s * s * gm.term_b / lead


def _root_discriminant(gm: GapModel) -> float:
    disc = gm.discriminant()
    if disc < 0:
        raise NegativeDiscriminant(
            f"B (x1 - x0) = {disc!r} < 0: no real critical gamma "
            f"(A = {gm.term_a!r}, B = {gm.term_b!r})"
        )
    return math.sqrt(disc)


def gamma_crit(gm: GapModel, s: float) -> float:
    """Hopping strength at which the perturbative gap is stationary in gamma."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"critical gamma needs 0 < s < 1, got s={s}")
    ratio = gm.term_b / gm.spread
    if ratio < 0:
        raise NegativeDiscriminant(f"B / (x1 - x0) = {ratio!r} < 0: no real critical gamma")
    return s / (1.0 - s) * math.sqrt(ratio)


def g_min_signed(gm: GapModel, s: float) -> float:
    """``-s (A + 2 sqrt(B (x1 - x0)))``, the gap at the critical gamma."""
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    return -s * (gm.term_a + 2.0 * _root_discriminant(gm))


def g_min(gm: GapModel, s: float) -> float:
    """Magnitude of :func:`g_min_signed`."""
    return abs(g_min_signed(gm, s))


def search_time(gm: GapModel, epsilon: float) -> float:
    """Estimated total time ``1 / (eps (A + 2 sqrt(B (x1 - x0)))^2)``."""
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    c = gm.term_a + 2.0 * _root_discriminant(gm)
    if abs(c) < 1e-12:
        raise ZeroDenominator(f"A + 2 sqrt(B (x1 - x0)) = {c!r} is numerically zero")
    return 1.0 / (epsilon * c * c)


# -- closed forms from the worked examples -----------------------------------


def paper_closed_forms(family: str, params, epsilon: float) -> dict:
    """Closed-form reference values quoted for each family.

    Keys not available for a family are ``None``. ``gamma_crit`` is evaluated
    at s = 1/2 and ``g_min`` at s = 1, matching the computed columns.
    """
    p = [int(v) for v in params]
    out = dict.fromkeys(("termA", "termB", "gamma_crit", "g_min", "T"))
    if family == "complete":
        (n,) = p
        out["g_min"] = 1.0 / math.sqrt(n)
        out["T"] = math.pi / (2.0 * epsilon) * math.sqrt(n)
    elif family == "dihedral":
        (n,) = p
        out["termA"] = (2 * n - 3) / (2 * n)
        out["termB"] = (4 * n - 3) / (4 * n**3)
        out["gamma_crit"] = math.sqrt(4 * n - 3) / (2 * n**2)
        out["g_min"] = (2 * n + 2 * math.sqrt(4 * n - 3) - 3) / (2 * n)
        out["T"] = 4 * n**2 / (epsilon * (2 * n + 4 * math.sqrt(n)) ** 2)
    elif family == "mpartite":
        m, n = p
        out["termA"] = (m * (n - 1) - 1) / (m * n)
        out["termB"] = (1 - n) / n * ((1 - (m - 1) ** 2) / (n**2 * m * (m - 1))) + 1 / (n * m) * (
            (m**2 * n - 2 * m + 1) / (n**2 * m**2 * (m - 1))
        )
        out["gamma_crit"] = math.sqrt(1.0 / (n**3 * (m - 1)))
        c = 1.0 + 2.0 * math.sqrt((m - 1) / n)
        out["g_min"] = c
        out["T"] = 1.0 / (epsilon * c * c)
    elif family == "crown":
        (n,) = p
        out["termA"] = (n - 2) / (2 * n)
        out["termB"] = (n - 1) ** 2 / n**2
        out["gamma_crit"] = math.sqrt((n - 1) / n**2)
        out["g_min"] = 1.0 + 2.0 * math.sqrt((n - 2) * (n - 1) ** 2 / n**2)
        out["T"] = 1.0 / (epsilon * n)
    else:
        raise UnknownFamily(f"no closed forms for family {family!r}; expected one of {', '.join(FAMILIES)}")
    return out


def computed_columns(gm: GapModel, epsilon: float) -> tuple[dict, dict]:
    """Pipeline values matching :func:`paper_closed_forms`, plus error codes."""
    values: dict = {"termA": gm.term_a, "termB": gm.term_b}
    errors: dict = {}
    for key, fn in (
        ("gamma_crit", lambda: gamma_crit(gm, 0.5)),
        ("g_min", lambda: g_min(gm, 1.0)),
        ("T", lambda: search_time(gm, epsilon)),
    ):
        try:
            values[key] = fn()
        except (NegativeDiscriminant, ZeroDenominator, DomainError) as exc:
            values[key] = None
            errors[key] = exc.code
    return values, errors


def relative_diff(computed, paper) -> float | None:
    if computed is None or paper is None:
        return None
    if paper == 0:
        return None if computed != 0 else 0.0
    return abs(computed - paper) / abs(paper)


def compare_with_paper(family: str, params, epsilon: float, marked: int = 0,
                       levels: Levels = "lowest") -> dict:
    """Side-by-side pipeline values and closed-form reference values.

    Nothing is asserted: the reference values are approximations and several
    disagree with exact evaluation at small sizes.
    """
    if family not in FAMILIES:
        raise UnknownFamily(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    paper = paper_closed_forms(family, params, epsilon)
    g = build_family(family, params)
    gm = gap_model(spectral_table(lanczos(g, marked)), levels)
    computed, errors = computed_columns(gm, epsilon)
    return {
        "family": family,
        "params": [int(v) for v in params],
        "epsilon": epsilon,
        "computed": computed,
        "paper": paper,
        "relative_diff": {k: relative_diff(computed.get(k), paper[k]) for k in paper},
        "errors": errors,
    }
