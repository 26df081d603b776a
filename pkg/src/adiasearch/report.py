"""Pipeline orchestration for the command-line verbs.

Each ``build_*`` function returns a plain dict document; the CLI renders it.
Documents are deterministic functions of the :class:`RunConfig`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AdiaSearchError, DomainError, NegativeDiscriminant, ParameterOutOfRange
from .gap import (
    GapModel,
    compare_with_paper,
    g_min,
    g_min_signed,
    gamma_crit,
    gap_model,
    gap_perturbative,
    search_time,
)
from .graphs import FAMILIES, Graph, build_family, load_edge_list, uniform_state
from .lanczos import KrylovReduction, lanczos, project_state
from .polynomials import SpectralTable, build_polynomials, spectral_moments, spectral_table
from .verify import (
    ReducedHamiltonian,
    complete_graph_closed_forms,
    evolve,
    exact_gap,
    local_schedule,
    min_gap,
)

VERBS = ("describe", "spectrum", "polynomials", "gap", "gamma-crit", "schedule", "evolve",
         "moments", "report")


@dataclass
class RunConfig:
    verb: str
    family: str | None = None
    params: tuple[int, ...] = ()
    edges: str | None = None
    marked: int = 0
    epsilon: float = 0.1
    gamma: str = "auto"
    s: float = 0.5
    s_min: float = 0.0
    grid: int = 1001
    fmt: str = "json"
    mode: str = "exact"
    evolve: bool = False
    levels: str = "lowest"
    mmax: int | None = None
    figures: str | None = None

    def __post_init__(self) -> None:
        if self.verb not in VERBS:
            raise ParameterOutOfRange(f"unknown verb {self.verb!r}")
        if (self.family is None) == (self.edges is None):
            raise ParameterOutOfRange("give exactly one graph source: --family or --edges")
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterOutOfRange(f"--epsilon must lie in (0, 1), got {self.epsilon}")
        if self.grid < 11:
            raise ParameterOutOfRange(f"--grid must be at least 11, got {self.grid}")


@dataclass
class Pipeline:
    """Lazily computed pipeline stages for one configuration."""

    config: RunConfig
    graph: Graph = field(init=False)
    kr: KrylovReduction = field(init=False)

    def __post_init__(self) -> None:
        cfg = self.config
        if cfg.family is not None:
            self.graph = build_family(cfg.family, cfg.params)
        else:
            self.graph = load_edge_list(Path(cfg.edges).read_text(encoding="utf-8"))
        self.kr = lanczos(self.graph, cfg.marked)
        self._table: SpectralTable | None = None
        self._model: GapModel | None = None

    @property
    def table(self) -> SpectralTable:
        if self._table is None:
            self._table = spectral_table(self.kr)
        return self._table

    @property
    def model(self) -> GapModel:
        if self._model is None:
            self._model = gap_model(self.table, self.config.levels)
        return self._model

    @property
    def rh(self) -> ReducedHamiltonian:
        return ReducedHamiltonian.from_reduction(self.kr, self.graph.degree)

    def is_complete(self) -> bool:
        return self.graph.degree == self.graph.n - 1

    def gamma(self) -> tuple[float, str]:
        """Resolve ``--gamma`` to a value and a short description of its origin.

        ``auto`` uses 1/N on complete graphs (the Grover-search normalization)
        and otherwise behaves like ``crit@0.5``. ``crit@S`` is the critical
        gamma at s = S when it exists, else 1/D.
        """
        spec = self.config.gamma.strip()
        if spec == "auto":
            if self.is_complete():
                return 1.0 / self.graph.n, "1/N"
            spec = "crit@0.5"
        if spec.startswith("crit@"):
            try:
                s = float(spec[5:])
            except ValueError:
                raise ParameterOutOfRange(f"bad --gamma value {spec!r}") from None
            try:
                return gamma_crit(self.model, s), spec
            except NegativeDiscriminant:
                return 1.0 / max(self.graph.degree, 1), "1/D"
        try:
            value = float(spec)
        except ValueError:
            raise ParameterOutOfRange(f"bad --gamma value {spec!r}") from None
        if not value > 0:
            raise ParameterOutOfRange(f"--gamma must be positive, got {value}")
        return value, "explicit"


def _attempt(fn) -> dict:
    try:
        return {"value": fn(), "error": None}
    except AdiaSearchError as exc:
        return {"value": None, "error": exc.code}


def _base(p: Pipeline) -> dict:
    return {"command": p.config.verb, "graph": p.graph.describe(), "marked": p.config.marked}


def closed_walks(g: Graph, marked: int, mmax: int) -> list[int]:
    """``(A^m)_{marked, marked}`` for m = 0..mmax, exact integers."""
    adj = g.adjacency.astype(np.int64)
    vec = np.zeros(g.n, dtype=object)
    vec[marked] = 1
    out = []
    for _ in range(mmax + 1):
        out.append(int(vec[marked]))
        vec = adj.astype(object) @ vec
    return out


def build_describe(p: Pipeline) -> dict:
    doc = _base(p)
    doc["lanczos"] = p.kr.to_dict()
    return doc


def build_spectrum(p: Pipeline) -> dict:
    doc = _base(p)
    doc["lanczos"] = p.kr.to_dict()
    doc["spectrum"] = p.table.to_dict()
    return doc


def build_polynomials_doc(p: Pipeline) -> dict:
    doc = _base(p)
    doc["lanczos"] = p.kr.to_dict()
    doc["polynomials"] = build_polynomials(p.kr).to_dict()
    return doc


def build_gap(p: Pipeline) -> dict:
    cfg = p.config
    gamma, source = p.gamma()
    doc = _base(p)
    doc.update({"mode": cfg.mode, "s": cfg.s, "gamma": gamma, "gamma_source": source})
    if cfg.mode == "exact":
        doc["gap"] = exact_gap(p.rh, cfg.s, gamma)
    else:
        signed = gap_perturbative(p.model, cfg.s, gamma)
        doc["gap"] = abs(signed)
        doc["signed"] = signed
    return doc


def build_gamma_crit(p: Pipeline) -> dict:
    doc = _base(p)
    doc["gap_terms"] = p.model.to_dict()
    doc["s"] = p.config.s
    doc["gamma_crit"] = gamma_crit(p.model, p.config.s)
    return doc


def _schedule(p: Pipeline, gamma: float):
    cfg = p.config
    if cfg.mode == "exact":
        rh = p.rh
        return local_schedule(lambda s: exact_gap(rh, s, gamma), cfg.epsilon, cfg.s_min, cfg.grid)
    model = p.model
    return local_schedule(lambda s: g_min(model, s), cfg.epsilon, cfg.s_min, cfg.grid)


def build_schedule(p: Pipeline) -> dict:
    cfg = p.config
    gamma, source = p.gamma()
    sched = _schedule(p, gamma)
    doc = _base(p)
    doc.update({
        "mode": cfg.mode,
        "epsilon": cfg.epsilon,
        "gamma": gamma,
        "gamma_source": source,
        "s_min": cfg.s_min,
        "total_time": sched.total_time,
        "columns": ["s", "t", "gap"],
        "samples": [list(r) for r in sched.rows()],
    })
    return doc, sched


def _initial_state(p: Pipeline) -> np.ndarray:
    coords, residual = project_state(p.kr, uniform_state(p.graph))
    if residual > 1e-10:
        raise DomainError(f"uniform state leaves the Krylov space (residual {residual:.3e})")
    return coords


def build_evolve(p: Pipeline) -> dict:
    cfg = p.config
    if cfg.mode != "exact":
        raise ParameterOutOfRange("evolve runs on the exact schedule; use --mode exact")
    gamma, source = p.gamma()
    sched = _schedule(p, gamma)
    ev = evolve(p.rh, sched, _initial_state(p), gamma)
    doc = _base(p)
    doc.update({
        "epsilon": cfg.epsilon,
        "gamma": gamma,
        "gamma_source": source,
        "total_time": sched.total_time,
        "final_fidelity": ev.final_fidelity,
        "norm_drift": ev.norm_drift,
        "steps": ev.steps,
        "columns": ["t", "fidelity", "norm"],
        "trace": [list(r) for r in ev.rows()],
    })
    return doc, sched, ev


def build_moments(p: Pipeline) -> dict:
    mmax = p.config.mmax if p.config.mmax is not None else 2 * p.kr.dim - 1
    if mmax < 0:
        raise ParameterOutOfRange(f"--mmax must be >= 0, got {mmax}")
    doc = _base(p)
    doc["mmax"] = mmax
    doc["moments"] = spectral_moments(p.table, mmax).tolist()
    doc["closed_walks"] = closed_walks(p.graph, p.config.marked, mmax)
    return doc


def build_report(p: Pipeline) -> tuple[dict, dict]:
    """Full report document plus the raw objects used for figures."""
    cfg = p.config
    gm = p.model
    doc = _base(p)
    doc["epsilon"] = cfg.epsilon
    doc["lanczos"] = p.kr.to_dict()
    doc["spectrum"] = p.table.to_dict()
    doc["gap_terms"] = gm.to_dict()

    doc["gamma_crit"] = {"s": 0.5, **_attempt(lambda: gamma_crit(gm, 0.5))}
    gmin = {"s": 1.0, **_attempt(lambda: g_min(gm, 1.0))}
    gmin["signed"] = _attempt(lambda: g_min_signed(gm, 1.0))["value"]
    doc["g_min"] = gmin
    doc["T_paper_formula"] = {"epsilon": cfg.epsilon, **_attempt(lambda: search_time(gm, cfg.epsilon))}

    gamma, source = p.gamma()
    s_star, g_exact = min_gap(p.rh, gamma)
    doc["exact_min_gap"] = {"gamma": gamma, "gamma_source": source, "s_star": s_star, "g_min": g_exact}

    sched = _schedule_exact(p, gamma)
    t_exact: dict = {"epsilon": cfg.epsilon, "gamma": gamma, "gamma_source": source,
                     "value": sched.total_time}
    if p.is_complete():
        cf = complete_graph_closed_forms(p.graph.n, cfg.epsilon)
        t_exact["closed_form"] = cf.total_time
        t_exact["asymptotic"] = cf.t_asymptotic
        t_exact["ratio_to_asymptotic"] = sched.total_time / cf.t_asymptotic
    doc["T_schedule_exact"] = t_exact

    if cfg.family in FAMILIES:
        cmp_doc = compare_with_paper(cfg.family, cfg.params, cfg.epsilon, cfg.marked, cfg.levels)
        doc["comparison"] = {k: cmp_doc[k] for k in ("computed", "paper", "relative_diff", "errors")}

    ev = None
    if cfg.evolve:
        ev = evolve(p.rh, sched, _initial_state(p), gamma)
        doc["fidelity"] = {"final": ev.final_fidelity, "norm_drift": ev.norm_drift, "steps": ev.steps}
    return doc, {"schedule": sched, "evolution": ev, "gamma": gamma}


def _schedule_exact(p: Pipeline, gamma: float):
    rh = p.rh
    return local_schedule(lambda s: exact_gap(rh, s, gamma), p.config.epsilon, 0.0, p.config.grid)


COMPARISON_KEYS = ("termA", "termB", "gamma_crit", "g_min", "T")


def report_rows(doc: dict) -> list[tuple]:
    """Rows ``(quantity, computed, paper, relative_diff)`` for the text table."""
    rows: list[tuple] = []
    cmp_doc = doc.get("comparison")
    for key in COMPARISON_KEYS:
        if cmp_doc is not None:
            computed = cmp_doc["computed"].get(key)
            if computed is None and key in cmp_doc["errors"]:
                computed = cmp_doc["errors"][key]
            rows.append((key, computed, cmp_doc["paper"].get(key), cmp_doc["relative_diff"].get(key)))
        else:
            section = {
                "termA": {"value": doc["gap_terms"]["termA"]},
                "termB": {"value": doc["gap_terms"]["termB"]},
                "gamma_crit": doc["gamma_crit"],
                "g_min": doc["g_min"],
                "T": doc["T_paper_formula"],
            }[key]
            value = section["value"] if section["value"] is not None else section.get("error")
            rows.append((key, value, None, None))
    t_exact = doc["T_schedule_exact"]
    rows.append(("T_schedule_exact", t_exact["value"], t_exact.get("asymptotic"),
                 _rel(t_exact["value"], t_exact.get("asymptotic"))))
    rows.append(("exact_g_min", doc["exact_min_gap"]["g_min"], None, None))
    if "fidelity" in doc:
        rows.append(("final_fidelity", doc["fidelity"]["final"], None, None))
    return rows


def _rel(a, b):
    if a is None or b is None or b == 0:
        return None
    return abs(a - b) / abs(b)
