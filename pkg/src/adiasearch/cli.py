"""``adiasearch`` command-line entry point.

Exit status: 0 on success, 1 on a domain error (the machine-readable code is
written to stderr as JSON), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import serialize
from .errors import AdiaSearchError
from .graphs import FAMILIES
from .report import (
    VERBS,
    Pipeline,
    RunConfig,
    build_describe,
    build_evolve,
    build_gamma_crit,
    build_gap,
    build_moments,
    build_polynomials_doc,
    build_report,
    build_schedule,
    build_spectrum,
    report_rows,
)

FAMILY_PARAMS = {"complete": ("N",), "dihedral": ("n",), "crown": ("n",), "mpartite": ("m", "n")}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    src = p.add_argument_group("graph source")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--n", type=int, dest="n_small", metavar="n",
                     help="part size (dihedral, crown, mpartite)")
    src.add_argument("--N", type=int, dest="n_big", metavar="N", help="vertex count (complete)")
    src.add_argument("--m", type=int, help="number of parts (mpartite)")
    src.add_argument("--edges", metavar="PATH", help="edge-list file instead of --family")
    p.add_argument("--marked", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--gamma", default="auto",
                   help="positive number, 'crit@S', or 'auto' (1/N on complete graphs, else crit@0.5)")
    p.add_argument("--mode", choices=("exact", "perturbative"), default="exact")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--s-min", type=float, default=0.0, dest="s_min")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json", dest="fmt")
    p.add_argument("--evolve", action="store_true", help="report: also propagate the state")
    p.add_argument("--levels", choices=("lowest", "highest"), default="lowest")
    p.add_argument("--mmax", type=int)
    p.add_argument("--figures", metavar="DIR", help="report: write PNG figures into DIR")
    return p


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiasearch",
        description="Adiabatic search time on regular graphs via Lanczos reduction.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    common = _common()
    for verb in VERBS:
        sub.add_parser(verb, parents=[common], allow_abbrev=False)
    return parser


def _config(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> RunConfig:
    sub = parser._subparsers._group_actions[0].choices[ns.verb]
    if ns.family is None and ns.edges is None:
        sub.error("one of --family or --edges is required")
    if ns.family is not None and ns.edges is not None:
        sub.error("--family and --edges are mutually exclusive")
    params: tuple[int, ...] = ()
    if ns.family is not None:
        given = {"N": ns.n_big, "n": ns.n_small, "m": ns.m}
        needed = FAMILY_PARAMS[ns.family]
        for key in needed:
            if given[key] is None:
                sub.error(f"--{key} is required for --family {ns.family}")
        for key, value in given.items():
            if value is not None and key not in needed:
                sub.error(f"--{key} does not apply to --family {ns.family}")
        params = tuple(given[k] for k in needed)
    if not 0.0 < ns.epsilon < 1.0:
        sub.error(f"--epsilon must lie in (0, 1), got {ns.epsilon}")
    if ns.grid < 11:
        sub.error(f"--grid must be at least 11, got {ns.grid}")
    if ns.figures is not None and ns.verb != "report":
        sub.error("--figures is only available for the report verb")
    return RunConfig(
        verb=ns.verb, family=ns.family, params=params, edges=ns.edges, marked=ns.marked,
        epsilon=ns.epsilon, gamma=ns.gamma, s=ns.s, s_min=ns.s_min, grid=ns.grid, fmt=ns.fmt,
        mode=ns.mode, evolve=ns.evolve, levels=ns.levels, mmax=ns.mmax, figures=ns.figures,
    )


def _tabular(cfg: RunConfig, doc: dict) -> tuple[list[str], list[tuple]]:
    verb = cfg.verb
    if verb == "spectrum":
        sp = doc["spectrum"]
        return ["i", "root", "weight", "norm"], [
            (i, x, w, n) for i, (x, w, n) in enumerate(zip(sp["roots"], sp["weights"], sp["norms"]))
        ]
    if verb == "polynomials":
        poly = doc["polynomials"]
        return ["k", "scale", "monic_coefficients"], [
            (k, poly["scales"][k] if k < len(poly["scales"]) else None,
             " ".join(serialize.fmt_float(c) for c in coeffs))
            for k, coeffs in enumerate(poly["monic"])
        ]
    if verb == "schedule":
        return ["s", "t", "gap"], [tuple(r) for r in doc["samples"]]
    if verb == "evolve":
        return ["t", "fidelity", "norm"], [tuple(r) for r in doc["trace"]]
    if verb == "moments":
        return ["m", "moment", "closed_walks"], [
            (m, mo, cw) for m, (mo, cw) in enumerate(zip(doc["moments"], doc["closed_walks"]))
        ]
    if verb == "report":
        return ["quantity", "computed", "paper", "relative_diff"], report_rows(doc)
    return ["key", "value"], serialize.flatten(doc)


def render(cfg: RunConfig, doc: dict) -> str:
    if cfg.fmt == "json":
        return serialize.dumps(doc) + "\n"
    header, rows = _tabular(cfg, doc)
    if cfg.fmt == "csv":
        return serialize.to_csv(header, rows)
    return serialize.to_table(header, rows)


def execute(cfg: RunConfig) -> dict:
    """Run one verb and return its document (figures are written as a side effect)."""
    p = Pipeline(cfg)
    verb = cfg.verb
    if verb == "describe":
        return build_describe(p)
    if verb == "spectrum":
        return build_spectrum(p)
    if verb == "polynomials":
        return build_polynomials_doc(p)
    if verb == "gap":
        return build_gap(p)
    if verb == "gamma-crit":
        return build_gamma_crit(p)
    if verb == "schedule":
        return build_schedule(p)[0]
    if verb == "evolve":
        return build_evolve(p)[0]
    if verb == "moments":
        return build_moments(p)
    doc, extras = build_report(p)
    if cfg.figures:
        doc["figures"] = _figures(p, cfg, extras)
    return doc


def _figures(p: Pipeline, cfg: RunConfig, extras: dict) -> list[str]:
    import numpy as np

    from .gap import gap_perturbative
    from .plotting import render_report_figures

    sched = extras["schedule"]
    gamma = extras["gamma"]
    pert = np.array([abs(gap_perturbative(p.model, float(s), gamma)) if s < 1 else np.nan
                     for s in sched.s])
    label = f"{p.graph.family} {' '.join(map(str, p.graph.params))}".strip()
    return render_report_figures(cfg.figures, sched, extras["evolution"], pert, label)


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    try:
        old_err, sys.stderr = sys.stderr, stderr
        try:
            ns = parser.parse_args(argv)
            cfg = _config(parser, ns)
        finally:
            sys.stderr = old_err
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = execute(cfg)
    except AdiaSearchError as exc:
        stderr.write(serialize.dumps({"error": {"code": exc.code, "message": str(exc)}}) + "\n")
        return 1
    except OSError as exc:
        stderr.write(serialize.dumps({"error": {"code": "IO_ERROR", "message": str(exc)}}) + "\n")
        return 1
    stdout.write(render(cfg, doc))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
