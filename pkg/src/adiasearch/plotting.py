"""Figure rendering for the ``report`` verb.

Figures are written as PNG files next to the delimited output; nothing here
feeds back into the numbers.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

golden_mean = (np.sqrt(5.0) - 1.0) / 2.0
fig_width = 5.0

params = {
    "axes.labelsize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "figure.dpi": 100,
    "lines.linewidth": 1.2,
    "savefig.bbox": "tight",
}


def _new():
    with plt.rc_context(params):
        fig, ax = plt.subplots()
    return fig, ax


def _save(fig, path: Path) -> str:
    with plt.rc_context(params):
        fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return str(path)


def plot_gap(schedule, path: Path, perturbative=None, label: str = "") -> str:
    """Exact gap along s, optionally overlaid with a perturbative curve."""
    fig, ax = _new()
    ax.plot(schedule.s, schedule.gap, label="exact gap")
    if perturbative is not None:
        ax.plot(schedule.s, perturbative, "--", label="second-order estimate")
    ax.set_xlabel("s")
    ax.set_ylabel("g(s)")
    ax.set_title(label)
    ax.set_xlim(0.0, 1.0)
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_schedule(schedule, path: Path, label: str = "") -> str:
    fig, ax = _new()
    ax.plot(schedule.t, schedule.s)
    ax.set_xlabel("t")
    ax.set_ylabel("s(t)")
    ax.set_title(label)
    return _save(fig, path)


def plot_fidelity(evolution, path: Path, label: str = "") -> str:
    fig, ax = _new()
    ax.plot(evolution.t, evolution.fidelity)
    ax.set_xlabel("t")
    ax.set_ylabel(r"$|\langle m|\psi(t)\rangle|^2$")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(label)
    return _save(fig, path)


def render_report_figures(outdir: str | Path, schedule, evolution=None, perturbative=None,
                          label: str = "") -> list[str]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = [
        plot_gap(schedule, outdir / "gap.png", perturbative, label),
        plot_schedule(schedule, outdir / "schedule.png", label),
    ]
    if evolution is not None:
        written.append(plot_fidelity(evolution, outdir / "fidelity.png", label))
    return written
