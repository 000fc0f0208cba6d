"""Figure rendering for study results.

Three figures mirror the natural comparisons in the study: the
semi-analytical schemes against each other, the cheapest one against the
low-order quadrature baselines, and the quadratic-metric scheme against
the 15-point rule.  Figures are written next to (or instead of) the CSV
report; schemes missing from a result are simply skipped.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .study import StudyResult

FIGURE_GROUPS = (
    ("semianalytic_schemes", ("cm", "lm", "qm")),
    ("cm_vs_low_order_gauss", ("cm", "g4", "g5")),
    ("qm_vs_g15", ("qm", "g15")),
)

_STYLE = {
    "cm": dict(marker="o", linestyle="-"),
    "lm": dict(marker="s", linestyle="--"),
    "qm": dict(marker="^", linestyle="-."),
    "g1": dict(marker="x", linestyle=":"),
    "g4": dict(marker="v", linestyle="--"),
    "g5": dict(marker="d", linestyle=":"),
    "g15": dict(marker="*", linestyle="-"),
}


def render_study_figures(result: StudyResult, outdir) -> list[Path]:
    """Write one PNG per figure group; returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    deltas = result.config.deltas
    written: list[Path] = []
    for stem, schemes in FIGURE_GROUPS:
        present = [s for s in schemes if s in result.config.schemes]
        if not present:
            continue
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for scheme in present:
            ax.plot(deltas, result.mean_errors(scheme),
                    label=scheme.upper(), **_STYLE[scheme])
        ax.set_xlabel(r"mesh coarseness $\delta$")
        ax.set_ylabel("averaged absolute error")
        ax.grid(True, alpha=0.4)
        ax.legend()
        fig.tight_layout()
        path = outdir / f"{stem}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
