"""Figure rendering for the CLI report path.

Each report command can drop a PNG next to its delimited output: density
histograms with the analytic law overlaid, estimates against their exact
references, chord-moment errors, and the verify check margins.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .exact import DensityLaw
from .stats import Estimate, HistogramGof


def save_density_figure(hist: HistogramGof, law: DensityLaw, path: str) -> None:
    edges = hist.edges
    widths = np.diff(edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    empirical = hist.observed / (hist.n * widths)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.bar(centers, empirical, width=widths, alpha=0.55, label="sampled", edgecolor="none")
    grid = np.linspace(hist.support[0], hist.support[1], 512)
    ax.plot(grid, law.pdf(grid), "k-", lw=1.5, label="analytic")
    ax.set_xlabel("offset")
    ax.set_ylabel("density")
    verdict = "pass" if hist.passed else "FAIL"
    ax.set_title(
        f"{hist.name}: chi2 = {hist.chi2:.1f} / threshold {hist.threshold_99:.1f} ({verdict})"
    )
    ax.legend(frameon=False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_estimate_figure(est: Estimate, exact_value: float | None, path: str) -> None:
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.errorbar(
        [0.0],
        [est.mean],
        yerr=[1.96 * est.std_error],
        fmt="o",
        capsize=6,
        label=f"estimate (n={est.n})",
    )
    if exact_value is not None:
        ax.axhline(exact_value, color="k", lw=1.0, ls="--", label="exact")
    ax.set_xlim(-1, 1)
    ax.set_xticks([])
    ax.set_ylabel("value")
    ax.set_title(est.experiment)
    ax.legend(frameon=False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_moments_figure(rows: list[dict], body: str, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    orders = [row["n"] for row in rows]
    values = [row["value"] for row in rows]
    ax.bar([str(n) for n in orders], values, alpha=0.7, label="quadrature")
    for i, row in enumerate(rows):
        if row.get("reference") is not None:
            ax.plot([i - 0.35, i + 0.35], [row["reference"]] * 2, "k-", lw=1.5)
    ax.set_xlabel("moment order n")
    ax.set_ylabel("I_n")
    ax.set_title(f"chord moments: {body} (black bars = exact)")
    ax.legend(frameon=False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_verify_figure(checks: list[dict], path: str) -> None:
    drawn = [
        c
        for c in checks
        if not c["skipped"] and c["error"] is not None and c["tolerance"] not in (None, 0)
    ]
    names = [c["name"] for c in drawn]
    margins = [c["error"] / c["tolerance"] for c in drawn]
    colors = ["tab:green" if c["passed"] else "tab:red" for c in drawn]
    fig, ax = plt.subplots(figsize=(7.0, 0.28 * max(8, len(drawn)) + 1.2))
    y = np.arange(len(drawn))
    ax.barh(y, [max(m, 1e-12) for m in margins], color=colors, alpha=0.8)
    ax.axvline(1.0, color="k", lw=1.0, ls="--")
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xscale("log")
    ax.set_xlabel("error / tolerance (pass left of dashed line)")
    ax.invert_yaxis()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
