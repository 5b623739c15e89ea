"""Matplotlib figures rendered alongside the delimited output.

Figures are a convenience, never part of acceptance, but they still obey
the determinism contract: fixed hash salt, no embedded creation date, so
two runs with one seed produce byte-identical SVG files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_RC = {"svg.hashsalt": "relbel", "figure.dpi": 100, "font.size": 9}


def save_figure(fig, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)


def _positions(points) -> tuple[np.ndarray, list[str] | None]:
    try:
        xs = np.asarray([float(p) for p in points])
        return xs, None
    except (TypeError, ValueError):
        return np.arange(len(points)), [str(p) for p in points]


def rb_figure(path, points, prior_mass, posterior_mass, rb) -> None:
    """Two panels: the rb curve with the neutral line, and both mass curves."""
    with plt.rc_context(_RC):
        fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 5.6), sharex=True)
        xs, labels = _positions(points)
        rb = np.asarray(rb, dtype=float)
        top.plot(xs, rb, color="tab:blue", lw=1.5, label="relative belief ratio")
        top.axhline(1.0, color="tab:gray", lw=1.0, ls="--", label="no evidence")
        top.set_ylabel("RB")
        top.legend(loc="best", frameon=False)
        bottom.plot(xs, prior_mass, color="tab:orange", lw=1.2, label="prior mass")
        bottom.plot(xs, posterior_mass, color="tab:green", lw=1.2, label="posterior mass")
        bottom.set_ylabel("mass")
        bottom.set_xlabel("value")
        bottom.legend(loc="best", frameon=False)
        if labels is not None:
            bottom.set_xticks(xs)
            bottom.set_xticklabels(labels, rotation=90, fontsize=6)
        fig.align_ylabels((top, bottom))
    save_figure(fig, path)


def jl_figure(path, sigma2: Sequence[float], bf: Sequence[float], strength: Sequence[float],
              bias_against: Sequence[float], bias_in_favor: Sequence[float]) -> None:
    """Evidence vs. strength vs. bias across slab variances (log x)."""
    with plt.rc_context(_RC):
        fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 5.6), sharex=True)
        top.plot(sigma2, bf, color="tab:blue", marker="o", ms=3, lw=1.2, label="BF = RB at 0")
        top.set_yscale("log")
        top.set_xscale("log")
        top.axhline(1.0, color="tab:gray", lw=1.0, ls="--")
        top.set_ylabel("Bayes factor")
        top.legend(loc="best", frameon=False)
        bottom.plot(sigma2, strength, color="tab:red", marker="o", ms=3, lw=1.2, label="strength")
        bottom.plot(sigma2, bias_against, color="tab:purple", marker="s", ms=3, lw=1.2,
                    label="bias against")
        bottom.plot(sigma2, bias_in_favor, color="tab:olive", marker="^", ms=3, lw=1.2,
                    label="bias in favor")
        bottom.set_xscale("log")
        bottom.set_xlabel("slab variance")
        bottom.set_ylabel("probability")
        bottom.legend(loc="best", frameon=False)
    save_figure(fig, path)


def mixture_figure(path, xs: Sequence[float], classifications: Sequence[str],
                   window: tuple[float, float] | None) -> None:
    """Region size against the observed value: all of [0, 1] or nothing."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.4, 3.2))
        sizes = [1.0 if c == "full" else (0.5 if c == "partial" else 0.0) for c in classifications]
        ax.step(xs, sizes, where="mid", color="tab:blue", lw=1.2)
        if window is not None:
            ax.axvspan(window[0], window[1], color="tab:blue", alpha=0.12,
                       label="region is all of [0, 1]")
            ax.legend(loc="best", frameon=False)
        ax.set_xlabel("observed x")
        ax.set_ylabel("region fraction of the grid")
        ax.set_ylim(-0.05, 1.1)
    save_figure(fig, path)
