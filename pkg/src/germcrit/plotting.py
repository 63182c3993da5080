"""Figures for reports (matplotlib, Agg backend, written to files only)."""

from __future__ import annotations

import os
from typing import List, Optional, Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update(
        {
            "font.size": 9,
            "axes.spines.top": False,
            "axes.spines.right": False,
            "savefig.dpi": 120,
            "svg.hashsalt": "germcrit",
        }
    )
    return plt


def _save(fig, directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, metadata={"Date": None, "Creator": None} if name.endswith(".svg") else {"Software": None})
    return name


def plot_probe(rows, directory: str, name: str = "probe.png") -> str:
    """Success rate of the right solver per perturbation exponent N."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.2, 2.8))
    Ns = [r.N for r in rows]
    rates = [float(r.rate) for r in rows]
    ax.bar([str(n) for n in Ns], rates, color="#4C72B0", width=0.6)
    for i, r in enumerate(rows):
        ax.text(i, rates[i] + 0.02, f"{r.successes}/{r.trials}", ha="center", va="bottom", fontsize=8)
    ax.set_ylim(0, 1.15)
    ax.set_xlabel("N  (perturbation in Fitt_0^N)")
    ax.set_ylabel("verified success rate")
    fig.tight_layout()
    out = _save(fig, directory, name)
    plt.close(fig)
    return out


def plot_tower(crit_dims: Sequence[int], disc_dims: Sequence[int], termination: str, directory: str, name: str = "tower.png") -> str:
    """Dimensions of Crit_j and Delta_j along the tower (-1 marks the empty germ)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.2, 2.8))
    levels = list(range(len(crit_dims)))
    ax.step(levels, crit_dims, where="post", marker="o", markersize=8, label="dim Crit_j")
    ax.step(levels, disc_dims, where="post", marker="s", markersize=4, linestyle="--", label="dim Delta_j")
    ax.axhline(-1, color="0.8", linewidth=0.8)
    ax.set_xticks(levels)
    ax.set_yticks(range(-1, max(list(crit_dims) + list(disc_dims) + [0]) + 1))
    ax.set_xlabel("level j")
    ax.set_ylabel("dimension")
    ax.set_title(termination, fontsize=9)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    out = _save(fig, directory, name)
    plt.close(fig)
    return out


def plot_staircase(lead: Sequence[tuple], names: Sequence[str], title: str, directory: str, name: str = "staircase.png", bound: Optional[int] = None) -> Optional[str]:
    """Standard monomials (filled) under a two-variable leading ideal; None for other arities."""
    if len(names) != 2:
        return None
    plt = _pyplot()
    lead = [tuple(e) for e in lead]
    if bound is None:
        bound = max([max(e) for e in lead] + [3]) + 1
    fig, ax = plt.subplots(figsize=(3.4, 3.4))
    inside: List[tuple] = []
    outside: List[tuple] = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            m = (a, b)
            if any(e[0] <= a and e[1] <= b for e in lead):
                outside.append(m)
            else:
                inside.append(m)
    if inside:
        ax.scatter(*zip(*inside), s=36, color="#C44E52", label="standard monomials", zorder=3)
    if outside:
        ax.scatter(*zip(*outside), s=12, color="0.75", zorder=2)
    if lead:
        ax.scatter(*zip(*lead), s=60, facecolors="none", edgecolors="k", label="leading exponents", zorder=4)
    ax.set_xlim(-0.5, bound + 0.5)
    ax.set_ylim(-0.5, bound + 0.5)
    ax.set_xlabel(f"exponent of {names[0]}")
    ax.set_ylabel(f"exponent of {names[1]}")
    ax.set_title(title, fontsize=9)
    ax.legend(frameon=False, fontsize=7, loc="upper right")
    fig.tight_layout()
    out = _save(fig, directory, name)
    plt.close(fig)
    return out
