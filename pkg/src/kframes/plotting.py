"""PNG figures for verification reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, ax, path):
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_rp_growth(growth: dict, path):
    """Least reducible-path index of ``rectangle(m, m)`` against ``m``."""
    ms = sorted(growth)
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.plot(ms, [growth[m] for m in ms], marker="o", color="tab:blue")
    ax.set_xlabel("m  (rectangle m x m)")
    ax.set_ylabel("least RP index")
    ax.set_xticks(ms)
    ax.set_title("Reducible paths in square rectangles")
    return _finish(fig, ax, path)


def plot_tunability_profiles(profiles: dict, path):
    """One line per frame: worst coarsest-tuned-refinement size against partition size."""
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    top = 1
    for name, prof in profiles.items():
        ks = range(1, len(prof) + 1)
        ax.plot(ks, prof, marker="o", label=name)
        top = max(top, len(prof))
    ax.plot([1, top], [1, top], ls=":", color="grey", label="identity")
    ax.set_xlabel("blocks in the starting partition")
    ax.set_ylabel("largest tuned refinement")
    ax.legend(fontsize=8)
    ax.set_title("Tunability profiles")
    return _finish(fig, ax, path)
