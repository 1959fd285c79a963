"""Figures written next to the textual reports."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_class_sizes(stats: dict, path, title: str = "") -> None:
    """Bar chart of how many residue classes have each size."""
    hist = {int(k): v for k, v in stats["histogram"].items()}
    sizes = sorted(hist)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar([str(s) for s in sizes], [hist[s] for s in sizes], color="#4c72b0")
    ax.set_xlabel("class size")
    ax.set_ylabel("number of classes")
    ax.set_yscale("log")
    if title:
        ax.set_title(title)
    best = stats.get("redundancy_bits")
    if best is not None:
        ax.text(0.98, 0.95, f"best class: {stats['max_size']} words, {best:.2f} bits",
                transform=ax.transAxes, ha="right", va="top", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
