"""Chart rendering for scenario reports.

One figure kind: a closeness bar chart, best alternative first, written as
PNG next to the markdown/CSV report.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def closeness_chart(pairs: "list[tuple[str, float]]", title: str,
                    path: "str | Path") -> None:
    """Render (alternative, closeness) bars in the given order to a PNG file."""
    labels = [p[0] for p in pairs]
    values = [p[1] for p in pairs]
    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=100)
    try:
        ax.bar(range(len(labels)), values, color="#4878a8", width=0.6)
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=15, ha="right")
        ax.set_ylabel("closeness coefficient")
        ax.set_ylim(0.0, 1.0)
        ax.set_title(title)
        for i, value in enumerate(values):
            ax.annotate(f"{value:.4f}", (i, value), ha="center",
                        xytext=(0, 3), textcoords="offset points", fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="png")
    finally:
        plt.close(fig)
