"""Figures for the report paths of the CLI (PNG/PDF via the Agg backend)."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

# one fixed color per letter; 0 is the anchor color
LETTER_COLORS = ["#222222", "#d95f02", "#1b9e77"]


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".fig-", suffix=path.suffix or ".png")
    os.close(fd)
    # fixed metadata keeps PNG bytes reproducible
    meta = {"Software": None} if path.suffix.lower() in ("", ".png") else {"Creator": None, "CreationDate": None}
    fig.savefig(tmp, metadata=meta)
    plt.close(fig)
    os.replace(tmp, path)
    return path


def growth_figure(counts, path, base: float = 1.3):
    """log-scale count of square-free ternary words against base**n."""
    n = np.arange(len(counts))
    fig, ax = plt.subplots(figsize=(5, 3.5), dpi=120)
    ax.semilogy(n, counts, "o-", color="k", label="square-free words")
    ax.semilogy(n, base ** n, "--", color="r", label=f"{base}^n")
    ax.set_xlabel("length n")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def coloring_strip(sg, coloring, path, max_rows: int = 40):
    """One row per base edge: the colors of its chain, original endpoints included."""
    rows, labels = [], []
    for e in sg.base.edges[:max_rows]:
        tail = sg.plan.orientation[e][0]
        chain = sg.chain(e, tail)
        rows.append(coloring.along(chain))
        labels.append(f"{tail}->{e[1] if tail == e[0] else e[0]}")
    width = max((len(r) for r in rows), default=1)
    grid = np.full((max(len(rows), 1), width), np.nan)
    for i, r in enumerate(rows):
        grid[i, :len(r)] = r
    fig, ax = plt.subplots(figsize=(8, 0.35 * len(rows) + 1.2), dpi=120)
    ax.imshow(grid, aspect="auto", interpolation="nearest", vmin=0, vmax=2,
              cmap=ListedColormap(LETTER_COLORS))
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels)
    ax.set_xlabel("position along edge")
    fig.tight_layout()
    return _save(fig, path)
