"""CSV writing and companion figures for sweep outputs.

Report paths hand off machine-readable CSV; a PNG with the same stem is
rendered next to it so sweeps can be eyeballed without a second tool.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def write_csv(path: str, fieldnames: Sequence[str], rows: Sequence[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(fieldnames))
        w.writeheader()
        for row in rows:
            w.writerow(row)


def png_path_for(csv_path: str) -> str:
    return str(Path(csv_path).with_suffix(".png"))


def plot_rows(rows: Sequence[dict], x_field: str, y_fields: Sequence[str],
              png_path: str, title: str = "", logx: bool = True,
              logy: bool = True, xlabel: Optional[str] = None,
              ylabel: Optional[str] = None) -> str:
    """One line per y field over the x field; log-log by default since
    everything here is a power-of-two sweep."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    xs = [float(r[x_field]) for r in rows]
    for yf in y_fields:
        ys = [float(r[yf]) for r in rows]
        ax.plot(xs, ys, marker="o", markersize=3, label=yf)
    if logx:
        ax.set_xscale("log", base=2)
    if logy:
        ax.set_yscale("log", base=2)
    ax.set_xlabel(xlabel or x_field)
    ax.set_ylabel(ylabel or ", ".join(y_fields))
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return png_path


def render_sweep(csv_path: str, rows: Sequence[dict], x_field: str,
                 y_fields: Sequence[str], title: str = "") -> str:
    """Companion figure for a just-written sweep CSV."""
    positive = [r for r in rows
                if float(r[x_field]) > 0 and
                all(float(r[y]) > 0 for y in y_fields)]
    if not positive:
        positive = rows
    return plot_rows(positive, x_field, y_fields, png_path_for(csv_path),
                     title=title)
