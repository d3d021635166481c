"""Render relaylab sweep CSVs into static figures.

The renderer never recomputes any mathematics: it plots exactly the rows
of the delimited file (columns x, scheme, y, params_json, boundary_flag),
one curve per scheme label, log-spaced abscissa, with per-figure axis
labels.  The energy-ratio figure annotates each curve's maximum.  Output
format (PNG or SVG) follows the output file extension.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

__all__ = ["FigureSpec", "RenderResult", "render", "load_rows"]

FIGURE_IDS = ("fig3", "fig4", "fig5", "fig6", "fig7", "fig8")

_REQUIRED_COLUMNS = ("x", "scheme", "y", "params_json", "boundary_flag")

_Y_LABELS = {
    "fig3": "rate / g (bits)",
    "fig4": "rate / g (bits)",
    "fig5": "rate / g (bits)",
    "fig6": "rate / g (bits)",
    "fig7": "rate / sqrt(g h) (bits)",
    "fig8": "energy-per-bit upper/lower ratio",
}

_TITLES = {
    "fig3": "Symmetric diamond: bound and achievable rates",
    "fig4": "Label vs Gaussian layer rate split",
    "fig5": "Symmetric diamond: binary vs ternary labels",
    "fig6": "Symmetric parallel network, N = 2, 4, 8",
    "fig7": "Asymmetric diamond: bound and achievable rates",
    "fig8": "Energy-per-bit bound ratios",
}


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    figure_id: str
    out_path: str
    x_label: str = "h/g"
    y_label: str = ""

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise RenderError(f"unknown figure id {self.figure_id!r}")
        if not Path(self.csv_path).exists():
            raise RenderError(f"input CSV does not exist: {self.csv_path}")


@dataclass
class RenderResult:
    out_path: str
    curves: dict = field(default_factory=dict)  # scheme -> (xs, ys)
    annotations: dict = field(default_factory=dict)  # scheme -> (x, y) maxima

    def point_counts(self) -> dict:
        return {name: len(xs) for name, (xs, _) in self.curves.items()}


def load_rows(csv_path: str) -> list[dict]:
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in _REQUIRED_COLUMNS if c not in (reader.fieldnames or ())]
        if missing:
            raise RenderError(f"CSV is missing columns: {missing}")
        rows = [
            {"x": float(r["x"]), "scheme": r["scheme"], "y": float(r["y"])}
            for r in reader
        ]
    if not rows:
        raise RenderError(f"CSV has no data rows: {csv_path}")
    return rows


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure; returns the plotted curve data for inspection."""
    rows = load_rows(spec.csv_path)
    curves: dict[str, tuple[list, list]] = {}
    for row in sorted(rows, key=lambda r: (r["scheme"], r["x"])):
        xs, ys = curves.setdefault(row["scheme"], ([], []))
        xs.append(row["x"])
        ys.append(row["y"])

    fig, ax = plt.subplots(figsize=(7.0, 4.6))
    result = RenderResult(out_path=spec.out_path, curves=curves)
    for name in sorted(curves):
        xs, ys = curves[name]
        if len(xs) == 1:
            ax.plot(xs, ys, marker="o", linestyle="none", label=name)
        else:
            style = "--" if name.startswith(("cutset", "ts_")) else "-"
            ax.plot(xs, ys, style, label=name)
        if spec.figure_id == "fig8":
            i = max(range(len(ys)), key=ys.__getitem__)
            result.annotations[name] = (xs[i], ys[i])
            ax.annotate(
                f"{ys[i]:.2f}",
                xy=(xs[i], ys[i]),
                xytext=(xs[i], ys[i] * 1.03),
                ha="center",
                fontsize=9,
            )
            ax.plot([xs[i]], [ys[i]], "k.", markersize=5)

    ax.set_xscale("log")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label or _Y_LABELS[spec.figure_id])
    ax.set_title(_TITLES[spec.figure_id])
    ax.grid(True, which="both", alpha=0.25)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)
    return result
