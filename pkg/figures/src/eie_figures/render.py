"""Render sweep CSVs into publication-style plots.

Consumes the CSV written by `eie sweep` (exact column header checked) and
draws one curve per file: the inseparability V12 or the normalized probe
absorption against the swept quantity.  V12 plots carry a horizontal
reference line at the separability bound V12 = 4, tagged with the SVG id
``separability-bound`` so its presence is machine-checkable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

EXPECTED_HEADER = ["sweep_value", "alpha1", "alpha2", "density", "gamma12",
                   "v12", "du2", "dv2", "absorption", "sigma11", "sigma22",
                   "sigma33", "entangled", "warnings"]

SEPARABILITY_BOUND = 4.0
BOUND_GID = "separability-bound"


class FigureError(Exception):
    """CSV or rendering problem; message is user-facing."""


@dataclass(frozen=True)
class FigureJob:
    input_csv: Path
    output_image: Path
    kind: str


KINDS = {
    "v12_vs_intensity": dict(
        y="v12", logx=True, bound=True,
        xlabel=r"pump intensity $|\alpha_2|^2$",
        ylabel=r"$V_{12}$"),
    "absorption_vs_intensity": dict(
        y="absorption", logx=True, bound=False,
        xlabel=r"pump intensity $|\alpha_2|^2$",
        ylabel="normalized probe absorption"),
    "v12_vs_density": dict(
        y="v12", logx=True, bound=True,
        xlabel=r"atomic density $n$ (m$^{-3}$)",
        ylabel=r"$V_{12}$"),
    "v12_vs_dephasing": dict(
        y="v12", logx=False, bound=True,
        xlabel=r"dephasing rate $\gamma_{12}$ (rad/$\mu$s)",
        ylabel=r"$V_{12}$"),
}


def read_rows(path: Path) -> list[dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FigureError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise FigureError(f"{path} is empty") from None
    if header != EXPECTED_HEADER:
        raise FigureError(
            f"{path} does not look like a sweep CSV (unexpected header)")
    return [dict(zip(header, rec)) for rec in reader if rec]


def _series(rows: list[dict], column: str):
    xs, ys = [], []
    skipped = 0
    for row in rows:
        raw = row[column]
        if raw == "":
            skipped += 1
            continue
        xs.append(float(row["sweep_value"]))
        ys.append(float(raw))
    return xs, ys, skipped


def render(job: FigureJob) -> Path:
    """Plot one sweep CSV; returns the written image path."""
    if job.kind not in KINDS:
        raise FigureError(f"unknown figure kind {job.kind!r}; "
                          f"expected one of {sorted(KINDS)}")
    style = KINDS[job.kind]
    rows = read_rows(job.input_csv)
    xs, ys, skipped = _series(rows, style["y"])
    if not xs:
        raise FigureError(f"{job.input_csv} has no plottable {style['y']} values")

    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.2, color="#1f4e79")
    if style["logx"]:
        ax.set_xscale("log")
    if style["bound"]:
        line = ax.axhline(SEPARABILITY_BOUND, color="#b22222", linestyle="--",
                          linewidth=1.0)
        line.set_gid(BOUND_GID)
        ax.text(0.98, SEPARABILITY_BOUND, " bound", color="#b22222",
                transform=ax.get_yaxis_transform(), va="bottom", ha="right",
                fontsize=8)
    ax.set_xlabel(style["xlabel"])
    ax.set_ylabel(style["ylabel"])
    if skipped:
        ax.set_title(f"{job.kind} ({skipped} failed point(s) omitted)", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = Path(job.output_image)
    try:
        fig.savefig(out)
    except OSError as exc:
        raise FigureError(f"cannot write {out}: {exc}") from exc
    finally:
        plt.close(fig)
    return out
