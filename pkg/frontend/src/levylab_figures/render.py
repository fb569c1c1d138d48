"""Render the levylab figure-data CSVs as publication-style PNG panels.

Strictly read-only over the CSVs: values are plotted, never recomputed or
transformed.  Each figure is a fixed panel layout; fig6 renders as a
heatmap of the (s, r) surface.

CLI: render_figures <figure_name|all> --csv-dir D --out O
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


class RenderError(RuntimeError):
    pass


@dataclass(frozen=True)
class PanelSpec:
    csv_name: str
    header: str
    title: str
    xlabel: str
    ylabel: str
    kind: str = "line"  # "line" | "surface"


FIGURES = {
    "fig2": [
        PanelSpec("fig2_a0.08.csv", "s,value", "band a=0.08", "s", "efficiency"),
        PanelSpec("fig2_a0.3.csv", "s,value", "band a=0.3", "s", "efficiency"),
        PanelSpec("fig2_a2.csv", "s,value", "band a=2", "s", "efficiency"),
    ],
    "fig3": [
        PanelSpec("fig3_r0.csv", "s,value", "shift r=0", "s", "efficiency"),
        PanelSpec("fig3_r0.16.csv", "s,value", "shift r=0.16", "s", "efficiency"),
        PanelSpec("fig3_r3.csv", "s,value", "shift r=3", "s", "efficiency"),
    ],
    "fig4": [
        PanelSpec("fig4_a0.035.csv", "xi,value", "a=0.035", "xi", "weight"),
        PanelSpec("fig4_a0.1.csv", "xi,value", "a=0.1", "xi", "weight"),
        PanelSpec("fig4_a0.5.csv", "xi,value", "a=0.5", "xi", "weight"),
    ],
    "fig5": [
        PanelSpec("fig5_T1.csv", "s,value", "T=1", "s", "efficiency"),
        PanelSpec("fig5_T1e8.csv", "s,value", "T=1e8", "s", "efficiency"),
    ],
    "fig6": [
        PanelSpec("fig6_L.csv", "s,r,value", "L(s, r)", "s", "r", kind="surface"),
    ],
}


def expected_files(figure: str) -> List[str]:
    return [p.csv_name for p in FIGURES[figure]]


def read_panel_csv(path: Path, header: str) -> np.ndarray:
    """Read a figure CSV: '#' provenance lines, one header row, float rows."""
    if not path.exists():
        raise RenderError(f"missing CSV: {path}")
    rows = []
    with open(path, encoding="utf-8") as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#"))
        try:
            head = next(reader)
        except StopIteration:
            raise RenderError(f"malformed CSV (empty): {path}")
        if ",".join(head) != header:
            raise RenderError(
                f"malformed CSV {path}: header {','.join(head)!r}, "
                f"expected {header!r}")
        for row in reader:
            try:
                rows.append([float(x) for x in row])
            except ValueError:
                raise RenderError(f"malformed CSV {path}: non-numeric row {row!r}")
    if not rows:
        raise RenderError(f"malformed CSV (no data rows): {path}")
    data = np.asarray(rows)
    if data.shape[1] != len(header.split(",")):
        raise RenderError(f"malformed CSV {path}: ragged rows")
    return data


def render(figure: str, csv_dir: Path, out_path: Path) -> Path:
    """Write one PNG for the named figure; returns the output path."""
    panels = FIGURES[figure]
    datas = [read_panel_csv(csv_dir / p.csv_name, p.header) for p in panels]
    n = len(panels)
    if panels[0].kind == "surface":
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        data = datas[0]
        s = np.unique(data[:, 0])
        r = np.unique(data[:, 1])
        L = data[:, 2].reshape(len(r), len(s))
        mesh = ax.pcolormesh(s, r, L, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="L")
        ax.set_xlabel(panels[0].xlabel)
        ax.set_ylabel(panels[0].ylabel)
        ax.set_title(panels[0].title)
    else:
        fig, axes = plt.subplots(1, n, figsize=(4.0 * n, 3.2))
        axes = np.atleast_1d(axes)
        for ax, spec, data in zip(axes, panels, datas):
            ax.plot(data[:, 0], data[:, 1], lw=1.4)
            ax.set_xlabel(spec.xlabel)
            ax.set_ylabel(spec.ylabel)
            ax.set_title(spec.title)
            ax.margins(x=0.02)
        fig.tight_layout()
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render_all(csv_dir: Path, out_dir: Path) -> List[Path]:
    missing = [name for fig in FIGURES for name in expected_files(fig)
               if not (csv_dir / name).exists()]
    if missing:
        raise RenderError(
            "missing CSV files in " + str(csv_dir) + ": " + ", ".join(sorted(missing)))
    return [render(fig, csv_dir, out_dir / f"{fig}.png") for fig in FIGURES]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render levylab figure CSVs as PNG panels.")
    parser.add_argument("figure", choices=sorted(FIGURES) + ["all"])
    parser.add_argument("--csv-dir", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path,
                        help="output directory (one PNG per figure)")
    args = parser.parse_args(argv)
    try:
        if args.figure == "all":
            written = render_all(args.csv_dir, args.out)
        else:
            written = [render(args.figure, args.csv_dir,
                              args.out / f"{args.figure}.png")]
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
