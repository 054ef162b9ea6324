"""Render figure panels from simulator CSVs.

The renderer never mutates its inputs and performs no computation beyond
axis transforms: rows are filtered by exact column values and plotted as-is.
Output bytes are deterministic for identical CSVs, so re-rendering is
idempotent.
"""
from __future__ import annotations

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "figregen"

import matplotlib.pyplot as plt

from .panels import PANELS, PanelSpec


class SchemaError(ValueError):
    """An input CSV is missing a column a panel declares."""

    def __init__(self, panel_id: str, csv_name: str, missing: list[str]):
        self.panel_id = panel_id
        self.missing = missing
        super().__init__(
            f"panel {panel_id}: {csv_name} is missing column(s) "
            + ", ".join(sorted(missing)))


def _load_rows(path: Path) -> tuple[list[str], list[dict]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        return list(header), list(reader)


def _validate(spec: PanelSpec, header: list[str], csv_name: str) -> None:
    missing = sorted(spec.required_columns - set(header))
    if missing:
        raise SchemaError(spec.panel_id, csv_name, missing)


def render_panel(spec: PanelSpec, in_dir: Path, out_dir: Path) -> list[Path]:
    """Render one panel to PNG and SVG; returns the written paths."""
    path = in_dir / spec.input_csv
    header, rows = _load_rows(path)
    _validate(spec, header, spec.input_csv)

    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    plotted_any = False
    for series in spec.series:
        sel = [r for r in rows if all(r[c] == v for c, v in series.filters)]
        if not sel:
            continue
        xs = [float(r[series.x]) for r in sel]
        ys = [float(r[series.y]) for r in sel]
        ax.plot(xs, ys, label=series.label, **series.style)
        plotted_any = True
    if not plotted_any:
        print(f"warning: panel {spec.panel_id}: no rows to plot from "
              f"{spec.input_csv}; rendering empty axes", file=sys.stderr)
    ax.set_xscale(spec.xscale)
    ax.set_yscale(spec.yscale)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    if plotted_any:
        ax.legend(fontsize=7)
    fig.tight_layout()

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for ext, metadata in (("png", {"Software": "figregen"}),
                          ("svg", {"Date": None})):
        target = out_dir / f"{spec.panel_id}.{ext}"
        fig.savefig(target, metadata=metadata)
        written.append(target)
    plt.close(fig)
    return written


def render_figures(panel_ids: list[str], in_dir: str | Path,
                   out_dir: str | Path) -> list[Path]:
    """Render the requested panels; raises on unknown panels or bad schemas."""
    in_dir, out_dir = Path(in_dir), Path(out_dir)
    unknown = [p for p in panel_ids if p not in PANELS]
    if unknown:
        raise ValueError(f"unknown panel(s): {', '.join(unknown)}")
    written: list[Path] = []
    for pid in panel_ids:
        written += render_panel(PANELS[pid], in_dir, out_dir)
    return written
