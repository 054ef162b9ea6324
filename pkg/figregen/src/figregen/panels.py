"""Panel catalog: which CSV feeds each figure panel and how it is drawn.

All numbers come straight from the simulator's CSVs; the renderer applies
axis transforms and nothing else. Series are selected by exact column-value
filters, so every plotted point maps 1:1 to a CSV row.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SeriesSpec:
    label: str
    filters: tuple[tuple[str, str], ...]   # (column, value) equality filters
    x: str
    y: str
    style: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PanelSpec:
    panel_id: str
    input_csv: str
    series: tuple[SeriesSpec, ...]
    xscale: str = "linear"
    yscale: str = "linear"
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""

    @property
    def required_columns(self) -> set[str]:
        cols: set[str] = set()
        for s in self.series:
            cols.add(s.x)
            cols.add(s.y)
            cols.update(c for c, _ in s.filters)
        return cols


def _spectrum_series(variant: str, n: str, style: dict) -> SeriesSpec:
    return SeriesSpec(label=f"{variant} n={n}",
                      filters=(("variant", variant), ("n", n)),
                      x="k", y="count", style=style)


def _tcount_series(variant: str, label: str, style: dict) -> SeriesSpec:
    return SeriesSpec(label=label, filters=(("variant", variant),),
                      x="n", y="t_gates", style=style)


def _adder_series(variant: str, controlled: str, y: str, label: str,
                  style: dict) -> SeriesSpec:
    return SeriesSpec(label=label,
                      filters=(("variant", variant), ("controlled", controlled)),
                      x="w", y=y, style=style)


def _hz_series(hz: str, y: str) -> SeriesSpec:
    if hz == "0":
        return SeriesSpec(label="serial QFT", filters=(("hz", "0"),), x="n", y=y,
                          style={"marker": "D", "linestyle": "none", "color": "gold"})
    return SeriesSpec(label=f"hz={hz}", filters=(("hz", hz),), x="n", y=y,
                      style={"marker": "o"})


def _fig5(panel_id: str, y: str, ylabel: str, yscale: str = "log") -> PanelSpec:
    return PanelSpec(
        panel_id=panel_id, input_csv="oqft_sweep.csv",
        series=tuple(_hz_series(hz, y) for hz in ("0", "1", "2", "4", "8", "16", "32")),
        xscale="log", yscale=yscale, xlabel="register size n", ylabel=ylabel,
        title=f"Integrated OQFT: {ylabel}")


PANELS: dict[str, PanelSpec] = {
    "fig1b_top": PanelSpec(
        panel_id="fig1b_top", input_csv="census_spectra.csv",
        series=(
            _spectrum_series("textbook", "2048", {"marker": ".", "linestyle": "none"}),
            _spectrum_series("truncated", "2048", {"marker": "s", "linestyle": "none"}),
            _spectrum_series("oqft", "2048", {"marker": "^", "linestyle": "none"}),
        ),
        xscale="linear", yscale="log",
        xlabel="rotation exponent k", ylabel="count",
        title="Rotation spectra"),
    "fig1b_bottom": PanelSpec(
        panel_id="fig1b_bottom", input_csv="census_tcounts.csv",
        series=(
            _tcount_series("qft_synth", "QFT (synthesized)", {"color": "grey"}),
            _tcount_series("oqft_synth", "OQFT (synthesized)", {"color": "hotpink"}),
            _tcount_series("qft_pg", "PG-QFT", {"color": "tab:blue"}),
            _tcount_series("oqft_pg", "PG-OQFT", {"color": "gold"}),
        ),
        xscale="log", yscale="log",
        xlabel="register size n", ylabel="T count",
        title="T counts"),
    "fig2c": PanelSpec(
        panel_id="fig2c", input_csv="hl_sweep.csv",
        series=tuple(
            SeriesSpec(label=fam, filters=(("family", fam),), x="n", y="volume",
                       style={"marker": "o"})
            for fam in ("gidney_ripple", "cuccaro_ripple",
                        "gidney_lookahead", "basic_lookahead")),
        xscale="log", yscale="log",
        xlabel="adder size n", ylabel="volume (qubit s)",
        title="High-level adder volumes"),
    "fig3b": PanelSpec(
        panel_id="fig3b", input_csv="adder_stats.csv",
        series=(
            _adder_series("gidney", "0", "volume", "gidney", {"marker": "o"}),
            _adder_series("cuccaro", "0", "volume", "cuccaro", {"marker": "s"}),
            _adder_series("gidney", "1", "volume", "gidney (controlled)",
                          {"marker": "^"}),
        ),
        xscale="log", yscale="log",
        xlabel="adder width w", ylabel="volume (qubit s)",
        title="Micro-simulated adder volumes"),
    "fig3c": PanelSpec(
        panel_id="fig3c", input_csv="adder_stats.csv",
        series=tuple(
            _adder_series(variant, "0", y, f"{variant} {label}", {"marker": m})
            for variant, m in (("gidney", "o"), ("cuccaro", "s"))
            for y, label in (("mean_avg_dof", "avg DOF/tick"),
                             ("mean_avg_move_spans", "avg move spans"),
                             ("mean_moves_per_bit", "moves/bit"))),
        xscale="linear", yscale="linear",
        xlabel="adder width w", ylabel="per-run statistic",
        title="Movement and parallelism statistics"),
    "fig5a": _fig5("fig5a", "time_s", "time to solution (s)"),
    "fig5b": _fig5("fig5b", "footprint", "logical qubits"),
    "fig5c": _fig5("fig5c", "volume", "volume (qubit s)"),
    "fig5d": _fig5("fig5d", "avg_dof", "average concurrent DOF", yscale="linear"),
}

PANEL_IDS = tuple(PANELS)
