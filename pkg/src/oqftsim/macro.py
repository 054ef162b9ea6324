"""Macro evaluator: full OQFT and serial-QFT schedules from adder statistics.

Hot zones are mobile resource bundles (factories, ancillae, bridges, and a
phase-gradient register) that dock at stationary data block pairs. A barrier
scheduler assigns each structural layer's block operations round-robin to
the available zones; no zone starts the next layer until every zone has
finished the current one. Zone work is looked up from a per-width table of
micro-simulated controlled-adder statistics; vertical hops between pairs,
phase-gradient cycling, and reflection alignment are charged on top.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .census import BPR_KIND, QFT_REFLECTED_KIND, BlockOp, OqftPlan, oqft_plan
from .io import read_csv
from .microsim.layout import build_layout
from .params import SystemParams

HOP_TICKS = 1          # ~6-span vertical hop fits one QEC cycle
PG_BATCH = 7           # PG shifts batched per QEC cycle
REFLECTION_TICKS = 1   # register negation + unit increment per reflected block
TABLE_WIDTHS = range(2, 33)


@dataclass
class StatsTable:
    """Per-width adder statistics: map (controlled, w) -> mean scalars."""

    entries: dict[tuple[bool, int], dict[str, float]]
    provenance: str

    @classmethod
    def from_rows(cls, rows: list[dict], provenance: str) -> "StatsTable":
        entries = {}
        for row in rows:
            key = (bool(int(row["controlled"])), int(row["w"]))
            entries[key] = {k: float(v) for k, v in row.items()
                            if k.startswith("mean_") or k in ("volume", "seed_count")}
        return cls(entries=entries, provenance=provenance)

    @classmethod
    def load(cls, path: str | Path) -> "StatsTable":
        return cls.from_rows(read_csv(path), provenance=str(path))

    @classmethod
    def bundled(cls) -> "StatsTable":
        with resources.files("oqftsim.data").joinpath("default_stats.csv").open() as fh:
            import csv
            return cls.from_rows(list(csv.DictReader(fh)), provenance="bundled defaults")

    def _entry(self, controlled: bool, w: int) -> dict[str, float]:
        w = min(max(w, TABLE_WIDTHS.start), TABLE_WIDTHS.stop - 1)
        try:
            return self.entries[(controlled, w)]
        except KeyError:
            raise KeyError(f"statistics table is missing width {w} "
                           f"(controlled={controlled})") from None

    def mean_ticks(self, w: int, controlled: bool = True) -> float:
        return self._entry(controlled, w)["mean_total_ticks"]

    def avg_dof(self, w: int, controlled: bool = True) -> float:
        return self._entry(controlled, w)["mean_avg_dof"]

    def peak_dof(self, controlled: bool = True) -> float:
        return max(e["mean_peak_dof"] for (ctrl, _), e in self.entries.items()
                   if ctrl == controlled)

    def complete(self, controlled: bool = True) -> bool:
        return all((controlled, w) in self.entries for w in TABLE_WIDTHS)


@dataclass
class ZoneSlot:
    zone: int
    op: BlockOp
    hop: bool


@dataclass
class MacroSchedule:
    n: int
    m: int
    num_blocks: int
    hz: int
    layers: list[list[ZoneSlot]]
    pg_cycle_ticks_per_block: int
    reflection_ticks: int = REFLECTION_TICKS
    hop_ticks: int = HOP_TICKS


@dataclass
class MacroResult:
    n: int
    hz: int
    total_ticks: float
    time_s: float
    footprint_qubits: int
    volume: float
    avg_dof: float
    peak_dof: float
    ancilla_overhead: int
    layer_windows: list[tuple[float, float]] = field(default_factory=list)
    zone_layer_starts: list[list[float]] = field(default_factory=list)


def _op_position(op: BlockOp) -> tuple:
    """Dock position of a block op: a pair, or a boundary between pairs."""
    if op.kind == BPR_KIND:
        a, b = op.blocks
        if a // 2 == b // 2:
            return ("pair", a // 2)
        return ("boundary", a // 2)
    return ("pair", op.blocks[0] // 2)


def valid_hz_values(n: int, m: int) -> list[int]:
    b = n // m
    vals = []
    hz = 1
    while hz <= b // 2:
        vals.append(hz)
        hz *= 2
    return vals


def plan_macro(n: int, m: int, hz: int, plan: OqftPlan | None = None) -> MacroSchedule:
    """Round-robin assignment of each layer's ops to ``hz`` hot zones."""
    if plan is None:
        plan = oqft_plan(n, m)
    if len(plan.layers) != 5:
        raise ValueError("expected a five-layer plan")
    if hz not in valid_hz_values(n, m):
        raise ValueError(
            f"hot-zone count {hz} invalid for {plan.num_blocks} blocks "
            f"(allowed: {valid_hz_values(n, m)})")
    positions: dict[int, tuple | None] = {z: None for z in range(hz)}
    layers: list[list[ZoneSlot]] = []
    for layer in plan.layers:
        slots: list[ZoneSlot] = []
        for i, op in enumerate(layer):
            zone = i % hz
            pos = _op_position(op)
            hop = positions[zone] is not None and positions[zone] != pos
            positions[zone] = pos
            slots.append(ZoneSlot(zone=zone, op=op, hop=hop))
        layers.append(slots)
    return MacroSchedule(n=n, m=m, num_blocks=plan.num_blocks, hz=hz, layers=layers,
                         pg_cycle_ticks_per_block=math.ceil((m - 1) / PG_BATCH))


def _zone_resource_patches(m: int, p: SystemParams) -> int:
    """Resource patches of one docked hot zone, phase-gradient row included."""
    layout = build_layout("gidney", m, p, include_pg=True)
    return layout.resource_patches


def _op_ticks(op: BlockOp, sched: MacroSchedule, table: StatsTable) -> tuple[float, float]:
    """(ticks, dof-weighted ticks) for one block op on its zone."""
    ticks = 0.0
    weighted = 0.0
    for controlled, w in op.addition_list:
        t = table.mean_ticks(w, controlled=True)
        ticks += t
        weighted += t * table.avg_dof(w, controlled=True)
    if op.addition_list:
        ticks += sched.pg_cycle_ticks_per_block
    if op.kind == QFT_REFLECTED_KIND:
        ticks += sched.reflection_ticks
    return ticks, weighted


def evaluate_macro(sched: MacroSchedule, table: StatsTable, p: SystemParams) -> MacroResult:
    """Barrier-scheduled execution: layer time is the slowest zone's time."""
    if not table.complete(controlled=True):
        raise ValueError("statistics table incomplete for the controlled variant")
    total = 0.0
    weighted_sum = 0.0
    ticks_sum = 0.0
    layer_windows: list[tuple[float, float]] = []
    zone_layer_starts: list[list[float]] = []
    for slots in sched.layers:
        zone_time = {z: 0.0 for z in range(sched.hz)}
        for slot in slots:
            ticks, weighted = _op_ticks(slot.op, sched, table)
            if slot.hop:
                ticks += sched.hop_ticks
            zone_time[slot.zone] += ticks
            weighted_sum += weighted
            ticks_sum += ticks
        layer = max(zone_time.values()) if zone_time else 0.0
        zone_layer_starts.append([total] * sched.hz)
        layer_windows.append((total, total + layer))
        total += layer
    per_zone_avg_dof = weighted_sum / ticks_sum if ticks_sum else 0.0
    resource = _zone_resource_patches(sched.m, p)
    footprint = sched.n + sched.hz * resource
    time_s = total * p.t_r
    return MacroResult(
        n=sched.n, hz=sched.hz, total_ticks=total, time_s=time_s,
        footprint_qubits=footprint, volume=footprint * time_s,
        avg_dof=sched.hz * per_zone_avg_dof,
        peak_dof=sched.hz * table.peak_dof(controlled=True),
        ancilla_overhead=footprint - sched.n,
        layer_windows=layer_windows,
        zone_layer_starts=zone_layer_starts,
    )


def serial_baseline(n: int, table: StatsTable, p: SystemParams,
                    cutoff_k: int = 32) -> MacroResult:
    """Truncated textbook QFT on a single hot zone walking the register."""
    if n < cutoff_k + 1:
        raise ValueError(f"baseline assumes the truncated regime, n >= {cutoff_k + 1}")
    widths = [min(cutoff_k - 1, n - 1 - i) for i in range(n - 1)]
    ticks = sum(table.mean_ticks(w) for w in widths)
    ticks += math.ceil(len(widths) / PG_BATCH)   # PG cycling, batched shifts
    weighted = sum(table.mean_ticks(w) * table.avg_dof(w) for w in widths)
    resource = _zone_resource_patches(cutoff_k, p)
    footprint = n + resource
    time_s = ticks * p.t_r
    return MacroResult(
        n=n, hz=0, total_ticks=ticks, time_s=time_s,
        footprint_qubits=footprint, volume=footprint * time_s,
        avg_dof=weighted / ticks if ticks else 0.0,
        peak_dof=table.peak_dof(controlled=True),
        ancilla_overhead=footprint - n,
    )


def sweep_macro(sizes: list[int], hz_values: list[int] | None, table: StatsTable,
                p: SystemParams, m: int = 32) -> list[dict]:
    """Grid of macro results plus the serial baseline for each size.

    Baseline rows carry hz = 0. ``hz_values = None`` sweeps every valid
    hot-zone count for each size.
    """
    rows = []
    for n in sizes:
        base = serial_baseline(n, table, p, cutoff_k=m)
        rows.append(_result_row(base))
        values = hz_values if hz_values is not None else valid_hz_values(n, m)
        for hz in values:
            if hz not in valid_hz_values(n, m):
                continue
            res = evaluate_macro(plan_macro(n, m, hz), table, p)
            rows.append(_result_row(res))
    return rows


def _result_row(res: MacroResult) -> dict:
    return {
        "n": res.n, "hz": res.hz, "time_s": res.time_s,
        "footprint": res.footprint_qubits, "volume": res.volume,
        "avg_dof": res.avg_dof, "peak_dof": res.peak_dof,
        "ancilla_overhead": res.ancilla_overhead,
    }
