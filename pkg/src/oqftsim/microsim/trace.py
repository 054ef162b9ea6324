"""Per-tick trace capture and export for validation animations."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ..params import SystemParams
from .layout import ROW_BRIDGE_2, Layout

TRACE_VERSION = 1


@dataclass
class TickTrace:
    variant: str
    w: int
    seed: int
    params_hash: str
    frames: list[list[dict]]   # frames[t] = per-qubit records, ordered by id


def _qubit_record(qid: str, role: str, col: int, row: int, status: str,
                  remaining: int = 0, dest: tuple[int, int] | None = None) -> dict:
    rec = {"id": qid, "role": role, "col": col, "row": row, "status": status}
    if status == "in_flight":
        rec["remaining"] = remaining
        rec["dest_col"], rec["dest_row"] = dest
    return rec


def build_trace(stats, layout: Layout, flights, maj_blocks, uma_by_bit,
                controlled: bool, p: SystemParams) -> TickTrace:
    """Reconstruct per-tick qubit records from the run's interval data."""
    from ..io import params_hash

    total = stats.total_ticks
    w = stats.w

    # static home positions and engagement windows
    qubits: dict[str, dict] = {}
    for i, pos in enumerate(layout.rows["data_a"]):
        qubits[f"data_a_{i:02d}"] = {"role": "data", "home": pos, "windows": []}
    for i, pos in enumerate(layout.rows["data_b"]):
        qubits[f"data_b_{i:02d}"] = {"role": "data", "home": pos, "windows": []}
    if controlled:
        qubits["control"] = {"role": "data", "home": (0, ROW_BRIDGE_2), "windows": []}
    aux_row = layout.rows.get("land_ancilla", ())
    for i, pos in enumerate(aux_row):
        qubits[f"anc_{i:02d}"] = {"role": "land_ancilla", "home": pos, "windows": []}
    for i, pos in enumerate(layout.rows["bridge_1"]):
        qubits[f"bridge_a_{i:02d}"] = {"role": "bridge", "home": pos, "windows": []}
    for i, pos in enumerate(layout.rows["bridge_2"]):
        qubits[f"bridge_b_{i:02d}"] = {"role": "bridge", "home": pos, "windows": []}

    # engagement: data entangled while its blocks run
    for blk in maj_blocks:
        for reg in ("data_a", "data_b"):
            qubits[f"{reg}_{blk.bit:02d}"]["windows"].append(
                (blk.launch, uma_by_bit[blk.bit].end))

    flight_by_id: dict[str, list] = {}
    for f in flights:
        flight_by_id.setdefault(f.qubit_id, []).append(f)
    for fl in flight_by_id.values():
        fl.sort(key=lambda f: f.start)

    frames: list[list[dict]] = []
    for t in range(total):
        frame: list[dict] = []
        for qid in sorted(qubits):
            info = qubits[qid]
            col, row = info["home"]
            status = "idle"
            rec = None
            for f in flight_by_id.get(qid, ()):
                if f.start <= t < f.end:
                    rec = _qubit_record(qid, info["role"], f.src[0], f.src[1],
                                        "in_flight", f.end - t, f.dst)
                    break
            if rec is None:
                if any(math.floor(lo) <= t < hi for lo, hi in info["windows"]):
                    status = "entangled"
                deployed = [f for f in flight_by_id.get(qid, ()) if f.end <= t]
                if deployed and deployed[-1].kind in ("bridge_return", "aux_return",
                                                      "fanout_return"):
                    status = "reset"
                elif deployed:
                    col, row = deployed[-1].dst
                    status = "entangled"
                rec = _qubit_record(qid, info["role"], col, row, status)
            frame.append(rec)
        # magic states currently in flight
        for f in flights:
            if f.kind == "t_delivery" and f.start <= t < f.end:
                frame.append(_qubit_record(f.qubit_id, "factory_product",
                                           f.src[0], f.src[1], "in_flight",
                                           f.end - t, f.dst))
        frames.append(frame)

    return TickTrace(variant=stats.variant, w=w, seed=stats.seed,
                     params_hash=params_hash(p), frames=frames)


def export_trace(trace: TickTrace) -> list[str]:
    """Line-delimited records: a versioned header, then one line per tick."""
    header = {
        "trace_version": TRACE_VERSION,
        "variant": trace.variant,
        "w": trace.w,
        "seed": trace.seed,
        "params_hash": trace.params_hash,
    }
    lines = [json.dumps(header, sort_keys=True)]
    for t, frame in enumerate(trace.frames):
        lines.append(json.dumps({"tick": t, "qubits": frame}, sort_keys=True))
    return lines


def replay_dof(lines: list[str]) -> list[int]:
    """Recount the per-tick DOF series from an exported trace."""
    series = []
    for line in lines[1:]:
        rec = json.loads(line)
        series.append(sum(1 for q in rec["qubits"] if q["status"] == "in_flight"))
    return series
