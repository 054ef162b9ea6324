"""Patch-grid layouts for the two ripple-carry adder variants.

Both variants occupy six rows of ``w`` patches each, so their footprints
match at every width. The gidney variant trades one factory row for a row
of logical-AND ancillae; the cuccaro variant, being roughly twice as
T-hungry, carries two factory rows instead. An optional seventh row holds
the phase-gradient register when the layout is embedded in a hot zone.

Rows, bottom to top: data_a, data_b, factory_1, then the variant row
(land_ancilla or factory_2), then the two bridge rows. Keeping the factory
rows adjacent to the data keeps most magic deliveries inside a single
reaction tick.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..params import SystemParams

VARIANTS = ("gidney", "cuccaro")

ROW_DATA_A = 0
ROW_DATA_B = 1
ROW_FACTORY_1 = 2
ROW_AUX = 3        # land_ancilla for gidney, factory_2 for cuccaro
ROW_BRIDGE_1 = 4
ROW_BRIDGE_2 = 5
ROW_PG = 6

MIN_WIDTH = 2
MAX_WIDTH = 32

# Staged magic inventory parks in stacks at the row ends, out of the
# compute corridor.
BUFFER_STACK_DEPTH = 4


@dataclass
class Layout:
    variant: str
    w: int
    rows: dict[str, list[tuple[int, int]]]
    buffer_slots: list[tuple[int, int]]
    include_pg: bool = False
    span_m: float = 180e-6

    @property
    def footprint_patches(self) -> int:
        return sum(len(slots) for slots in self.rows.values())

    @property
    def resource_patches(self) -> int:
        """Non-data patches (everything except the two data rows)."""
        return self.footprint_patches - len(self.rows["data_a"]) - len(self.rows["data_b"])

    @property
    def factory_positions(self) -> list[tuple[int, int]]:
        pos = list(self.rows["factory_1"])
        if self.variant == "cuccaro":
            pos += self.rows["factory_2"]
        return pos

    def compute_site(self, bit: int) -> tuple[int, int]:
        """Where bit ``bit`` of the sum register lives."""
        return (bit, ROW_DATA_B)


def distance_spans(a: tuple[int, int], b: tuple[int, int], metric: str = "euclidean") -> float:
    """Grid distance in patch spans. Ballistic transport is straight-line,
    so euclidean is the default; manhattan is kept as a config alternative."""
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    if metric == "manhattan":
        return abs(dx) + abs(dy)
    return math.hypot(dx, dy)


def _buffer_columns(w: int, count: int) -> list[int]:
    """Alternating end-stacks: columns 0, w-1, 0, w-1, ... then 1, w-2, ..."""
    cols: list[int] = []
    offset = 0
    while len(cols) < count:
        lo, hi = offset, w - 1 - offset
        for _ in range(BUFFER_STACK_DEPTH):
            cols.append(lo)
            if len(cols) >= count:
                break
            if hi != lo:
                cols.append(hi)
                if len(cols) >= count:
                    break
        offset = (offset + 1) % ((w + 1) // 2)
    return cols[:count]


def build_layout(variant: str, w: int, p: SystemParams,
                 include_pg: bool = False, buffer_units: int = 0) -> Layout:
    """Deterministic layout for one adder invocation of width ``w``."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown adder variant {variant!r}")
    if not MIN_WIDTH <= w <= MAX_WIDTH:
        raise ValueError(f"width must lie in [{MIN_WIDTH}, {MAX_WIDTH}], got {w}")
    cols = range(w)
    rows = {
        "data_a": [(c, ROW_DATA_A) for c in cols],
        "data_b": [(c, ROW_DATA_B) for c in cols],
        "factory_1": [(c, ROW_FACTORY_1) for c in cols],
        "bridge_1": [(c, ROW_BRIDGE_1) for c in cols],
        "bridge_2": [(c, ROW_BRIDGE_2) for c in cols],
    }
    if variant == "gidney":
        rows["land_ancilla"] = [(c, ROW_AUX) for c in cols]
    else:
        rows["factory_2"] = [(c, ROW_AUX) for c in cols]
    if include_pg:
        rows["pg_row"] = [(c, ROW_PG) for c in cols]
    buffer_slots = [(c, ROW_FACTORY_1) for c in _buffer_columns(w, buffer_units)]
    return Layout(variant=variant, w=w, rows=rows, buffer_slots=buffer_slots,
                  include_pg=include_pg, span_m=p.span_m)
