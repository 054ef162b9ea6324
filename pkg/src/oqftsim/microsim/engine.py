"""Tick-level simulation of one ripple-carry adder invocation.

The engine advances in reaction ticks. Majority blocks launch as a wave,
one tick of stagger per bit courtesy of pre-entangled bridge Bell pairs;
the unmajority wave returns the same way after the top bit turns around.
Every step of a block consumes its template weight; T-injection steps also
wait for their magic state to arrive, so blocks stretch when cultivation
falls behind, and that stretch propagates down the carry chain.

Magic supply: factory patches recultivate stochastically (per-tick Bernoulli,
mean ``cult_mean_ticks`` per accepted state, sampled as a geometric draw on
consumption) and the hot zone arrives with a staged inventory of ready T
states parked in buffer slots at the row ends. Deliveries are real moves on
the grid: each consumes one degree of freedom per tick in flight, and moves
exceeding a reaction tick pay the doubled mid-move syndrome-extraction cost.

Movement control is budgeted per variant (the gidney layout is provisioned
for 32 concurrent transports, cuccaro for the full 40-DOF cap). Deliveries
on the critical path are dispatched on schedule; staging and return flights
fill the remaining budget greedily and slip later when it is saturated.
A tick in which even the critical transports exceed the configured DOF cap
counts as a stall.

Runs are deterministic given (variant, w, controlled, seed, params): the
only randomness is the factory recultivation draws from a seeded PCG64
stream.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..params import SystemParams, move_ticks
from .layout import (
    ROW_AUX, ROW_BRIDGE_1, ROW_BRIDGE_2, ROW_DATA_B,
    Layout, build_layout, distance_spans,
)
from .templates import ScheduleTemplate, schedule_template


class SimulationAbort(RuntimeError):
    """Raised when the engine detects no progress for too long."""


@dataclass(frozen=True)
class EngineConfig:
    """Model constants of the micro engine. Defaults are the calibrated set."""

    buffer_t_states: int = 12        # staged inventory per factory row
    stagger_ticks: float = 1.0       # bridge-enabled shift between blocks
    prologue_ticks: float = 2.0      # initial bridge staging
    teardown_ticks: float = 2.0      # final ancilla measure / reset
    cuccaro_carry_prologue: float = 2.0   # carry-in ancilla preparation
    cuccaro_fixup_per_bit: float = 0.25   # terminal classical fixup wave
    controlled_fanout_weight: float = 1.0
    gidney_dof_budget: int = 32      # transport channels of the gidney zone
    cuccaro_dof_budget: int = 40
    bridge_prep_lead: float = 6.0    # ticks of prefetch before a block launch
    aux_prep_lead: float = 2.0
    t_prefetch_lead: float = 4.0     # factories dispatch ahead of the injection
    fanout_flight_ticks: int = 2
    distance_metric: str = "euclidean"


@dataclass
class Flight:
    qubit_id: str
    kind: str                  # t_delivery | bridge_deploy | bridge_return | aux | aux_return | fanout | fanout_return
    src: tuple[int, int]
    dst: tuple[int, int]
    request_t: float
    duration: int
    distance: float
    critical: bool
    start: int = -1

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclass
class BlockTiming:
    bit: int
    wave: str                  # maj | uma
    launch: float
    end: float
    step_ends: dict[str, float]
    handoff: float


@dataclass
class AdderRunStats:
    variant: str
    w: int
    controlled: bool
    seed: int
    total_ticks: int
    footprint_patches: int
    dof_per_tick: list[int]
    peak_dof: int
    avg_dof: float
    moves_per_bit: float
    avg_move_spans: float
    factory_to_compute_avg_spans: float
    stalled_ticks: int
    max_active_bridges: int
    t_states_consumed: int

    SCALARS = (
        "total_ticks", "footprint_patches", "peak_dof", "avg_dof",
        "moves_per_bit", "avg_move_spans", "factory_to_compute_avg_spans",
        "stalled_ticks", "max_active_bridges", "t_states_consumed",
    )


class _MagicPool:
    """Staged buffer units plus recultivating factories."""

    def __init__(self, layout: Layout, p: SystemParams, cfg: EngineConfig,
                 rng: np.random.Generator):
        self._p_success = 1.0 / p.cult_mean_ticks
        self._rng = rng
        self._metric = cfg.distance_metric
        self.buffer: list[tuple[int, int]] = list(layout.buffer_slots)
        self.factories: list[tuple[int, int]] = list(layout.factory_positions)
        # factories start cultivating: the zone has just been shuttled in
        self.factory_avail: list[float] = [float(self._draw()) for _ in self.factories]
        self.consumed = 0

    def _draw(self) -> int:
        return int(self._rng.geometric(self._p_success))

    def acquire(self, request_t: float, site: tuple[int, int]) -> tuple[float, tuple[int, int], float]:
        """Reserve one T state for ``site``; returns (pickup time, source, distance).

        Ready units win by distance (ties to the lowest column); when nothing
        is ready the earliest future cultivation is taken.
        """
        best = None  # (key tuple, kind, index)
        for i, pos in enumerate(self.buffer):
            d = distance_spans(pos, site, self._metric)
            key = (0.0, d, pos[0], 0, i)
            if best is None or key < best[0]:
                best = (key, "buffer", i)
        for i, pos in enumerate(self.factories):
            avail = self.factory_avail[i]
            wait = max(0.0, avail - request_t)
            d = distance_spans(pos, site, self._metric)
            key = (wait, d, pos[0], 1, i)
            if best is None or key < best[0]:
                best = (key, "factory", i)
        if best is None:
            raise SimulationAbort("no magic sources in layout")
        _, kind, idx = best
        self.consumed += 1
        if kind == "buffer":
            pos = self.buffer.pop(idx)
            return request_t, pos, distance_spans(pos, site, self._metric)
        pos = self.factories[idx]
        pickup = max(self.factory_avail[idx], request_t)
        self.factory_avail[idx] = pickup + self._draw()
        return pickup, pos, distance_spans(pos, site, self._metric)


def _fill_flights(flights: list[Flight], budget: int, dof_cap: int) -> tuple[np.ndarray, int]:
    """Assign flight start ticks under the transport budget.

    Critical flights keep their requested schedule; elastic ones take the
    earliest slot with spare budget. Returns the occupancy series and the
    count of ticks where critical transport alone exceeded the DOF cap.
    """
    horizon = 64
    occupancy = np.zeros(horizon, dtype=np.int64)
    critical_occ = np.zeros(horizon, dtype=np.int64)

    def _grow(n: int) -> None:
        nonlocal occupancy, critical_occ, horizon
        if n <= horizon:
            return
        while horizon < n:
            horizon *= 2
        occupancy = np.concatenate([occupancy, np.zeros(horizon - len(occupancy), dtype=np.int64)])
        critical_occ = np.concatenate([critical_occ, np.zeros(horizon - len(critical_occ), dtype=np.int64)])

    crit = [f for f in flights if f.critical]
    elastic = [f for f in flights if not f.critical]
    for f in crit:
        f.start = max(0, int(math.floor(f.request_t)))
        _grow(f.end + 1)
        occupancy[f.start:f.end] += 1
        critical_occ[f.start:f.end] += 1
    order = {"bridge_deploy": 0, "aux": 1, "fanout": 2, "t_delivery": 3,
             "bridge_return": 4, "aux_return": 5, "fanout_return": 6}
    elastic.sort(key=lambda f: (order.get(f.kind, 9), f.request_t, f.qubit_id))
    for f in elastic:
        t = max(0, int(math.floor(f.request_t)))
        while True:
            _grow(t + f.duration + 1)
            window = occupancy[t:t + f.duration]
            if np.all(window < budget):
                f.start = t
                occupancy[t:t + f.duration] += 1
                break
            t += 1
    stalled = int(np.sum(critical_occ > dof_cap))
    return occupancy, stalled


def _schedule_block(bit: int, wave: str, launch: float, steps, pool: _MagicPool,
                    site: tuple[int, int], p: SystemParams, cfg: EngineConfig,
                    flights: list[Flight], label_prefix: str,
                    deadlock_span: float) -> BlockTiming:
    cursor = launch
    step_ends: dict[str, float] = {}
    for step in steps:
        if step.kind == "t_inject":
            pickup, src, dist = pool.acquire(max(0.0, launch - cfg.t_prefetch_lead), site)
            duration = move_ticks(dist, p)
            arrival = pickup + duration
            if arrival - cursor > deadlock_span:
                raise SimulationAbort(
                    f"{label_prefix}: no progress for {arrival - cursor:.0f} ticks "
                    f"waiting on magic (bit {bit}, wave {wave})")
            flights.append(Flight(
                qubit_id=f"t_{pool.consumed:04d}", kind="t_delivery",
                src=src, dst=site, request_t=pickup, duration=duration,
                distance=dist, critical=True))
            cursor = max(cursor, arrival) + step.weight
        else:
            cursor += step.weight
        step_ends[step.label] = cursor
    nominal = sum(s.weight for s in steps)
    return BlockTiming(bit=bit, wave=wave, launch=launch, end=cursor,
                       step_ends=step_ends, handoff=cursor - launch - nominal)


def run_adder(variant: str, w: int, controlled: bool, seed: int,
              p: SystemParams, cfg: EngineConfig = EngineConfig(),
              capture_trace: bool = False):
    """Simulate one adder invocation; returns AdderRunStats (+ TickTrace).

    Deterministic for fixed (variant, w, controlled, seed, params, config).
    """
    from .trace import TickTrace, build_trace

    rng = np.random.Generator(np.random.PCG64(seed))
    factory_rows = 2 if variant == "cuccaro" else 1
    layout = build_layout(variant, w, p,
                          buffer_units=cfg.buffer_t_states * factory_rows)
    template = schedule_template(variant, controlled,
                                 fanout_weight=cfg.controlled_fanout_weight)
    pool = _MagicPool(layout, p, cfg, rng)
    flights: list[Flight] = []
    deadlock_span = 10.0 * (template.maj_weight + template.uma_weight)

    prologue = cfg.prologue_ticks
    if variant == "cuccaro":
        prologue += cfg.cuccaro_carry_prologue

    # MAJ wave, bit 0 upward
    maj: list[BlockTiming] = []
    launch = prologue
    for bit in range(w):
        if bit > 0:
            launch = maj[-1].launch + cfg.stagger_ticks + maj[-1].handoff
        block = _schedule_block(bit, "maj", launch, template.maj_steps, pool,
                                layout.compute_site(bit), p, cfg, flights,
                                f"{variant}/w={w}", deadlock_span)
        maj.append(block)

    # UMA wave, top bit downward
    uma_by_bit: dict[int, BlockTiming] = {}
    prev: BlockTiming | None = None
    for bit in range(w - 1, -1, -1):
        if prev is None:
            launch = maj[-1].end
        else:
            launch = max(prev.launch + cfg.stagger_ticks + prev.handoff, maj[bit].end)
        block = _schedule_block(bit, "uma", launch, template.uma_steps, pool,
                                layout.compute_site(bit), p, cfg, flights,
                                f"{variant}/w={w}", deadlock_span)
        uma_by_bit[bit] = block
        prev = block

    end_of_compute = max(b.end for b in uma_by_bit.values())
    if variant == "cuccaro":
        end_of_compute += cfg.cuccaro_fixup_per_bit * w
    teardown_end = end_of_compute + cfg.teardown_ticks
    total_ticks = int(math.ceil(teardown_end - 1e-9))

    # bridge, ancilla, and fanout transport
    bridge_windows: list[tuple[float, float]] = []
    for bit in range(w):
        m = maj[bit]
        u = uma_by_bit[bit]
        for qubit, row in (("a", ROW_BRIDGE_1), ("b", ROW_BRIDGE_2)):
            src = (bit, row)
            dist = distance_spans(src, layout.compute_site(bit), cfg.distance_metric)
            dur = move_ticks(dist, p)
            flights.append(Flight(f"bridge_{qubit}_{bit:02d}", "bridge_deploy", src,
                                  layout.compute_site(bit),
                                  m.launch - cfg.bridge_prep_lead, dur, dist, False))
            if variant == "gidney":
                release = (m.step_ends.get(template.bridge_release_step, m.end)
                           if qubit == "a" else m.end)
            else:
                release = u.end
            flights.append(Flight(f"bridge_{qubit}_{bit:02d}", "bridge_return",
                                  layout.compute_site(bit), src, release, dur, dist, False))
            bridge_windows.append((m.launch, release))
        if variant == "gidney":
            src = (bit, ROW_AUX)
            dist = distance_spans(src, layout.compute_site(bit), cfg.distance_metric)
            dur = move_ticks(dist, p)
            flights.append(Flight(f"anc_{bit:02d}", "aux", src, layout.compute_site(bit),
                                  m.launch - cfg.aux_prep_lead, dur, dist, False))
            flights.append(Flight(f"anc_{bit:02d}", "aux_return", layout.compute_site(bit),
                                  src, u.end, dur, dist, False))
        if controlled:
            src = (bit, ROW_BRIDGE_2)
            dist = distance_spans(src, layout.compute_site(bit), cfg.distance_metric)
            flights.append(Flight(f"fan_{bit:02d}", "fanout", src, layout.compute_site(bit),
                                  m.launch - cfg.aux_prep_lead,
                                  cfg.fanout_flight_ticks, dist, False))
            flights.append(Flight(f"fan_{bit:02d}", "fanout_return", layout.compute_site(bit),
                                  src, m.end, cfg.fanout_flight_ticks, dist, False))

    budget = cfg.gidney_dof_budget if variant == "gidney" else cfg.cuccaro_dof_budget
    budget = min(budget, p.dof_cap)
    occupancy, stalled = _fill_flights(flights, budget, p.dof_cap)

    dof_series = occupancy[:total_ticks]
    if len(dof_series) < total_ticks:
        dof_series = np.pad(dof_series, (0, total_ticks - len(dof_series)))

    ticks = np.arange(total_ticks)
    active = np.zeros(total_ticks, dtype=np.int64)
    for lo, hi in bridge_windows:
        active[(ticks >= math.floor(lo)) & (ticks < hi)] += 1
    deliveries = [f for f in flights if f.kind == "t_delivery"]

    stats = AdderRunStats(
        variant=variant, w=w, controlled=controlled, seed=seed,
        total_ticks=total_ticks,
        footprint_patches=layout.footprint_patches,
        dof_per_tick=[int(x) for x in dof_series],
        peak_dof=int(dof_series.max(initial=0)),
        avg_dof=float(dof_series.mean()) if total_ticks else 0.0,
        moves_per_bit=len(flights) / w,
        avg_move_spans=float(np.mean([f.distance for f in flights])),
        factory_to_compute_avg_spans=float(np.mean([f.distance for f in deliveries])),
        stalled_ticks=stalled,
        max_active_bridges=int(active.max(initial=0)),
        t_states_consumed=pool.consumed,
    )
    if not capture_trace:
        return stats
    trace = build_trace(stats, layout, flights, maj, uma_by_bit, controlled, p)
    return stats, trace
