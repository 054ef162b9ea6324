"""System parameters and the atom-movement timing model.

Every other module consumes these values. Times are SI seconds, lengths SI
meters. The movement model is ballistic shuttling with a constant
pick-and-drop overhead; moves longer than one reaction tick pay a doubled
tick cost for the mid-move syndrome-extraction round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields


@dataclass(frozen=True)
class SystemParams:
    """Physical and error-correction parameters plus simulation knobs.

    Defaults are the accepted literature values for a reconfigurable
    neutral-atom array running surface codes with transversal fault
    tolerance. ``p_cnot_logical`` and ``p_t_logical`` are carried for
    reporting only; nothing downstream consumes them.
    """

    p_phys: float = 1e-3          # physical error rate
    d: int = 15                   # code distance, patches are d x d sites
    ell: float = 12e-6            # site spacing [m]
    accel: float = 5500.0         # shuttling acceleration [m/s^2]
    t_gate: float = 1e-6          # physical gate time [s]
    t_meas: float = 500e-6        # measurement time [s]
    t_dec: float = 500e-6         # decoding time [s]
    t_r: float = 1e-3             # reaction time = QEC cycle [s]
    t_pickdrop: float = 400e-6    # pick-and-drop overhead per move [s]
    f_cult: int = 5               # cultivation fault distance
    cult_mean_ticks: int = 10     # mean reaction ticks per accepted T state
    dof_cap: int = 40             # max concurrent moving logical qubits per tick
    p_cnot_logical: float = 7e-9  # metadata only
    p_t_logical: float = 1e-10    # metadata only

    @property
    def span_m(self) -> float:
        """Span of a single code patch, d * ell."""
        return self.d * self.ell


FIELD_NAMES = tuple(f.name for f in fields(SystemParams))

_TIME_FIELDS = ("t_gate", "t_meas", "t_dec", "t_r", "t_pickdrop")


@dataclass(frozen=True)
class PatchGeometry:
    """Derived patch geometry; kept separate so layouts can carry it around."""

    span_m: float

    @classmethod
    def from_params(cls, p: SystemParams) -> "PatchGeometry":
        return cls(span_m=p.span_m)


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_params(p: SystemParams) -> ValidationReport:
    """Check a parameter set against its invariants.

    Report-style: returns the list of violated invariants, empty iff valid.
    """
    v: list[str] = []
    for name in _TIME_FIELDS:
        if getattr(p, name) <= 0:
            v.append(f"times strictly positive: {name} = {getattr(p, name)}")
    if p.d % 2 == 0:
        v.append("code distance must be odd")
    if p.d < 3:
        v.append("code distance must be >= 3")
    if p.ell <= 0:
        v.append("site spacing must be positive")
    if p.accel <= 0:
        v.append("acceleration must be positive")
    if not 0 < p.p_phys < 1:
        v.append("physical error rate must lie in (0, 1)")
    if p.dof_cap < 1:
        v.append("dof_cap must be >= 1")
    if p.cult_mean_ticks < 1:
        v.append("cult_mean_ticks must be >= 1")
    if p.f_cult < 1:
        v.append("cultivation fault distance must be >= 1")
    return ValidationReport(v)


def move_time(distance_spans: float, p: SystemParams, include_pickdrop: bool = False) -> float:
    """Ballistic transport time for a move of ``distance_spans`` patch spans.

    t_move = 2 * sqrt(L / a) with L the physical distance; optionally adds
    the constant pick-and-drop overhead.
    """
    if distance_spans < 0:
        raise ValueError(f"move distance must be nonnegative, got {distance_spans}")
    t = 2.0 * math.sqrt(distance_spans * p.span_m / p.accel)
    if include_pickdrop:
        t += p.t_pickdrop
    return t


def move_ticks(distance_spans: float, p: SystemParams) -> int:
    """Reaction ticks consumed by one move, pick-and-drop included.

    A move that fits in one reaction tick costs one tick. Longer moves must
    pause for syndrome extraction, which doubles their cost in ticks.
    """
    t = move_time(distance_spans, p, include_pickdrop=True)
    if t <= p.t_r:
        return 1
    return 2 * math.ceil(t / p.t_r)


def reach_spans(p: SystemParams) -> float:
    """Patch spans coverable in one reaction tick, bare ballistic formula.

    Pick-and-drop is excluded here: the quoted per-tick reach figure and the
    hop times both come from the bare formula, with the pick/drop shift
    absorbed by reaction-limited operation.
    """
    half = p.t_r / 2.0
    return p.accel * half * half / p.span_m
