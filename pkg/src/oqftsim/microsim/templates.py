"""Data-driven step tables for the MAJ/UMA/LAND blocks.

The tables live as JSON under ``oqftsim/data`` and are the calibration
surface of the micro model: block depths are the sums of the step weights,
11 + 4.5 reaction ticks for gidney and 12 + 12 for cuccaro, with
classically-controlled steps counted at half depth. Gidney's MAJ embeds the
swap-based CNOT elimination and assumes the logical-AND ancilla arrives
already carrying a cultivated T state, which is why only three of the four
T gates appear as injection steps.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources

STEP_KINDS = (
    "move", "two_qubit_gate", "single_qubit_gate", "t_inject",
    "measure", "classical_fixup", "swap_pickdrop",
)

CONTROL_FANOUT_LABEL = "control_fanout"


@dataclass(frozen=True)
class StepEntry:
    label: str
    kind: str
    weight: float

    def __post_init__(self) -> None:
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        expected_half = self.kind == "classical_fixup"
        if expected_half and self.weight != 0.5:
            raise ValueError("classical fixups count at half depth")
        if not expected_half and self.weight < 1.0:
            raise ValueError(f"step {self.label!r}: weight must be >= 1 tick")


@dataclass
class ScheduleTemplate:
    variant: str
    maj_steps: list[StepEntry]
    uma_steps: list[StepEntry]
    land_steps: list[StepEntry]
    bridge_release_step: str | None = None
    controlled: bool = False

    @property
    def maj_weight(self) -> float:
        return sum(s.weight for s in self.maj_steps if s.label != CONTROL_FANOUT_LABEL)

    @property
    def uma_weight(self) -> float:
        return sum(s.weight for s in self.uma_steps)

    def maj_t_injections(self) -> int:
        return sum(1 for s in self.maj_steps if s.kind == "t_inject")

    def uma_t_injections(self) -> int:
        return sum(1 for s in self.uma_steps if s.kind == "t_inject")


def _load_raw(variant: str) -> dict:
    name = f"{variant}_template.json"
    with resources.files("oqftsim.data").joinpath(name).open() as fh:
        return json.load(fh)


def schedule_template(variant: str, controlled: bool = False,
                      fanout_weight: float = 1.0) -> ScheduleTemplate:
    """Canonical step tables for one adder variant.

    The controlled form prepends one control-distribution step per block,
    routed over the bridge row; its extra weight is a config knob and sits
    on top of the published block depths.
    """
    raw = _load_raw(variant)
    maj = [StepEntry(*entry) for entry in raw["maj"]]
    uma = [StepEntry(*entry) for entry in raw["uma"]]
    land_labels = set(raw["land"])
    land = [s for s in maj if s.label in land_labels]
    if controlled:
        maj = [StepEntry(CONTROL_FANOUT_LABEL, "two_qubit_gate", fanout_weight)] + maj
    return ScheduleTemplate(
        variant=variant,
        maj_steps=maj,
        uma_steps=uma,
        land_steps=land,
        bridge_release_step=raw.get("bridge_release_step"),
        controlled=controlled,
    )
