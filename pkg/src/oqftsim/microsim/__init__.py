from .layout import Layout, build_layout
from .templates import ScheduleTemplate, StepEntry, schedule_template
from .engine import AdderRunStats, EngineConfig, SimulationAbort, run_adder
from .stats import AdderStats, aggregate_runs
from .trace import TickTrace, export_trace, replay_dof

__all__ = [
    "Layout", "build_layout",
    "ScheduleTemplate", "StepEntry", "schedule_template",
    "AdderRunStats", "EngineConfig", "SimulationAbort", "run_adder",
    "AdderStats", "aggregate_runs",
    "TickTrace", "export_trace", "replay_dof",
]
