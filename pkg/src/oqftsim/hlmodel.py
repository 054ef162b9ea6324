"""High-level (abstract-factory) adder cost model.

Treats magic-state factories as freely assignable resources: execution time
is the larger of the reaction-limited depth and the factory-limited magic
production time, and the footprint is workspace plus one patch per factory
(cultivation provides one factory per patch). This is precisely the model
the micro simulator exists to criticize; its constants are pinned here as
reproducible defaults and every one is overridable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .params import SystemParams

PATCHES_PER_FACTORY = 1


@dataclass(frozen=True)
class AdderFamilySpec:
    name: str
    tcount: Callable[[int], int]
    reaction_depth: Callable[[int], float]
    workspace: Callable[[int], int]


@dataclass(frozen=True)
class HlModelConfig:
    """Default constants for the four adder families.

    Ripple depths are 2n plus a pipeline fill constant; lookahead depths are
    logarithmic with generous constants. T counts: 4 per logical-AND Toffoli
    for the gidney-style ripple, 7 per direct Toffoli (two per bit) for the
    cuccaro-style ripple, and 4T-per-Toffoli with linear Toffoli counts for
    the lookahead families.
    """

    gidney_ripple_depth_base: float = 10.0
    cuccaro_ripple_depth_base: float = 18.0
    gidney_lookahead_toffoli_per_bit: int = 8
    basic_lookahead_toffoli_per_bit: int = 14
    gidney_lookahead_depth_factor: float = 6.0
    basic_lookahead_depth_factor: float = 10.0


def adder_families(cfg: HlModelConfig = HlModelConfig()) -> dict[str, AdderFamilySpec]:
    return {
        "gidney_ripple": AdderFamilySpec(
            name="gidney_ripple",
            tcount=lambda n: 4 * (n - 1),
            reaction_depth=lambda n: 2 * n + cfg.gidney_ripple_depth_base,
            workspace=lambda n: 3 * n + 1,
        ),
        "cuccaro_ripple": AdderFamilySpec(
            name="cuccaro_ripple",
            tcount=lambda n: 7 * (2 * n - 2),
            reaction_depth=lambda n: 2 * n + cfg.cuccaro_ripple_depth_base,
            workspace=lambda n: 2 * n + 1,
        ),
        "gidney_lookahead": AdderFamilySpec(
            name="gidney_lookahead",
            tcount=lambda n: 4 * cfg.gidney_lookahead_toffoli_per_bit * n,
            reaction_depth=lambda n: cfg.gidney_lookahead_depth_factor * math.log2(n),
            workspace=lambda n: 3 * n,
        ),
        "basic_lookahead": AdderFamilySpec(
            name="basic_lookahead",
            tcount=lambda n: 4 * cfg.basic_lookahead_toffoli_per_bit * n,
            reaction_depth=lambda n: cfg.basic_lookahead_depth_factor * math.log2(n),
            workspace=lambda n: 4 * n,
        ),
    }


@dataclass
class HlCost:
    family: str
    n: int
    factories: int
    footprint: int
    time_s: float
    volume: float
    reaction_time_s: float
    magic_time_s: float


def hl_cost(family: AdderFamilySpec | str, n: int, factories: int,
            p: SystemParams, cfg: HlModelConfig = HlModelConfig()) -> HlCost:
    """Volume of one n-bit addition at a fixed factory count."""
    if isinstance(family, str):
        families = adder_families(cfg)
        if family not in families:
            raise ValueError(f"unknown adder family {family!r}")
        family = families[family]
    if n < 2:
        raise ValueError(f"adders need n >= 2, got {n}")
    if factories < 1:
        raise ValueError("need at least one factory")
    t_react = family.reaction_depth(n) * p.t_r
    t_magic = family.tcount(n) * p.cult_mean_ticks * p.t_r / factories
    time_s = max(t_react, t_magic)
    footprint = family.workspace(n) + factories * PATCHES_PER_FACTORY
    return HlCost(family=family.name, n=n, factories=factories,
                  footprint=footprint, time_s=time_s,
                  volume=footprint * time_s,
                  reaction_time_s=t_react, magic_time_s=t_magic)


def hl_balanced_factories(family: AdderFamilySpec, n: int, p: SystemParams) -> float:
    """Continuous factory count equalizing reaction- and magic-limited times."""
    return family.tcount(n) * p.cult_mean_ticks / family.reaction_depth(n)


def hl_optimal(family: AdderFamilySpec | str, n: int, p: SystemParams,
               cfg: HlModelConfig = HlModelConfig()) -> HlCost:
    """Volume-argmin over factory counts, sweeping powers of two up to 4n.

    Deterministic tie-break toward fewer factories.
    """
    best: HlCost | None = None
    f = 1
    while f <= 4 * n:
        cost = hl_cost(family, n, f, p, cfg)
        if best is None or cost.volume < best.volume:
            best = cost
        f *= 2
    return best


def hl_crossover(family_a: AdderFamilySpec | str, family_b: AdderFamilySpec | str,
                 n_range: tuple[int, int], p: SystemParams,
                 cfg: HlModelConfig = HlModelConfig()) -> int | None:
    """Smallest power-of-two n in range where B's optimal volume beats A's."""
    lo, hi = n_range
    if lo > hi:
        raise ValueError("empty size range")
    n = 1
    while n < lo:
        n *= 2
    while n <= hi:
        if hl_optimal(family_b, n, p, cfg).volume < hl_optimal(family_a, n, p, cfg).volume:
            return n
        n *= 2
    return None


def hl_sweep_rows(sizes: list[int], p: SystemParams,
                  cfg: HlModelConfig = HlModelConfig()) -> list[dict]:
    """CSV rows (family, n, factories_opt, footprint, time_s, volume)."""
    rows = []
    for name in sorted(adder_families(cfg)):
        for n in sizes:
            c = hl_optimal(name, n, p, cfg)
            rows.append({
                "family": name, "n": n, "factories_opt": c.factories,
                "footprint": c.footprint, "time_s": c.time_s, "volume": c.volume,
            })
    return rows
