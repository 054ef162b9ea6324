"""Aggregation of micro-sim runs into per-width statistics."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from ..params import SystemParams
from .engine import AdderRunStats


@dataclass
class AdderStats:
    """Mean/std of every run scalar over seeds for one (variant, w, controlled)."""

    variant: str
    w: int
    controlled: bool
    seed_count: int
    mean: dict[str, float]
    std: dict[str, float]
    volume: float   # mean footprint x mean ticks x t_r, in logical-qubit seconds


def aggregate_runs(runs: list[AdderRunStats], p: SystemParams) -> AdderStats:
    if len(runs) < 2:
        raise ValueError("need at least two runs to aggregate")
    key = (runs[0].variant, runs[0].w, runs[0].controlled)
    for r in runs[1:]:
        if (r.variant, r.w, r.controlled) != key:
            raise ValueError(f"heterogeneous runs: {key} vs {(r.variant, r.w, r.controlled)}")
    mean: dict[str, float] = {}
    std: dict[str, float] = {}
    for name in AdderRunStats.SCALARS:
        values = [float(getattr(r, name)) for r in runs]
        mean[name] = statistics.fmean(values)
        std[name] = statistics.pstdev(values)
    volume = mean["footprint_patches"] * mean["total_ticks"] * p.t_r
    return AdderStats(variant=key[0], w=key[1], controlled=key[2],
                      seed_count=len(runs), mean=mean, std=std, volume=volume)


def volume_crossover_extrapolation(volume_a: dict[int, float],
                                   volume_b: dict[int, float]) -> float:
    """Width where the B/A volume ratio extrapolates to unity.

    Fits the tail trend: log(ratio) linear in log(w) through the two largest
    common widths, solved for ratio = 1.
    """
    widths = sorted(set(volume_a) & set(volume_b))
    if len(widths) < 2:
        raise ValueError("need at least two common widths")
    w1, w2 = widths[-2], widths[-1]
    r1 = volume_b[w1] / volume_a[w1]
    r2 = volume_b[w2] / volume_a[w2]
    if r2 <= 1.0:
        return float(w2)
    slope = (math.log(r2) - math.log(r1)) / (math.log(w2) - math.log(w1))
    if slope >= 0:
        return math.inf
    return float(w2 * math.exp(-math.log(r2) / slope))


def stats_rows(agg: AdderStats) -> list[dict]:
    """One CSV row: identity, seed count, then mean/std column pairs."""
    row: dict = {
        "variant": agg.variant,
        "w": agg.w,
        "controlled": int(agg.controlled),
        "seed_count": agg.seed_count,
        "volume": agg.volume,
    }
    for name in AdderRunStats.SCALARS:
        row[f"mean_{name}"] = agg.mean[name]
        row[f"std_{name}"] = agg.std[name]
    return [row]
