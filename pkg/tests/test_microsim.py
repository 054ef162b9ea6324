import statistics as st

import pytest

from oqftsim.microsim import (
    EngineConfig, SimulationAbort, aggregate_runs, build_layout, run_adder,
    schedule_template,
)
from oqftsim.microsim.stats import volume_crossover_extrapolation
from oqftsim.microsim.trace import export_trace, replay_dof
from oqftsim.params import SystemParams

P = SystemParams()


# -- layout -------------------------------------------------------------------

def test_layout_gidney_w32():
    lay = build_layout("gidney", 32, P)
    assert lay.footprint_patches == 192          # 6 rows x 32
    assert lay.resource_patches == 128           # everything but the data rows
    lay_pg = build_layout("gidney", 32, P, include_pg=True)
    assert lay_pg.resource_patches == 160


def test_layout_footprint_equality_every_width():
    for w in range(2, 33):
        g = build_layout("gidney", w, P)
        c = build_layout("cuccaro", w, P)
        assert g.footprint_patches == c.footprint_patches == 6 * w


def test_layout_minimal_width():
    lay = build_layout("cuccaro", 2, P)
    assert all(len(slots) == 2 for slots in lay.rows.values())


def test_layout_rejects_bad_width():
    with pytest.raises(ValueError):
        build_layout("gidney", 1, P)
    with pytest.raises(ValueError):
        build_layout("gidney", 33, P)
    with pytest.raises(ValueError):
        build_layout("draper", 8, P)


# -- schedule templates --------------------------------------------------------

def test_template_depths_exact():
    g = schedule_template("gidney")
    assert g.maj_weight == 11.0
    assert g.uma_weight == 4.5
    c = schedule_template("cuccaro")
    assert c.maj_weight == 12.0
    assert c.uma_weight == 12.0


def test_template_fixup_accounting():
    for variant in ("gidney", "cuccaro"):
        t = schedule_template(variant)
        fixups = [s for s in t.maj_steps + t.uma_steps if s.kind == "classical_fixup"]
        total = sum(s.weight for s in t.maj_steps + t.uma_steps)
        without = sum(s.weight for s in t.maj_steps + t.uma_steps
                      if s.kind != "classical_fixup")
        assert total - without == pytest.approx(0.5 * len(fixups))


def test_gidney_land_span():
    t = schedule_template("gidney")
    assert 8 <= len(t.land_steps) <= 10


def test_t_injection_counts():
    g = schedule_template("gidney")
    assert g.maj_t_injections() == 3      # fourth T comes preloaded in the ancilla
    assert g.uma_t_injections() == 0      # measurement-based uncompute
    c = schedule_template("cuccaro")
    assert c.maj_t_injections() == 7
    assert c.uma_t_injections() == 7


def test_controlled_template_adds_fanout():
    base = schedule_template("gidney")
    ctrl = schedule_template("gidney", controlled=True)
    assert len(ctrl.maj_steps) == len(base.maj_steps) + 1
    assert ctrl.maj_weight == base.maj_weight   # extra weight tracked separately


# -- engine -------------------------------------------------------------------

def test_run_is_deterministic():
    a = run_adder("cuccaro", 12, False, 11, P)
    b = run_adder("cuccaro", 12, False, 11, P)
    assert a == b


def test_seeds_differ():
    runs = [run_adder("cuccaro", 16, False, s, P) for s in range(6)]
    assert len({r.total_ticks for r in runs}) > 1


def test_dof_cap_respected():
    for variant in ("gidney", "cuccaro"):
        for seed in range(5):
            r = run_adder(variant, 32, False, seed, P)
            assert r.peak_dof <= P.dof_cap
            assert max(r.dof_per_tick) == r.peak_dof


def test_gidney_peak_budget():
    for w in (8, 16, 24, 32):
        for seed in range(5):
            assert run_adder("gidney", w, False, seed, P).peak_dof <= 32


def test_stall_free_at_defaults():
    for variant in ("gidney", "cuccaro"):
        for w in (2, 8, 32):
            for seed in range(5):
                assert run_adder(variant, w, False, seed, P).stalled_ticks == 0


def test_footprint_equality_in_runs():
    for w in (2, 8, 20, 32):
        g = run_adder("gidney", w, False, 0, P)
        c = run_adder("cuccaro", w, False, 0, P)
        assert g.footprint_patches == c.footprint_patches


def test_mean_ticks_strictly_increase_with_width():
    widths = (2, 4, 8, 16, 32)
    for variant in ("gidney", "cuccaro"):
        means = []
        for w in widths:
            runs = [run_adder(variant, w, False, s, P) for s in range(20)]
            means.append(st.fmean(r.total_ticks for r in runs))
        assert all(a < b for a, b in zip(means, means[1:])), (variant, means)


def test_minimal_width_bounds():
    for variant, depth in (("gidney", 15.5), ("cuccaro", 24.0)):
        runs = [run_adder(variant, 2, False, s, P) for s in range(10)]
        mean = st.fmean(r.total_ticks for r in runs)
        assert depth <= mean <= 3 * depth


def test_bridge_demand_scales_with_block_depth():
    for w in (8, 16, 32):
        g = max(run_adder("gidney", w, False, s, P).max_active_bridges for s in range(5))
        c = min(run_adder("cuccaro", w, False, s, P).max_active_bridges for s in range(5))
        assert c > g


def test_deadlock_detection():
    starved = SystemParams(cult_mean_ticks=10_000)
    cfg = EngineConfig(buffer_t_states=0)
    with pytest.raises(SimulationAbort):
        run_adder("cuccaro", 8, False, 0, starved, cfg)


# -- aggregation ---------------------------------------------------------------

def test_aggregate_identical_runs_zero_std():
    r = run_adder("gidney", 8, False, 4, P)
    agg = aggregate_runs([r, r], P)
    assert all(v == 0.0 for v in agg.std.values())
    assert agg.mean["total_ticks"] == r.total_ticks
    assert agg.volume == pytest.approx(r.footprint_patches * r.total_ticks * P.t_r)


def test_aggregate_rejects_heterogeneous():
    a = run_adder("gidney", 8, False, 0, P)
    b = run_adder("gidney", 9, False, 0, P)
    with pytest.raises(ValueError):
        aggregate_runs([a, b], P)
    with pytest.raises(ValueError):
        aggregate_runs([a], P)


def test_volume_ratio_bands_and_crossover():
    vols = {}
    for variant in ("gidney", "cuccaro"):
        vols[variant] = {}
        for w in (8, 16, 32):
            runs = [run_adder(variant, w, False, s, P) for s in range(20)]
            vols[variant][w] = aggregate_runs(runs, P).volume
    r8 = vols["cuccaro"][8] / vols["gidney"][8]
    r32 = vols["cuccaro"][32] / vols["gidney"][32]
    assert 1.5 <= r8 <= 2.1
    assert 0.9 <= r32 <= 1.5
    w_star = volume_crossover_extrapolation(vols["gidney"], vols["cuccaro"])
    assert 48 <= w_star <= 160


# -- trace ---------------------------------------------------------------------

@pytest.fixture(scope="module")
def traced_run():
    return run_adder("gidney", 8, False, 2, P, capture_trace=True)


def test_trace_initial_tick_data_idle(traced_run):
    _, trace = traced_run
    for rec in trace.frames[0]:
        if rec["role"] == "data":
            assert rec["status"] == "idle"


def test_trace_flight_continuity(traced_run):
    _, trace = traced_run
    for t, frame in enumerate(trace.frames[:-1]):
        nxt = {q["id"]: q for q in trace.frames[t + 1]}
        for q in frame:
            if q["status"] != "in_flight" or q["remaining"] <= 1:
                continue
            follow = nxt.get(q["id"])
            assert follow is not None
            assert follow["status"] in ("in_flight", "entangled", "consumed", "reset")
            if follow["status"] == "in_flight":
                assert follow["remaining"] == q["remaining"] - 1


def test_trace_replay_recounts_dof(traced_run):
    stats, trace = traced_run
    lines = export_trace(trace)
    assert replay_dof(lines) == stats.dof_per_tick


def test_trace_deterministic(traced_run):
    stats, trace = traced_run
    stats2, trace2 = run_adder("gidney", 8, False, 2, P, capture_trace=True)
    assert export_trace(trace) == export_trace(trace2)
    assert stats == stats2
