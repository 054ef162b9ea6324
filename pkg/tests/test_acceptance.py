"""Acceptance suite: every release criterion at its stated tolerance.

Each test prints one [PASS]/[FAIL] line per criterion (run pytest with -s to
see them alongside the verdicts). The micro-sim campaign uses 20 seeds per
(variant, width) point across the full 2..32 width range.
"""
import cmath
import math
import statistics as st
import time

import pytest

from oqftsim import census, oracle
from oqftsim.cli import main as cli_main
from oqftsim.hlmodel import hl_crossover, hl_optimal
from oqftsim.io import read_csv
from oqftsim.macro import StatsTable, evaluate_macro, plan_macro, serial_baseline, valid_hz_values
from oqftsim.microsim import aggregate_runs, run_adder, schedule_template
from oqftsim.microsim.stats import volume_crossover_extrapolation
from oqftsim.params import SystemParams, move_time, reach_spans

P = SystemParams()
SEEDS = range(20)
WIDTHS = range(2, 33)


def check(name: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def micro_campaign():
    t0 = time.monotonic()
    runs = {}
    for variant in ("gidney", "cuccaro"):
        for w in WIDTHS:
            runs[(variant, w, False)] = [run_adder(variant, w, False, s, P) for s in SEEDS]
    for w in (8, 32):
        runs[("gidney", w, True)] = [run_adder("gidney", w, True, s, P) for s in SEEDS]
    return runs, time.monotonic() - t0


def test_movement_model():
    t0 = time.monotonic()
    t_move = move_time(1.0, P)
    reach = reach_spans(P)
    elapsed = time.monotonic() - t0
    check("movement: one-span hop time 362 +/- 1 us",
          abs(t_move - 362e-6) <= 1e-6, f"{t_move * 1e6:.2f} us")
    check("movement: per-tick reach ~ 7.6 spans",
          round(reach, 1) == 7.6, f"{reach:.4f}")
    check("movement: runtime < 1 s", elapsed < 1.0, f"{elapsed:.3f} s")


def test_oracle_identities():
    t0 = time.monotonic()
    pg_worst = max(oracle.pg_catalysis_phase(k, a)[1]
                   for k in range(1, 7) for a in range(2**k))
    check("oracle: PG catalysis deviation < 1e-10, exhaustive k <= 6",
          pg_worst < 1e-10, f"worst {pg_worst:.2e}")
    phase_ok = all(
        cmath.isclose(oracle.pg_catalysis_phase(k, a)[0],
                      cmath.exp(-2j * math.pi * a / 2**k), abs_tol=1e-10)
        for k in range(1, 7) for a in range(2**k))
    check("oracle: PG catalysis phase equals e^{-2 pi i a / 2^k}", phase_ok)
    for n, m in ((4, 2), (6, 3), (6, 2)):
        dev = oracle.check_block_decomposition(n, m)
        check(f"oracle: block/BPR decomposition exact at (n={n}, m={m})",
              dev < 1e-10, f"{dev:.2e}")
    dev = oracle.check_pg_qft_circuit(8, 3)
    check("oracle: PG-QFT circuit (n=8, cutoff 3) deviation < 1e-9",
          dev < 1e-9, f"{dev:.2e}")
    refl = max(oracle.reflected_pg_qft_deviation(n, 3) for n in (2, 4, 6))
    check("oracle: reflected-QFT equivalence at n <= 6",
          refl < 1e-10, f"worst {refl:.2e}")
    elapsed = time.monotonic() - t0
    check("oracle: runtime < 2 min", elapsed < 120.0, f"{elapsed:.1f} s")


def test_census():
    t0 = time.monotonic()
    exact_ok = all(census.qft_spectrum(n).total == n * (n - 1) // 2
                   for n in (2, 8, 64, 256, 1024))
    check("census: textbook total n(n-1)/2 exact", exact_ok)
    total = census.qft_spectrum(256, cutoff_k=32).total
    check("census: truncated total at (n=256, cutoff 32) = 7440",
          total == 7440, str(total))
    ratios = {n: census.oqft_plan(n, 32).spectrum().total
                 / census.qft_spectrum(n, cutoff_k=32).total
              for n in (256, 512, 1024, 2048)}
    check("census: OQFT rotation overhead in [1.30, 1.55] for n in 256..2048",
          all(1.30 <= r <= 1.55 for r in ratios.values()),
          " ".join(f"{n}:{r:.3f}" for n, r in ratios.items()))
    ordering_ok = True
    for n in (64, 128, 256, 512, 1024, 2048):
        eps = 1e-5 / n
        synth = census.tcount_synthesis(census.qft_spectrum(n), eps).t_gates
        pg_qft = census.tcount_pg(census.qft_spectrum(n, cutoff_k=32), "truncated_qft").t_gates
        pg_oqft = census.tcount_pg(census.oqft_plan(n, 32), "oqft_plan").t_gates
        ordering_ok &= pg_qft < synth and pg_oqft < synth
    check("census: PG T-counts strictly below synthesized textbook at n >= 64",
          ordering_ok)
    budget = census.shor_budget(2048).total_t
    check("census: factoring budget order of magnitude in [1e9, 1e11]",
          1e9 <= budget <= 1e11, f"{budget:.2e}")
    elapsed = time.monotonic() - t0
    check("census: runtime < 1 min", elapsed < 60.0, f"{elapsed:.1f} s")


def test_schedule_depths():
    g = schedule_template("gidney")
    c = schedule_template("cuccaro")
    check("schedule: gidney MAJ/UMA depths exactly 11 / 4.5",
          g.maj_weight == 11.0 and g.uma_weight == 4.5,
          f"{g.maj_weight}/{g.uma_weight}")
    check("schedule: cuccaro MAJ/UMA depths exactly 12 / 12",
          c.maj_weight == 12.0 and c.uma_weight == 12.0,
          f"{c.maj_weight}/{c.uma_weight}")


def test_micro_sim(micro_campaign):
    runs, campaign_s = micro_campaign
    peak_ok = all(r.peak_dof <= 32
                  for w in WIDTHS for r in runs[("gidney", w, False)])
    check("micro: gidney peak DOF <= 32 at every width <= 32 (every seed)", peak_ok)
    stall_ok = all(r.stalled_ticks == 0
                   for v in ("gidney", "cuccaro") for w in WIDTHS
                   for r in runs[(v, w, False)])
    check("micro: stall-free at default resources (both variants)", stall_ok)
    fp_ok = all(runs[("gidney", w, False)][0].footprint_patches
                == runs[("cuccaro", w, False)][0].footprint_patches
                for w in WIDTHS)
    check("micro: footprint equality across variants at equal width", fp_ok)

    mean_ticks = {(v, w): st.fmean(r.total_ticks for r in runs[(v, w, False)])
                  for v in ("gidney", "cuccaro") for w in WIDTHS}
    t_ratio32 = mean_ticks[("cuccaro", 32)] / mean_ticks[("gidney", 32)]
    check("micro: cuccaro/gidney time ratio at w=32 in [1.1, 1.35]",
          1.1 <= t_ratio32 <= 1.35, f"{t_ratio32:.3f}")

    vols = {v: {w: aggregate_runs(runs[(v, w, False)], P).volume for w in (8, 16, 32)}
            for v in ("gidney", "cuccaro")}
    r8 = vols["cuccaro"][8] / vols["gidney"][8]
    r32 = vols["cuccaro"][32] / vols["gidney"][32]
    check("micro: volume ratio at w=8 in 1.8 +/- 0.3", 1.5 <= r8 <= 2.1, f"{r8:.3f}")
    check("micro: volume ratio at w=32 in 1.2 +/- 0.3", 0.9 <= r32 <= 1.5, f"{r32:.3f}")
    w_star = volume_crossover_extrapolation(vols["gidney"], vols["cuccaro"])
    check("micro: volume crossover extrapolates into [48, 160]",
          48 <= w_star <= 160, f"{w_star:.1f}")

    fd32 = st.fmean(r.factory_to_compute_avg_spans for r in runs[("gidney", 32, False)])
    fd8 = st.fmean(r.factory_to_compute_avg_spans for r in runs[("gidney", 8, False)])
    check("micro: factory-to-compute distance at w=32 in [8, 16] spans",
          8.0 <= fd32 <= 16.0, f"{fd32:.2f}")
    check("micro: factory-to-compute distance at w=8 below 6 spans",
          fd8 < 6.0, f"{fd8:.2f}")

    ctrl_dof = st.fmean(r.avg_dof for r in runs[("gidney", 32, True)])
    check("micro: controlled-adder average DOF at w=32 in [10, 20]",
          10.0 <= ctrl_dof <= 20.0, f"{ctrl_dof:.2f}")
    check("micro: campaign runtime < 10 min", campaign_s < 600.0, f"{campaign_s:.1f} s")


def test_hl_model(micro_campaign):
    runs, _ = micro_campaign
    x = hl_crossover("gidney_ripple", "gidney_lookahead", (8, 512), P)
    check("hl: ripple-vs-lookahead crossover within [64, 256] bits",
          x is not None and 64 <= x <= 256, str(x))
    ok = True
    factors = {}
    for w in (8, 16):
        agg = aggregate_runs(runs[("gidney", w, False)], P)
        factor = agg.volume / hl_optimal("gidney_ripple", w, P).volume
        factors[w] = factor
        ok &= 1.5 <= factor <= 6.0
    check("hl: adapted-HL underestimation factor in [1.5, 6] at w in {8, 16}",
          ok, " ".join(f"w{w}:{f:.2f}" for w, f in factors.items()))


def test_macro_evaluator():
    t0 = time.monotonic()
    table = StatsTable.bundled()
    sizes = (256, 512, 1024, 2048)
    base = {n: serial_baseline(n, table, P) for n in sizes}
    res = {(n, hz): evaluate_macro(plan_macro(n, 32, hz), table, P)
           for n in sizes for hz in valid_hz_values(n, 32)}

    ok2 = all(abs(res[(n, 2)].time_s - base[n].time_s) <= 0.20 * base[n].time_s
              for n in sizes)
    check("macro: hz=2 within +/-20% of serial baseline at every n", ok2,
          " ".join(f"{n}:{res[(n, 2)].time_s / base[n].time_s:.2f}" for n in sizes))
    ok4 = all(0.4 * base[n].time_s <= res[(n, 4)].time_s <= 0.6 * base[n].time_s
              for n in sizes)
    check("macro: hz=4 time in [0.4, 0.6] x baseline", ok4,
          " ".join(f"{n}:{res[(n, 4)].time_s / base[n].time_s:.2f}" for n in sizes))

    tmax = [res[(n, max(valid_hz_values(n, 32)))].time_s for n in sizes]
    mean_tmax = st.fmean(tmax)
    check("macro: hz=max time constant across n within +/-15%",
          all(abs(t - mean_tmax) <= 0.15 * mean_tmax for t in tmax),
          " ".join(f"{t:.2f}" for t in tmax))

    r4 = res[(256, 4)]
    check("macro: hz=4 peak DOF = 128 exactly, baseline peak = 32",
          r4.peak_dof == 128 and base[256].peak_dof == 32,
          f"{r4.peak_dof}/{base[256].peak_dof}")
    anc_ok = all(400 <= res[(n, 4)].ancilla_overhead <= 700 for n in sizes)
    dof_ok = all(32 <= res[(n, 4)].avg_dof <= 60 for n in sizes)
    check("macro: hz=4 ancilla overhead in [400, 700]", anc_ok,
          str(r4.ancilla_overhead))
    check("macro: hz=4 average DOF in [32, 60]", dof_ok, f"{r4.avg_dof:.1f}")
    check("macro: OQFT(256, hz=4) time in [5, 15] s",
          5.0 <= r4.time_s <= 15.0, f"{r4.time_s:.2f} s")

    doubling_ok = True
    worst = None
    for n in sizes:
        hz_values = valid_hz_values(n, 32)
        for hz, nxt in zip(hz_values, hz_values[1:]):
            ratio = res[(n, hz)].time_s / res[(n, nxt)].time_s
            doubling_ok &= 1.7 <= ratio <= 2.1
            if worst is None or abs(ratio - 1.9) > abs(worst - 1.9):
                worst = ratio
    check("macro: hz-doubling speedup in [1.7, 2.1] below saturation",
          doubling_ok, f"extreme {worst:.2f}")
    elapsed = time.monotonic() - t0
    check("macro: runtime < 1 min given a statistics table",
          elapsed < 60.0, f"{elapsed:.1f} s")


def test_determinism(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dof_cap = 40\n")
    for out in (out1, out2):
        rc = cli_main(["--config", str(cfg), "--out", str(out), "adder",
                       "--variant", "cuccaro", "--width", "8,16",
                       "--seeds", "6", "--trace"])
        assert rc == 0
        rc = cli_main(["--config", str(cfg), "--out", str(out), "oqft",
                       "--n", "256,512", "--hz", "all"])
        assert rc == 0
    names = ["adder_stats.csv", "oqft_sweep.csv"] + \
            [p.name for p in out1.glob("trace_*.jsonl")]
    same = all((out1 / n).read_bytes() == (out2 / n).read_bytes() for n in names)
    check("determinism: identical (config, seed) reproduces byte-identical outputs",
          same, f"{len(names)} files compared")
