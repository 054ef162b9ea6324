"""Command-line surface: census | oracle-check | hl | adder | oqft | frames.

Every subcommand writes its outputs plus a run manifest into --out. Exit
codes: 0 success, 1 usage error, 2 validation failure, 3 simulation abort.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census as census_mod
from . import hlmodel, macro, oracle
from .io import ConfigError, parse_config, write_csv, write_lines, write_manifest
from .microsim import EngineConfig, SimulationAbort, aggregate_runs, run_adder
from .microsim.stats import stats_rows
from .microsim.trace import export_trace
from .params import SystemParams, validate_params

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_ABORT = 3

DEFAULT_SIZES = (256, 512, 1024, 2048)


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_seeds(text: str) -> list[int]:
    values = _parse_int_list(text)
    if len(values) == 1 and "," not in text:
        return list(range(values[0]))
    return values


def _load_params(args) -> tuple[SystemParams, dict]:
    if args.config:
        return parse_config(args.config)
    return SystemParams(), {}


def _engine_config(knobs: dict) -> EngineConfig:
    kwargs = {}
    if "buffer_t_states" in knobs:
        kwargs["buffer_t_states"] = knobs["buffer_t_states"]
    if "distance_metric" in knobs:
        kwargs["distance_metric"] = knobs["distance_metric"]
    if "controlled_fanout_weight" in knobs:
        kwargs["controlled_fanout_weight"] = knobs["controlled_fanout_weight"]
    return EngineConfig(**kwargs)


def _cmd_census(args, p: SystemParams, knobs: dict, out: Path) -> int:
    sizes = _parse_int_list(args.n) if args.n else list(DEFAULT_SIZES)
    m = args.m
    spectra: list[dict] = []
    tcounts: list[dict] = []
    for n in sizes:
        spec_full = census_mod.qft_spectrum(n)
        spectra += census_mod.spectrum_rows("textbook", spec_full)
        eps = 1e-5 / n
        tcounts += census_mod.tcount_rows(
            "qft_synth", n, census_mod.tcount_synthesis(spec_full, eps))
        if n > m:
            spec_trunc = census_mod.qft_spectrum(n, cutoff_k=m)
            spectra += census_mod.spectrum_rows("truncated", spec_trunc)
            tcounts += census_mod.tcount_rows(
                "qft_pg", n, census_mod.tcount_pg(spec_trunc, "truncated_qft"))
        if n % m == 0 and n // m >= 2:
            plan = census_mod.oqft_plan(n, m)
            spectra += census_mod.spectrum_rows("oqft", plan.spectrum())
            tcounts += census_mod.tcount_rows(
                "oqft_synth", n, census_mod.tcount_synthesis(plan.spectrum(), eps))
            tcounts += census_mod.tcount_rows(
                "oqft_pg", n, census_mod.tcount_pg(plan, "oqft_plan"))
    outputs = [
        write_csv(out / "census_spectra.csv", spectra, ["variant", "n", "k", "count"]),
        write_csv(out / "census_tcounts.csv", tcounts, ["variant", "n", "t_gates", "toffolis"]),
    ]
    write_manifest(out, "census", p, [], outputs, knobs)
    print(f"census: wrote {len(spectra)} spectrum rows, {len(tcounts)} t-count rows")
    return EXIT_OK


def _cmd_oracle_check(args, p: SystemParams, knobs: dict, out: Path) -> int:
    checks: list[tuple[str, float, float]] = []   # (name, value, bound)
    for k in range(1, 7):
        worst = max(oracle.pg_catalysis_phase(k, a)[1] for a in range(2**k))
        checks.append((f"pg_catalysis_k{k}", worst, 1e-10))
    for n, m in ((4, 2), (6, 3), (6, 2)):
        checks.append((f"block_decomposition_{n}_{m}",
                       oracle.check_block_decomposition(n, m), 1e-10))
    checks.append(("pg_qft_circuit_8_3", oracle.check_pg_qft_circuit(8, 3), 1e-9))
    checks.append(("pg_qft_circuit_4_3", oracle.check_pg_qft_circuit(4, 3), 1e-9))
    for n in (4, 6):
        checks.append((f"reflected_qft_{n}",
                       oracle.reflected_pg_qft_deviation(n, 3), 1e-10))
    rows = []
    ok = True
    for name, value, bound in checks:
        passed = value < bound
        ok = ok and passed
        rows.append({"check": name, "deviation": value, "bound": bound,
                     "passed": int(passed)})
        print(f"{'PASS' if passed else 'FAIL'} {name}: {value:.3e} (< {bound:g})")
    frob = [{"n": 8, "cutoff": c,
             "frobenius_error": oracle.frobenius_distance(
                 oracle.qft_unitary(8), oracle.qft_unitary(8, cutoff_k=c))}
            for c in range(2, 9)]
    outputs = [
        write_csv(out / "oracle_checks.csv", rows),
        write_csv(out / "oracle_truncation.csv", frob, ["n", "cutoff", "frobenius_error"]),
    ]
    write_manifest(out, "oracle-check", p, [], outputs, knobs)
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_hl(args, p: SystemParams, knobs: dict, out: Path) -> int:
    sizes = _parse_int_list(args.n) if args.n else [8, 16, 32, 64, 128, 256, 512]
    rows = hlmodel.hl_sweep_rows(sizes, p)
    outputs = [write_csv(out / "hl_sweep.csv", rows,
                         ["family", "n", "factories_opt", "footprint", "time_s", "volume"])]
    write_manifest(out, "hl", p, [], outputs, knobs)
    xover = hlmodel.hl_crossover("gidney_ripple", "gidney_lookahead",
                                 (min(sizes), max(sizes)), p)
    print(f"hl: {len(rows)} rows; ripple->lookahead crossover at n={xover}")
    return EXIT_OK


def _cmd_adder(args, p: SystemParams, knobs: dict, out: Path) -> int:
    widths = _parse_int_list(args.width) if args.width else [32]
    seeds = _parse_seeds(args.seeds)
    if len(seeds) < 2:
        print("adder: need at least two seeds to aggregate", file=sys.stderr)
        return EXIT_VALIDATION
    cfg = _engine_config(knobs)
    rows: list[dict] = []
    outputs: list[Path] = []
    for w in widths:
        runs = []
        for seed in seeds:
            result = run_adder(args.variant, w, args.controlled, seed, p, cfg,
                               capture_trace=args.trace and seed == seeds[0])
            if args.trace and seed == seeds[0]:
                stats, trace = result
                trace_path = write_lines(
                    out / f"trace_{args.variant}_w{w:02d}_s{seed}.jsonl",
                    export_trace(trace))
                outputs.append(trace_path)
            else:
                stats = result
            runs.append(stats)
        rows += stats_rows(aggregate_runs(runs, p))
    outputs.insert(0, write_csv(out / "adder_stats.csv", rows, list(rows[0].keys())))
    write_manifest(out, "adder", p, seeds, outputs, knobs)
    print(f"adder: {args.variant} widths={widths} seeds={len(seeds)} -> adder_stats.csv")
    return EXIT_OK


def _cmd_oqft(args, p: SystemParams, knobs: dict, out: Path) -> int:
    sizes = _parse_int_list(args.n) if args.n else list(DEFAULT_SIZES)
    hz_values = None if args.hz in (None, "all") else _parse_int_list(args.hz)
    table = macro.StatsTable.load(args.stats) if args.stats else macro.StatsTable.bundled()
    rows = macro.sweep_macro(sizes, hz_values, table, p, m=args.m)
    outputs = [write_csv(out / "oqft_sweep.csv", rows,
                         ["n", "hz", "time_s", "footprint", "volume",
                          "avg_dof", "peak_dof", "ancilla_overhead"])]
    write_manifest(out, "oqft", p, [], outputs, knobs)
    print(f"oqft: {len(rows)} rows (stats: {table.provenance})")
    return EXIT_OK


def _cmd_frames(args, p: SystemParams, knobs: dict, out: Path) -> int:
    trace_path = Path(args.trace_file)
    if not trace_path.exists():
        print(f"frames: trace file not found: {trace_path}", file=sys.stderr)
        return EXIT_VALIDATION
    lines = trace_path.read_text().splitlines()
    header = json.loads(lines[0])
    rows = []
    for line in lines[1:]:
        rec = json.loads(line)
        for q in rec["qubits"]:
            rows.append({
                "tick": rec["tick"], "id": q["id"], "role": q["role"],
                "col": q["col"], "row": q["row"], "status": q["status"],
                "remaining": q.get("remaining", 0),
                "dest_col": q.get("dest_col", -1), "dest_row": q.get("dest_row", -1),
            })
    outputs = [write_csv(out / "frames.csv", rows,
                         ["tick", "id", "role", "col", "row", "status",
                          "remaining", "dest_col", "dest_row"])]
    write_manifest(out, "frames", p, [header.get("seed", 0)], outputs, knobs)
    print(f"frames: {len(rows)} records from {trace_path.name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oqftsim",
        description="Resource co-design simulator for optimistic QFTs "
                    "on surface-code neutral-atom hardware.")
    parser.add_argument("--config", help="flat key=value parameter file")
    parser.add_argument("--out", default="out", help="output directory")
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("census", help="rotation spectra and T-count tables")
    sp.add_argument("--n", help="comma-separated register sizes")
    sp.add_argument("--m", type=int, default=32, help="block size / cutoff")

    sub.add_parser("oracle-check", help="statevector identity suite")

    sp = sub.add_parser("hl", help="high-level adder volume sweep")
    sp.add_argument("--n", help="comma-separated adder sizes")

    sp = sub.add_parser("adder", help="micro-sim campaign for one variant")
    sp.add_argument("--variant", choices=("gidney", "cuccaro"), default="gidney")
    sp.add_argument("--width", help="comma-separated bit widths (default 32)")
    sp.add_argument("--seeds", default="20", help="seed count N or comma list")
    sp.add_argument("--controlled", action="store_true")
    sp.add_argument("--trace", action="store_true",
                    help="export a tick trace for the first seed")

    sp = sub.add_parser("oqft", help="integrated OQFT macro sweep")
    sp.add_argument("--n", help="comma-separated register sizes")
    sp.add_argument("--m", type=int, default=32)
    sp.add_argument("--hz", help="comma-separated hot-zone counts or 'all'")
    sp.add_argument("--stats", help="adder statistics CSV (default: bundled)")

    sp = sub.add_parser("frames", help="convert a tick trace to frame records")
    sp.add_argument("--trace", dest="trace_file", required=True)
    return parser


_HANDLERS = {
    "census": _cmd_census,
    "oracle-check": _cmd_oracle_check,
    "hl": _cmd_hl,
    "adder": _cmd_adder,
    "oqft": _cmd_oqft,
    "frames": _cmd_frames,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if not args.command:
        parser.print_usage()
        return EXIT_USAGE
    try:
        p, knobs = _load_params(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    report = validate_params(p)
    if not report.ok:
        print("invalid parameters: " + "; ".join(report.violations), file=sys.stderr)
        return EXIT_VALIDATION
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        return _HANDLERS[args.command](args, p, knobs, out)
    except SimulationAbort as exc:
        print(f"simulation abort: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
