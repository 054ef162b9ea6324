"""Configuration parsing, deterministic CSV output, and run manifests."""
from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import time
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from .params import FIELD_NAMES, SystemParams, validate_params

# Keys accepted in a config file beyond the SystemParams fields.
KNOWN_KNOBS = {
    "distance_metric": str,      # euclidean | manhattan grid moves
    "buffer_t_states": int,      # staged T inventory of a hot zone
    "synthesis_a": float,        # rotation-synthesis T-count intercept
    "synthesis_b": float,        # rotation-synthesis T-count slope
    "controlled_fanout_weight": float,
    "inserted_qft_count_offset": int,   # inserted small QFTs = B - 2 + offset
}

_INT_FIELDS = {"d", "f_cult", "cult_mean_ticks", "dof_cap"}


class ConfigError(ValueError):
    pass


def parse_config(path: str | Path) -> tuple[SystemParams, dict]:
    """Read a flat ``key = value`` config file.

    Empty files yield the defaults. Unknown keys are rejected; a parameter
    set that violates its invariants is rejected with the report text.
    """
    params_kw: dict = {}
    knobs: dict = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if key in FIELD_NAMES:
            try:
                params_kw[key] = int(value) if key in _INT_FIELDS else float(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
        elif key in KNOWN_KNOBS:
            caster = KNOWN_KNOBS[key]
            try:
                knobs[key] = caster(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    params = SystemParams(**params_kw)
    report = validate_params(params)
    if not report.ok:
        raise ConfigError(f"{path}: invalid parameters: " + "; ".join(report.violations))
    return params, knobs


def params_hash(p: SystemParams, knobs: dict | None = None) -> str:
    """Deterministic hash of a canonicalized parameter set."""
    payload = {name: getattr(p, name) for name in FIELD_NAMES}
    if knobs:
        payload.update({f"knob:{k}": v for k, v in sorted(knobs.items())})
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_csv(path: str | Path, rows: list[dict], columns: list[str] | None = None) -> Path:
    """Write rows with a stable column order and deterministic bytes.

    Re-running with identical rows reproduces the file byte for byte; floats
    round-trip at 12 significant digits.
    """
    path = Path(path)
    if columns is None:
        if not rows:
            raise ValueError("cannot infer a header from zero rows")
        columns = list(rows[0].keys())
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_value(row[c]) for c in columns])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(buf.getvalue())
    return path


def read_csv(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_lines(path: str | Path, lines: list[str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


@dataclass
class RunManifest:
    command: str
    params_hash: str
    seeds: list[int]
    code_version: str
    timestamp: str
    outputs: list[str]


def write_manifest(out_dir: str | Path, command: str, p: SystemParams,
                   seeds: list[int], outputs: list[Path], knobs: dict | None = None) -> Path:
    from . import __version__

    manifest = RunManifest(
        command=command,
        params_hash=params_hash(p, knobs),
        seeds=list(seeds),
        code_version=__version__,
        timestamp=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        outputs=[str(Path(o).name) for o in outputs],
    )
    path = Path(out_dir) / f"manifest_{command}.json"
    path.write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")
    return path
