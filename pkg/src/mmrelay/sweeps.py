"""Scenario files, sweep grids and CSV emission.

Configuration files are plain text with ``key = value`` lines, ``#``
comments and three optional sections::

    [scenario]    # ScenarioConfig fields; omitted fields keep defaults
    n_ues = 10
    q_u = 0.5

    [sweep]       # up to two swept ScenarioConfig fields
    n_ues = 1:15             # inclusive range, optional :step
    q_u = 0.1, 0.5, 0.9      # explicit list
    outputs = t_total, q_r_min   # optional subset of metric columns

    [simulation]
    simulate = true
    n_slots = 1000000
    seed = 1
    mode = decoupled

``run_sweep`` evaluates the analytical model at every grid point (axis 1
outer, axis 2 inner), optionally simulates each point, and never aborts
the grid: per-point failures land in the ``error`` column. Floats are
printed with 9 significant digits and identical spec + seed reruns are
byte-identical.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .geometry import ScenarioConfig
from .success import SuccessTable
from .throughput import aggregate_throughput

_SCENARIO_FIELDS = {f.name for f in fields(ScenarioConfig)}
_INT_FIELDS = {"n_ues"}

# Single-field domains for sweep-axis validation. Cross-field constraints
# (e.g. the BR beam covering both receivers) are checked per grid point at
# run time and recorded in the `error` column instead of aborting the grid.
_FIELD_DOMAINS = {
    "n_ues": lambda v: isinstance(v, int) and v >= 1,
    "q_u": lambda v: 0.0 <= v <= 1.0,
    "q_uf": lambda v: 0.0 <= v <= 1.0,
    "q_ur": lambda v: 0.0 <= v <= 1.0,
    "q_r": lambda v: 0.0 <= v <= 1.0,
    "alpha": lambda v: 0.0 <= v <= 1.0,
    "f_c_ghz": lambda v: v > 0.0,
    "h_ap_m": lambda v: v > 0.0,
    "h_ue_m": lambda v: v > 0.0,
    "d_ur_m": lambda v: v > 0.0,
    "d_ud_m": lambda v: v > 0.0,
    "theta_rd_deg": lambda v: 0.0 < v < 180.0,
    "theta_bw_fd_deg": lambda v: 0.0 < v <= 360.0,
    "theta_bw_br_deg": lambda v: 0.0 < v <= 360.0,
    "gamma_db": lambda v: True,
    "p_t_dbm": lambda v: True,
    "p_n_dbm": lambda v: True,
}

STANDARD_METRICS = ("regime", "q_r_min", "lambda0", "lambda1", "mu_r",
                    "p_empty", "t_ud", "t_ur", "t_total")
SIM_METRICS = ("t_sim", "t_sim_se", "t_sim_z")


class ConfigError(ValueError):
    """Configuration file problem, with the offending line number."""


@dataclass(frozen=True)
class SweepSpec:
    """A base scenario plus up to two swept parameters and sim options."""

    base: ScenarioConfig
    axes: tuple[tuple[str, tuple], ...] = ()
    outputs: tuple[str, ...] = STANDARD_METRICS
    simulate: bool = False
    n_slots: int = 1_000_000
    seed: int = 0
    mode: str = "decoupled"

    def grid(self) -> list[dict]:
        """Field overrides per grid point, axis 1 outer, axis 2 inner."""
        if not self.axes:
            return [{}]
        if len(self.axes) == 1:
            name, values = self.axes[0]
            return [{name: v} for v in values]
        (n1, v1), (n2, v2) = self.axes
        return [{n1: a, n2: b} for a in v1 for b in v2]


def _parse_scalar(field: str, text: str, lineno: int):
    try:
        if field in _INT_FIELDS:
            return int(text)
        return float(text)
    except ValueError:
        raise ConfigError(
            f"line {lineno}: value {text!r} for {field!r} is not numeric") from None


def _parse_values(field: str, text: str, lineno: int) -> tuple:
    """A comma list or an inclusive start:stop[:step] range."""
    if "," in text:
        return tuple(_parse_scalar(field, part.strip(), lineno)
                     for part in text.split(","))
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ConfigError(f"line {lineno}: bad range {text!r}, "
                              "expected start:stop[:step]")
        start = _parse_scalar(field, parts[0].strip(), lineno)
        stop = _parse_scalar(field, parts[1].strip(), lineno)
        step = (_parse_scalar(field, parts[2].strip(), lineno)
                if len(parts) == 3 else (1 if field in _INT_FIELDS else 1.0))
        if step <= 0 or stop < start:
            raise ConfigError(f"line {lineno}: bad range {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        # round away accumulated step noise (0.1 * 6 -> 0.6000000000000001)
        vals = tuple(round(start + i * step, 10) for i in range(count))
        if field in _INT_FIELDS:
            vals = tuple(int(v) for v in vals)
        return vals
    return (_parse_scalar(field, text, lineno),)


def _parse_bool(text: str, lineno: int) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"line {lineno}: expected a boolean, got {text!r}")


def load_config(path: str) -> SweepSpec:
    """Parse a scenario/sweep file; every problem names its line number."""
    scenario: dict = {}
    scenario_lines: dict[str, int] = {}
    axes: list[tuple[str, tuple]] = []
    outputs: tuple[str, ...] = STANDARD_METRICS
    sim: dict = {}
    section = "scenario"
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip().lower()
                if section not in ("scenario", "sweep", "simulation"):
                    raise ConfigError(f"line {lineno}: unknown section [{section}]")
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: malformed line {raw.strip()!r}, "
                                  "expected key = value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not value:
                raise ConfigError(f"line {lineno}: missing value for {key!r}")
            if section == "scenario":
                if key not in _SCENARIO_FIELDS:
                    raise ConfigError(f"line {lineno}: unknown key {key!r} "
                                      "in [scenario]")
                scenario[key] = _parse_scalar(key, value, lineno)
                scenario_lines[key] = lineno
            elif section == "sweep":
                if key == "outputs":
                    requested = tuple(p.strip() for p in value.split(","))
                    bad = [m for m in requested if m not in STANDARD_METRICS]
                    if bad:
                        raise ConfigError(f"line {lineno}: unknown metric(s) "
                                          f"{bad} in outputs")
                    outputs = requested
                    continue
                if key not in _SCENARIO_FIELDS:
                    raise ConfigError(f"line {lineno}: unknown sweep parameter "
                                      f"{key!r}")
                if any(name == key for name, _ in axes):
                    raise ConfigError(f"line {lineno}: parameter {key!r} "
                                      "swept twice")
                if len(axes) == 2:
                    raise ConfigError(f"line {lineno}: at most two sweep axes "
                                      "are supported")
                vals = _parse_values(key, value, lineno)
                if not vals:
                    raise ConfigError(f"line {lineno}: empty value list")
                axes.append((key, vals))
            else:  # simulation
                if key == "simulate":
                    sim["simulate"] = _parse_bool(value, lineno)
                elif key in ("n_slots", "seed"):
                    try:
                        sim[key] = int(value)
                    except ValueError:
                        raise ConfigError(f"line {lineno}: {key} must be an "
                                          f"integer, got {value!r}") from None
                elif key == "mode":
                    if value not in ("decoupled", "physical"):
                        raise ConfigError(f"line {lineno}: mode must be "
                                          "'decoupled' or 'physical'")
                    sim["mode"] = value
                else:
                    raise ConfigError(f"line {lineno}: unknown key {key!r} "
                                      "in [simulation]")
    try:
        base = ScenarioConfig(**scenario)
    except (TypeError, ValueError) as exc:
        # Attribute the domain error to the last scenario line that set it.
        msg = str(exc)
        lineno = next((scenario_lines[k] for k in scenario_lines
                       if k in msg), None)
        where = f"line {lineno}: " if lineno is not None else ""
        raise ConfigError(f"{where}{msg}") from None
    # Swept values must lie in their own field's domain; constraints that
    # couple several fields are deferred to per-point evaluation.
    for name, values in axes:
        for v in values:
            if not _FIELD_DOMAINS[name](v):
                raise ConfigError(f"sweep value {v!r} for {name!r} is outside "
                                  "the field's domain")
    return SweepSpec(base=base, axes=tuple(axes), outputs=outputs, **sim)


def _format(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".9g")


def evaluate_point(cfg: ScenarioConfig) -> dict:
    """All standard analytical metrics for one scenario point."""
    table = SuccessTable(cfg)
    report = aggregate_throughput(cfg, table)
    q = report.queue
    return {
        "regime": report.regime,
        "q_r_min": q.q_r_min,
        "lambda0": q.lambda0,
        "lambda1": q.lambda1,
        "mu_r": q.mu_r,
        "p_empty": q.p_empty_prob,
        "t_ud": report.t_ud,
        "t_ur": report.t_ur,
        "t_total": report.t_aggregate,
    }


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _run_point(args) -> dict:
    spec, index, overrides = args
    row = {name: overrides[name] for name, _ in spec.axes}
    row["error"] = ""
    try:
        cfg = spec.base.replace(**overrides)
        row.update(evaluate_point(cfg))
        if spec.simulate:
            from .simulator import run as sim_run
            stats = sim_run(cfg, spec.n_slots, _point_seed(spec.seed, index),
                            spec.mode)
            row["t_sim"] = stats.t_sim
            row["t_sim_se"] = stats.t_sim_se
            se = stats.t_sim_se
            diff = stats.t_sim - row["t_total"]
            if not math.isnan(se) and se > 0.0:
                row["t_sim_z"] = diff / se
            else:
                row["t_sim_z"] = 0.0 if abs(diff) <= 1e-9 else math.inf
    except ValueError as exc:
        row["error"] = str(exc)
    return row


def sweep_columns(spec: SweepSpec) -> list[str]:
    cols = [name for name, _ in spec.axes]
    cols.extend(spec.outputs)
    if spec.simulate:
        cols.extend(SIM_METRICS)
    cols.append("error")
    return cols


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    """Evaluate the whole grid; rows come back in grid order."""
    points = [(spec, i, overrides) for i, overrides in enumerate(spec.grid())]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_point, points))
    return [_run_point(p) for p in points]


def write_csv(spec: SweepSpec, rows: list[dict], stream: io.TextIOBase) -> None:
    cols = sweep_columns(spec)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_format(row.get(c, "")) for c in cols])


def sweep_to_csv(spec: SweepSpec, path: str, jobs: int = 1) -> list[dict]:
    rows = run_sweep(spec, jobs=jobs)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_csv(spec, rows, fh)
    return rows
