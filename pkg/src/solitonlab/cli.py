"""Experiment runner: config parsing, subcommands, suite orchestration.

Configs are line-oriented ``key = value`` files with optional ``[section]``
headers (bare keys count as the [experiment] section); unknown keys and
out-of-range values are rejected with their line number. Reports are JSON
(with per-grid-point rows), bulk data goes to CSV with a fixed column set,
and re-running any subcommand with the same config and seed reproduces the
outputs byte for byte (a timestamp field is excluded from the config hash).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import hashlib
import json
import math
import os
import sys
import time
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import __version__, entropy, kernels, spectral, verify
from .exceptions import ConfigError, SolitonLabError
from .spaces import check_soliton_identities, parse_space

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2

CSV_COLUMNS = ["theorem_id", "space", "a", "x_id", "y_id", "t", "lhs", "rhs", "slack", "ratio"]

THEOREM_IDS = (
    "kernel-axioms", "ultracontractivity", "gaussian-bound", "cr-bound",
    "green-bound", "eigenvalue-bound", "log-sobolev", "sobolev",
    "energy-monotonicity", "weighted-energy", "grigoryan-constants",
)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    """Validated experiment configuration; the unit of reproducibility."""

    space: str = "gaussian:3"
    a: float = 0.25
    seed: int = 0
    method: str = "auto"
    series_eps: float = 1e-12
    t_min: float = 1e-3
    r_max: float = 40.0
    m: int = 4096
    t0: float = 1e-3
    time_tol: float = 1e-4
    pairs: int = 24
    times: int = 40
    t_low: float = 1e-3
    t_high: float = 1e2
    c_values: tuple = (4.5, 5.0, 8.0, 16.0)
    tau_points: int = 20
    tau_low: float = 1e-2
    tau_high: float = 10.0
    big_d: float = 10.0
    gamma: float = 2.0
    k_max: int = 400
    trials: int = 100
    probe_r_max: float = 8.0
    probe_m: int = 512
    probe_dt: float = 5e-4
    tol_analytic: float = 1e-6
    tol_fd: float = 1e-3
    json_path: str | None = None
    csv_dir: str | None = None

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["c_values"] = list(self.c_values)
        return d

    def sha256(self) -> str:
        # output paths are not part of the scientific configuration
        d = self.to_dict()
        d.pop("json_path", None)
        d.pop("csv_dir", None)
        blob = json.dumps(d, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def time_grid(self) -> np.ndarray:
        return np.geomspace(self.t_low, self.t_high, self.times)

    def tau_grid(self) -> np.ndarray:
        return np.geomspace(self.tau_low, self.tau_high, self.tau_points)


# (section, key) -> (field, parser, validator description)
def _positive(x):
    return x > 0


def _nonneg(x):
    return x >= 0


_SCHEMA = {
    ("experiment", "space"): ("space", "str", lambda s: True),
    ("experiment", "a"): ("a", "float", _nonneg),
    ("experiment", "seed"): ("seed", "int", _nonneg),
    ("method", "kind"): ("method", "str",
                         lambda s: s in ("auto", "closed_form", "spectral_series", "fd_dirichlet")),
    ("method", "series_eps"): ("series_eps", "float", _positive),
    ("method", "t_min"): ("t_min", "float", _positive),
    ("method", "r_max"): ("r_max", "float", _positive),
    ("method", "m"): ("m", "int", lambda x: x >= 16),
    ("method", "t0"): ("t0", "float", _positive),
    ("method", "time_tol"): ("time_tol", "float", _positive),
    ("grids", "pairs"): ("pairs", "int", lambda x: x >= 4),
    ("grids", "times"): ("times", "int", lambda x: x >= 2),
    ("grids", "t_low"): ("t_low", "float", _positive),
    ("grids", "t_high"): ("t_high", "float", _positive),
    ("grids", "c"): ("c_values", "floats", lambda xs: all(x > 4.0 for x in xs)),
    ("grids", "tau_points"): ("tau_points", "int", lambda x: x >= 1),
    ("grids", "tau_low"): ("tau_low", "float", _positive),
    ("grids", "tau_high"): ("tau_high", "float", _positive),
    ("grids", "D"): ("big_d", "float", lambda x: x > 2.0),
    ("grids", "gamma"): ("gamma", "float", lambda x: x > 1.0),
    ("grids", "k_max"): ("k_max", "int", _positive),
    ("grids", "trials"): ("trials", "int", _positive),
    ("grids", "probe_r_max"): ("probe_r_max", "float", _positive),
    ("grids", "probe_m"): ("probe_m", "int", lambda x: x >= 16),
    ("grids", "probe_dt"): ("probe_dt", "float", _positive),
    ("tolerances", "analytic"): ("tol_analytic", "float", _positive),
    ("tolerances", "fd"): ("tol_fd", "float", _positive),
    ("output", "json"): ("json_path", "str", lambda s: True),
    ("output", "csv_dir"): ("csv_dir", "str", lambda s: True),
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config file; errors carry their line number."""
    cfg = ExperimentConfig()
    section = "experiment"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("malformed section header", line=lineno)
            section = line[1:-1].strip().lower()
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.split("#", 1)[0].strip()
        lookup = (section, key)
        if lookup not in _SCHEMA:
            # bare keys in the default section may belong to any section
            matches = [sk for sk in _SCHEMA if sk[1] == key] if section == "experiment" else []
            if len(matches) == 1:
                lookup = matches[0]
            else:
                raise ConfigError(f"unknown key {key!r} in section [{section}]", line=lineno)
        fld, kind, valid = _SCHEMA[lookup]
        try:
            parsed = _parse_value(value, kind)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", line=lineno) from None
        if not valid(parsed):
            raise ConfigError(f"value out of range for {key!r}: {parsed!r}", line=lineno)
        setattr(cfg, fld, parsed)
    try:
        parse_space(cfg.space)
    except (ValueError, SolitonLabError) as exc:
        raise ConfigError(f"bad space token: {exc}") from None
    if cfg.t_high <= cfg.t_low or cfg.tau_high <= cfg.tau_low:
        raise ConfigError("grid upper endpoints must exceed the lower ones")
    return cfg


def _parse_value(value: str, kind: str):
    if value.startswith('"') and value.endswith('"') and len(value) >= 2:
        value = value[1:-1]
    elif value.startswith("'") and value.endswith("'") and len(value) >= 2:
        value = value[1:-1]
    if kind == "str":
        return value
    if kind == "int":
        out = int(value)
        return out
    if kind == "float":
        return float(value)
    if kind == "floats":
        return tuple(float(v.strip()) for v in value.split(",") if v.strip())
    raise ValueError(f"unhandled kind {kind}")


def load_config(path: str | None, overrides: dict | None = None) -> ExperimentConfig:
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    else:
        cfg = ExperimentConfig()
    for k, v in (overrides or {}).items():
        if v is not None:
            setattr(cfg, k, v)
    return cfg


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------


def _envelope(cfg: ExperimentConfig, payload: dict) -> dict:
    return {
        "version": __version__,
        "config": cfg.to_dict(),
        "config_sha256": cfg.sha256(),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        **payload,
    }


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)}")


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default,
                      allow_nan=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(v)


def write_points_csv(report: dict, path: str) -> None:
    """One row per grid point with the documented stable column set."""
    lines = [",".join(CSV_COLUMNS)]
    meta = {"theorem_id": report.get("theorem_id"), "space": report.get("space"),
            "a": report.get("a")}
    for row in report.get("points", []):
        cells = []
        for col in CSV_COLUMNS:
            if col in meta:
                cells.append(_csv_cell(meta[col]))
            else:
                cells.append(_csv_cell(row.get(col)))
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_plot_data(report_doc: dict, out_dir: str) -> list:
    """Write one CSV per theorem entry contained in a report document."""
    os.makedirs(out_dir, exist_ok=True)
    entries = report_doc.get("checks") or {report_doc.get("theorem_id", "report"): report_doc}
    written = []
    for key in sorted(entries):
        rep = entries[key]
        fname = key.replace(":", "_").replace("/", "_") + ".csv"
        path = os.path.join(out_dir, fname)
        write_points_csv(rep, path)
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# evaluator construction and theorem dispatch
# ---------------------------------------------------------------------------


def _seed_for(cfg: ExperimentConfig, name: str) -> int:
    return (cfg.seed + zlib.crc32(name.encode())) % (2 ** 63)


def _evaluator(cfg: ExperimentConfig, a: float | None = None):
    space = parse_space(cfg.space)
    a = cfg.a if a is None else a
    params = {}
    if cfg.method in ("spectral_series",) or (cfg.method == "auto" and space.kind != "gaussian"):
        params = {"eps": cfg.series_eps, "t_min": cfg.t_min}
    if cfg.method == "fd_dirichlet":
        params = {"R_max": cfg.r_max, "m": cfg.m, "t0": cfg.t0, "time_tol": cfg.time_tol}
    return kernels.heat_kernel(space, a, method=cfg.method, **params)


def _probe_op(cfg: ExperimentConfig):
    space = parse_space(cfg.space)
    if space.kind != "gaussian":
        raise ConfigError("finite-difference probes run on gaussian spaces only")
    return spectral.discretize_radial(space, cfg.probe_r_max, cfg.probe_m, 0.0)


def run_theorem(theorem_id: str, cfg: ExperimentConfig, **kw) -> verify.VerificationReport:
    """Build the needed evaluators from the config and run one check."""
    space = parse_space(cfg.space)
    mu = entropy.mu_closed_form(space)
    seed = _seed_for(cfg, theorem_id)
    times = cfg.time_grid()
    grid = verify.pair_grid(space, cfg.pairs, seed)

    if theorem_id in ("ultracontractivity", "gaussian-bound", "cr-bound"):
        # grid ratio checks need two-point evaluators; the single-source
        # finite-difference kernel verifies through kernel-axioms instead
        _require(cfg.method != "fd_dirichlet",
                 f"{theorem_id} needs a closed-form or series evaluator")

    if theorem_id == "kernel-axioms":
        return verify.kernel_axioms(_evaluator(cfg), seed=seed)
    if theorem_id == "ultracontractivity":
        _require(cfg.a >= 0.25, "ultracontractivity requires a >= 1/4")
        return verify.ultracontractivity(_evaluator(cfg), mu, grid, times,
                                         tol=cfg.tol_analytic, seed=seed)
    if theorem_id == "gaussian-bound":
        _require(cfg.a >= 0.25, "the off-diagonal bound requires a >= 1/4")
        c = kw.get("c") or cfg.c_values[0]
        _require(c > 4.0, "the off-diagonal bound requires c > 4")
        return verify.gaussian_bound(_evaluator(cfg), mu, c, grid, times,
                                     tol=cfg.tol_analytic, seed=seed)
    if theorem_id == "cr-bound":
        ev = _evaluator(cfg, a=0.0)
        return verify.cr_bound(ev, mu, space.sup_R, grid,
                               verify.time_grid(cfg.times, cfg.t_low, min(cfg.t_high, 50.0)),
                               tol=cfg.tol_analytic, seed=seed)
    if theorem_id == "green-bound":
        _require(space.n >= 3, "Green's functions need n >= 3")
        _require(cfg.a >= 0.25 or space.kind == "gaussian",
                 "green-bound requires a >= 1/4 away from the flat space")
        gv = kernels.green(space, cfg.a)
        return verify.green_bound(gv, mu, tol=cfg.tol_analytic, seed=seed)
    if theorem_id == "eigenvalue-bound":
        _require(space.is_compact, "eigenvalue bounds apply to the compact catalogue space")
        _require(cfg.a >= 0.25, "eigenvalue bounds require a >= 1/4")
        l_max = _level_for_count(space.n, cfg.k_max, cfg.t_low)
        spec = spectral.sphere_spectrum(space.n, cfg.a, l_max)
        return verify.eigenvalue_bound(spec, mu, space.volume, cfg.k_max,
                                       n=space.n, times=times,
                                       tol=cfg.tol_analytic, seed=seed)
    if theorem_id == "log-sobolev":
        return verify.log_sobolev(space, mu, trials=cfg.trials,
                                  tau_grid=cfg.tau_grid(), seed=seed,
                                  tol=cfg.tol_analytic)
    if theorem_id == "sobolev":
        _require(space.n >= 3, "the critical Sobolev exponent needs n >= 3")
        _require(cfg.a >= 0.25, "the Sobolev check requires a >= 1/4")
        return verify.sobolev(space, mu, a=cfg.a, trials=max(10, cfg.trials // 2),
                              seed=seed, tol=cfg.tol_analytic)
    if theorem_id == "energy-monotonicity":
        op = _probe_op(cfg)
        return verify.energy_monotonicity(op, s=1.0, trials=min(cfg.trials, 20),
                                          seed=seed, dt=cfg.probe_dt,
                                          tol=cfg.tol_analytic)
    if theorem_id == "weighted-energy":
        op = _probe_op(cfg)
        probe = verify.GrigoryanProbe(op, cfg.t0, dt=cfg.probe_dt,
                                      D=cfg.big_d, gamma=cfg.gamma)
        return verify.weighted_energy_bound(probe, mu, tol=cfg.tol_fd, seed=seed)
    if theorem_id == "grigoryan-constants":
        consts = verify.grigoryan_constants(cfg.gamma, cfg.big_d)
        rep = verify.VerificationReport(
            theorem_id="grigoryan-constants", space=None, a=None,
            grid={"gamma": cfg.gamma, "D": cfg.big_d}, tolerance=0.0, seed=seed,
            mode="slack", worst_case_slack=consts.m,
            extracted_constants={"m": consts.m, "k_argmin": consts.k_argmin,
                                 "D0": consts.D0, "delta": consts.delta},
        )
        return rep
    raise ConfigError(f"unknown theorem id {theorem_id!r}")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def _level_for_count(n: int, k_max: int, t_low: float = 1e-3) -> int:
    """Harmonic levels needed for k_max eigenvalues and for the partition
    sum to be certified down to t_low, capped so the expanded spectrum stays
    at desk scale (times beyond the truncation are excluded by the check)."""
    count = 0
    l = 0
    while count < k_max + 1:
        count += spectral.sphere_multiplicity(n, l)
        l += 1
    l_k = l + 2
    l_part = int(math.sqrt(45.0 * 2.0 * (n - 1) / t_low)) + 2
    l_cap, total = l_k, 0
    while total < 600_000:
        total += spectral.sphere_multiplicity(n, l_cap)
        l_cap += 1
    return min(max(l_k, l_part), l_cap)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def suite_jobs(cfg: ExperimentConfig) -> list:
    """The applicable theorem checks for the configured space."""
    space = parse_space(cfg.space)
    jobs = [("kernel-axioms", {}), ("ultracontractivity", {}),
            ("log-sobolev", {}), ("cr-bound", {}), ("grigoryan-constants", {})]
    for c in cfg.c_values:
        jobs.append((f"gaussian-bound:c={c:g}", {"c": c}))
    if space.n >= 3 and (space.kind == "gaussian" or cfg.a >= 0.25):
        jobs.append(("green-bound", {}))
        if cfg.a >= 0.25:
            jobs.append(("sobolev", {}))
    if space.is_compact and cfg.a >= 0.25:
        jobs.append(("eigenvalue-bound", {}))
    if space.kind == "gaussian":
        jobs.append(("energy-monotonicity", {}))
        jobs.append(("weighted-energy", {}))
    return jobs


def _thread_count() -> int:
    raw = os.environ.get("SOLITONLAB_THREADS", "0")
    try:
        v = int(raw)
    except ValueError:
        v = 0
    if v <= 0:
        return min(4, os.cpu_count() or 1)
    return v


def run_suite(cfg: ExperimentConfig) -> tuple[dict, int]:
    """Run every applicable check; returns (report document, exit code)."""
    jobs = suite_jobs(cfg)

    def run_one(item):
        job_id, kw = item
        theorem = job_id.split(":")[0]
        try:
            rep = run_theorem(theorem, cfg, **kw)
            return job_id, rep.to_dict(include_points=True)
        except ConfigError:
            raise
        except SolitonLabError as exc:
            return job_id, {"theorem_id": theorem, "space": cfg.space, "a": cfg.a,
                            "passed": False, "error": f"{type(exc).__name__}: {exc}",
                            "points": []}

    workers = _thread_count()
    results = {}
    if workers == 1:
        for item in jobs:
            k, v = run_one(item)
            results[k] = v
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            for k, v in pool.map(run_one, jobs):
                results[k] = v
    ordered = {k: results[k] for k in sorted(results)}
    all_pass = all(v.get("passed") for v in ordered.values())
    doc = _envelope(cfg, {"checks": ordered, "all_passed": all_pass})
    return doc, (EXIT_PASS if all_pass else EXIT_VIOLATION)


# ---------------------------------------------------------------------------
# point parsing for the kernel/green subcommands
# ---------------------------------------------------------------------------


def _parse_point(space, text: str):
    if space.kind == "cylinder":
        if ";" not in text:
            raise ConfigError("cylinder points use 'v1,..,vn;s'")
        vec, s = text.split(";", 1)
        coords = [float(v) for v in vec.split(",")]
        return space.point(coords, s=float(s))
    coords = [float(v) for v in text.split(",")]
    return space.point(coords)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="solitonlab",
                                 description="verification lab for Schrodinger heat kernels "
                                             "on closed-form shrinking solitons")
    ap.add_argument("--config", help="experiment config file")
    ap.add_argument("--seed", type=int, default=None, help="override the config seed")
    ap.add_argument("--json", dest="json_path", default=None,
                    help="write the JSON report here instead of stdout")
    ap.add_argument("--csv", dest="csv_dir", default=None,
                    help="directory for per-grid-point CSV files")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("spaces", help="list the catalogue with identity checks")

    p = sub.add_parser("mu", help="entropy constant with quadrature cross-check")
    p.add_argument("--space", default=None)

    p = sub.add_parser("spectrum", help="eigenvalues as CSV")
    p.add_argument("--space", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--l-max", type=int, default=40)
    p.add_argument("--k", type=int, default=40, help="eigenvalue count (discretized)")
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("kernel", help="evaluate the heat kernel at one point pair")
    p.add_argument("--space", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--method", default=None)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("green", help="evaluate the Green's function at one point pair")
    p.add_argument("--space", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("verify", help="run one theorem check")
    p.add_argument("theorem", choices=THEOREM_IDS)
    p.add_argument("--space", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--D", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--tau-grid", default=None, help="lo,hi,count")
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--method", default=None)

    p = sub.add_parser("suite", help="run all applicable checks for the space")
    p.add_argument("--space", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("plot-data", help="re-emit CSV rows from a saved JSON report")
    p.add_argument("--report", required=True)
    p.add_argument("--out", required=True)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        overrides = {}
        for name in ("space", "a", "method", "trials"):
            if hasattr(args, name) and getattr(args, name) is not None:
                overrides[name] = getattr(args, name)
        if args.seed is not None:
            overrides["seed"] = args.seed
        if getattr(args, "D", None) is not None:
            overrides["big_d"] = args.D
        if getattr(args, "gamma", None) is not None:
            overrides["gamma"] = args.gamma
        if getattr(args, "k_max", None) is not None:
            overrides["k_max"] = args.k_max
        if getattr(args, "tau_grid", None) is not None:
            lo, hi, count = args.tau_grid.split(",")
            overrides.update(tau_low=float(lo), tau_high=float(hi), tau_points=int(count))
        cfg = load_config(args.config, overrides)
        if args.json_path:
            cfg.json_path = args.json_path
        if args.csv_dir:
            cfg.csv_dir = args.csv_dir
        return _dispatch(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolitonLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _dispatch(args, cfg: ExperimentConfig) -> int:
    if args.command == "spaces":
        rows = {}
        for token in ("gaussian:1", "gaussian:2", "gaussian:3", "sphere:2", "sphere:3",
                      "cylinder:3", "cylinder:4"):
            sp = parse_space(token)
            rep = check_soliton_identities(sp, 50, cfg.seed)
            rows[token] = {
                "n": sp.n, "kind": sp.kind, "sup_R": sp.sup_R,
                "volume": sp.volume if sp.is_compact else None,
                "max_potential_defect": rep.max_potential_defect,
                "max_trace_defect": rep.max_trace_defect,
                "passed": rep.passed,
            }
        _write_json(_envelope(cfg, {"spaces": rows}), cfg.json_path)
        return EXIT_PASS if all(r["passed"] for r in rows.values()) else EXIT_VIOLATION

    if args.command == "mu":
        sp = parse_space(cfg.space)
        rep = entropy.mu(sp)
        defect = entropy.minimizer_check(sp)
        _write_json(_envelope(cfg, {
            "space": cfg.space, "mu": rep.mu, "method": rep.method,
            "quadrature_error": rep.quadrature_error,
            "normalization_check": rep.normalization_check,
            "minimizer_defect": defect,
        }), cfg.json_path)
        return EXIT_PASS if abs(rep.normalization_check) <= 1e-8 else EXIT_VIOLATION

    if args.command == "spectrum":
        sp = parse_space(cfg.space)
        if sp.kind == "sphere":
            spec = spectral.sphere_spectrum(sp.n, cfg.a, args.l_max)
            rows = []
            idx = 0
            for (l, lam, mult) in spec.levels:
                idx += mult
                rows.append((idx, lam, mult, "analytic"))
        else:
            if sp.kind != "gaussian":
                raise ConfigError("discretized spectra are radial (gaussian spaces only)")
            op = spectral.discretize_radial(sp, args.r_max or cfg.r_max,
                                            args.m or cfg.m, cfg.a)
            spec = spectral.eigen_solve(op, args.k)
            rows = [(i + 1, v, 1, "discretized") for i, v in enumerate(spec.values)]
        lines = ["index,eigenvalue,multiplicity,source"]
        lines += [f"{i},{repr(float(v))},{m},{s}" for (i, v, m, s) in rows]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_PASS

    if args.command == "kernel":
        sp = parse_space(cfg.space)
        ev = _evaluator(cfg)
        x = _parse_point(sp, args.x)
        y = _parse_point(sp, args.y)
        val, err = ev.evaluate(x, y, args.t)
        _write_json(_envelope(cfg, {"value": val, "method": ev.method,
                                    "error_estimate": err}), cfg.json_path)
        return EXIT_PASS

    if args.command == "green":
        sp = parse_space(cfg.space)
        gv = kernels.green(sp, cfg.a)
        x = _parse_point(sp, args.x)
        y = _parse_point(sp, args.y)
        val, err = gv.evaluate(x, y)
        _write_json(_envelope(cfg, {"value": val, "method": "time_quadrature",
                                    "error_estimate": err}), cfg.json_path)
        return EXIT_PASS

    if args.command == "verify":
        kw = {}
        if args.c is not None:
            kw["c"] = args.c
        rep = run_theorem(args.theorem, cfg, **kw)
        doc = _envelope(cfg, {"checks": {args.theorem: rep.to_dict(include_points=True)},
                              "all_passed": rep.passed})
        _write_json(doc, cfg.json_path)
        if cfg.csv_dir:
            emit_plot_data(doc, cfg.csv_dir)
        return EXIT_PASS if rep.passed else EXIT_VIOLATION

    if args.command == "suite":
        doc, code = run_suite(cfg)
        _write_json(doc, cfg.json_path)
        if cfg.csv_dir:
            emit_plot_data(doc, cfg.csv_dir)
        return code

    if args.command == "plot-data":
        with open(args.report, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        written = emit_plot_data(doc, args.out)
        print("\n".join(written))
        return EXIT_PASS

    raise ConfigError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
