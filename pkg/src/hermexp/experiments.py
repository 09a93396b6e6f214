"""Config-driven experiment runner with CSV/JSON persistence and gnuplot emission.

A config is one JSON document::

    {
      "seed": 7,
      "output": {"csv": "results.csv", "json": "results.json", "plots": true},
      "record_runtime": false,
      "experiments": [ {"id": ..., "kind": ..., ...}, ... ]
    }

Pass/fail of every row is decided by a tolerance read from the experiment's
``tolerances`` block.  Runtimes are only written when ``record_runtime`` is
set, so that repeated runs give byte-identical CSV files.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import expansion_engine as ee
from . import hermite_core as hc
from . import invariants
from . import operator_models as om
from . import scalar_expansions as se
from .quadrature import lp_error_on_line
from .signedlog import log_factorial

SCHEMA_VERSION = 1
CSV_COLUMNS = ("experiment_id", "param_json", "value", "reference", "abs_err", "rel_err", "pass", "runtime_ms")
KINDS = ("expand", "rates", "kernels", "norms", "holo", "fejer", "laguerre-compare", "verify-all")
RULES = ("abs", "rel", "upper", "ratio")

# tolerance keys each kind must provide
_REQUIRED_TOLERANCES = {
    "expand": ("error",),
    "rates": ("slope_margin",),
    "kernels": ("partial_sum", "coefficients", "l1_closed_form"),
    "norms": ("norm_bound", "extremum_identity", "muckenhoupt"),
    "holo": ("error", "quarter_point"),
    "fejer": ("error",),
    "laguerre-compare": ("ratio",),
    "verify-all": (),
}
_NEEDS_MODEL = {"expand", "rates", "holo", "fejer", "laguerre-compare"}
_NEEDS_T = {"expand", "rates", "fejer", "laguerre-compare"}
_NEEDS_DEGREES = {"expand", "rates", "laguerre-compare"}


class ConfigError(ValueError):
    """Raised with every violation found in a config."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid config:\n  " + "\n  ".join(self.problems))


@dataclass(frozen=True)
class ExperimentConfig:
    id: str
    kind: str
    model: dict | None = None
    data: dict | None = None
    t: tuple[float, ...] = ()
    degrees: tuple[int, ...] = ()
    norm: str = "l2"
    family: str = "group"
    tolerances: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def stochastic(self) -> bool:
        if self.kind in ("holo", "verify-all"):
            return True
        return _uses_random(self.data)


@dataclass(frozen=True)
class RunConfig:
    experiments: tuple[ExperimentConfig, ...]
    seed: int | None = None
    csv_name: str = "results.csv"
    json_name: str = "results.json"
    plots: bool = True
    record_runtime: bool = False


@dataclass(frozen=True)
class ReportRow:
    experiment_id: str
    params: dict
    value: float
    reference: float
    passed: bool
    runtime_ms: float | None = None

    @property
    def abs_err(self) -> float:
        return abs(self.value - self.reference)

    @property
    def rel_err(self) -> float | None:
        return self.abs_err / abs(self.reference) if self.reference != 0 else None


@dataclass
class PlotData:
    """One curve-producing experiment: columns of data plus a plotting script."""

    name: str
    header: tuple[str, ...]
    columns: list[np.ndarray]
    script: str


def _uses_random(spec) -> bool:
    if isinstance(spec, dict):
        if spec.get("id") == "random":
            return True
        return any(_uses_random(v) for v in spec.values())
    return False


def decide(value: float, reference: float, rule: str, tol: float) -> bool:
    """Apply a pass rule; NaN values always fail."""
    if not math.isfinite(value) and not (rule == "upper" and value == -math.inf):
        return False
    if rule == "abs":
        return abs(value - reference) <= tol
    if rule == "rel":
        return abs(value - reference) <= tol * abs(reference)
    if rule == "upper":
        return value <= reference + tol
    if rule == "ratio":
        return value <= tol * reference
    raise ValueError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------- validation


def _check_model(spec, data, where: str, problems: list[str]) -> None:
    try:
        model = om.model_from_spec(spec)
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"{where}: model does not resolve ({exc})")
        return
    if not isinstance(data, dict) or data.get("id") == "marginal":
        return
    try:
        om.state_from_spec(model, data, np.random.default_rng(0))
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"{where}: data does not resolve ({exc})")


def _parse_experiment(raw: Any, idx: int, problems: list[str]) -> ExperimentConfig | None:
    where = f"experiments[{idx}]"
    if not isinstance(raw, dict):
        problems.append(f"{where}: must be an object")
        return None
    start = len(problems)
    exp_id = raw.get("id")
    if not isinstance(exp_id, str) or not exp_id:
        problems.append(f"{where}: 'id' must be a non-empty string")
        exp_id = f"#{idx}"
    where = f"experiment {exp_id!r}"
    kind = raw.get("kind")
    if kind not in KINDS:
        problems.append(f"{where}: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        return None
    known = {"id", "kind", "model", "data", "t", "degrees", "norm", "family", "tolerances", "params"}
    for key in sorted(set(raw) - known):
        problems.append(f"{where}: unknown field {key!r}")

    model = raw.get("model")
    data = raw.get("data")
    if kind in _NEEDS_MODEL:
        if not isinstance(model, dict):
            problems.append(f"{where}: 'model' object is required")
        if not isinstance(data, dict):
            problems.append(f"{where}: 'data' object is required")
        if isinstance(model, dict):
            _check_model(model, data, where, problems)

    t_vals = raw.get("t", [])
    if not isinstance(t_vals, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in t_vals):
        problems.append(f"{where}: 't' must be a list of numbers")
        t_vals = []
    if kind in _NEEDS_T and not t_vals:
        problems.append(f"{where}: 't' must list at least one time")

    degrees = raw.get("degrees", [])
    if not isinstance(degrees, list) or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in degrees):
        problems.append(f"{where}: 'degrees' must be a list of non-negative integers")
        degrees = []
    elif any(b <= a for a, b in zip(degrees, degrees[1:])):
        problems.append(f"{where}: 'degrees' must be strictly increasing")
    if kind in _NEEDS_DEGREES and not degrees:
        problems.append(f"{where}: 'degrees' must list at least one degree")

    norm = raw.get("norm", "l2")
    if norm not in ("l2", "linf"):
        problems.append(f"{where}: 'norm' must be 'l2' or 'linf'")
    family = raw.get("family", "group")
    if family not in om.FAMILIES:
        problems.append(f"{where}: 'family' must be one of {', '.join(om.FAMILIES)}")

    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, dict):
        problems.append(f"{where}: 'tolerances' must be an object")
        tolerances = {}
    for key in _REQUIRED_TOLERANCES[kind]:
        if key not in tolerances:
            problems.append(f"{where}: missing tolerance {key!r}")
    for key, val in tolerances.items():
        if kind == "verify-all":
            if key not in invariants.CHECKS:
                problems.append(f"{where}: unknown invariant check {key!r}")
            if not isinstance(val, dict) or "tol" not in val or val.get("rule") not in RULES:
                problems.append(f"{where}: check {key!r} needs 'tol' and a 'rule' in {RULES}")
        elif not isinstance(val, (int, float)) or isinstance(val, bool) or not val >= 0:
            problems.append(f"{where}: tolerance {key!r} must be a non-negative number")
    if kind == "verify-all" and not tolerances:
        problems.append(f"{where}: 'tolerances' must name at least one invariant check")

    params = raw.get("params", {})
    if not isinstance(params, dict):
        problems.append(f"{where}: 'params' must be an object")
        params = {}
    if kind == "rates" and not isinstance(params.get("p"), int):
        problems.append(f"{where}: rates needs an integer 'params.p'")
    if kind == "fejer" and not isinstance(params.get("N"), int):
        problems.append(f"{where}: fejer needs an integer 'params.N'")
    if kind == "holo" and not isinstance(params.get("m"), int):
        problems.append(f"{where}: holo needs an integer 'params.m'")

    if len(problems) > start:
        return None
    return ExperimentConfig(
        id=exp_id,
        kind=kind,
        model=model,
        data=data,
        t=tuple(float(v) for v in t_vals),
        degrees=tuple(degrees),
        norm=norm,
        family=family,
        tolerances=dict(tolerances),
        params=dict(params),
    )


def parse_config(doc: Any, seed_override: int | None = None) -> RunConfig:
    problems: list[str] = []
    if not isinstance(doc, dict):
        raise ConfigError(["top level must be a JSON object"])
    for key in sorted(set(doc) - {"seed", "output", "record_runtime", "experiments", "description"}):
        problems.append(f"unknown top-level field {key!r}")
    raw_exps = doc.get("experiments")
    if not isinstance(raw_exps, list) or not raw_exps:
        problems.append("'experiments' must be a non-empty list")
        raw_exps = []
    exps = [_parse_experiment(raw, i, problems) for i, raw in enumerate(raw_exps)]
    ids = [e.id for e in exps if e is not None]
    for dup in sorted({i for i in ids if ids.count(i) > 1}):
        problems.append(f"duplicate experiment id {dup!r}")

    seed = doc.get("seed") if seed_override is None else seed_override
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or seed < 0):
        problems.append("'seed' must be a non-negative integer")
    if seed is None:
        for e in exps:
            if e is not None and e.stochastic:
                problems.append(f"experiment {e.id!r} samples randomly, so a seed is mandatory")

    output = doc.get("output", {})
    if not isinstance(output, dict):
        problems.append("'output' must be an object")
        output = {}
    for key in ("csv", "json"):
        name = output.get(key, f"results.{key}")
        if not isinstance(name, str) or not name or os.path.isabs(name) or ".." in name.split("/"):
            problems.append(f"output.{key} must be a relative file name")
    record_runtime = doc.get("record_runtime", False)
    if not isinstance(record_runtime, bool):
        problems.append("'record_runtime' must be a boolean")

    if problems:
        raise ConfigError(problems)
    return RunConfig(
        experiments=tuple(exps),
        seed=seed,
        csv_name=output.get("csv", "results.csv"),
        json_name=output.get("json", "results.json"),
        plots=bool(output.get("plots", True)),
        record_runtime=record_runtime,
    )


def load_config(path: str, seed_override: int | None = None) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}: not valid JSON ({exc})"]) from exc
    return parse_config(doc, seed_override)


# ---------------------------------------------------------------- experiments


def _rng(seed: int | None, exp: ExperimentConfig) -> np.random.Generator:
    # one independent stream per experiment keeps results independent of scheduling
    key = [ord(c) for c in exp.id]
    return np.random.default_rng([seed or 0, *key])


def _setup(exp: ExperimentConfig, rng):
    model = om.model_from_spec(exp.model)
    x = om.state_from_spec(model, exp.data, rng)
    return model, x


def _row(exp, params, value, reference, rule, tol_key) -> ReportRow:
    tol = exp.tolerances[tol_key]
    return ReportRow(exp.id, params, float(value), float(reference), decide(float(value), float(reference), rule, tol))


def _run_expand(exp, rng):
    model, x = _setup(exp, rng)
    order = ee._norm_order(exp.norm)
    rows, cols = [], [np.array(exp.degrees, dtype=float)]
    for t in exp.t:
        exact = om.evolve(model, exp.family, t, x)
        sums = ee.partial_sums(model, exp.family, x, t, exp.degrees)
        errs = [model.norm(exact - s, order) for s in sums]
        cols.append(np.array(errs))
        for m, err in zip(exp.degrees, errs):
            rows.append(_row(exp, {"t": t, "m": m, "family": exp.family, "norm": exp.norm}, err, 0.0, "abs", "error"))
    plot = _curve_plot(exp.id, "m", [f"t={t:g}" for t in exp.t], cols, logx=True)
    return rows, [plot]


def rate_reference(family: str, p: int) -> float:
    """Predicted log-log slope of the truncation error at marginal regularity p."""
    if family == "group":
        return -(p / 2 - 11 / 12)
    if family == "cosine":
        return -(p - 11 / 12)
    return -(p - 5 / 12)


def _run_rates(exp, rng):
    model = om.model_from_spec(exp.model)
    p = int(exp.params["p"])
    drop = int(exp.params.get("drop", 1))
    data = _marginal_state_spec(exp, p) if exp.data.get("id") == "marginal" else exp.data
    x = om.state_from_spec(model, data, rng)
    ref = rate_reference(exp.family, p)
    rows, plots = [], []
    for t in exp.t:
        curve = ee.error_curve(model, x, t, exp.degrees, exp.family, exp.norm)
        fit = ee.rate_fit(curve, drop)
        params = {"t": t, "p": p, "family": exp.family, "drop": drop, "degrees": list(exp.degrees)}
        row = ReportRow(exp.id, params, fit.slope, ref, decide(fit.slope, ref, "upper", exp.tolerances["slope_margin"]))
        rows.append(row)
        deg = np.asarray(curve.degrees, dtype=float)
        line = np.exp(fit.intercept) * deg**fit.slope
        plots.append(_curve_plot(f"{exp.id}_t{t:g}", "n", ["error", "fit"], [deg, np.asarray(curve.errors), line], logx=True))
    return rows, plots


def _marginal_state_spec(exp, p: int) -> dict:
    """x_k = k^{−(order·reg + exponent)} with reg = p (p+1 for the sine family)."""
    order = 1 if exp.family == "group" else 2
    reg = p + 1 if exp.family == "sine" else p
    return {"id": "power", "s": order * reg + float(exp.data.get("exponent", 0.6))}


def _run_kernels(exp, rng):
    pr = exp.params
    t = float(pr.get("t", 2.0))
    N = int(pr.get("N", 40))
    rows = []
    for s in pr.get("s_values", [1.3]):
        s = float(s)
        rows.append(_row(exp, {"check": "fejer_partial", "s": s, "t": t, "N": N},
                         se.fejer_partial(s, t, N), se.fejer_kernel(s, t), "abs", "partial_sum"))
        rows.append(_row(exp, {"check": "dirichlet_partial", "s": s, "t": t, "N": N},
                         se.dirichlet_partial(s, t, N), se.dirichlet_kernel(s, t), "abs", "partial_sum"))
        cN = int(pr.get("coeff_N", 20))
        fe = _kernel_coeff_gap(lambda tt, s=s: se.fejer_kernel(s, tt), np.concatenate([[se.fejer_c0(s)], se.fejer_coeffs(s, cN)[1]]), 0, cN)
        di = _kernel_coeff_gap(lambda tt, s=s: se.dirichlet_kernel(s, tt), se.dirichlet_coeffs(s, cN), 1, cN)
        rows.append(_row(exp, {"check": "fejer_coefficients", "s": s, "N": cN}, fe, 0.0, "abs", "coefficients"))
        rows.append(_row(exp, {"check": "dirichlet_coefficients", "s": s, "N": cN}, di, 0.0, "abs", "coefficients"))
    for n in range(1, int(pr.get("l1_n_max", 20)) + 1):
        exact = se.fejer_coeff_l1(n)
        rows.append(_row(exp, {"check": "fejer_coeff_l1", "n": n}, invariants._c2n_l1(n) / exact, 1.0, "abs", "l1_closed_form"))
    return rows, []


def _kernel_coeff_gap(kernel: Callable, closed: np.ndarray, offset: int, N: int) -> float:
    """max |closed-form − quadrature| over the coefficients of t ↦ kernel(t)."""
    from .quadrature import coeffs_by_quadrature, gauss_hermite_rule, rule_size_for_degree

    degrees = [offset + 2 * j for j in range(closed.size)]
    rule = gauss_hermite_rule(rule_size_for_degree(max(degrees)))
    quad = coeffs_by_quadrature(kernel, degrees, rule)
    return float(max(abs(closed[j] - quad[d]) for j, d in enumerate(degrees)))


def _run_norms(exp, rng):
    pr = exp.params
    rows = []
    nb = invariants.norm_bound_p1({"n_max": pr.get("n_max_bound", 200)}, rng)
    rows.append(_row(exp, {"check": "norm_bound_p1", "n_max": pr.get("n_max_bound", 200)}, nb.value, 1.0, "upper", "norm_bound"))
    ei = invariants.extremum_identity({"n_max": pr.get("n_max_identity", 60)}, rng)
    rows.append(_row(exp, {"check": "extremum_identity", "n_max": pr.get("n_max_identity", 60)}, ei.value, 0.0, "abs", "extremum_identity"))
    lo, hi = pr.get("muckenhoupt", [10, 40])
    fit = hc.muckenhoupt_calibrate(int(lo), int(hi))
    value = fit.worst_verify_ratio if fit.consequence_holds else math.inf
    rows.append(_row(exp, {"check": "muckenhoupt", "fit": [lo, hi], "C": fit.C}, value, 1.0, "upper", "muckenhoupt"))
    # sup and L^1 norms per degree, for plotting
    n = np.arange(0, int(pr.get("n_max_bound", 200)) + 1, int(pr.get("plot_stride", 5)))
    sup = np.array([hc.h_norm_log(int(k), math.inf) for k in n])
    l1 = np.array([hc.h_norm_log(int(k), 1.0) for k in n])
    scale = 0.5 * (n * math.log(2.0) + log_factorial(n))
    plot = _curve_plot(exp.id, "n", ["sup_scaled", "l1_scaled"], [n.astype(float), np.exp(sup + scale), np.exp(l1 + scale)], logx=False)
    return rows, [plot]


def _run_holo(exp, rng):
    model, x = _setup(exp, rng)
    pr = exp.params
    m = int(pr["m"])
    radius = float(pr.get("radius", 0.2))
    nx = model.norm(x)
    rows = []
    for _ in range(int(pr.get("points", 10))):
        r = radius * math.sqrt(rng.uniform())
        a = rng.uniform(0, 2 * math.pi)
        z = 0.25 + r * complex(math.cos(a), math.sin(a))
        err = model.norm(ee.holo_series(model, x, z, m, exp.family) - om.subordinated_exact(model, z, x)) / nx
        rows.append(_row(exp, {"z": [z.real, z.imag], "m": m, "family": exp.family}, err, 0.0, "abs", "error"))
    quarter = model.norm(ee.holo_series(model, x, 0.25, m, exp.family) - om.subordinated_exact(model, 0.25, x))
    rows.append(_row(exp, {"z": [0.25, 0.0], "m": m, "family": exp.family}, quarter, 0.0, "abs", "quarter_point"))
    return rows, []


def _run_fejer(exp, rng):
    model, x = _setup(exp, rng)
    N = int(exp.params["N"])
    tol = float(exp.params.get("direct_tol", 1e-10))
    rows = []
    for t in exp.t:
        direct = om.fejer_family_direct(model, t, x, tol, exp.family)
        err = model.norm(ee.fejer_expansion(model, x, t, N, exp.family) - direct)
        rows.append(_row(exp, {"t": t, "N": N, "family": exp.family}, err, 0.0, "abs", "error"))
    return rows, []


def _run_laguerre(exp, rng):
    model, x = _setup(exp, rng)
    alpha = float(exp.params.get("alpha", 0.0))
    rows, cols = [], [np.array(exp.degrees, dtype=float)]
    for t in exp.t:
        exact = om.evolve_group(model, t, x)
        herm = [model.norm(exact - s) for s in ee.partial_sums(model, "group", x, t, exp.degrees)]
        lag = [model.norm(exact - ee.laguerre_partial(model, x, t, m, alpha)) for m in exp.degrees]
        cols += [np.array(herm), np.array(lag)]
        for m, h, g in zip(exp.degrees, herm, lag):
            rows.append(_row(exp, {"t": t, "m": m, "alpha": alpha}, h, g, "ratio", "ratio"))
    names = [f"{k} t={t:g}" for t in exp.t for k in ("hermite", "laguerre")]
    return rows, [_curve_plot(exp.id, "m", names, cols, logx=True)]


def _run_verify_all(exp, rng):
    rows = []
    for name, spec in exp.tolerances.items():
        res = invariants.CHECKS[name](spec.get("params", {}), rng)
        params = {"check": name, **res.params}
        rows.append(ReportRow(exp.id, params, res.value, res.reference, decide(res.value, res.reference, spec["rule"], spec["tol"])))
    return rows, []


_RUNNERS = {
    "expand": _run_expand,
    "rates": _run_rates,
    "kernels": _run_kernels,
    "norms": _run_norms,
    "holo": _run_holo,
    "fejer": _run_fejer,
    "laguerre-compare": _run_laguerre,
    "verify-all": _run_verify_all,
}


def _curve_plot(name: str, xlabel: str, names: list[str], columns: list[np.ndarray], logx: bool) -> PlotData:
    lines = [
        f"set title '{name}'",
        f"set xlabel '{xlabel}'",
        "set logscale y",
        "set format y '%.0e'",
        "set key outside right",
    ]
    if logx:
        lines.append("set logscale x")
    series = [f"'{name}.dat' using 1:{j + 2} with linespoints title '{label}'" for j, label in enumerate(names)]
    lines.append("plot " + ", \\\n     ".join(series))
    return PlotData(name, (xlabel, *names), columns, "\n".join(lines) + "\n")


# ---------------------------------------------------------------- run + persist


@dataclass(frozen=True)
class RunResult:
    rows: tuple[ReportRow, ...]
    plots: tuple[PlotData, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)


def run_experiment(exp: ExperimentConfig, seed: int | None, record_runtime: bool = False):
    rng = _rng(seed, exp)
    start = time.perf_counter()
    rows, plots = _RUNNERS[exp.kind](exp, rng)
    if record_runtime:
        ms = (time.perf_counter() - start) * 1e3 / max(len(rows), 1)
        rows = [ReportRow(r.experiment_id, r.params, r.value, r.reference, r.passed, ms) for r in rows]
    return rows, plots


def run(config: RunConfig, threads: int = 1, kinds: tuple[str, ...] | None = None) -> RunResult:
    """Run the selected experiments; rows come back in config order."""
    if threads < 1:
        raise ValueError("threads must be at least 1")
    exps = [e for e in config.experiments if kinds is None or e.kind in kinds]
    if not exps:
        raise ConfigError([f"no experiments of kind {', '.join(kinds or ())} in the config"])
    job = lambda e: run_experiment(e, config.seed, config.record_runtime)
    if threads == 1:
        results = [job(e) for e in exps]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, exps))
    rows = tuple(r for rs, _ in results for r in rs)
    plots = tuple(p for _, ps in results for p in ps)
    return RunResult(rows, plots)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return format(float(v), ".17g")


def _row_record(row: ReportRow) -> dict[str, str]:
    return {
        "experiment_id": row.experiment_id,
        "param_json": json.dumps(_jsonable(row.params), sort_keys=True, separators=(",", ":")),
        "value": _fmt(row.value),
        "reference": _fmt(row.reference),
        "abs_err": _fmt(row.abs_err),
        "rel_err": _fmt(row.rel_err),
        "pass": _fmt(row.passed),
        "runtime_ms": _fmt(row.runtime_ms),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_row_record(row))
    return buf.getvalue()


def render_json(rows) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "columns": list(CSV_COLUMNS), "rows": [_row_record(r) for r in rows]}
    return json.dumps(doc, indent=1) + "\n"


def render_dat(plot: PlotData) -> str:
    lines = ["# " + " ".join(h.replace(" ", "_") for h in plot.header)]
    for vals in zip(*plot.columns):
        lines.append(" ".join(_fmt(v) for v in vals))
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def persist(result: RunResult, config: RunConfig, out_dir: str) -> list[str]:
    """Write CSV, JSON and plot files; only called once every experiment finished."""
    files = {
        os.path.join(out_dir, config.csv_name): render_csv(result.rows),
        os.path.join(out_dir, config.json_name): render_json(result.rows),
    }
    if config.plots:
        for plot in result.plots:
            base = os.path.join(out_dir, "plots", plot.name)
            files[base + ".dat"] = render_dat(plot)
            files[base + ".gp"] = plot.script
    for path, text in files.items():
        _atomic_write(path, text)
    return list(files)


__all__ = [
    "CSV_COLUMNS",
    "ConfigError",
    "ExperimentConfig",
    "KINDS",
    "ReportRow",
    "RunConfig",
    "RunResult",
    "load_config",
    "parse_config",
    "persist",
    "rate_reference",
    "render_csv",
    "render_json",
    "run",
]
