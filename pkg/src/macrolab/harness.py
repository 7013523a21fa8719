"""Configuration-driven experiment runner with CSV/JSON emission.

Experiments sample an ensemble (or walk a parameter grid), compute both
measures with their bounds for every state, and aggregate per-(n, k) summary
statistics.  Output is deterministic: identical config and seed give
byte-identical files.

Scale policy: exact dense optimization runs only up to `exact_cutoff` qubits
(default 14); above that only the variance bracket is recorded and the row is
flagged, because honest multi-start optimization of generic states at larger
sizes does not fit an interactive budget.  Published sample counts (10^5 per
point) are likewise scaled down through the `samples` field rather than baked
in.

The per-sample CSV schema (exact header order) is::

    ensemble,n,k,sample,seed,m_tilde_lower,m_tilde_upper,m_tilde,m_norm,
    n_m_norm,e_g,opt_converged,eg_converged

with empty cells for values the scale policy skipped, and `n_m_norm` the
derived column n * m_norm.  Floats carry 17 significant digits so parsing
reproduces them bit for bit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, fields

import numpy as np

from . import geometric, macroscopicity
from .config import check_dense
from .ensembles import (
    RngStream,
    haar_random_state,
    random_linear_chain,
    random_physical_state,
    random_symmetric_state,
)
from .extremal import eta_max_bound, eta_max_spec
from .observables import build_vcm
from .states import bell_product, dicke, ghz, xi_state

EXPERIMENTS = (
    "named-state",
    "xi-scan",
    "eta-bounds",
    "physical-scan",
    "chain-scan",
    "haar-scan",
    "symmetric-scan",
)

CSV_HEADER = (
    "ensemble,n,k,sample,seed,m_tilde_lower,m_tilde_upper,m_tilde,m_norm,"
    "n_m_norm,e_g,opt_converged,eg_converged"
)

BOUNDS_HEADER = "mode,n,eta,e_g,m_norm"

SCHEMA_VERSION = 1

_FLOAT_COLS = ("m_tilde_lower", "m_tilde_upper", "m_tilde", "m_norm", "n_m_norm", "e_g")


@dataclass(frozen=True)
class Row:
    """One sampled state; None marks a value skipped by the scale policy."""

    ensemble: str
    n: int
    k: int
    sample: int
    seed: int
    m_tilde_lower: float | None
    m_tilde_upper: float | None
    m_tilde: float | None
    m_norm: float | None
    n_m_norm: float | None
    e_g: float | None
    opt_converged: bool
    eg_converged: bool


@dataclass(frozen=True)
class StatRecord:
    """Per-(ensemble, n, k) aggregate; stds use ddof=1 and are 0 for count < 2."""

    ensemble: str
    n: int
    k: int
    count: int
    mean_m_norm: float | None
    std_m_norm: float | None
    mean_e_g: float | None
    std_e_g: float | None
    mean_bracket_width: float | None
    mean_lambda1: float | None


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n_values: tuple
    k_values: tuple = (0,)
    samples: int = 1
    seed: int = 0
    restarts: int | None = None
    tol: float = 1e-10
    exact_cutoff: int = 14
    compute_eg: bool = True
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"config field 'experiment' must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if not self.n_values:
            raise ValueError("config field 'n_values' must be a non-empty list")
        for n in self.n_values:
            if not isinstance(n, int) or n < 2:
                raise ValueError(f"config field 'n_values' entries must be integers >= 2, got {n!r}")
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ValueError("config field 'samples' must be an integer >= 1")
        if not isinstance(self.seed, int):
            raise ValueError("config field 'seed' must be an integer")
        if self.restarts is not None and (not isinstance(self.restarts, int) or self.restarts < 1):
            raise ValueError("config field 'restarts' must be a positive integer or null")
        if not 0.0 < self.tol:
            raise ValueError("config field 'tol' must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError("config field 'output.format' must be 'csv' or 'json'")


_SCHEDULE_RE = re.compile(r"^[0-9n\s+\-*/^()]+$")


def resolve_schedule(expr, n):
    """Evaluate a k schedule entry ('1', 'n', 'n^2', 'n-1', ...) at size n."""
    if isinstance(expr, int):
        return expr
    text = str(expr).strip()
    if not _SCHEDULE_RE.match(text):
        raise ValueError(f"config field 'k_values' entry {expr!r} is not a schedule expression")
    try:
        value = eval(text.replace("^", "**"), {"__builtins__": {}}, {"n": n})
    except Exception as exc:
        raise ValueError(f"config field 'k_values' entry {expr!r} failed to evaluate: {exc}") from exc
    if not isinstance(value, (int, float)):
        raise ValueError(f"config field 'k_values' entry {expr!r} did not produce a number")
    k = int(round(value))
    if k < 0:
        raise ValueError(f"config field 'k_values' entry {expr!r} is negative at n={n}")
    return k


def load_config(path) -> ExperimentConfig:
    """Read the JSON config format (schema_version 1) with field diagnostics."""
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError("config file must hold a JSON object")
    version = raw.pop("schema_version", None)
    if version != SCHEMA_VERSION:
        raise ValueError(f"config field 'schema_version' must be {SCHEMA_VERSION}, got {version!r}")
    kwargs = {}
    optimizer = raw.pop("optimizer", None)
    if optimizer is not None:
        if not isinstance(optimizer, dict):
            raise ValueError("config field 'optimizer' must be an object")
        extra = set(optimizer) - {"restarts", "tol"}
        if extra:
            raise ValueError(f"config field 'optimizer' has unknown keys {sorted(extra)}")
        if "restarts" in optimizer:
            kwargs["restarts"] = optimizer["restarts"]
        if "tol" in optimizer:
            kwargs["tol"] = optimizer["tol"]
    output = raw.pop("output", None)
    if output is not None:
        if not isinstance(output, dict) or set(output) - {"path", "format"}:
            raise ValueError("config field 'output' must be an object with keys 'path' and 'format'")
        kwargs["output_path"] = output.get("path")
        kwargs["output_format"] = output.get("format", "csv")
    known = {f.name for f in fields(ExperimentConfig)} - {"restarts", "tol", "output_path", "output_format"}
    for key in raw:
        if key not in known:
            raise ValueError(f"config field {key!r} is not recognized")
    kwargs.update(raw)
    for key in ("n_values", "k_values"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    return ExperimentConfig(**kwargs)


# ---------------------------------------------------------------------------
# measurement helpers

def _dense_columns(state, cfg, want_eg):
    """Measure a dense state, honoring the exact-vs-bracket cutoff."""
    cols = {}
    if state.n_qubits <= cfg.exact_cutoff:
        res = macroscopicity.macroscopicity_exact(state, restarts=cfg.restarts, tol=cfg.tol)
        cols.update(
            m_tilde_lower=res.lower_bound,
            m_tilde_upper=res.upper_bound,
            m_tilde=res.m_tilde,
            m_norm=res.m_norm,
            n_m_norm=state.n_qubits * res.m_norm,
            opt_converged=res.stats.converged,
        )
    else:
        upper, candidate = macroscopicity.vcm_upper_bound(build_vcm(state))
        _, lower = macroscopicity.beta_lower_bound(state, candidate)
        cols.update(
            m_tilde_lower=lower,
            m_tilde_upper=upper,
            m_tilde=None,
            m_norm=None,
            n_m_norm=None,
            opt_converged=False,
        )
    if want_eg:
        geo = geometric.geometric_entanglement(state, restarts=cfg.restarts, tol=cfg.tol)
        cols.update(e_g=geo.e_g, eg_converged=geo.converged)
    else:
        cols.update(e_g=None, eg_converged=False)
    return cols


def _symmetric_columns(state, cfg, want_eg):
    res = macroscopicity.macroscopicity_symmetric(state)
    cols = dict(
        m_tilde_lower=res.lower_bound,
        m_tilde_upper=res.upper_bound,
        m_tilde=res.m_tilde,
        m_norm=res.m_norm,
        n_m_norm=state.n_qubits * res.m_norm,
        opt_converged=True,
    )
    if want_eg:
        geo = geometric.geometric_entanglement_symmetric(state, tol=cfg.tol)
        cols.update(e_g=geo.e_g, eg_converged=geo.converged)
    else:
        cols.update(e_g=None, eg_converged=False)
    return cols


_SAMPLED = {
    "physical-scan": ("physical", random_physical_state, True),
    "chain-scan": ("chain", random_linear_chain, True),
    "haar-scan": ("haar", None, False),
    "symmetric-scan": ("symmetric", None, False),
}


def _run_sampled(cfg):
    label, _, uses_k = _SAMPLED[cfg.experiment]
    rows = []
    for n in cfg.n_values:
        k_list = [resolve_schedule(k, n) for k in cfg.k_values] if uses_k else [0]
        for k in k_list:
            if cfg.experiment == "chain-scan" and k > n - 1:
                raise ValueError(f"config field 'k_values': chain prefix {k} exceeds n-1 at n={n}")
            cell = RngStream(cfg.seed, f"{label}/n={n}/k={k}")
            for i in range(cfg.samples):
                stream = cell.child(f"sample={i}")
                if cfg.experiment == "physical-scan":
                    state = random_physical_state(n, k, stream)
                    cols = _dense_columns(state, cfg, cfg.compute_eg)
                elif cfg.experiment == "chain-scan":
                    state = random_linear_chain(n, k, stream)
                    cols = _dense_columns(state, cfg, cfg.compute_eg)
                elif cfg.experiment == "haar-scan":
                    state = haar_random_state(n, stream)
                    cols = _dense_columns(state, cfg, cfg.compute_eg)
                else:
                    state = random_symmetric_state(n, stream)
                    cols = _symmetric_columns(state, cfg, cfg.compute_eg)
                rows.append(Row(ensemble=label, n=n, k=k, sample=i, seed=stream.key_word(), **cols))
    return rows


_NAMED = ("ghz", "w", "bell-product")


def _run_named(cfg):
    rows = []
    for n in cfg.n_values:
        for name in _NAMED:
            if name == "bell-product" and n % 2 == 1:
                continue
            if name == "bell-product":
                check_dense(n)
                cols = _dense_columns(bell_product(n), cfg, cfg.compute_eg)
            else:
                state = ghz(n) if name == "ghz" else dicke(n, 1)
                cols = _symmetric_columns(state, cfg, cfg.compute_eg)
            rows.append(Row(ensemble=name, n=n, k=0, sample=0, seed=0, **cols))
    return rows


def _run_xi(cfg):
    """Walk both studied lines of the interpolation family on samples-point grids."""
    rows = []
    grid = cfg.samples
    thetas = np.linspace(0.0, np.pi / 4.0, grid)
    epsilons = np.linspace(0.0, np.pi, grid, endpoint=False)
    for n in cfg.n_values:
        for idx, theta in enumerate(thetas):
            cols = _symmetric_columns(xi_state(n, theta, np.pi / 2.0), cfg, cfg.compute_eg)
            rows.append(Row(ensemble="xi-theta", n=n, k=idx, sample=0, seed=0, **cols))
        for idx, eps in enumerate(epsilons):
            cols = _symmetric_columns(xi_state(n, np.pi / 4.0, eps), cfg, cfg.compute_eg)
            rows.append(Row(ensemble="xi-epsilon", n=n, k=idx, sample=0, seed=0, **cols))
    return rows


def eta_grid(n, mode, points):
    """Overlap grid for the maximal-macroscopicity curves, uniform in -log2 eta.

    Runs from the two-branch optimum (eta = 1/2) down to the mode's
    feasibility floor, endpoints included.
    """
    top = float(n) if mode == "general" else float(np.log2(n + 1))
    e_g_values = np.linspace(1.0, top, points)
    return 2.0 ** (-e_g_values)


def _run_eta(cfg):
    rows = []
    for n in cfg.n_values:
        for mode in ("general", "symmetric"):
            for idx, eta in enumerate(eta_grid(n, mode, cfg.samples)):
                m_tilde, m_norm = eta_max_bound(eta_max_spec(n, eta, mode))
                rows.append(
                    Row(
                        ensemble=f"eta-{mode}",
                        n=n,
                        k=idx,
                        sample=0,
                        seed=0,
                        m_tilde_lower=m_tilde,
                        m_tilde_upper=m_tilde,
                        m_tilde=m_tilde,
                        m_norm=m_norm,
                        n_m_norm=n * m_norm,
                        e_g=float(-np.log2(eta)),
                        opt_converged=True,
                        eg_converged=True,
                    )
                )
    return rows


def run_experiment(cfg: ExperimentConfig):
    """Execute the configured experiment; returns (rows, summary stats)."""
    if cfg.experiment in _SAMPLED:
        rows = _run_sampled(cfg)
    elif cfg.experiment == "named-state":
        rows = _run_named(cfg)
    elif cfg.experiment == "xi-scan":
        rows = _run_xi(cfg)
    else:
        rows = _run_eta(cfg)
    rows.sort(key=lambda r: (r.n, r.k, r.sample))
    return rows, aggregate(rows)


def aggregate(rows):
    """Fold rows into one StatRecord per (ensemble, n, k) cell."""
    cells = {}
    for r in rows:
        cells.setdefault((r.ensemble, r.n, r.k), []).append(r)
    out = []
    for (ensemble, n, k), group in sorted(cells.items(), key=lambda item: (item[0][1], item[0][2], item[0][0])):
        m = [r.m_norm for r in group if r.m_norm is not None]
        e = [r.e_g for r in group if r.e_g is not None]
        widths = [
            r.m_tilde_upper - r.m_tilde_lower
            for r in group
            if r.m_tilde_upper is not None and r.m_tilde_lower is not None
        ]
        lams = [r.m_tilde_upper / n for r in group if r.m_tilde_upper is not None]
        out.append(
            StatRecord(
                ensemble=ensemble,
                n=n,
                k=k,
                count=len(group),
                mean_m_norm=float(np.mean(m)) if m else None,
                std_m_norm=(float(np.std(m, ddof=1)) if len(m) > 1 else 0.0) if m else None,
                mean_e_g=float(np.mean(e)) if e else None,
                std_e_g=(float(np.std(e, ddof=1)) if len(e) > 1 else 0.0) if e else None,
                mean_bracket_width=float(np.mean(widths)) if widths else None,
                mean_lambda1=float(np.mean(lams)) if lams else None,
            )
        )
    return out


# ---------------------------------------------------------------------------
# serialization

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def emit(rows, fmt="csv", path=None):
    """Serialize rows; returns the text and optionally writes it to path."""
    if fmt == "csv":
        lines = [CSV_HEADER]
        for r in rows:
            lines.append(",".join(_fmt(getattr(r, name)) for name in _field_names()))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        chunks = []
        for r in rows:
            pairs = []
            for name in _field_names():
                value = getattr(r, name)
                if value is None:
                    enc = "null"
                elif isinstance(value, bool):
                    enc = "true" if value else "false"
                elif isinstance(value, float):
                    enc = f"{value:.17g}"
                else:
                    enc = json.dumps(value)
                pairs.append(f'"{name}": {enc}')
            chunks.append("  {" + ", ".join(pairs) + "}")
        text = "[\n" + ",\n".join(chunks) + "\n]\n" if chunks else "[]\n"
    else:
        raise ValueError("format must be 'csv' or 'json'")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def _field_names():
    return tuple(f.name for f in fields(Row))


def parse_rows(source):
    """Inverse of emit(..., 'csv'): bit-exact Row reconstruction.

    Accepts CSV text (any string containing a newline) or a path.
    """
    if isinstance(source, str) and "\n" in source:
        lines = source.splitlines()
    else:
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("input does not start with the documented CSV header")
    rows = []
    for line in lines[1:]:
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(_field_names()):
            raise ValueError(f"row has {len(cells)} cells, expected {len(_field_names())}")
        vals = dict(zip(_field_names(), cells))
        rows.append(
            Row(
                ensemble=vals["ensemble"],
                n=int(vals["n"]),
                k=int(vals["k"]),
                sample=int(vals["sample"]),
                seed=int(vals["seed"]),
                opt_converged=vals["opt_converged"] == "True",
                eg_converged=vals["eg_converged"] == "True",
                **{c: (None if vals[c] == "" else float(vals[c])) for c in _FLOAT_COLS},
            )
        )
    return rows


def stats_to_json(stats):
    entries = []
    for s in stats:
        pairs = []
        for f in fields(StatRecord):
            value = getattr(s, f.name)
            if value is None:
                enc = "null"
            elif isinstance(value, float):
                enc = f"{value:.17g}"
            else:
                enc = json.dumps(value)
            pairs.append(f'"{f.name}": {enc}')
        entries.append("  {" + ", ".join(pairs) + "}")
    return "[\n" + ",\n".join(entries) + "\n]\n" if entries else "[]\n"


def emit_bounds_curves(modes, n_values, grid_points, path=None):
    """Compact per-curve CSV (mode,n,eta,e_g,m_norm) for the bound figures."""
    lines = [BOUNDS_HEADER]
    for n in n_values:
        for mode in modes:
            for eta in eta_grid(n, mode, grid_points):
                m_tilde, m_norm = eta_max_bound(eta_max_spec(n, eta, mode))
                e_g = float(-np.log2(eta))
                lines.append(f"{mode},{n},{eta:.17g},{e_g:.17g},{m_norm:.17g}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
