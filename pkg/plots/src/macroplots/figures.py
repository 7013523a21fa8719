"""Figure definitions: from parsed CSV rows to a plottable dataset.

Every figure is built in two steps.  :func:`build_dataset` is a pure
function from input files to a tuple of :class:`Panel` objects -- same
CSV bytes in, same panels out, no matplotlib involved.  The drawing
step lives in :mod:`macroplots.draw` and only walks the panels.  That
split keeps the data pipeline testable without an image in sight.

Figure ids:

``bounds``
    M versus E_G curves from the compact bounds schema, one series per
    (mode, N); solid lines for general states, dashed for symmetric.
``xi-plane``
    The two one-parameter interpolation lines of the xi family, M and
    E_G against the line parameter in units of pi.
``trajectories``
    Ensemble means against circuit depth k for the physical and chain
    ensembles, one-standard-deviation error bars where a cell holds
    more than one sample.
``haar-panels``
    Haar-ensemble means against N with error bars.
``symmetric-panels``
    Symmetric-ensemble means against N; the M panel carries a dashed
    black reference line at 1/sqrt(3).
"""

import math
import statistics
from dataclasses import dataclass

from . import schema
from .schema import SchemaError


@dataclass(frozen=True)
class Series:
    gid: str
    label: str
    x: tuple
    y: tuple
    yerr: tuple | None
    linestyle: str
    marker: str


@dataclass(frozen=True)
class RefLine:
    value: float
    linestyle: str
    color: str
    label: str = ""


@dataclass(frozen=True)
class Panel:
    key: str
    xlabel: str
    ylabel: str
    series: tuple
    ref_lines: tuple = ()
    xscale: str = "linear"


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: figure id, input CSVs, output image, axis ranges."""

    figure: str
    inputs: tuple
    output: str
    xlim: tuple | None = None
    ylim: tuple | None = None

    def __post_init__(self):
        if self.figure not in FIGURES:
            known = ", ".join(sorted(FIGURES))
            raise ValueError(f"unknown figure '{self.figure}', expected one of: {known}")
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if not self.inputs:
            raise ValueError("at least one input CSV path is required")
        for name in ("xlim", "ylim"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, (float(value[0]), float(value[1])))


def build_dataset(spec):
    """Resolve a FigureSpec into its panels without drawing anything."""
    return FIGURES[spec.figure](spec.inputs)


def _stats(values):
    if not values:
        return None, None
    err = statistics.stdev(values) if len(values) > 1 else None
    return statistics.fmean(values), err


def _cell_stats(rows, column):
    return _stats([r[column] for r in rows if r[column] is not None])


def _build_bounds(paths):
    rows = schema.read_bounds_rows(paths)
    groups = {}
    for row in rows:
        groups.setdefault((row["n"], row["mode"]), []).append(row)
    series = []
    for n, mode in sorted(groups):
        pts = sorted((r["e_g"], r["m_norm"]) for r in groups[(n, mode)])
        series.append(
            Series(
                gid=f"series-{mode}-{n}",
                label=f"N={n} ({mode})",
                x=tuple(p[0] for p in pts),
                y=tuple(p[1] for p in pts),
                yerr=None,
                linestyle="-" if mode == "general" else "--",
                marker="",
            )
        )
    panel = Panel(
        key="bounds",
        xlabel=r"$E_G$",
        ylabel=r"$M$",
        series=tuple(series),
    )
    return (panel,)


def _build_xi(paths):
    rows = schema.read_sample_rows(paths)
    lines = {"xi-theta": {}, "xi-epsilon": {}}
    for row in rows:
        if row["ensemble"] in lines:
            lines[row["ensemble"]].setdefault(row["n"], []).append(row)
    if not lines["xi-theta"] and not lines["xi-epsilon"]:
        raise SchemaError("no rows for ensembles 'xi-theta' or 'xi-epsilon' in the input")
    panels = []
    for ensemble, xlabel in (("xi-theta", r"$\theta/\pi$"), ("xi-epsilon", r"$\epsilon/\pi$")):
        groups = lines[ensemble]
        if not groups:
            continue
        for column, ylabel in (("m_norm", r"$M$"), ("e_g", r"$E_G$")):
            series = []
            for n in sorted(groups):
                pts = sorted((r["k"], r[column]) for r in groups[n] if r[column] is not None)
                if not pts:
                    continue
                # The k column indexes the scan grid; recover the line
                # parameter from the grid shape.  The theta line spans
                # [0, pi/4] inclusive, the epsilon line [0, pi) with the
                # endpoint left out, so theta/pi = k/(4*kmax) and
                # epsilon/pi = k/count.
                if ensemble == "xi-theta":
                    kmax = max(p[0] for p in pts) or 1
                    xs = tuple(0.25 * p[0] / kmax for p in pts)
                else:
                    count = len({r["k"] for r in groups[n]})
                    xs = tuple(p[0] / count for p in pts)
                series.append(
                    Series(
                        gid=f"series-{ensemble}-{column}-{n}",
                        label=f"N={n}",
                        x=xs,
                        y=tuple(p[1] for p in pts),
                        yerr=None,
                        linestyle="-",
                        marker="",
                    )
                )
            if series:
                panels.append(
                    Panel(
                        key=f"{ensemble}-{column}",
                        xlabel=xlabel,
                        ylabel=ylabel,
                        series=tuple(series),
                    )
                )
    if not panels:
        raise SchemaError("xi rows carry no numeric m_norm or e_g values")
    return tuple(panels)


def _build_trajectories(paths):
    rows = schema.read_sample_rows(paths)
    cells = {}
    for row in rows:
        if row["ensemble"] in ("physical", "chain"):
            cells.setdefault((row["ensemble"], row["n"]), {}).setdefault(row["k"], []).append(row)
    if not cells:
        raise SchemaError("no rows for ensembles 'physical' or 'chain' in the input")
    panels = []
    for column, ylabel in (("m_norm", r"mean $M$"), ("e_g", r"mean $E_G$")):
        series = []
        for ensemble, n in sorted(cells):
            ks, means, errs = [], [], []
            for k in sorted(cells[(ensemble, n)]):
                mean, err = _cell_stats(cells[(ensemble, n)][k], column)
                if mean is None:
                    continue
                ks.append(k)
                means.append(mean)
                errs.append(err)
            if not ks:
                continue
            series.append(
                Series(
                    gid=f"series-{ensemble}-{column}-{n}",
                    label=f"{ensemble} N={n}",
                    x=tuple(ks),
                    y=tuple(means),
                    yerr=tuple(errs) if any(e is not None for e in errs) else None,
                    linestyle="-",
                    marker="o",
                )
            )
        if not series:
            continue
        depths = [x for s in series for x in s.x]
        log_x = min(depths) >= 1 and max(depths) / min(depths) >= 50
        panels.append(
            Panel(
                key=f"trajectories-{column}",
                xlabel="k (gates)",
                ylabel=ylabel,
                series=tuple(series),
                xscale="log" if log_x else "linear",
            )
        )
    if not panels:
        raise SchemaError("trajectory rows carry no numeric m_norm or e_g values")
    return tuple(panels)


def _build_haar(paths):
    rows = schema.read_sample_rows(paths)
    groups = {}
    for row in rows:
        if row["ensemble"] == "haar":
            groups.setdefault(row["n"], []).append(row)
    if not groups:
        raise SchemaError("no rows for ensemble 'haar' in the input")
    panels = []
    for column, ylabel in (("m_norm", r"mean $M$"), ("e_g", r"mean $E_G$")):
        ns, means, errs = [], [], []
        for n in sorted(groups):
            mean, err = _cell_stats(groups[n], column)
            if mean is None:
                continue
            ns.append(n)
            means.append(mean)
            errs.append(err)
        if not ns:
            continue
        panels.append(
            Panel(
                key=f"haar-{column}",
                xlabel="N",
                ylabel=ylabel,
                series=(
                    Series(
                        gid=f"series-haar-{column}",
                        label="Haar mean",
                        x=tuple(ns),
                        y=tuple(means),
                        yerr=tuple(errs) if any(e is not None for e in errs) else None,
                        linestyle="-",
                        marker="o",
                    ),
                ),
            )
        )
    if not panels:
        raise SchemaError("haar rows carry no numeric m_norm or e_g values")
    return tuple(panels)


def _build_symmetric(paths):
    rows = schema.read_sample_rows(paths)
    groups = {}
    for row in rows:
        if row["ensemble"] == "symmetric":
            groups.setdefault(row["n"], []).append(row)
    if not groups:
        raise SchemaError("no rows for ensemble 'symmetric' in the input")
    m_ns, m_means, m_errs = [], [], []
    l_ns, l_means, l_errs = [], [], []
    for n in sorted(groups):
        mean, err = _cell_stats(groups[n], "m_norm")
        if mean is not None:
            m_ns.append(n)
            m_means.append(mean)
            m_errs.append(err)
        # Normalized top eigenvalue of the site-averaged covariance:
        # m_tilde_upper/N against the large-N plateau 1 + (N-1)/3.
        vals = [
            r["m_tilde_upper"] / n / (1.0 + (n - 1) / 3.0)
            for r in groups[n]
            if r["m_tilde_upper"] is not None
        ]
        mean, err = _stats(vals)
        if mean is not None:
            l_ns.append(n)
            l_means.append(mean)
            l_errs.append(err)
    panels = []
    if m_ns:
        panels.append(
            Panel(
                key="symmetric-m_norm",
                xlabel="N",
                ylabel=r"mean $M$",
                series=(
                    Series(
                        gid="series-symmetric-m_norm",
                        label="symmetric mean",
                        x=tuple(m_ns),
                        y=tuple(m_means),
                        yerr=tuple(m_errs) if any(e is not None for e in m_errs) else None,
                        linestyle="-",
                        marker="o",
                    ),
                ),
                ref_lines=(RefLine(1.0 / math.sqrt(3.0), "--", "black", r"$1/\sqrt{3}$"),),
            )
        )
    if l_ns:
        panels.append(
            Panel(
                key="symmetric-lambda",
                xlabel="N",
                ylabel=r"$\lambda_1 / (1 + (N-1)/3)$",
                series=(
                    Series(
                        gid="series-symmetric-lambda",
                        label="top eigenvalue",
                        x=tuple(l_ns),
                        y=tuple(l_means),
                        yerr=tuple(l_errs) if any(e is not None for e in l_errs) else None,
                        linestyle="-",
                        marker="s",
                    ),
                ),
                ref_lines=(RefLine(1.0, ":", "gray"),),
            )
        )
    if not panels:
        raise SchemaError("symmetric rows carry no numeric m_norm or m_tilde_upper values")
    return tuple(panels)


FIGURES = {
    "bounds": _build_bounds,
    "xi-plane": _build_xi,
    "trajectories": _build_trajectories,
    "haar-panels": _build_haar,
    "symmetric-panels": _build_symmetric,
}

FIGURE_IDS = tuple(sorted(FIGURES))
