"""Matplotlib backend: walk the panels of a dataset and save an image.

Output format follows the file extension (.svg or .png).  Every data
series lands in the image with its dataset gid attached, so SVG output
can be checked structurally: one ``series-*`` element per curve.  SVG
files are written without a creation date to keep repeated renders of
the same CSV byte-comparable apart from unavoidable object ids.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .figures import build_dataset

_GRIDS = {1: (1, 1), 2: (1, 2), 3: (1, 3), 4: (2, 2), 5: (2, 3), 6: (2, 3)}


def _image_format(path):
    suffix = Path(path).suffix.lower()
    if suffix not in (".svg", ".png"):
        raise ValueError(f"unsupported output format '{suffix or path}': use .svg or .png")
    return suffix[1:]


def _draw_panel(ax, panel):
    for s in panel.series:
        (line,) = ax.plot(
            s.x,
            s.y,
            linestyle=s.linestyle,
            marker=s.marker or None,
            label=s.label,
            markersize=4,
        )
        line.set_gid(s.gid)
        if s.yerr is not None:
            bars = [(x, y, e) for x, y, e in zip(s.x, s.y, s.yerr) if e is not None]
            if bars:
                container = ax.errorbar(
                    [b[0] for b in bars],
                    [b[1] for b in bars],
                    yerr=[b[2] for b in bars],
                    fmt="none",
                    ecolor=line.get_color(),
                    capsize=2.5,
                )
                for collection in container[2]:
                    collection.set_gid(f"{s.gid}-err")
    for ref in panel.ref_lines:
        line = ax.axhline(
            ref.value,
            linestyle=ref.linestyle,
            color=ref.color,
            linewidth=1.0,
            label=ref.label or None,
        )
        line.set_gid(f"ref-{panel.key}")
    ax.set_xlabel(panel.xlabel)
    ax.set_ylabel(panel.ylabel)
    ax.set_xscale(panel.xscale)
    if any(s.label for s in panel.series):
        ax.legend(fontsize="small")


def render(spec):
    """Build the dataset for a FigureSpec and write the image file."""
    panels = build_dataset(spec)
    fmt = _image_format(spec.output)
    nrows, ncols = _GRIDS.get(len(panels), (2, (len(panels) + 1) // 2))
    fig, axes = plt.subplots(
        nrows,
        ncols,
        figsize=(4.8 * ncols, 3.6 * nrows),
        squeeze=False,
        constrained_layout=True,
    )
    flat = list(axes.flat)
    for panel, ax in zip(panels, flat):
        _draw_panel(ax, panel)
        if spec.xlim is not None:
            ax.set_xlim(spec.xlim)
        if spec.ylim is not None:
            ax.set_ylim(spec.ylim)
    for ax in flat[len(panels):]:
        ax.set_visible(False)
    try:
        if fmt == "svg":
            fig.savefig(spec.output, format=fmt, metadata={"Date": None})
        else:
            fig.savefig(spec.output, format=fmt, dpi=150)
    finally:
        plt.close(fig)
    return spec.output
