"""Convergence figures rendered to SVG with matplotlib.

Output is a pure function of the input data: the SVG hash salt and metadata
are pinned and path simplification is off, so every trace row becomes one
vertex of its polyline.
"""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from fixpoint.harness.io import atomic_write, trace_from_csv  # noqa: E402

WIDTH, HEIGHT = 800, 500
LOG_FLOOR = 1e-20

STYLE = {
    "svg.hashsalt": "fixpoint",
    "svg.fonttype": "path",
    "path.simplify": False,
    "axes.grid": True,
    "grid.linestyle": "--",
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 11,
}

SERIES = (("residual_max", "residual", "#1f77b4"), ("dist_to_target", "distance to target", "#d62728"))


def _log10(values):
    return np.log10(np.maximum(np.asarray(values, dtype=float), LOG_FLOOR))


def _save_svg(fig):
    buf = io.BytesIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def convergence_svg(trace, title=None):
    """SVG bytes with log10 residual and (when present) log10 distance vs n."""
    if not trace.records:
        raise ValueError("cannot plot an empty trace")
    n = np.array([r.n for r in trace.records], dtype=float)
    single = len(n) == 1
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(WIDTH / 72, HEIGHT / 72), dpi=72)
        for key, label, color in SERIES:
            if key == "residual_max":
                y = [r.residual_max for r in trace.records]
            else:
                if trace.records[0].dist_to_target is None:
                    continue
                y = [r.dist_to_target for r in trace.records]
            ax.plot(n, _log10(y), color=color, lw=1.5, label=label, gid=f"series-{key}",
                    marker="o" if single else None)
        ax.set_xlabel("iteration n")
        ax.set_ylabel(r"$\log_{10}$ value")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save_svg(fig)


def emit_plot(trace_csv, out_path, title=None):
    """Read a trace CSV file and write its convergence chart to ``out_path``."""
    with open(trace_csv, "rb") as fh:
        raw = fh.read()
    try:
        trace = trace_from_csv(raw.decode("utf-8"))
    except (UnicodeDecodeError, KeyError, ValueError) as exc:
        raise ValueError(f"cannot parse trace CSV {trace_csv}: {exc}") from exc
    if not trace.records:
        raise ValueError(f"trace CSV {trace_csv} has no records")
    svg = convergence_svg(trace, title)
    atomic_write(out_path, svg)
    return out_path


def comparison_svg(traces, metric="dist_to_target"):
    """Overlay one curve per scheme; ``traces`` maps a label to a trace."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(WIDTH / 72, HEIGHT / 72), dpi=72)
        for label, trace in traces.items():
            n = [r.n for r in trace.records]
            if metric == "dist_to_target" and trace.records[0].dist_to_target is not None:
                y = [r.dist_to_target for r in trace.records]
            else:
                y = [r.residual_max for r in trace.records]
            ax.plot(n, _log10(y), lw=1.5, label=label, gid=f"series-{label}")
        ax.set_xscale("symlog", linthresh=10)
        ax.set_xlabel("iteration n")
        ax.set_ylabel(r"$\log_{10}$ " + metric.replace("_", " "))
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save_svg(fig)


def series_point_counts(svg_bytes):
    """Number of polyline vertices per ``series-*`` group in an SVG."""
    import re
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg_bytes)
    ns = "{http://www.w3.org/2000/svg}"
    counts = {}
    for g in root.iter(f"{ns}g"):
        gid = g.get("id", "")
        if not gid.startswith("series-"):
            continue
        path = g.find(f"{ns}path")
        d = path.get("d", "") if path is not None else ""
        counts[gid[len("series-"):]] = len(re.findall(r"[ML]", d))
    return counts
