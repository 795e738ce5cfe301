"""Trace CSV and summary JSON files.

Floats are written with ``repr``, the shortest decimal string that round-trips,
so reading a trace back reproduces every value bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from fixpoint.engine import Trace, TraceRecord


def _fmt(x):
    return repr(float(x))


def trace_columns(trace):
    rec = trace.records[0]
    cols = ["n", "step_norm", "w_gap", "residual_max"]
    cols += [f"residual_i{i}" for i in range(len(rec.residuals))]
    if any(r.dist_to_target is not None for r in trace.records):
        cols.append("dist_to_target")
    if any(r.step2_defect is not None for r in trace.records):
        cols.append("step2_defect")
    cols += [f"v{i}" for i in range(rec.v.size)]
    return cols


def trace_to_csv(trace):
    if not trace.records:
        raise ValueError("cannot serialize an empty trace")
    cols = trace_columns(trace)
    has_dist = "dist_to_target" in cols
    has_s2 = "step2_defect" in cols
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in trace.records:
        row = [str(r.n), _fmt(r.step_norm), _fmt(r.w_gap), _fmt(r.residual_max)]
        row += [_fmt(x) for x in r.residuals]
        if has_dist:
            row.append("" if r.dist_to_target is None else _fmt(r.dist_to_target))
        if has_s2:
            row.append("" if r.step2_defect is None else _fmt(r.step2_defect))
        row += [_fmt(x) for x in r.v]
        w.writerow(row)
    return buf.getvalue()


def _opt(row, key):
    v = row.get(key)
    return None if v in (None, "") else float(v)


def trace_from_csv(text):
    """Parse trace CSV text back into a :class:`Trace` (outcome is not stored)."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or "n" not in reader.fieldnames:
        raise ValueError("trace CSV has no header row with an 'n' column")
    res_cols = [c for c in reader.fieldnames if c.startswith("residual_i")]
    v_cols = [c for c in reader.fieldnames if c.startswith("v") and c[1:].isdigit()]
    records = []
    for row in reader:
        records.append(
            TraceRecord(
                n=int(row["n"]),
                v=np.array([float(row[c]) for c in v_cols]),
                step_norm=float(row["step_norm"]),
                residuals=tuple(float(row[c]) for c in res_cols),
                w_gap=float(row["w_gap"]),
                dist_to_target=_opt(row, "dist_to_target"),
                step2_defect=_opt(row, "step2_defect"),
            )
        )
    return Trace(records=records)


def read_trace_csv(path):
    return trace_from_csv(Path(path).read_text(encoding="utf-8"))


def atomic_write(path, data):
    """Write ``data`` (str or bytes) to ``path`` via a temp file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        kw = {} if mode == "wb" else {"encoding": "utf-8", "newline": ""}
        with os.fdopen(fd, mode, **kw) as fh:
            fh.write(data)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_trace_csv(trace, path):
    atomic_write(path, trace_to_csv(trace))


def write_json(obj, path):
    atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
