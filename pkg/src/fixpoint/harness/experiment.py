"""Running configured experiments and comparing schemes."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from fixpoint import engine
from fixpoint.engine import ConfigurationError, CONVERGED_RESIDUAL, CONVERGED_STEP, CONVERGED_TARGET
from fixpoint.harness.io import atomic_write, write_json, write_trace_csv
from fixpoint.harness.plotting import comparison_svg, convergence_svg
from fixpoint.harness.problems import (
    check_scheme,
    config_from_dict,
    oracle_target,
    schedules_from_dict,
)

CONVERGED = (CONVERGED_TARGET, CONVERGED_RESIDUAL, CONVERGED_STEP)


@dataclass
class Summary:
    outcome: str
    iterations: int
    final_residual: float
    final_dist_to_target: float | None
    wall_time_ms: float
    config_digest: str

    @property
    def converged(self):
        return self.outcome in CONVERGED

    def to_dict(self):
        return asdict(self)


def summarize(trace, wall_time_ms):
    last = trace.final
    return Summary(
        outcome=trace.outcome,
        iterations=len(trace.records),
        final_residual=last.residual_max,
        final_dist_to_target=last.dist_to_target,
        wall_time_ms=wall_time_ms,
        config_digest=trace.config_digest,
    )


def problem_target(problem):
    """Oracle target for Euclidean problems, ``None`` elsewhere."""
    return oracle_target(problem) if problem.space.is_euclidean else None


def execute(problem, scheme, schedules, stop, target=None, force=False, config_digest=None):
    """Dispatch to the engine operation for ``scheme``."""
    check_scheme(scheme, problem)
    s = schedules
    common = dict(target=target, force=force, config_digest=config_digest)
    sp, u, v1 = problem.space, problem.u, problem.v1
    if scheme == "itnew":
        return engine.run_itnew(sp, u, v1, problem.maps, s["xi"], s["zeta"], s["weights"], stop, **common)
    if scheme == "res":
        return engine.run_resolvent_scheme(sp, u, v1, problem.ops, s["r"], s["xi"], s["zeta"], s["weights"], stop, **common)
    if scheme == "corollary":
        return engine.run_corollary_single(sp, u, v1, problem.single_map(), s["xi"], s["zeta"], s["phi"], stop, **common)
    if scheme == "halpern":
        return engine.run_halpern(sp, u, v1, problem.single_map(), s["phi"], stop, **common)
    if scheme == "dk":
        # unanchored: the limit is some point of F, not a projection of u
        common["target"] = None
        return engine.run_dk(sp, v1, problem.single_map(), s["wp"], s["xi"], s["zeta"], stop, **common)
    raise ConfigurationError(f"unknown scheme {scheme!r}")


def run_experiment(config, out=None, force=False):
    """Run one configured experiment and write its artifacts.

    Files written to the output directory: ``trace.csv``, ``summary.json`` and
    ``convergence.svg``.  Returns ``(trace, summary)``.
    """
    if isinstance(config, dict):
        config = config_from_dict(config)
    target = problem_target(config.problem)
    t0 = time.perf_counter()
    trace = execute(config.problem, config.scheme, config.schedules, config.stop,
                    target=target, force=force, config_digest=config.digest)
    summary = summarize(trace, (time.perf_counter() - t0) * 1e3)
    out_dir = out if out is not None else config.out
    if out_dir is not None:
        out_dir = Path(out_dir)
        write_trace_csv(trace, out_dir / "trace.csv")
        write_json(summary.to_dict(), out_dir / "summary.json")
        atomic_write(out_dir / "convergence.svg", convergence_svg(trace, f"{config.scheme}: {summary.outcome}"))
    return trace, summary


COMPARE_COLUMNS = ("scheme", "outcome", "iterations", "final_residual", "final_dist_to_target", "wall_time_ms")


@dataclass
class CompareRow:
    scheme: str
    summary: Summary
    trace: object


def compare(problem, entries, stop, force=False):
    """Run every ``(scheme, schedules)`` entry on ``problem`` under a shared stop rule.

    Rows come back ordered by iterations-to-tolerance (non-converged last),
    ties broken by wall time.
    """
    if not entries:
        raise ConfigurationError("compare needs at least one scheme")
    for scheme, _ in entries:
        check_scheme(scheme, problem)
    target = problem_target(problem)
    rows = []
    for scheme, schedules in entries:
        t0 = time.perf_counter()
        trace = execute(problem, scheme, schedules, stop, target=target, force=force)
        rows.append(CompareRow(scheme, summarize(trace, (time.perf_counter() - t0) * 1e3), trace))
    rows.sort(key=lambda r: (0 if r.summary.converged else 1,
                             r.summary.iterations if r.summary.converged else math.inf,
                             r.summary.wall_time_ms))
    return rows


def compare_table_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COMPARE_COLUMNS)
    for r in rows:
        s = r.summary
        w.writerow([r.scheme, s.outcome, s.iterations, repr(s.final_residual),
                    "" if s.final_dist_to_target is None else repr(s.final_dist_to_target),
                    f"{s.wall_time_ms:.3f}"])
    return buf.getvalue()


def compare_from_dict(d, out=None, force=False):
    """Run a compare config: ``{"problem", "schemes": [{"scheme", "schedules"}], "stop", "out"}``."""
    from fixpoint.engine import StopRule
    from fixpoint.harness.problems import effective_seed, problem_from_dict

    problem = problem_from_dict(d["problem"], effective_seed(d.get("seed", 0)))
    specs = d.get("schemes", [])
    if not specs:
        raise ConfigurationError("compare needs at least one scheme")
    for e in specs:
        check_scheme(e["scheme"], problem)
    entries = [(e["scheme"], schedules_from_dict(e["scheme"], e.get("schedules", {}))) for e in specs]
    rows = compare(problem, entries, StopRule.from_dict(d["stop"]), force=force)
    out_dir = out if out is not None else d.get("out")
    if out_dir is not None:
        out_dir = Path(out_dir)
        atomic_write(out_dir / "compare.csv", compare_table_csv(rows))
        atomic_write(out_dir / "compare.svg", comparison_svg({r.scheme: r.trace for r in rows}))
    return rows
