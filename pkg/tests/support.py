"""Shared helpers: bundled configs and proof-inequality replay."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from fixpoint import engine
from fixpoint.harness.experiment import execute, problem_target
from fixpoint.harness.problems import config_from_dict
from fixpoint.schedules import SingleMapWeights

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"

RUN_CONFIGS = sorted(
    p.stem for p in CONFIGS.glob("*.json")
    if "scheme" in json.loads(p.read_text()) and p.stem != "badschedule"
)


def load(name):
    return json.loads((CONFIGS / f"{name}.json").read_text())


def run_config(name, **overrides):
    raw = load(name)
    raw.update(overrides)
    config = config_from_dict(raw)
    # dk is unanchored, so its limit is not a projection of u
    target = None if config.scheme == "dk" else problem_target(config.problem)
    trace = execute(config.problem, config.scheme, config.schedules, config.stop,
                    target=target, config_digest=config.digest)
    return config, trace, target


def replay(config, trace, target):
    """Defects of the three replayed proof inequalities that apply to ``config``.

    Keys absent from the result mean the inequality has no meaning for the
    scheme (no anchor, no target, or no family weights).
    """
    s = config.schedules
    problem = config.problem
    out = {}
    if config.scheme == "dk":
        return out
    p = target if target is not None else problem.witness
    out["step1"] = engine.check_step1_bound(trace, problem.u, problem.v1, p, space=problem.space)
    if target is None:
        return out
    xi = s["phi"] if config.scheme == "halpern" else s["xi"]
    out["step2"] = engine.check_step2_recursion(trace, problem.u, target, xi)
    weights = {"corollary": lambda: SingleMapWeights(s["phi"]), "halpern": lambda: None}.get(
        config.scheme, lambda: s["weights"])()
    if weights is not None:
        K = engine.residual_bound_constant(trace, problem.u, target, xi, weights)
        out["residual"] = engine.check_residual_bound(trace, target, xi, s["zeta"], weights, K)
    return out


def iterates_distance(trace, z):
    return np.linalg.norm(trace.iterates() - z, axis=1)


# -- random catalogue members ------------------------------------------------

from fixpoint import operators as ops  # noqa: E402


def _unit(rng, dim):
    a = rng.normal(size=dim)
    return a / np.linalg.norm(a)


def random_map(rng, kind, dim):
    """A random instance of catalogue map ``kind`` whose fixed set contains 0."""
    if kind == "halfspace":
        return ops.HalfspaceProjection(rng.normal(size=dim), rng.uniform(0.0, 2.0))
    if kind == "ball":
        c = rng.normal(size=dim)
        return ops.BallProjection(c, np.linalg.norm(c) + rng.uniform(0.1, 1.0))
    if kind == "box":
        lo = -rng.uniform(0.1, 2.0, dim)
        hi = rng.uniform(0.1, 2.0, dim)
        lo[rng.random(dim) < 0.2] = -np.inf
        hi[rng.random(dim) < 0.2] = np.inf
        return ops.BoxProjection(lo, hi)
    if kind == "identity":
        return ops.map_from_dict({"type": "identity"}, dim)
    if kind == "affine":
        m = int(rng.integers(1, dim))
        return ops.AffineProjection(rng.normal(size=(m, dim)), np.zeros(m))
    if kind == "rotation":
        return ops.Rotation(rng.uniform(0.1, 2 * np.pi - 0.1))
    if kind == "subgradient":
        m = int(rng.integers(1, 4))
        return ops.SubgradientProjector(rng.normal(size=(m, dim)), rng.uniform(0.0, 1.0, m))
    if kind == "averaged":
        inner = random_map(rng, str(rng.choice(["halfspace", "ball", "subgradient"])), dim)
        return ops.Averaged(inner, rng.uniform(0.05, 0.95))
    if kind == "combination":
        members = [random_map(rng, k, dim) for k in ("halfspace", "ball", "subgradient")]
        w = rng.dirichlet(np.ones(3))
        return ops.Combination(tuple(members), tuple(w / w.sum()))
    raise ValueError(kind)


def map_kinds(dim):
    return [k for k in ops.CATALOGUE["maps"] if k != "rotation" or dim == 2]


def random_operator(rng, kind, dim):
    if kind == "quadratic":
        return ops.QuadraticSubdifferential(rng.normal(size=dim), rng.uniform(0.1, 5.0))
    if kind == "l1":
        return ops.L1Subdifferential(rng.uniform(0.1, 3.0), dim)
    if kind == "indicator":
        setkind = str(rng.choice(["halfspace", "ball", "box", "affine"]))
        return ops.IndicatorSubdifferential(random_map(rng, setkind, dim))
    if kind == "linear_psd":
        B = rng.normal(size=(dim, int(rng.integers(1, dim + 1))))
        return ops.LinearPSD(B @ B.T)
    raise ValueError(kind)


def points_in_fixed_set(rng, T, k, scale=3.0):
    """``k`` points of F(T) built by the independent projection oracle."""
    from fixpoint.harness.oracle import project_onto_intersection

    dim = T.dim
    sets = T.fixed_set()
    return [project_onto_intersection(sets, rng.uniform(-scale, scale, dim), np.zeros(dim)) for _ in range(k)]
