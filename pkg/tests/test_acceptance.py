"""Acceptance criteria, one test (or group of tests) per criterion.

Each test is tagged with ``criterion(n, title)``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import math
import time

import numpy as np
import pytest

from fixpoint import engine
from fixpoint import operators as ops
from fixpoint.engine import StopRule
from fixpoint.harness.experiment import run_experiment
from fixpoint.harness.io import trace_to_csv
from fixpoint.harness.oracle import project_onto_intersection
from fixpoint.harness.problems import config_from_dict
from fixpoint.schedules import (
    Constant,
    PowerLaw,
    UniformOverM,
    Verdict,
    validate_halpern,
    validate_theorem_conditions,
)
from fixpoint.space import SpaceSpec, modulus_of_convexity_estimate, modulus_of_smoothness_estimate

from support import (
    RUN_CONFIGS,
    load,
    map_kinds,
    points_in_fixed_set,
    random_map,
    random_operator,
    replay,
    run_config,
)

E2 = SpaceSpec.euclidean(2)
HALFSPACES = [{"set": "halfspace", "a": [1.0, 0.0], "b": 0.0}, {"set": "halfspace", "a": [0.0, -1.0], "b": -1.0}]


def _target_run(name, record_property):
    config = config_from_dict(load(name))
    z = project_onto_intersection(HALFSPACES, config.problem.u)
    s, p = config.schedules, config.problem
    t0 = time.perf_counter()
    if config.scheme == "itnew":
        trace = engine.run_itnew(p.space, p.u, p.v1, p.maps, s["xi"], s["zeta"], s["weights"], config.stop, target=z)
    else:
        trace = engine.run_resolvent_scheme(p.space, p.u, p.v1, p.ops, s["r"], s["xi"], s["zeta"], s["weights"],
                                            config.stop, target=z)
    elapsed = time.perf_counter() - t0
    d = trace.final.dist_to_target
    record_property("measured", f"{len(trace.records)} iters, dist {d:.3e}, {elapsed:.2f} s")
    return z, trace, elapsed


@pytest.mark.criterion(1, "two-halfspace itnew run reaches P_F u = (0,1)")
def test_c1_itnew_feasibility(record_property):
    z, trace, elapsed = _target_run("feasibility2", record_property)
    np.testing.assert_allclose(z, [0.0, 1.0], atol=1e-12)
    assert trace.outcome == engine.CONVERGED_TARGET
    assert trace.final.dist_to_target < 1e-3
    assert len(trace.records) <= 200_000
    assert elapsed < 5.0


@pytest.mark.criterion(2, "two-operator resolvent run reaches P_Z u = (0,1)")
def test_c2_resolvent_common_zero(record_property):
    cfg = load("resolvent2")
    assert cfg["schedules"]["r"] == {"form": "convergent", "r": 1.0, "decay": 1.0}
    z, trace, elapsed = _target_run("resolvent2", record_property)
    np.testing.assert_allclose(z, [0.0, 1.0], atol=1e-12)
    assert trace.outcome == engine.CONVERGED_TARGET
    assert trace.final.dist_to_target < 1e-3
    assert len(trace.records) <= 200_000
    assert elapsed < 5.0


CONVERGED_RUNS = [n for n in RUN_CONFIGS if n != "halpern_rotation"]


@pytest.mark.criterion(3, "proof-inequality replay on converged bundled runs")
@pytest.mark.parametrize("name", CONVERGED_RUNS)
def test_c3_replay(name, record_property):
    config, trace, target = run_config(name)
    assert trace.outcome != engine.MAX_ITERS
    defects = replay(config, trace, target)
    if config.scheme != "dk":
        assert "step1" in defects
    if target is not None:
        assert {"step1", "step2"} <= set(defects)
    if defects:
        record_property("measured", f"{name} worst {max(defects.values()):.1e}")
    else:
        record_property("measured", f"{name} unanchored, nothing to replay")
    for key, value in defects.items():
        assert value <= 1e-8, (key, value)


@pytest.mark.criterion(4, "resolvent identity defect <= 1e-10")
@pytest.mark.parametrize("kind", ops.CATALOGUE["operators"])
def test_c4_resolvent_identity(kind, record_property):
    rng = np.random.default_rng(4)
    worst = -math.inf
    for _ in range(1000):
        dim = int(rng.integers(2, 5))
        space = SpaceSpec.euclidean(dim)
        op = random_operator(rng, kind, dim)
        a = rng.normal(scale=3.0, size=dim)
        k, l = np.exp(rng.uniform(-3, 3, 2))
        worst = max(worst, ops.resolvent_identity_defect(space, op, a, k, l))
    record_property("measured", f"{kind} {worst:.1e}")
    assert worst <= 1e-10


@pytest.mark.criterion(5, "uniform-convexity inequality defect <= 1e-10 (Hilbert)")
def test_c5_chang_inequality(record_property):
    rng = np.random.default_rng(5)
    worst = -math.inf
    for _ in range(1000):
        m = int(rng.integers(2, 6))
        dim = int(rng.integers(1, 5))
        w = rng.dirichlet(np.ones(m))
        w = np.clip(w, 1e-6, None)
        w = w / w.sum()
        pts = list(rng.uniform(-5, 5, size=(m, dim)))
        space = SpaceSpec.euclidean(dim)
        for k in range(m):
            for l in range(m):
                worst = max(worst, ops.chang_inequality_defect(space, w, pts, k, l))
    record_property("measured", f"{worst:.1e}")
    assert worst <= 1e-10


@pytest.mark.criterion(6, "quasi-nonexpansive and retraction suite over the map catalogue")
@pytest.mark.parametrize("dim", [2, 3])
def test_c6_quasi_nonexpansive(dim, record_property):
    rng = np.random.default_rng(6 + dim)
    space = SpaceSpec.euclidean(dim)
    worst_qne, worst_idem = -math.inf, 0.0
    for kind in map_kinds(dim):
        for _ in range(10):
            T = random_map(rng, kind, dim)
            fixed = points_in_fixed_set(rng, T, 3)
            for p in fixed:
                assert ops.fixed_point_residual(space, T, p) <= 1e-8
            for _ in range(100):
                x = rng.normal(scale=4.0, size=dim)
                tx = ops.apply_map(space, T, x)
                for p in fixed:
                    worst_qne = max(worst_qne, np.linalg.norm(tx - p) - np.linalg.norm(x - p))
                if T.is_projection:
                    worst_idem = max(worst_idem, float(np.linalg.norm(ops.apply_map(space, T, tx) - tx)))
    record_property("measured", f"dim {dim}: qne {worst_qne:.1e}, idempotence {worst_idem:.1e}")
    assert worst_qne <= 1e-10
    assert worst_idem <= 1e-10


@pytest.mark.criterion(7, "geometry probes in Euclidean space")
def test_c7_geometry(record_property):
    delta = modulus_of_convexity_estimate(E2, 1.0, 100_000)
    rho = modulus_of_smoothness_estimate(E2, 1.0, 100_000)
    grid = np.linspace(0.2, 2.0, 10)
    deltas = [modulus_of_convexity_estimate(E2, float(e), 20_000) for e in grid]
    record_property("measured", f"delta(1) err {delta - (1 - math.sqrt(3) / 2):.1e}, rho(1) err {rho - (math.sqrt(2) - 1):.1e}")
    assert abs(delta - (1 - math.sqrt(3) / 2)) <= 5e-3
    assert abs(rho - (math.sqrt(2) - 1)) <= 5e-3
    assert all(b >= a for a, b in zip(deltas, deltas[1:]))


@pytest.mark.criterion(8, "schedule validator truth table")
def test_c8_truth_table():
    h = validate_halpern(PowerLaw(1, 1))
    assert (h["C1"].verdict, h["C2"].verdict, h["C3"].verdict) == (Verdict.HOLDS, Verdict.HOLDS, Verdict.FAILS)
    assert validate_halpern(PowerLaw(1, 2))["C2"].verdict == Verdict.FAILS
    t = validate_theorem_conditions(PowerLaw(0.5, 1), Constant(0.5), UniformOverM(4, 0.5))
    assert {k: f.verdict for k, f in t.items()} == {k: Verdict.HOLDS for k in ("(1)", "(2)", "(3)", "(4)", "coeff")}


@pytest.mark.criterion(9, "byte-identical trace CSVs across executions")
@pytest.mark.parametrize("name", RUN_CONFIGS)
def test_c9_determinism(name, tmp_path):
    a = run_experiment(config_from_dict(load(name)), out=tmp_path / "a")
    b = run_experiment(config_from_dict(load(name)), out=tmp_path / "b")
    assert trace_to_csv(a[0]) == trace_to_csv(b[0])
    for f in ("trace.csv", "convergence.svg"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


@pytest.mark.criterion(10, "baseline sanity: Halpern on a rotation, DK on an averaged projection")
def test_c10_halpern_rotation(record_property):
    # u = (1,1) as bundled; the error after n steps is about ||u|| phi_n / sqrt(2)
    T = ops.Rotation(math.pi / 2)
    u = np.array([1.0, 1.0])
    stop = StopRule(max_iters=100_000, target_tol=1e-3)
    trace = engine.run_halpern(E2, u, u, T, PowerLaw(1, 0.5), stop, target=np.zeros(2))
    d = trace.final.dist_to_target
    record_property("measured", f"halpern {len(trace.records)} iters, dist {d:.3e}")
    assert d < 1e-3


@pytest.mark.criterion(10, "baseline sanity: Halpern on a rotation, DK on an averaged projection")
def test_c10_dk_averaged(record_property):
    config = config_from_dict(load("dk_averaged"))
    s, p = config.schedules, config.problem
    assert isinstance(p.single_map(), ops.Averaged)
    trace = engine.run_dk(p.space, p.v1, p.single_map(), s["wp"], s["xi"], s["zeta"], config.stop)
    r = trace.final.residual_max
    record_property("measured", f"dk residual {r:.1e}")
    assert r < 1e-8
