import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from fixpoint.schedules import (
    Constant,
    Geometric,
    PowerLaw,
    ResolventScale,
    SingleMapWeights,
    Table,
    UniformOverM,
    Verdict,
    eval_schedule,
    first_violation,
    scale_from_dict,
    schedule_from_dict,
    validate_corollary,
    validate_dk,
    validate_halpern,
    validate_halpern_run,
    validate_theorem_conditions,
    weights_from_dict,
)

H, F, I = Verdict.HOLDS, Verdict.FAILS, Verdict.INCONCLUSIVE


def verdicts(report):
    return {k: f.verdict for k, f in report.items()}


# -- evaluation --------------------------------------------------------------


def test_eval_examples():
    assert eval_schedule(PowerLaw(1, 1), 0) == 1.0
    assert eval_schedule(PowerLaw(1, 1), 9) == pytest.approx(0.1, rel=1e-15)
    assert eval_schedule(Constant(0.5), 12345) == 0.5
    t = Table([0.9, 0.4], tail="zero")
    assert [eval_schedule(t, n) for n in range(4)] == [0.9, 0.4, 0.0, 0.0]
    assert eval_schedule(Table([0.9, 0.4]), 100) == 0.4
    with pytest.raises(ValueError):
        eval_schedule(Constant(0.5), -1)


@given(st.floats(0.01, 1.0), st.floats(0.01, 3.0), st.integers(0, 10**9))
def test_power_law_in_unit_interval(a, b, n):
    v = eval_schedule(PowerLaw(a, b), n)
    assert 0.0 <= v <= 1.0


@pytest.mark.parametrize("bad", [
    {"form": "power", "a": 0.0, "b": 1.0},
    {"form": "power", "a": 1.5, "b": 1.0},
    {"form": "power", "a": 1.0, "b": 0.0},
    {"form": "const", "c": 1.2},
    {"form": "table", "values": []},
    {"form": "table", "values": [0.5], "tail": "extrapolate"},
    {"form": "cosine"},
])
def test_schedule_rejects_malformed(bad):
    with pytest.raises(ValueError):
        schedule_from_dict(bad)


@pytest.mark.parametrize("s", [PowerLaw(0.5, 1.0), Constant(0.25), Table([0.3, 0.2], "zero")])
def test_schedule_dict_round_trip(s):
    assert schedule_from_dict(s.to_dict()) == s


# -- weights and scales ------------------------------------------------------


@pytest.mark.parametrize("w", [UniformOverM(1, 0.5), UniformOverM(4, 0.5), UniformOverM(7, 0.1),
                               Geometric(3, 0.4, 0.5), Geometric(10, 0.9, 0.99), UniformOverM(0, 0.5)])
def test_weights_normalized(w):
    for n in (0, 1, 10, 10**3, 10**6):
        phi = w(n)
        assert abs(float(np.sum(phi)) - 1.0) <= 1e-12
        assert np.all(phi > 0)
        assert phi.size == w.M + 1


def test_weights_examples():
    np.testing.assert_allclose(UniformOverM(4, 0.5)(0), [0.5, 0.125, 0.125, 0.125, 0.125])
    g = Geometric(2, 0.5, 0.5)(0)
    # q^i normalized: (0.5, 0.25) / 0.75 scaled by 0.5
    np.testing.assert_allclose(g, [0.5, 1 / 3, 1 / 6])
    np.testing.assert_allclose(SingleMapWeights(Constant(0.25))(3), [0.75, 0.25])
    assert weights_from_dict({"rule": "uniform", "M": 2, "phi0": 0.3}) == UniformOverM(2, 0.3)
    with pytest.raises(ValueError):
        UniformOverM(2, 1.0)
    with pytest.raises(ValueError):
        Geometric(2, 0.5, 1.0)


def test_resolvent_scale():
    r = scale_from_dict({"form": "convergent", "r": 1.0, "decay": 1.0})
    assert r(0) == 2.0
    assert r(9) == pytest.approx(1.1)
    assert scale_from_dict(r.to_dict()) == r
    assert ResolventScale(2.0)(5) == 2.0
    with pytest.raises(ValueError):
        ResolventScale(0.0)
    with pytest.raises(ValueError):
        ResolventScale(1.0, -1.0)


# -- Halpern conditions: verdicts against a symbolic oracle -----------------


n = sp.symbols("n", positive=True, integer=True)


def sympy_halpern(a, b):
    """C1, C2, C3, C5 for s_n = a/(n+1)^b decided by sympy."""
    s = a / (n + 1) ** b
    s1 = s.subs(n, n + 1)
    c1 = sp.limit(s, n, sp.oo) == 0
    c2 = sp.Sum(s, (n, 0, sp.oo)).is_convergent() is sp.false
    c3 = sp.limit((s1 - s) / s1**2, n, sp.oo) == 0
    c5 = sp.limit((s1 - s) / s1, n, sp.oo) == 0
    return {"C1": c1, "C2": c2, "C3": c3, "C5": c5}


@pytest.mark.parametrize("a", [sp.Rational(1, 2), sp.Integer(1)])
@pytest.mark.parametrize("b", [sp.Rational(1, 4), sp.Rational(1, 2), sp.Rational(3, 4), sp.Integer(1),
                               sp.Rational(3, 2), sp.Integer(2)])
def test_halpern_verdicts_match_symbolic_oracle(a, b):
    report = validate_halpern(PowerLaw(float(a), float(b)))
    for key, truth in sympy_halpern(a, b).items():
        assert report[key].verdict == (H if truth else F), key


def test_halpern_examples():
    v = verdicts(validate_halpern(PowerLaw(1, 1)))
    assert (v["C1"], v["C2"], v["C3"]) == (H, H, F)
    v = verdicts(validate_halpern(PowerLaw(1, 0.5)))
    assert all(v[k] == H for k in ("C1", "C2", "C3", "C5"))
    assert validate_halpern(Constant(0.5))["C1"].verdict == F
    assert validate_halpern(PowerLaw(1, 2))["C2"].verdict == F


def test_halpern_tables_are_never_asymptotically_certified():
    v = verdicts(validate_halpern(Table([0.5, 0.25, 0.125])))
    assert H not in {v[k] for k in ("C1", "C2", "C3")}


def test_halpern_run_gate_is_c1_c2():
    r = validate_halpern_run(PowerLaw(1, 1))
    assert set(r) == {"C1", "C2"} and r.all_hold


# -- theorem conditions ------------------------------------------------------


def test_theorem_examples():
    v = verdicts(validate_theorem_conditions(PowerLaw(1, 1), Constant(0.5), UniformOverM(4, 0.5)))
    assert v == {"(1)": H, "(2)": H, "(3)": H, "(4)": H, "coeff": F}
    report = validate_theorem_conditions(PowerLaw(0.5, 1), Constant(0.5), UniformOverM(4, 0.5))
    assert report.all_hold
    assert validate_theorem_conditions(PowerLaw(1, 2))["(2)"].verdict == F
    assert validate_theorem_conditions(Constant(0.5))["(1)"].verdict == F


@given(st.floats(0.01, 1.0), st.floats(0.0, 1.0), st.integers(1, 8), st.floats(0.01, 0.99))
def test_theorem_symbolic_rules(a, c, M, p0):
    v = verdicts(validate_theorem_conditions(PowerLaw(a, 1.0), Constant(c), UniformOverM(M, p0)))
    assert v["(1)"] == H and v["(2)"] == H and v["(3)"] == H
    assert v["(4)"] == (H if c > 0 else F)
    # coeff: a/(n+1) <= c for all n iff a <= c
    assert v["coeff"] == (H if a <= c else F)


def test_verdicts_are_deterministic():
    args = (PowerLaw(0.7, 0.9), Constant(0.8), Geometric(3, 0.5, 0.5))
    assert validate_theorem_conditions(*args).to_dict() == validate_theorem_conditions(*args).to_dict()


def test_corollary_conditions():
    assert validate_corollary(PowerLaw(0.5, 1), Constant(0.5), Constant(0.5)).all_hold
    assert not validate_corollary(PowerLaw(0.5, 1), Constant(0.5), Constant(1.0)).all_hold


# -- DK conditions -----------------------------------------------------------


def test_dk_examples():
    assert validate_dk(Constant(0.5), Constant(0.25), Constant(0.5)).all_hold
    assert validate_dk(PowerLaw(1, 2), Constant(0.25), Constant(0.5))["C3"].verdict == F
    assert validate_dk(Constant(0.2), Constant(0.25), Constant(0.5))["C1"].verdict == F


# -- exact for-all comparison ------------------------------------------------


def brute_first_violation(big, small, horizon=10**4):
    for k in range(horizon):
        if big(k) < small(k):
            return k
    return None


@given(st.floats(0.05, 1.0), st.floats(0.1, 2.0), st.floats(0.05, 1.0), st.floats(0.1, 2.0))
def test_first_violation_power_vs_power(a1, b1, a2, b2):
    big, small = PowerLaw(a1, b1), PowerLaw(a2, b2)
    got = first_violation(big, small)
    brute = brute_first_violation(big, small)
    if brute is not None:
        assert got == brute
    elif got is not None:
        assert big(got) < small(got)


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=6), st.sampled_from(["repeat_last", "zero"]),
       st.floats(0.0, 1.0))
def test_first_violation_table_vs_constant(values, tail, c):
    big, small = Table(values, tail), Constant(c)
    assert first_violation(big, small) == brute_first_violation(big, small, 50)
