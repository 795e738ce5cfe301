"""Iteration schemes and replay checks of their convergence inequalities.

Record ``n`` of a trace holds the iterate ``v_n`` together with the quantities
computed from it during step ``n``: the residuals ``||v_n - T_i v_n||``, the
auxiliary gap ``||w_n - v_n||`` and the step ``||v_{n+1} - v_n||``.  Schedules
are indexed from ``n = 0``, so the start point is record 0.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from fixpoint import schedules as sch
from fixpoint.operators import apply_map, resolvent
from fixpoint.space import norm

DIVERGENCE_BOUND = 1e12

CONVERGED_RESIDUAL = "converged_residual"
CONVERGED_STEP = "converged_step"
CONVERGED_TARGET = "converged_target"
MAX_ITERS = "max_iters"


class ValidationError(ValueError):
    """Control conditions fail; ``report`` holds the per-condition verdicts."""

    def __init__(self, scheme, report):
        self.scheme = scheme
        self.report = report
        super().__init__(f"{scheme}: control conditions fail: {', '.join(report.failing())}")


class DivergenceError(ArithmeticError):
    def __init__(self, n, value):
        self.n = n
        super().__init__(f"iterate diverged at n={n} (max |coordinate| = {value:.3g})")


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class StopRule:
    max_iters: int
    residual_tol: float | None = None
    step_tol: float | None = None
    target_tol: float | None = None

    def __post_init__(self):
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ConfigurationError("max_iters must be a positive integer")
        for name in ("residual_tol", "step_tol", "target_tol"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ConfigurationError(f"{name} must be positive")

    def to_dict(self):
        return {k: getattr(self, k) for k in ("max_iters", "residual_tol", "step_tol", "target_tol")}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["max_iters"]), d.get("residual_tol"), d.get("step_tol"), d.get("target_tol"))


@dataclass
class TraceRecord:
    n: int
    v: np.ndarray
    step_norm: float
    residuals: tuple
    w_gap: float
    dist_to_target: float | None = None
    step2_defect: float | None = None

    @property
    def residual_max(self):
        return max(self.residuals) if self.residuals else 0.0


@dataclass
class Trace:
    records: list = field(default_factory=list)
    outcome: str = MAX_ITERS
    config_digest: str = ""

    def __len__(self):
        return len(self.records)

    @property
    def final(self):
        return self.records[-1]

    def iterates(self):
        return np.array([r.v for r in self.records])


def digest(payload):
    """Stable short hash of a JSON-serializable payload."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=True)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _run(space, v1, step, stop, target, u, scheme, payload, config_digest):
    """Drive ``step(n, v) -> (v_next, residuals, w_gap, xi_n)`` under ``stop``."""
    if stop.target_tol is not None and target is None:
        raise ConfigurationError("target_tol is set but no oracle target was supplied")
    euclid = space.is_euclidean
    v = np.array(v1, dtype=float)
    space.check(v)
    trace = Trace(config_digest=config_digest or digest(payload))
    uz = None if target is None else u - target
    for n in range(stop.max_iters):
        v_next, residuals, w_gap, xi_n = step(n, v)
        big = max(-float(v_next.min()), float(v_next.max()))
        if not big <= DIVERGENCE_BOUND:
            raise DivergenceError(n, big)
        rec = TraceRecord(
            n=n,
            v=v,
            step_norm=norm(space, v_next - v),
            residuals=tuple(residuals),
            w_gap=w_gap,
        )
        if target is not None:
            rec.dist_to_target = norm(space, v - target)
            if euclid and xi_n is not None:
                d1 = v_next - target
                rec.step2_defect = (
                    float(d1 @ d1) - (1.0 - xi_n) * rec.dist_to_target**2 - 2.0 * xi_n * float(uz @ d1)
                )
        trace.records.append(rec)
        if stop.target_tol is not None and rec.dist_to_target < stop.target_tol:
            trace.outcome = CONVERGED_TARGET
            break
        if stop.residual_tol is not None and rec.residual_max < stop.residual_tol:
            trace.outcome = CONVERGED_RESIDUAL
            break
        if stop.step_tol is not None and rec.step_norm < stop.step_tol:
            trace.outcome = CONVERGED_STEP
            break
        v = v_next
    return trace


def _gate(scheme, report, force):
    if not force and not report.all_hold:
        raise ValidationError(scheme, report)


def _coefficients(xi, zeta, n):
    x, z = xi(n), zeta(n)
    a, b, c = x, 1.0 - z, z - x
    if min(a, b, c) < 0.0:
        raise ConfigurationError(f"coefficients (xi, 1-zeta, zeta-xi) = ({a}, {b}, {c}) not a convex combination at n={n}")
    assert abs(a + b + c - 1.0) <= 4 * np.finfo(float).eps
    return a, b, c


def _check_maps(space, maps):
    for T in maps:
        if T.dim is not None and T.dim != space.dim:
            raise ConfigurationError(f"{T.type_name} map has dimension {T.dim}, space has {space.dim}")
        if not T.quasi_nonexpansive_in(space):
            raise ConfigurationError(f"{T.type_name} map is not quasi-nonexpansive in {space.kind} space")


def _common(space, u, v1):
    u = np.array(u, dtype=float)
    space.check(u)
    space.check(np.asarray(v1, dtype=float))
    return u


def run_itnew(space, u, v1, maps, xi, zeta, weights, stop, target=None, force=False, config_digest=None):
    """Anchored iteration for the family ``T_0, T_1, ..., T_M``.

    ``w_n = phi_{n,0} v_n + sum_i phi_{n,i} T_i v_n`` and
    ``v_{n+1} = xi_n u + (1 - zeta_n) T_0 v_n + (zeta_n - xi_n) T_0 w_n``.
    """
    maps = list(maps)
    if len(maps) != weights.M + 1:
        raise ConfigurationError(f"family weights cover {weights.M + 1} maps, got {len(maps)}")
    _check_maps(space, maps)
    u = _common(space, u, v1)
    _gate("itnew", sch.validate_theorem_conditions(xi, zeta, weights), force)
    T0, family = maps[0], maps[1:]

    def step(n, v):
        a, b, c = _coefficients(xi, zeta, n)
        t0v = apply_map(space, T0, v)
        images = [apply_map(space, T, v) for T in family]
        phi = weights(n)
        w = phi[0] * v
        for p, y in zip(phi[1:], images):
            w = w + p * y
        v_next = a * u + b * t0v + c * apply_map(space, T0, w)
        residuals = [norm(space, v - t0v)] + [norm(space, v - y) for y in images]
        return v_next, residuals, norm(space, w - v), a

    payload = _payload("itnew", space, u, v1, [m.to_dict() for m in maps], stop,
                       xi=xi.to_dict(), zeta=zeta.to_dict(), weights=weights.to_dict(), force=force)
    return _run(space, v1, step, stop, target, u, "itnew", payload, config_digest)


def run_resolvent_scheme(space, u, v1, ops, r, xi, zeta, weights, stop, target=None, force=False, config_digest=None):
    """Same recursion with ``T_i`` replaced by the resolvents ``J_{r_n}`` of ``A_i``."""
    ops = list(ops)
    if len(ops) != weights.M + 1:
        raise ConfigurationError(f"family weights cover {weights.M + 1} operators, got {len(ops)}")
    for A in ops:
        if A.dim is not None and A.dim != space.dim:
            raise ConfigurationError(f"{A.type_name} operator has dimension {A.dim}, space has {space.dim}")
        if not A.accretive_in(space):
            raise ConfigurationError(f"{A.type_name} operator is not accretive in {space.kind} space")
    u = _common(space, u, v1)
    _gate("res", sch.validate_theorem_conditions(xi, zeta, weights), force)
    A0, family = ops[0], ops[1:]

    def step(n, v):
        a, b, c = _coefficients(xi, zeta, n)
        rn = r(n)
        j0v = resolvent(space, A0, rn, v)
        images = [resolvent(space, A, rn, v) for A in family]
        phi = weights(n)
        w = phi[0] * v
        for p, y in zip(phi[1:], images):
            w = w + p * y
        v_next = a * u + b * j0v + c * resolvent(space, A0, rn, w)
        residuals = [norm(space, v - j0v)] + [norm(space, v - y) for y in images]
        return v_next, residuals, norm(space, w - v), a

    payload = _payload("res", space, u, v1, [A.to_dict() for A in ops], stop,
                       r=r.to_dict(), xi=xi.to_dict(), zeta=zeta.to_dict(), weights=weights.to_dict(), force=force)
    return _run(space, v1, step, stop, target, u, "res", payload, config_digest)


def run_corollary_single(space, u, v1, T, xi, zeta, phi, stop, target=None, force=False, config_digest=None):
    """Single-map variant: ``w_n = (1 - phi_n) v_n + phi_n T v_n``."""
    _check_maps(space, [T])
    u = _common(space, u, v1)
    _gate("corollary", sch.validate_corollary(xi, zeta, phi), force)

    def step(n, v):
        a, b, c = _coefficients(xi, zeta, n)
        p = phi(n)
        tv = apply_map(space, T, v)
        w = (1.0 - p) * v + p * tv
        v_next = a * u + b * tv + c * apply_map(space, T, w)
        return v_next, [norm(space, v - tv)], norm(space, w - v), a

    payload = _payload("corollary", space, u, v1, [T.to_dict()], stop,
                       xi=xi.to_dict(), zeta=zeta.to_dict(), phi=phi.to_dict(), force=force)
    return _run(space, v1, step, stop, target, u, "corollary", payload, config_digest)


def run_halpern(space, u, a0, T, phi, stop, target=None, force=False, config_digest=None):
    """Classical anchored iteration ``a_{n+1} = phi_n u + (1 - phi_n) T a_n``.

    Only C1 and C2 gate the run; whether they suffice is observed, not assumed.
    """
    _check_maps(space, [T])
    u = _common(space, u, a0)
    _gate("halpern", sch.validate_halpern_run(phi), force)

    def step(n, a):
        p = phi(n)
        ta = apply_map(space, T, a)
        return p * u + (1.0 - p) * ta, [norm(space, a - ta)], 0.0, p

    payload = _payload("halpern", space, u, a0, [T.to_dict()], stop, phi=phi.to_dict(), force=force)
    return _run(space, a0, step, stop, target, u, "halpern", payload, config_digest)


def run_dk(space, x0, T, wp, xi, zeta, stop, target=None, force=False, config_digest=None):
    """Unanchored three-parameter scheme.

    ``y_n = (1 - zeta_n) x_n + zeta_n T x_n`` and
    ``x_{n+1} = (1 - wp_n) x_n + xi_n T x_n + (wp_n - xi_n) T y_n``.
    """
    _check_maps(space, [T])
    x0 = np.array(x0, dtype=float)
    space.check(x0)
    _gate("dk", sch.validate_dk(wp, xi, zeta), force)

    def step(n, x):
        w, a, z = wp(n), xi(n), zeta(n)
        tx = apply_map(space, T, x)
        y = (1.0 - z) * x + z * tx
        x_next = (1.0 - w) * x + a * tx + (w - a) * apply_map(space, T, y)
        return x_next, [norm(space, x - tx)], norm(space, y - x), None

    payload = _payload("dk", space, x0, x0, [T.to_dict()], stop,
                       wp=wp.to_dict(), xi=xi.to_dict(), zeta=zeta.to_dict(), force=force)
    return _run(space, x0, step, stop, target, x0, "dk", payload, config_digest)


def _payload(scheme, space, u, v1, members, stop, **params):
    return {
        "scheme": scheme,
        "space": space.to_dict(),
        "u": [float(c) for c in u],
        "v1": [float(c) for c in v1],
        "members": members,
        "stop": stop.to_dict(),
        "params": params,
    }


# -- replay checks -----------------------------------------------------------


def check_step1_bound(trace, u, v1, p, space=None):
    """``max_n ||v_n - p|| - max(||u - p||, ||v_1 - p||)`` over the trace."""
    nrm = (lambda x: float(np.linalg.norm(x))) if space is None else (lambda x: norm(space, x))
    V = trace.iterates()
    bound = max(nrm(np.asarray(u) - p), nrm(np.asarray(v1) - p))
    return max(nrm(v - p) for v in V) - bound


def check_step2_recursion(trace, u, z, xi):
    """Replay ``||v_{n+1}-z||^2 <= (1-xi_n)||v_n-z||^2 + 2 xi_n <u-z, v_{n+1}-z>`` (Euclidean).

    Returns the largest defect; ``-inf`` for traces with a single record.
    """
    V = trace.iterates()
    D = V - z
    sq = np.sum(D * D, axis=1)
    uz = np.asarray(u, dtype=float) - z
    worst = -math.inf
    for n in range(len(V) - 1):
        x = xi(trace.records[n].n)
        worst = max(worst, sq[n + 1] - (1.0 - x) * sq[n] - 2.0 * x * float(uz @ D[n + 1]))
    return worst


def residual_bound_constant(trace, u, z, xi, weights):
    """The sup constant ``K`` that makes the residual bound hold along the trace."""
    V = trace.iterates()
    uz = float(np.sum((np.asarray(u) - z) ** 2))
    M = weights.M
    K = 0.0
    for rec, v in zip(trace.records, V):
        phi = weights(rec.n)
        g = np.asarray(rec.residuals[len(rec.residuals) - M:]) ** 2 if M else np.zeros(0)
        extra = xi(rec.n) * phi[0] * float(np.max(phi[1:] * g)) if M else 0.0
        K = max(K, abs(uz - float(np.sum((v - z) ** 2))) + extra)
    return K


def check_residual_bound(trace, z, xi, zeta, weights, K):
    """Replay ``zeta_n phi_0 phi_i g(||v_n - T_i v_n||) <= ||v_n-z||^2 - ||v_{n+1}-z||^2 + xi_n K``.

    ``g(t) = t^2``; the family members ``i = 1..M`` are the last ``M`` residuals
    of each record.
    """
    V = trace.iterates()
    sq = np.sum((V - z) ** 2, axis=1)
    M = weights.M
    worst = -math.inf
    for k in range(len(V) - 1):
        rec = trace.records[k]
        n = rec.n
        rhs = sq[k] - sq[k + 1] + xi(n) * K
        if M == 0:
            worst = max(worst, -rhs)
            continue
        phi = weights(n)
        res = np.asarray(rec.residuals[len(rec.residuals) - M:])
        lhs = zeta(n) * phi[0] * phi[1:] * res**2
        worst = max(worst, float(np.max(lhs)) - rhs)
    return worst


@dataclass(frozen=True)
class XuVerdict:
    tail_max: float
    below_tol: bool
    n_checked: int


class RecursionHypothesisError(ValueError):
    def __init__(self, n, excess):
        self.n = n
        super().__init__(f"mu_(n+1) <= (1-phi_n) mu_n + phi_n eps_n violated at n={n} by {excess:.3g}")


def xu_recursion_verdict(mu, phi, eps, tol=1e-3, tail=1, slack=1e-12):
    """Check the recursion hypothesis on a finite sequence and report its tail.

    The verdict only says whether the last ``tail`` terms are below ``tol``;
    no claim about the infinite limit is made.
    """
    mu = np.asarray(mu, dtype=float)
    phi = np.asarray(phi, dtype=float)
    eps = np.asarray(eps, dtype=float)
    if np.any(mu < 0):
        raise ValueError("mu must be nonnegative")
    if phi.size < mu.size - 1 or eps.size < mu.size - 1:
        raise ValueError("phi and eps must cover every transition of mu")
    for n in range(mu.size - 1):
        excess = mu[n + 1] - ((1.0 - phi[n]) * mu[n] + phi[n] * eps[n])
        if excess > slack:
            raise RecursionHypothesisError(n, excess)
    t = float(np.max(mu[-tail:]))
    return XuVerdict(t, t < tol, int(mu.size))
