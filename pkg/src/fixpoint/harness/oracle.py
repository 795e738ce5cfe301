"""Metric projection onto an intersection of simple convex sets.

This module is deliberately self-contained: it works from the declarative set
descriptions and carries its own projectors, so that the iteration code it is
used to check never sits on its path.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

DYKSTRA_TOL = 1e-12
DYKSTRA_MAX_STEPS = 10**6
AGREEMENT_TOL = 1e-10
FEAS_TOL = 1e-9
STATIONARY_TOL = 1e-11


class OracleError(RuntimeError):
    pass


class InfeasibleProblemError(OracleError):
    pass


def _bounds(vals, inf):
    return np.array([inf if v is None else float(v) for v in vals], dtype=float)


def projector(s):
    """Nearest-point map onto one described set."""
    kind = s["set"]
    if kind == "halfspace":
        a = np.asarray(s["a"], dtype=float)
        b = float(s["b"])
        aa = float(a @ a)

        def proj(x):
            t = float(a @ x) - b
            return x - (t / aa) * a if t > 0 else x

        return proj
    if kind == "ball":
        c = np.asarray(s["center"], dtype=float)
        R = float(s["radius"])

        def proj(x):
            d = x - c
            nd = math.sqrt(float(d @ d))
            return c + (R / nd) * d if nd > R else x

        return proj
    if kind == "box":
        lo = _bounds(s["lo"], -np.inf)
        hi = _bounds(s["hi"], np.inf)
        return lambda x: np.minimum(np.maximum(x, lo), hi)
    if kind == "affine":
        A = np.asarray(s["rows"], dtype=float)
        b = np.asarray(s["rhs"], dtype=float)

        def proj(x):
            d = np.linalg.lstsq(A, A @ x - b, rcond=None)[0]
            return x - d

        return proj
    if kind == "point":
        p = np.asarray(s["x"], dtype=float)
        return lambda x: p.copy()
    if kind == "space":
        return lambda x: x
    raise OracleError(f"no projector for set kind {kind!r}")


def member(s, x, tol=FEAS_TOL):
    kind = s["set"]
    if kind == "halfspace":
        a = np.asarray(s["a"], dtype=float)
        return float(a @ x) - float(s["b"]) <= tol * max(1.0, float(np.linalg.norm(a)))
    if kind == "ball":
        return float(np.linalg.norm(x - np.asarray(s["center"], dtype=float))) <= float(s["radius"]) + tol
    if kind == "box":
        return bool(np.all(x >= _bounds(s["lo"], -np.inf) - tol) and np.all(x <= _bounds(s["hi"], np.inf) + tol))
    if kind == "affine":
        A = np.asarray(s["rows"], dtype=float)
        return float(np.linalg.norm(A @ x - np.asarray(s["rhs"], dtype=float))) <= tol * max(1.0, float(np.linalg.norm(A)))
    if kind == "point":
        return float(np.linalg.norm(x - np.asarray(s["x"], dtype=float))) <= tol
    if kind == "space":
        return True
    raise OracleError(f"no membership test for set kind {kind!r}")


def dykstra(sets, u, tol=DYKSTRA_TOL, max_steps=DYKSTRA_MAX_STEPS):
    """Dykstra's alternating projections onto the intersection of ``sets``.

    Dykstra keeps ``u - x`` equal to the sum of the increments.  The loop stops
    once a sweep moves nothing by more than ``tol`` and every increment is
    normal to its set at the current point, i.e. ``P_i(x + incr_i) == x``.
    That makes ``x`` the projection.  Movement alone is not enough: the
    iteration can stall for many sweeps, feasible or not, before an
    accumulated increment kicks it loose again.
    """
    projs = [projector(s) for s in sets]
    m = len(projs)
    x = np.array(u, dtype=float)
    incr = [np.zeros_like(x) for _ in range(m)]
    prev = [x.copy() for _ in range(m)]
    steps = 0
    while steps < max_steps:
        moved = 0.0
        for i, P in enumerate(projs):
            y = x + incr[i]
            x_new = P(y)
            incr[i] = y - x_new
            moved = max(moved, float(np.linalg.norm(x_new - prev[i])))
            prev[i] = x_new
            x = x_new
        steps += m
        if moved < tol and _stationary(projs, incr, x):
            return x, steps
    raise OracleError(f"Dykstra did not reach step tolerance {tol:g} within {max_steps} projections")


def _stationary(projs, incr, x):
    scale = max(1.0, float(np.linalg.norm(x)))
    return all(float(np.linalg.norm(P(x + d) - x)) <= STATIONARY_TOL * scale for P, d in zip(projs, incr))


def _constraints(sets):
    """Split into linear inequalities, balls and equality rows; ``None`` if not expressible."""
    ineq, balls, eq_rows, eq_rhs = [], [], [], []
    for s in sets:
        kind = s["set"]
        if kind == "halfspace":
            ineq.append((np.asarray(s["a"], dtype=float), float(s["b"])))
        elif kind == "box":
            lo, hi = _bounds(s["lo"], -np.inf), _bounds(s["hi"], np.inf)
            for i in range(lo.size):
                e = np.zeros(lo.size)
                e[i] = 1.0
                if np.isfinite(hi[i]):
                    ineq.append((e, hi[i]))
                if np.isfinite(lo[i]):
                    ineq.append((-e, -lo[i]))
        elif kind == "ball":
            balls.append((np.asarray(s["center"], dtype=float), float(s["radius"])))
        elif kind == "affine":
            eq_rows.extend(np.asarray(s["rows"], dtype=float))
            eq_rhs.extend(float(v) for v in s["rhs"])
        elif kind == "point":
            p = np.asarray(s["x"], dtype=float)
            eq_rows.extend(np.eye(p.size))
            eq_rhs.extend(p)
        elif kind == "space":
            continue
        else:
            return None
    return ineq, balls, eq_rows, eq_rhs


def enumeration_applies(sets, max_halfspaces=3):
    c = _constraints(sets)
    return c is not None and len(c[0]) <= max_halfspaces and len(c[1]) <= 1


def _affine_projection(rows, rhs, x):
    if not rows:
        return x.copy(), True
    E = np.array(rows)
    f = np.array(rhs)
    d = np.linalg.lstsq(E, E @ x - f, rcond=None)[0]
    y = x - d
    return y, float(np.linalg.norm(E @ y - f)) <= 1e-9 * max(1.0, float(np.linalg.norm(f)))


def active_set_projection(sets, u):
    """Projection by enumerating active constraint sets.

    Each candidate is the nearest point to ``u`` on the face where the chosen
    constraints hold with equality; the feasible candidate closest to ``u`` is
    the projection.
    """
    if not enumeration_applies(sets):
        raise OracleError("active-set enumeration needs at most 3 halfspaces and 1 ball")
    ineq, balls, eq_rows, eq_rhs = _constraints(sets)
    u = np.asarray(u, dtype=float)
    cons = [("lin", c) for c in ineq] + [("ball", c) for c in balls]
    best, best_d = None, math.inf
    for k in range(len(cons) + 1):
        for active in itertools.combinations(cons, k):
            rows = list(eq_rows) + [a for t, (a, _) in active if t == "lin"]
            rhs = list(eq_rhs) + [b for t, (_, b) in active if t == "lin"]
            x, ok = _affine_projection(rows, rhs, u)
            if not ok:
                continue
            ball = [c for t, c in active if t == "ball"]
            if ball:
                c, R = ball[0]
                cL, _ = _affine_projection(rows, rhs, c)
                rho2 = R * R - float(np.sum((c - cL) ** 2))
                d = x - cL
                nd = float(np.linalg.norm(d))
                if rho2 < 0 or nd == 0.0:
                    continue
                x = cL + math.sqrt(rho2) / nd * d
            if all(member(s, x) for s in sets):
                dist = float(np.linalg.norm(x - u))
                if dist < best_d:
                    best, best_d = x, dist
    if best is None:
        raise InfeasibleProblemError("no feasible candidate among active sets")
    return best


def project_onto_intersection(sets, u, witness=None):
    """``P_C u`` for ``C`` the intersection of ``sets``, cross-checked where possible."""
    sets = [s for s in sets if s["set"] != "space"]
    u = np.asarray(u, dtype=float)
    if witness is not None and not all(member(s, np.asarray(witness, dtype=float)) for s in sets):
        raise InfeasibleProblemError("the stored witness is not in every set")
    if not sets:
        return u.copy()
    if len(sets) == 1:
        x = projector(sets[0])(u.copy())
    else:
        x, _ = dykstra(sets, u)
    if not all(member(s, x, 1e-8) for s in sets):
        raise OracleError("oracle result is not feasible")
    if len(sets) > 1 and enumeration_applies(sets):
        y = active_set_projection(sets, u)
        gap = float(np.linalg.norm(x - y))
        if gap > AGREEMENT_TOL:
            raise OracleError(f"Dykstra and active-set enumeration disagree by {gap:.3g}")
    return x
