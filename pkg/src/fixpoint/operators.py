"""Catalogue of quasi-nonexpansive maps and accretive operators.

Every map knows its fixed-point set and every operator its zero set, both as
membership tests and as declarative set descriptions (plain dicts) that the
harness oracle consumes without touching the code in this module.

Projections are metric projections for the Euclidean norm.  In an l_p space
only coordinatewise maps (boxes and what is built from them) stay
quasi-nonexpansive; :meth:`MapSpec.quasi_nonexpansive_in` reports this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from fixpoint.space import DimensionError, SpaceSpec, norm

MEMBERSHIP_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-12


class MalformedSetError(ValueError):
    """A set description is empty, inconsistent or has the wrong shape."""


def _vec(v):
    return tuple(float(c) for c in v)


def _arr(t):
    return np.array(t, dtype=float)


class MapSpec:
    """Base class for catalogue maps ``T`` with a declared fixed-point set."""

    type_name = ""
    dim: int | None = None
    is_projection = False

    def apply(self, x):
        raise NotImplementedError

    def contains(self, x, tol=MEMBERSHIP_TOL):
        """Membership test for ``F(T)``."""
        raise NotImplementedError

    def witness(self):
        """One point of ``F(T)``."""
        raise NotImplementedError

    def fixed_set(self):
        """``F(T)`` as a list of set descriptions whose intersection it is."""
        raise NotImplementedError

    def quasi_nonexpansive_in(self, space):
        return space.is_euclidean

    def to_dict(self):
        raise NotImplementedError


@dataclass(frozen=True)
class HalfspaceProjection(MapSpec):
    """Projection onto ``{x : <a, x> <= b}``."""

    a: tuple
    b: float
    type_name = "halfspace"
    is_projection = True
    _a: np.ndarray = field(init=False, repr=False, compare=False)
    _aa: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", _vec(self.a))
        object.__setattr__(self, "b", float(self.b))
        a = _arr(self.a)
        aa = float(a @ a)
        if aa == 0.0:
            raise MalformedSetError("halfspace normal must be nonzero")
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_aa", aa)

    @property
    def dim(self):
        return len(self.a)

    def apply(self, x):
        excess = float(self._a @ x) - self.b
        if excess <= 0.0:
            return x.copy()
        return x - (excess / self._aa) * self._a

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return float(self._a @ x) - self.b <= tol * max(1.0, math.sqrt(self._aa))

    def witness(self):
        return (self.b / self._aa) * self._a

    def fixed_set(self):
        return [{"set": "halfspace", "a": list(self.a), "b": self.b}]

    def to_dict(self):
        return {"type": self.type_name, "a": list(self.a), "b": self.b}


@dataclass(frozen=True)
class BallProjection(MapSpec):
    center: tuple
    radius: float
    type_name = "ball"
    is_projection = True
    _c: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise MalformedSetError("ball radius must be positive")
        object.__setattr__(self, "_c", _arr(self.center))

    @property
    def dim(self):
        return len(self.center)

    def apply(self, x):
        d = x - self._c
        nd = float(np.linalg.norm(d))
        if nd <= self.radius:
            return x.copy()
        return self._c + (self.radius / nd) * d

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return float(np.linalg.norm(x - self._c)) <= self.radius + tol

    def witness(self):
        return self._c.copy()

    def fixed_set(self):
        return [{"set": "ball", "center": list(self.center), "radius": self.radius}]

    def to_dict(self):
        return {"type": self.type_name, "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class BoxProjection(MapSpec):
    """Coordinatewise clamp to ``[lo, hi]``; infinite bounds are allowed."""

    lo: tuple
    hi: tuple
    type_name = "box"
    is_projection = True
    _lo: np.ndarray = field(init=False, repr=False, compare=False)
    _hi: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", _vec(self.lo))
        object.__setattr__(self, "hi", _vec(self.hi))
        lo, hi = _arr(self.lo), _arr(self.hi)
        if lo.shape != hi.shape:
            raise MalformedSetError("box bounds must have equal length")
        if np.any(lo > hi):
            raise MalformedSetError("box requires lo <= hi componentwise")
        object.__setattr__(self, "_lo", lo)
        object.__setattr__(self, "_hi", hi)

    @classmethod
    def unbounded(cls, dim):
        """The identity map written as a box containing everything."""
        return cls((-math.inf,) * dim, (math.inf,) * dim)

    @property
    def dim(self):
        return len(self.lo)

    def apply(self, x):
        return np.clip(x, self._lo, self._hi)

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return bool(np.all(x >= self._lo - tol) and np.all(x <= self._hi + tol))

    def witness(self):
        return np.clip(np.zeros(self.dim), self._lo, self._hi)

    def fixed_set(self):
        return [{"set": "box", "lo": _json_bounds(self.lo), "hi": _json_bounds(self.hi)}]

    def quasi_nonexpansive_in(self, space):
        return True

    def to_dict(self):
        return {"type": self.type_name, "lo": _json_bounds(self.lo), "hi": _json_bounds(self.hi)}


def _json_bounds(t):
    return [None if math.isinf(v) else v for v in t]


def _from_json_bounds(vals, sign):
    return [sign * math.inf if v is None else float(v) for v in vals]


@dataclass(frozen=True)
class AffineProjection(MapSpec):
    """Projection onto ``{x : A x = b}`` through a precomputed pseudoinverse."""

    rows: tuple
    rhs: tuple
    type_name = "affine"
    is_projection = True
    _A: np.ndarray = field(init=False, repr=False, compare=False)
    _pinv: np.ndarray = field(init=False, repr=False, compare=False)
    _w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(_vec(r) for r in self.rows))
        object.__setattr__(self, "rhs", _vec(self.rhs))
        A = np.array(self.rows, dtype=float)
        b = _arr(self.rhs)
        if A.ndim != 2 or A.shape[0] != b.size or A.shape[0] == 0:
            raise MalformedSetError("affine set needs one rhs entry per row")
        pinv = np.linalg.pinv(A, rcond=1e-10)
        w = pinv @ b
        if np.linalg.norm(A @ w - b) > 1e-9 * max(1.0, float(np.linalg.norm(b))):
            raise MalformedSetError("affine system A x = b is inconsistent")
        object.__setattr__(self, "_A", A)
        object.__setattr__(self, "_pinv", pinv)
        object.__setattr__(self, "_w", w)

    @property
    def dim(self):
        return self._A.shape[1]

    def apply(self, x):
        return x - self._pinv @ (self._A @ x - _arr(self.rhs))

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return float(np.linalg.norm(self._A @ x - _arr(self.rhs))) <= tol * max(1.0, float(np.linalg.norm(self._A)))

    def witness(self):
        return self._w.copy()

    def fixed_set(self):
        return [{"set": "affine", "rows": [list(r) for r in self.rows], "rhs": list(self.rhs)}]

    def to_dict(self):
        return {"type": self.type_name, "rows": [list(r) for r in self.rows], "rhs": list(self.rhs)}


@dataclass(frozen=True)
class Rotation(MapSpec):
    """Planar rotation about the origin, an isometry with ``F = {0}``."""

    theta: float
    type_name = "rotation"
    _R: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        c, s = math.cos(self.theta), math.sin(self.theta)
        object.__setattr__(self, "_R", np.array([[c, -s], [s, c]]))

    dim = 2

    @property
    def _trivial(self):
        return abs(math.remainder(self.theta, 2 * math.pi)) < 1e-15

    def apply(self, x):
        if x.shape != (2,):
            raise DimensionError("rotation is only defined in dimension 2")
        return self._R @ x

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return self._trivial or float(np.linalg.norm(x)) <= tol

    def witness(self):
        return np.zeros(2)

    def fixed_set(self):
        if self._trivial:
            return [{"set": "space", "dim": 2}]
        return [{"set": "point", "x": [0.0, 0.0]}]

    def to_dict(self):
        return {"type": self.type_name, "theta": self.theta}


@dataclass(frozen=True)
class SubgradientProjector(MapSpec):
    """Cutter ``x - f(x)_+ / ||g||^2 g`` for ``f(x) = max_j <a_j, x> - b_j``.

    The target set is the intersection of the halfspaces.  The map is
    quasi-nonexpansive but in general not nonexpansive.
    """

    rows: tuple
    rhs: tuple
    type_name = "subgradient"
    _A: np.ndarray = field(init=False, repr=False, compare=False)
    _w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(_vec(r) for r in self.rows))
        object.__setattr__(self, "rhs", _vec(self.rhs))
        A = np.array(self.rows, dtype=float)
        if A.ndim != 2 or A.shape[0] != len(self.rhs) or A.shape[0] == 0:
            raise MalformedSetError("subgradient projector needs one rhs entry per row")
        if np.any(np.linalg.norm(A, axis=1) == 0):
            raise MalformedSetError("halfspace normals must be nonzero")
        object.__setattr__(self, "_A", A)
        object.__setattr__(self, "_w", _feasible_point(A, _arr(self.rhs)))

    @property
    def dim(self):
        return self._A.shape[1]

    def apply(self, x):
        vals = self._A @ x - _arr(self.rhs)
        j = int(np.argmax(vals))
        fx = float(vals[j])
        if fx <= 0.0:
            return x.copy()
        g = self._A[j]
        return x - (fx / float(g @ g)) * g

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return float(np.max(self._A @ x - _arr(self.rhs))) <= tol

    def witness(self):
        return self._w.copy()

    def fixed_set(self):
        return [{"set": "halfspace", "a": list(r), "b": b} for r, b in zip(self.rows, self.rhs)]

    def to_dict(self):
        return {"type": self.type_name, "rows": [list(r) for r in self.rows], "rhs": list(self.rhs)}


def _feasible_point(A, b):
    from scipy.optimize import linprog

    # Chebyshev-style: maximise the slack s of A x + s ||a_j|| <= b, capped at 1
    norms = np.linalg.norm(A, axis=1)
    n = A.shape[1]
    res = linprog(
        c=np.r_[np.zeros(n), -1.0],
        A_ub=np.c_[A, norms],
        b_ub=b,
        bounds=[(None, None)] * n + [(0.0, 1.0)],
        method="highs",
    )
    if res.status != 0:
        raise MalformedSetError("halfspace intersection is empty")
    return np.asarray(res.x[:n], dtype=float)


@dataclass(frozen=True)
class Averaged(MapSpec):
    """Relaxation ``(1 - lam) I + lam T`` of an inner map."""

    inner: MapSpec
    lam: float
    type_name = "averaged"

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        if not 0.0 < self.lam < 1.0:
            raise MalformedSetError("averaging parameter must lie in (0, 1)")

    @property
    def dim(self):
        return self.inner.dim

    def apply(self, x):
        return (1.0 - self.lam) * x + self.lam * self.inner.apply(x)

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return self.inner.contains(x, tol)

    def witness(self):
        return self.inner.witness()

    def fixed_set(self):
        return self.inner.fixed_set()

    def quasi_nonexpansive_in(self, space):
        return self.inner.quasi_nonexpansive_in(space)

    def to_dict(self):
        return {"type": self.type_name, "inner": self.inner.to_dict(), "lambda": self.lam}


@dataclass(frozen=True)
class Combination(MapSpec):
    """Convex combination ``sum_i w_i T_i``.

    Its fixed-point set is taken to be the common fixed-point set of the
    members, which is exact for projections and cutters.  Used to hand a
    multi-map problem to the single-map schemes.
    """

    maps: tuple
    weights: tuple
    type_name = "combination"

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "weights", _vec(self.weights))
        w = _arr(self.weights)
        if len(self.maps) == 0 or w.size != len(self.maps):
            raise MalformedSetError("combination needs one weight per map")
        if np.any(w <= 0) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise MalformedSetError("combination weights must be positive and sum to 1")
        _common_dim(self.maps)

    @classmethod
    def uniform(cls, maps):
        return cls(tuple(maps), (1.0 / len(maps),) * len(maps))

    @property
    def dim(self):
        return _common_dim(self.maps)

    def apply(self, x):
        out = np.zeros_like(x)
        for w, m in zip(self.weights, self.maps):
            out += w * m.apply(x)
        return out

    def contains(self, x, tol=MEMBERSHIP_TOL):
        return all(m.contains(x, tol) for m in self.maps)

    def witness(self):
        raise MalformedSetError("a common fixed point of several maps is not known locally; use the problem witness")

    def fixed_set(self):
        return [s for m in self.maps for s in m.fixed_set()]

    def quasi_nonexpansive_in(self, space):
        return all(m.quasi_nonexpansive_in(space) for m in self.maps)

    def to_dict(self):
        return {"type": self.type_name, "maps": [m.to_dict() for m in self.maps], "weights": list(self.weights)}


def _common_dim(maps):
    dims = {m.dim for m in maps if m.dim is not None}
    if len(dims) > 1:
        raise DimensionError(f"maps live in different dimensions: {sorted(dims)}")
    return dims.pop() if dims else None


PROJECTION_TYPES = ("halfspace", "ball", "box", "affine")


def map_from_dict(d, dim=None):
    """Build a map from its JSON description (see ``docs/config-schema.md``)."""
    kind = d.get("type")
    if kind == "halfspace":
        return HalfspaceProjection(d["a"], d["b"])
    if kind == "ball":
        return BallProjection(d["center"], d["radius"])
    if kind == "box":
        return BoxProjection(_from_json_bounds(d["lo"], -1), _from_json_bounds(d["hi"], 1))
    if kind == "identity":
        n = d.get("dim", dim)
        if n is None:
            raise MalformedSetError("identity map needs a dimension")
        return BoxProjection.unbounded(int(n))
    if kind == "affine":
        return AffineProjection(d["rows"], d["rhs"])
    if kind == "rotation":
        return Rotation(d["theta"])
    if kind == "subgradient":
        return SubgradientProjector(d["rows"], d["rhs"])
    if kind == "averaged":
        return Averaged(map_from_dict(d["inner"], dim), d["lambda"])
    if kind == "combination":
        return Combination(tuple(map_from_dict(m, dim) for m in d["maps"]), d["weights"])
    raise MalformedSetError(f"unknown map type {kind!r}")


# -- accretive operators -----------------------------------------------------


class OperatorSpec:
    """Base class for catalogue operators ``A`` with closed-form resolvents."""

    type_name = ""
    dim: int | None = None

    def resolvent(self, r, x):
        raise NotImplementedError

    def is_zero(self, x, tol=MEMBERSHIP_TOL):
        raise NotImplementedError

    def known_zero(self):
        raise NotImplementedError

    def zero_set(self):
        raise NotImplementedError

    def accretive_in(self, space):
        return space.is_euclidean

    def to_dict(self):
        raise NotImplementedError


@dataclass(frozen=True)
class QuadraticSubdifferential(OperatorSpec):
    """Gradient of ``scale/2 ||x - center||^2``."""

    center: tuple
    scale: float
    type_name = "quadratic"

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "scale", float(self.scale))
        if not self.scale > 0:
            raise MalformedSetError("quadratic scale must be positive")

    @property
    def dim(self):
        return len(self.center)

    def resolvent(self, r, x):
        rs = r * self.scale
        return (x + rs * _arr(self.center)) / (1.0 + rs)

    def is_zero(self, x, tol=MEMBERSHIP_TOL):
        return float(np.linalg.norm(x - _arr(self.center))) <= tol

    def known_zero(self):
        return _arr(self.center)

    def zero_set(self):
        return [{"set": "point", "x": list(self.center)}]

    def accretive_in(self, space):
        return True

    def to_dict(self):
        return {"type": self.type_name, "center": list(self.center), "scale": self.scale}


@dataclass(frozen=True)
class L1Subdifferential(OperatorSpec):
    """Subdifferential of ``weight ||x||_1``; the resolvent is soft-thresholding."""

    weight: float
    dim: int
    type_name = "l1"

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        if not self.weight > 0:
            raise MalformedSetError("l1 weight must be positive")

    def resolvent(self, r, x):
        return np.sign(x) * np.maximum(np.abs(x) - r * self.weight, 0.0)

    def is_zero(self, x, tol=MEMBERSHIP_TOL):
        return float(np.linalg.norm(x)) <= tol

    def known_zero(self):
        return np.zeros(self.dim)

    def zero_set(self):
        return [{"set": "point", "x": [0.0] * self.dim}]

    def accretive_in(self, space):
        return True

    def to_dict(self):
        return {"type": self.type_name, "weight": self.weight, "dim": self.dim}


@dataclass(frozen=True)
class IndicatorSubdifferential(OperatorSpec):
    """Normal cone of a convex set; the resolvent is the projection for every ``r``."""

    set: MapSpec
    type_name = "indicator"

    def __post_init__(self):
        if not self.set.is_projection:
            raise MalformedSetError("indicator operators need a projection-type set")

    @property
    def dim(self):
        return self.set.dim

    def resolvent(self, r, x):
        return self.set.apply(x)

    def is_zero(self, x, tol=MEMBERSHIP_TOL):
        return self.set.contains(x, tol)

    def known_zero(self):
        return self.set.witness()

    def zero_set(self):
        return self.set.fixed_set()

    def accretive_in(self, space):
        return self.set.quasi_nonexpansive_in(space)

    def to_dict(self):
        return {"type": self.type_name, "set": self.set.to_dict()}


@dataclass(frozen=True)
class LinearPSD(OperatorSpec):
    """``A x = M x`` for a symmetric positive semidefinite ``M``; zeros are ``null(M)``."""

    matrix: tuple
    type_name = "linear_psd"
    _M: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(_vec(r) for r in self.matrix))
        M = np.array(self.matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise MalformedSetError("matrix must be square")
        if np.max(np.abs(M - M.T)) > 1e-12:
            raise MalformedSetError("matrix must be symmetric")
        if np.min(np.linalg.eigvalsh(M)) < -1e-12:
            raise MalformedSetError("matrix must be positive semidefinite")
        object.__setattr__(self, "_M", M)

    @property
    def dim(self):
        return self._M.shape[0]

    def resolvent(self, r, x):
        try:
            return np.linalg.solve(np.eye(self.dim) + r * self._M, x)
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError(f"resolvent solve failed for r={r}") from exc

    def is_zero(self, x, tol=MEMBERSHIP_TOL):
        return float(np.linalg.norm(self._M @ x)) <= tol * max(1.0, float(np.linalg.norm(self._M)))

    def known_zero(self):
        return np.zeros(self.dim)

    def zero_set(self):
        if not np.any(self._M):
            return [{"set": "space", "dim": self.dim}]
        return [{"set": "affine", "rows": [list(r) for r in self.matrix], "rhs": [0.0] * self.dim}]

    def accretive_in(self, space):
        return space.is_euclidean or bool(np.all(self._M == np.diag(np.diag(self._M))))

    def to_dict(self):
        return {"type": self.type_name, "matrix": [list(r) for r in self.matrix]}


def operator_from_dict(d, dim=None):
    kind = d.get("type")
    if kind == "quadratic":
        return QuadraticSubdifferential(d["center"], d.get("scale", 1.0))
    if kind == "l1":
        n = d.get("dim", dim)
        if n is None:
            raise MalformedSetError("l1 operator needs a dimension")
        return L1Subdifferential(d.get("weight", 1.0), int(n))
    if kind == "indicator":
        return IndicatorSubdifferential(map_from_dict(d["set"], dim))
    if kind == "linear_psd":
        return LinearPSD(d["matrix"])
    raise MalformedSetError(f"unknown operator type {kind!r}")


# -- operations --------------------------------------------------------------


def _check_dims(space, thing, x):
    space.check(x)
    if thing.dim is not None and thing.dim != space.dim:
        raise DimensionError(f"{thing.type_name} lives in dimension {thing.dim}, space has {space.dim}")


def apply_map(space, T, x):
    _check_dims(space, T, x)
    return T.apply(x)


def fixed_point_residual(space, T, x):
    """``||x - T x||`` in the norm of ``space``."""
    return norm(space, x - apply_map(space, T, x))


def resolvent(space, op, r, x):
    """``J_r x = (I + r A)^{-1} x``."""
    if not r > 0:
        raise ValueError(f"resolvent parameter must be positive, got {r}")
    _check_dims(space, op, x)
    return op.resolvent(r, x)


def resolvent_identity_defect(space, op, a, k, l):
    """``||J_k a - J_l a|| - |k - l| / k * ||a - J_k a||`` (nonpositive for m-accretive ``A``)."""
    if not (k > 0 and l > 0):
        raise ValueError("resolvent parameters must be positive")
    jk = resolvent(space, op, k, a)
    jl = resolvent(space, op, l, a)
    return norm(space, jk - jl) - abs(k - l) / k * norm(space, a - jk)


def family_combination(space, weights, base, images):
    """``weights[0] * base + sum_i weights[i] * images[i-1]``."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(images) != w.size - 1:
        raise ValueError(f"need {w.size - 1} images for {w.size} weights, got {len(images)}")
    if np.any(w < 0) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"weights must be nonnegative and sum to 1 (sum={w.sum()!r})")
    space.check(base)
    out = w[0] * base
    for wi, y in zip(w[1:], images):
        space.check(y)
        out = out + wi * y
    return out


def chang_inequality_defect(space, weights, points, k, l):
    """Defect of the uniform-convexity inequality with ``g(t) = t^2`` (Euclidean only).

    ``||sum rho_i a_i||^2 - (sum rho_i ||a_i||^2 - rho_k rho_l ||a_k - a_l||^2)``.
    In a Hilbert space the left side equals the full sum minus every pairwise
    term, so dropping all but one pair leaves a nonpositive defect.
    """
    if not space.is_euclidean:
        raise ValueError("the t^2 witness is only valid in Euclidean space")
    rho = np.asarray(weights, dtype=float)
    if len(points) != rho.size:
        raise ValueError("need one weight per point")
    if np.any(rho <= 0) or np.any(rho >= 1) or abs(rho.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError("weights must lie in (0, 1) and sum to 1")
    P = np.array([space.check(np.asarray(p, dtype=float)) for p in points])
    lhs = float(np.linalg.norm(rho @ P)) ** 2
    rhs = float(rho @ np.sum(P * P, axis=1)) - rho[k] * rho[l] * float(np.linalg.norm(P[k] - P[l])) ** 2
    return lhs - rhs


def sunny_defect(space, T, x, delta):
    """``||T(delta x + (1 - delta) T x) - T x||``; zero for sunny retractions."""
    tx = apply_map(space, T, x)
    return norm(space, apply_map(space, T, delta * x + (1.0 - delta) * tx) - tx)


CATALOGUE = {
    "maps": sorted(["affine", "averaged", "ball", "box", "combination", "halfspace", "identity", "rotation", "subgradient"]),
    "operators": sorted(["indicator", "l1", "linear_psd", "quadratic"]),
}
