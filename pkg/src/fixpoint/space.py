"""Finite-dimensional normed spaces: norms, duality maps and geometry probes.

Points are plain ``numpy`` float arrays.  A :class:`SpaceSpec` fixes the norm
(Euclidean or l_p) and therefore the duality map; functionals are coordinate
vectors paired with the Euclidean bracket, while their dual norm is computed
with the conjugate exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EUCLIDEAN = "euclidean"
LP = "lp"

# chunk size for the Monte-Carlo probes; fixed so that a larger sample count
# always sees every pair drawn by a smaller one (monotone refinement)
_PROBE_CHUNK = 4096


class DimensionError(ValueError):
    """Raised when a point does not live in the declared space."""


def as_point(coords, dim=None):
    """Validate ``coords`` and return a fresh 1-D float64 array."""
    x = np.array(coords, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DimensionError(f"a point must be a non-empty 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("point coordinates must be finite")
    if dim is not None and x.size != dim:
        raise DimensionError(f"expected dimension {dim}, got {x.size}")
    return x


@dataclass(frozen=True)
class SpaceSpec:
    """Ambient norm structure: ``kind`` is ``"euclidean"`` or ``"lp"``."""

    kind: str
    dim: int
    p: float = 2.0

    def __post_init__(self):
        if self.kind not in (EUCLIDEAN, LP):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if self.kind == LP and not (1.0 < self.p < np.inf):
            raise ValueError(f"l_p requires 1 < p < inf for uniform convexity, got p={self.p}")
        if self.kind == EUCLIDEAN:
            object.__setattr__(self, "p", 2.0)

    @classmethod
    def euclidean(cls, dim):
        return cls(EUCLIDEAN, dim)

    @classmethod
    def lp(cls, p, dim):
        return cls(LP, dim, float(p))

    @property
    def is_euclidean(self):
        return self.kind == EUCLIDEAN

    @property
    def dual_exponent(self):
        return self.p / (self.p - 1.0)

    def check(self, x):
        if getattr(x, "shape", None) != (self.dim,):
            raise DimensionError(f"point of shape {np.shape(x)} is not in a {self.dim}-dimensional space")
        return x

    def to_dict(self):
        if self.is_euclidean:
            return {"kind": EUCLIDEAN, "dim": self.dim}
        return {"kind": LP, "p": self.p, "dim": self.dim}

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind", EUCLIDEAN)
        if kind in ("euclid", EUCLIDEAN, "hilbert"):
            return cls.euclidean(int(d["dim"]))
        if kind == LP:
            return cls.lp(float(d["p"]), int(d["dim"]))
        raise ValueError(f"unknown space kind {kind!r}")


@dataclass(frozen=True)
class GaugeSpec:
    """Gauge ``phi(t) = t`` (``power=None``) or ``phi(t) = t**power``."""

    power: float | None = None

    def __post_init__(self):
        if self.power is not None and not self.power > 0:
            raise ValueError("gauge exponent must be positive")

    def __call__(self, t):
        return t if self.power is None else t ** self.power


IDENTITY_GAUGE = GaugeSpec()


def norm(space, x):
    space.check(x)
    if space.kind == EUCLIDEAN:
        return math.sqrt(float(np.dot(x, x)))
    return float(np.sum(np.abs(x) ** space.p) ** (1.0 / space.p))


def dual_norm(space, f):
    """Norm of a functional, i.e. the l_q norm with q the conjugate exponent."""
    space.check(f)
    if space.is_euclidean:
        return float(np.linalg.norm(f))
    return float(np.linalg.norm(f, ord=space.dual_exponent))


def pairing(f, x):
    f = np.asarray(f, dtype=float)
    x = np.asarray(x, dtype=float)
    if f.shape != x.shape:
        raise DimensionError(f"cannot pair shapes {f.shape} and {x.shape}")
    return float(np.dot(f, x))


def duality_map(space, x):
    """Normalized duality map ``J``.

    Single-valued on every space handled here.  For l_p the gradient of
    ``||x||**2 / 2`` gives ``j_i = ||x||**(2-p) |x_i|**(p-1) sign(x_i)``.
    ``J(0)`` is the zero functional.
    """
    space.check(x)
    if space.is_euclidean:
        return np.array(x, dtype=float)
    nx = norm(space, x)
    if nx == 0.0:
        return np.zeros_like(x, dtype=float)
    p = space.p
    return nx ** (2.0 - p) * np.abs(x) ** (p - 1.0) * np.sign(x)


def gauge_duality_map(space, gauge, x):
    """Duality map with gauge ``phi``: ``J(x)`` rescaled to dual norm ``phi(||x||)``."""
    space.check(x)
    nx = norm(space, x)
    if nx == 0.0:
        return np.zeros_like(x, dtype=float)
    return (gauge(nx) / nx) * duality_map(space, x)


def gauge_primitive(gauge, t):
    """``psi(t)``, the integral of the gauge from 0 to ``t``."""
    if t < 0:
        raise ValueError("gauge primitive is defined for t >= 0")
    if gauge.power is None:
        return t * t / 2.0
    q = gauge.power
    return t ** (q + 1.0) / (q + 1.0)


def duality_inequality_defect(space, a, b):
    """``||a+b||^2 - ||a||^2 - 2<b, J(a+b)>``; nonpositive in every Banach space."""
    s = a + b
    return norm(space, s) ** 2 - norm(space, a) ** 2 - 2.0 * pairing(b, duality_map(space, s))


def gauge_duality_inequality_defect(space, gauge, a, b):
    """``psi(||a+b||) - psi(||a||) - <b, j_phi(a+b)>``; nonpositive.

    This is the subgradient inequality for the convex function ``psi(||.||)``,
    whose subdifferential at ``a+b`` contains ``j_phi(a+b)``.
    """
    s = a + b
    return (
        gauge_primitive(gauge, norm(space, s))
        - gauge_primitive(gauge, norm(space, a))
        - pairing(b, gauge_duality_map(space, gauge, s))
    )


# -- geometry probes ---------------------------------------------------------


def _unit_rows(space, z):
    if space.is_euclidean:
        n = np.linalg.norm(z, axis=1)
    else:
        n = np.linalg.norm(z, ord=space.p, axis=1)
    return z / n[:, None]


def _row_norms(space, z):
    if space.is_euclidean:
        return np.linalg.norm(z, axis=1)
    return np.linalg.norm(z, ord=space.p, axis=1)


def _chunks(samples, dim, seed):
    rng = np.random.default_rng(seed)
    left = samples
    while left > 0:
        k = min(left, _PROBE_CHUNK)
        yield rng.standard_normal((k, dim)), rng.standard_normal((k, dim))
        left -= k


def _sphere_pairs_at_distance(space, a, b, eps, iters=60):
    """Slide ``b`` along the normalized chord from ``a`` until ``||a - b|| = eps``.

    Rows with ``||a - b|| < eps`` are dropped; rows that are (nearly) antipodal
    are kept as they are since the chord passes through the origin.
    """
    d = _row_norms(space, a - b)
    keep = d >= eps
    a, b, d = a[keep], b[keep], d[keep]
    if a.shape[0] == 0:
        return a, b
    chord_ok = _row_norms(space, a + b) > 1e-9
    lo = np.zeros(a.shape[0])
    hi = np.ones(a.shape[0])
    with np.errstate(invalid="ignore", divide="ignore"):
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            c = _unit_rows(space, a + mid[:, None] * (b - a))
            far = _row_norms(space, a - c) >= eps
            hi = np.where(far, mid, hi)
            lo = np.where(far, lo, mid)
        c = _unit_rows(space, a + hi[:, None] * (b - a))
    b = np.where(chord_ok[:, None], c, b)
    return a, b


def _convexity_seeds(space):
    dim = space.dim
    e = np.eye(dim)
    a = [e[0], e[0]]
    b = [-e[0], e[min(1, dim - 1)] if dim > 1 else -e[0]]
    if dim > 1:
        mer = -e[0] + e[1]
        a.append(e[0])
        b.append(mer / norm(space, mer))
        diag = np.ones(dim) / norm(space, np.ones(dim))
        a.append(diag)
        b.append(-diag)
    return np.array(a), np.array(b)


def modulus_of_convexity_estimate(space, eps, samples=10_000, seed=0):
    """Sampled upper estimate of the modulus of convexity ``delta(eps)``.

    Minimises ``1 - ||a+b||/2`` over unit vectors with ``||a-b|| = eps``,
    using random pairs plus a few deterministic antipodal/meridian pairs.
    Increasing ``samples`` with a fixed ``seed`` can only lower the estimate.
    """
    if not 0.0 <= eps <= 2.0:
        raise ValueError(f"eps must lie in [0, 2], got {eps}")
    if samples < 1:
        raise ValueError("samples must be positive")
    if eps == 0.0:
        return 0.0
    best = np.inf
    sa, sb = _convexity_seeds(space)
    groups = [(sa, sb)]
    groups += [(_unit_rows(space, za), _unit_rows(space, zb)) for za, zb in _chunks(samples, space.dim, seed)]
    for a, b in groups:
        a, b = _sphere_pairs_at_distance(space, a, b, eps)
        if a.shape[0]:
            best = min(best, float(np.min(1.0 - _row_norms(space, a + b) / 2.0)))
    return max(best, 0.0) if np.isfinite(best) else 1.0


def modulus_of_smoothness_estimate(space, t, samples=10_000, seed=0):
    """Sampled lower estimate of the modulus of smoothness ``rho(t)``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if samples < 1:
        raise ValueError("samples must be positive")
    if t == 0:
        return 0.0
    e = np.eye(space.dim)
    seeds_a = np.array([e[0]] * (2 if space.dim > 1 else 1))
    seeds_b = np.array([e[0]] + ([e[1]] if space.dim > 1 else []))
    groups = [(seeds_a, seeds_b)]
    groups += [(_unit_rows(space, za), _unit_rows(space, zb)) for za, zb in _chunks(samples, space.dim, seed)]
    best = 0.0
    for a, b in groups:
        b = t * b
        val = (_row_norms(space, a + b) + _row_norms(space, a - b)) / 2.0 - 1.0
        best = max(best, float(np.max(val)))
    return best
