"""Problem and experiment descriptions, loaded from JSON."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fixpoint import schedules as sch
from fixpoint.engine import ConfigurationError, StopRule, digest
from fixpoint.harness.oracle import InfeasibleProblemError, member, project_onto_intersection
from fixpoint.operators import Combination, map_from_dict, operator_from_dict
from fixpoint.space import SpaceSpec, as_point

COMMON_FIXED_POINT = "common_fixed_point"
COMMON_ZERO = "common_zero"

SCHEMES = ("itnew", "res", "corollary", "halpern", "dk")
SCHEDULE_KEYS = {
    "itnew": ("xi", "zeta", "weights"),
    "res": ("xi", "zeta", "weights", "r"),
    "corollary": ("xi", "zeta", "phi"),
    "halpern": ("phi",),
    "dk": ("wp", "xi", "zeta"),
}
SEED_ENV = "FIXPOINT_SEED"


class SchemeMismatchError(ConfigurationError):
    pass


@dataclass
class ProblemSpec:
    space: SpaceSpec
    kind: str
    members: list
    u: np.ndarray
    v1: np.ndarray
    witness: np.ndarray
    target: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in (COMMON_FIXED_POINT, COMMON_ZERO):
            raise ConfigurationError(f"unknown problem kind {self.kind!r}")
        if not self.members:
            raise ConfigurationError("a problem needs at least one map or operator")
        for x in (self.u, self.v1, self.witness):
            self.space.check(x)
        if not all(member(s, self.witness) for s in self.sets()):
            raise InfeasibleProblemError("witness does not lie in the common fixed-point / zero set")

    @property
    def maps(self):
        if self.kind != COMMON_FIXED_POINT:
            raise SchemeMismatchError("problem has operators, not maps")
        return self.members

    @property
    def ops(self):
        if self.kind != COMMON_ZERO:
            raise SchemeMismatchError("problem has maps, not operators")
        return self.members

    def single_map(self):
        """One map with the same fixed-point set, for the single-map schemes."""
        maps = self.maps
        return maps[0] if len(maps) == 1 else Combination.uniform(maps)

    def sets(self):
        if self.kind == COMMON_FIXED_POINT:
            return [s for m in self.members for s in m.fixed_set()]
        return [s for A in self.members for s in A.zero_set()]

    def to_dict(self):
        d = {
            "space": self.space.to_dict(),
            "kind": self.kind,
            "maps" if self.kind == COMMON_FIXED_POINT else "ops": [m.to_dict() for m in self.members],
            "u": self.u.tolist(),
            "v1": self.v1.tolist(),
            "witness": self.witness.tolist(),
        }
        if self.target is not None:
            d["target"] = self.target.tolist()
        return d


def oracle_target(problem):
    """``P_F u`` (or ``P_Z u``) computed without any iteration-scheme code."""
    if not problem.space.is_euclidean:
        raise ConfigurationError("the projection oracle is only available in Euclidean space")
    z = project_onto_intersection(problem.sets(), problem.u, problem.witness)
    if problem.target is not None:
        gap = float(np.linalg.norm(z - problem.target))
        if gap > 1e-9:
            raise ConfigurationError(f"stored target disagrees with the oracle by {gap:.3g}")
    return z


def problem_from_dict(d, seed=0):
    space = SpaceSpec.from_dict(d["space"])
    kind = d.get("kind", COMMON_FIXED_POINT)
    if kind == COMMON_FIXED_POINT:
        members = [map_from_dict(m, space.dim) for m in d["maps"]]
    elif kind == COMMON_ZERO:
        members = [operator_from_dict(o, space.dim) for o in d["ops"]]
    else:
        raise ConfigurationError(f"unknown problem kind {kind!r}")
    u = as_point(d["u"], space.dim)
    v1 = _start_point(d["v1"], space.dim, seed)
    if "witness" in d:
        witness = as_point(d["witness"], space.dim)
    else:
        witness = _find_witness(space, kind, members)
    target = as_point(d["target"], space.dim) if "target" in d else None
    return ProblemSpec(space, kind, members, u, v1, witness, target)


def _start_point(spec, dim, seed):
    if isinstance(spec, dict) and "random" in spec:
        scale = float(spec["random"].get("scale", 1.0))
        return np.random.default_rng(seed).uniform(-scale, scale, dim)
    return as_point(spec, dim)


def _find_witness(space, kind, members):
    sets = [s for m in members for s in (m.fixed_set() if kind == COMMON_FIXED_POINT else m.zero_set())]
    for m in members:
        try:
            w = m.witness() if kind == COMMON_FIXED_POINT else m.known_zero()
        except ValueError:
            continue
        if all(member(s, w) for s in sets):
            return np.asarray(w, dtype=float)
    raise InfeasibleProblemError("no member witness lies in every set; store one under 'witness'")


def schedules_from_dict(scheme, d):
    if scheme not in SCHEMES:
        raise ConfigurationError(f"unknown scheme {scheme!r}")
    missing = [k for k in SCHEDULE_KEYS[scheme] if k not in d]
    if missing:
        raise ConfigurationError(f"{scheme} needs schedules {', '.join(missing)}")
    out = {}
    for k in SCHEDULE_KEYS[scheme]:
        if k == "weights":
            out[k] = sch.weights_from_dict(d[k])
        elif k == "r":
            out[k] = sch.scale_from_dict(d[k])
        else:
            out[k] = sch.schedule_from_dict(d[k])
    return out


@dataclass
class ExperimentConfig:
    problem: ProblemSpec
    scheme: str
    schedules: dict
    stop: StopRule
    seed: int = 0
    out: str | None = None
    raw: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        check_scheme(self.scheme, self.problem)

    @property
    def digest(self):
        payload = {k: v for k, v in self.raw.items() if k != "out"}
        payload["seed"] = self.seed
        return digest(payload)


def check_scheme(scheme, problem):
    if scheme not in SCHEMES:
        raise ConfigurationError(f"unknown scheme {scheme!r}")
    if scheme == "res" and problem.kind != COMMON_ZERO:
        raise SchemeMismatchError("scheme 'res' needs a common_zero problem")
    if scheme != "res" and problem.kind != COMMON_FIXED_POINT:
        raise SchemeMismatchError(f"scheme {scheme!r} needs a common_fixed_point problem")


def effective_seed(seed):
    env = os.environ.get(SEED_ENV)
    return int(env) if env not in (None, "") else int(seed)


def config_from_dict(d):
    unknown = set(d) - {"problem", "scheme", "schedules", "stop", "seed", "out", "schemes", "description"}
    if unknown:
        raise ConfigurationError(f"unknown config keys: {', '.join(sorted(unknown))}")
    seed = effective_seed(d.get("seed", 0))
    problem = problem_from_dict(d["problem"], seed)
    scheme = d["scheme"]
    check_scheme(scheme, problem)
    return ExperimentConfig(
        problem=problem,
        scheme=scheme,
        schedules=schedules_from_dict(scheme, d.get("schedules", {})),
        stop=StopRule.from_dict(d["stop"]),
        seed=seed,
        out=d.get("out"),
        raw=d,
    )


def load_json(path):
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return json.load(fh)


def load_config(path):
    return config_from_dict(load_json(path))
