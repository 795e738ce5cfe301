"""Parameter sequences and validators for the control conditions.

Closed forms (power laws and constants) earn symbolic verdicts.  Tables are
finite lists with a tail rule; their asymptotic conditions are reported as
inconclusive, while "for all n" comparisons are decided exactly because the
tail is eventually constant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Finding:
    verdict: Verdict
    detail: str = ""

    @property
    def holds(self):
        return self.verdict is Verdict.HOLDS


class Report(dict):
    """Ordered mapping of condition name to :class:`Finding`."""

    @property
    def all_hold(self):
        return all(f.holds for f in self.values())

    def failing(self):
        return [k for k, f in self.items() if not f.holds]

    def to_dict(self):
        return {k: {"verdict": f.verdict.value, "detail": f.detail} for k, f in self.items()}

    def format_table(self):
        width = max((len(k) for k in self), default=4)
        return "\n".join(f"{k:<{width}}  {f.verdict.value:<12}  {f.detail}".rstrip() for k, f in self.items())


def _holds(detail=""):
    return Finding(Verdict.HOLDS, detail)


def _fails(detail=""):
    return Finding(Verdict.FAILS, detail)


def _unknown(detail=""):
    return Finding(Verdict.INCONCLUSIVE, detail)


def _verdict(flag, yes, no):
    return _holds(yes) if flag else _fails(no)


# -- sequences ---------------------------------------------------------------


@dataclass(frozen=True)
class PowerLaw:
    """``s_n = a / (n + 1)**b``."""

    a: float
    b: float

    def __post_init__(self):
        if not 0.0 < self.a <= 1.0:
            raise ValueError(f"power-law scale must lie in (0, 1], got {self.a}")
        if not self.b > 0.0:
            raise ValueError(f"power-law exponent must be positive, got {self.b}")

    def __call__(self, n):
        return self.a / (n + 1) ** self.b

    def to_dict(self):
        return {"form": "power", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Constant:
    c: float

    def __post_init__(self):
        if not 0.0 <= self.c <= 1.0:
            raise ValueError(f"constant schedule must lie in [0, 1], got {self.c}")

    def __call__(self, n):
        return self.c

    def to_dict(self):
        return {"form": "const", "c": self.c}


TAIL_RULES = ("repeat_last", "zero")


@dataclass(frozen=True)
class Table:
    values: tuple
    tail: str = "repeat_last"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("table schedule needs at least one value")
        if any(not 0.0 <= v <= 1.0 for v in self.values):
            raise ValueError("table values must lie in [0, 1]")
        if self.tail not in TAIL_RULES:
            raise ValueError(f"unknown tail rule {self.tail!r}")

    @property
    def tail_value(self):
        return self.values[-1] if self.tail == "repeat_last" else 0.0

    def __call__(self, n):
        return self.values[n] if n < len(self.values) else self.tail_value

    def to_dict(self):
        return {"form": "table", "values": list(self.values), "tail": self.tail}


def eval_schedule(s, n):
    if n < 0:
        raise ValueError("schedules are indexed from n = 0")
    return float(s(n))


def schedule_from_dict(d):
    form = d.get("form")
    if form == "power":
        return PowerLaw(float(d["a"]), float(d["b"]))
    if form == "const":
        return Constant(float(d["c"]))
    if form == "table":
        return Table(d["values"], d.get("tail", "repeat_last"))
    raise ValueError(f"unknown schedule form {form!r}")


# -- family weights ----------------------------------------------------------


@dataclass(frozen=True)
class UniformOverM:
    """``phi_{n,0} = phi0`` and ``phi_{n,i} = (1 - phi0) / M`` for ``1 <= i <= M``.

    ``M = 0`` is the degenerate family where ``w_n = v_n``.
    """

    M: int
    phi0: float

    def __post_init__(self):
        _check_family(self.M, self.phi0)
        w = np.ones(1) if self.M == 0 else np.r_[self.phi0, np.full(self.M, (1.0 - self.phi0) / self.M)]
        w.flags.writeable = False
        object.__setattr__(self, "_w", w)

    def __call__(self, n):
        return self._w

    def to_dict(self):
        return {"rule": "uniform", "M": self.M, "phi0": self.phi0}


@dataclass(frozen=True)
class Geometric:
    """``phi_{n,i}`` proportional to ``q**i``, normalized to mass ``1 - phi0``."""

    M: int
    phi0: float
    q: float

    def __post_init__(self):
        _check_family(self.M, self.phi0)
        if not 0.0 < self.q < 1.0:
            raise ValueError("geometric ratio must lie in (0, 1)")
        if self.M == 0:
            w = np.ones(1)
        else:
            raw = self.q ** np.arange(1, self.M + 1)
            w = np.r_[self.phi0, (1.0 - self.phi0) * raw / raw.sum()]
        w.flags.writeable = False
        object.__setattr__(self, "_w", w)

    def __call__(self, n):
        return self._w

    def to_dict(self):
        return {"rule": "geometric", "M": self.M, "phi0": self.phi0, "q": self.q}


def _check_family(M, phi0):
    if int(M) != M or M < 0:
        raise ValueError("family size M must be a nonnegative integer")
    if M > 0 and not 0.0 < phi0 < 1.0:
        raise ValueError("phi0 must lie in (0, 1)")


@dataclass(frozen=True)
class SingleMapWeights:
    """Weights ``(1 - phi_n, phi_n)`` of the single-map variant, as a family of size 1."""

    phi: object
    M = 1

    def __call__(self, n):
        p = self.phi(n)
        return np.array([1.0 - p, p])


def weights_from_dict(d):
    rule = d.get("rule")
    if rule == "uniform":
        return UniformOverM(int(d["M"]), float(d.get("phi0", 0.5)))
    if rule == "geometric":
        return Geometric(int(d["M"]), float(d["phi0"]), float(d["q"]))
    raise ValueError(f"unknown weight rule {rule!r}")


@dataclass(frozen=True)
class ResolventScale:
    """``r_n = r + decay / (n + 1)`` (``decay = 0`` gives a constant)."""

    r: float
    decay: float = 0.0

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("limit resolvent scale must be positive")
        if not self.r + min(self.decay, 0.0) > 0:
            raise ValueError("resolvent scales must stay positive")

    def __call__(self, n):
        return self.r + self.decay / (n + 1)

    def to_dict(self):
        if self.decay == 0.0:
            return {"form": "const", "r": self.r}
        return {"form": "convergent", "r": self.r, "decay": self.decay}


def scale_from_dict(d):
    form = d.get("form", "const")
    if form == "const":
        return ResolventScale(float(d["r"]))
    if form == "convergent":
        return ResolventScale(float(d["r"]), float(d["decay"]))
    raise ValueError(f"unknown resolvent scale form {form!r}")


# -- symbolic helpers --------------------------------------------------------


def _limit(s):
    """Limit of ``s_n``, or ``None`` for tables (not decided from finitely many terms)."""
    if isinstance(s, PowerLaw):
        return 0.0
    if isinstance(s, Constant):
        return s.c
    return None


def _diverges(s):
    if isinstance(s, PowerLaw):
        return s.b <= 1.0
    if isinstance(s, Constant):
        return s.c > 0.0
    return None


def _name(s):
    if isinstance(s, PowerLaw):
        return f"PowerLaw(a={s.a:g}, b={s.b:g})"
    if isinstance(s, Constant):
        return f"Constant({s.c:g})"
    return f"Table(len={len(s.values)}, tail={s.tail})"


def _tail_form(s):
    """``(n0, closed form)`` such that ``s_n`` equals the closed form for ``n >= n0``."""
    if isinstance(s, Table):
        return len(s.values), ("const", s.tail_value)
    if isinstance(s, Constant):
        return 0, ("const", s.c)
    return 0, ("power", s.a, s.b)


def first_violation(big, small):
    """Smallest ``n`` with ``big_n < small_n``, ``None`` if ``big_n >= small_n`` for all ``n``.

    Decided exactly: a finite prefix is evaluated and the closed-form tails are
    compared symbolically.
    """
    n_big, t_big = _tail_form(big)
    n_small, t_small = _tail_form(small)
    n0 = max(n_big, n_small)
    for n in range(n0):
        if big(n) < small(n):
            return n
    # both are closed forms from n0 on
    if t_small == ("const", 0.0):
        return None
    if t_big[0] == "const" and t_small[0] == "const":
        return None if t_big[1] >= t_small[1] else n0
    if t_big[0] == "const":
        # power law is decreasing, so its largest value on [n0, inf) is at n0
        return None if big(n0) >= small(n0) else n0
    if t_small[0] == "const":
        # a decaying power law eventually drops below a positive constant
        if big(n0) < small(n0):
            return n0
        a, b = t_big[1], t_big[2]
        n = math.ceil((a / t_small[1]) ** (1.0 / b) - 1.0)
        n = max(n, n0)
        while big(n) >= small(n):
            n += 1
        while n > n0 and big(n - 1) < small(n - 1):
            n -= 1
        return n
    # two power laws: ratio big/small = (a1/a2) (n+1)^(b2-b1)
    a1, b1 = t_big[1], t_big[2]
    a2, b2 = t_small[1], t_small[2]
    if big(n0) < small(n0):
        return n0
    if b2 >= b1:
        return None
    n = math.ceil((a1 / a2) ** (1.0 / (b1 - b2)) - 1.0)
    n = max(n, n0)
    while big(n) >= small(n):
        n += 1
    while n > n0 and big(n - 1) < small(n - 1):
        n -= 1
    return n


def _liminf_positive(s):
    lim = _limit(s)
    if lim is None:
        return None
    return lim > 0.0


# -- validators --------------------------------------------------------------


def validate_halpern(s):
    """Verdicts for the six classical conditions on a Halpern schedule."""
    r = Report()
    name = _name(s)
    if isinstance(s, Table):
        note = f"{name}: asymptotic condition not decidable from a table"
        for k in ("C1", "C2", "C3", "C4", "C5", "C6"):
            r[k] = _unknown(note)
        return r
    if isinstance(s, PowerLaw):
        r["C1"] = _holds("s_n -> 0")
        r["C2"] = _verdict(s.b <= 1.0, "sum a/(n+1)^b diverges for b <= 1", "sum a/(n+1)^b converges for b > 1")
        r["C3"] = _verdict(
            s.b < 1.0,
            "(s_{n+1}-s_n)/s_{n+1}^2 ~ -(b/a) n^(b-1) -> 0",
            f"(s_{{n+1}}-s_n)/s_{{n+1}}^2 -> {-s.b / s.a:g} for b = 1" if s.b == 1.0 else "ratio diverges for b > 1",
        )
        r["C4"] = _holds("monotone null sequence: differences telescope")
        r["C5"] = _holds("(s_{n+1}-s_n)/s_{n+1} = ((n+1)/(n+2))^b - 1 -> 0")
        r["C6"] = _holds("implied by C4 with sigma_n = |s_{n+1}-s_n|")
        return r
    c = s.c
    r["C1"] = _verdict(c == 0.0, "limit is 0", f"limit is {c:g} != 0")
    r["C2"] = _verdict(c > 0.0, "constant positive terms diverge", "all terms vanish")
    r["C3"] = _verdict(c > 0.0, "differences vanish identically", "ratio 0/0 undefined")
    r["C4"] = _holds("differences vanish identically")
    r["C5"] = _verdict(c > 0.0, "differences vanish identically", "ratio 0/0 undefined")
    r["C6"] = _holds("implied by C4 with sigma_n = 0")
    return r


def _coefficient_finding(xi, zeta):
    n = first_violation(zeta, xi)
    if n is None:
        return _holds("xi_n <= zeta_n <= 1 for all n")
    return _fails(f"zeta_n < xi_n at n={n} ({zeta(n):g} < {xi(n):g})")


def _condition_1_2(r, xi):
    lim = _limit(xi)
    if lim is None:
        r["(1)"] = _unknown(f"{_name(xi)}: limit not decidable from a table")
    else:
        r["(1)"] = _verdict(lim == 0.0, "xi_n -> 0", f"xi_n -> {lim:g}")
    div = _diverges(xi)
    if div is None:
        r["(2)"] = _unknown(f"{_name(xi)}: divergence not decidable from a table")
    else:
        r["(2)"] = _verdict(div, "sum xi_n = inf", "sum xi_n < inf")


NORMALIZATION_CHECKPOINTS = (0, 1, 10, 10**3, 10**6)


def validate_theorem_conditions(xi, zeta=None, weights=None):
    """Conditions (1)-(4) of the multi-map scheme plus the coefficient condition.

    With only ``xi`` given, just (1) and (2) are reported.
    """
    r = Report()
    _condition_1_2(r, xi)
    if weights is not None:
        defects = [abs(float(np.sum(weights(n))) - 1.0) for n in NORMALIZATION_CHECKPOINTS]
        r["(3)"] = _verdict(max(defects) <= 1e-12, "weights sum to 1", f"weight sum defect {max(defects):.3g}")
    if zeta is not None and weights is not None:
        if weights.M == 0:
            r["(4)"] = _holds("empty family: vacuous")
        else:
            pos = _liminf_positive(zeta)
            w = weights(0)
            if pos is None:
                r["(4)"] = _unknown(f"{_name(zeta)}: liminf not decidable from a table")
            elif pos and np.all(w > 0):
                lo = _limit(zeta) * w[0] * float(np.min(w[1:]))
                r["(4)"] = _holds(f"liminf zeta_n phi_0 phi_i >= {lo:g} for every i <= {weights.M}")
            else:
                r["(4)"] = _fails("liminf zeta_n phi_0 phi_i = 0")
    if zeta is not None:
        r["coeff"] = _coefficient_finding(xi, zeta)
    return r


def validate_corollary(xi, zeta, phi):
    """Conditions of the single-map variant: (1), (2), liminf zeta(1-phi)phi > 0, coeff."""
    r = Report()
    _condition_1_2(r, xi)
    lz, lp = _limit(zeta), _limit(phi)
    if lz is None or lp is None:
        r["(3)"] = _unknown("liminf not decidable from a table")
    else:
        val = lz * (1.0 - lp) * lp
        r["(3)"] = _verdict(val > 0.0, f"liminf zeta_n (1-phi_n) phi_n = {val:g}", "liminf zeta_n (1-phi_n) phi_n = 0")
    r["coeff"] = _coefficient_finding(xi, zeta)
    return r


def validate_dk(wp, xi, zeta):
    """Conditions of the three-parameter scheme of Dogan and Karakaya."""
    r = Report()
    n = first_violation(wp, xi)
    r["C1"] = _holds("wp_n >= xi_n for all n") if n is None else _fails(f"wp_n < xi_n at n={n} ({wp(n):g} < {xi(n):g})")
    # every schedule type already lives in [0, 1]; wp - xi does too once C1 holds
    r["C2"] = _verdict(n is None, "all sequences in [0, 1]", "wp_n - xi_n < 0 for some n")
    div = _diverges(wp)
    if div is None:
        r["C3"] = _unknown(f"{_name(wp)}: divergence not decidable from a table")
    else:
        r["C3"] = _verdict(div, "sum wp_n = inf", "sum wp_n < inf")
    return r


def validate_halpern_run(phi):
    """The C1 + C2 subset that gates a Halpern run."""
    full = validate_halpern(phi)
    return Report((k, full[k]) for k in ("C1", "C2"))
