"""Closed-form asymptotic upper and lower bounds on R*(C_q, delta), in nats.

Every rate function here takes a relative distance ``delta`` in [0, 1]. When
an inner argument such as ``2*delta`` leaves the region where the inner rate
is positive, the inner term is 0 and only the capacity-like term remains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from ._numerics import bisect_increasing, scan_then_golden
from .codes import NINE_CYCLE_WEIGHTS, WeightTable
from .errors import DegenerateTableError, DomainError, GridMismatchError

LN2 = math.log(2.0)
DEFAULT_STEPS = 201


def _xlogx(x: float) -> float:
    return 0.0 if x <= 0.0 else x * math.log(x)


def _check_delta(delta: float):
    if not (0.0 <= delta <= 1.0) or math.isnan(delta):
        raise DomainError(f"delta={delta} outside [0, 1]")


def entropy_hq(x: float, q_real: float) -> float:
    """q-ary entropy ``x ln(q-1) - x ln x - (1-x) ln(1-x)`` with 0 ln 0 = 0."""
    if not (0.0 <= x <= 1.0) or math.isnan(x):
        raise DomainError(f"x={x} outside [0, 1]")
    if not q_real > 1.0:
        raise DomainError(f"alphabet size {q_real} must exceed 1")
    lead = x * math.log(q_real - 1.0) if x > 0 else 0.0
    return lead - _xlogx(x) - _xlogx(1.0 - x)


def rate_gv(q_real: float, delta: float) -> float:
    """Gilbert-Varshamov rate ``ln q - H_q(delta)``; zero from delta = 1 - 1/q on."""
    _check_delta(delta)
    if not q_real > 1.0:
        raise DomainError(f"alphabet size {q_real} must exceed 1")
    if delta >= 1.0 - 1.0 / q_real:
        return 0.0
    return max(0.0, math.log(q_real) - entropy_hq(delta, q_real))


def lp1_argument(q_real: float, delta: float) -> float:
    """``((q-1) - (q-2) delta - 2 sqrt((q-1) delta (1-delta))) / q``, clipped at 0."""
    root = math.sqrt((q_real - 1.0) * delta * (1.0 - delta))
    arg = ((q_real - 1.0) - (q_real - 2.0) * delta - 2.0 * root) / q_real
    return min(max(arg, 0.0), 1.0 - 1.0 / q_real)


def rate_lp1(q_real: float, delta: float) -> float:
    """First linear-programming (MRRW) rate; valid for non-integer alphabets."""
    _check_delta(delta)
    if not q_real > 1.0:
        raise DomainError(f"alphabet size {q_real} must exceed 1")
    if delta >= 1.0 - 1.0 / q_real:
        return 0.0
    return entropy_hq(lp1_argument(q_real, delta), q_real)


def _h2_bits(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def _lp2_g(x: float) -> float:
    x = min(max(x, 0.0), 1.0)
    # (1 - sqrt(1-x))/2 written without cancellation near x = 0
    return _h2_bits(0.5 * x / (1.0 + math.sqrt(1.0 - x)))


def rate_lp2_binary(delta: float) -> float:
    """Binary second MRRW bound in nats.

    ``min_{0 < u <= 1-2 delta} ln2 * (1 + g(u^2) - g(u^2 + 2 delta u + 2 delta))``
    with ``g(x) = H_2((1 - sqrt(1-x))/2)`` in bits. At ``u = 1 - 2 delta`` the
    objective is the binary LP1 value, so the result never exceeds it.
    """
    _check_delta(delta)
    if delta >= 0.5:
        return 0.0
    if delta == 0.0:
        return LN2

    def objective(u):
        return 1.0 + _lp2_g(u * u) - _lp2_g(u * u + 2.0 * delta * u + 2.0 * delta)

    hi = 1.0 - 2.0 * delta
    _, best = scan_then_golden(objective, 1e-12, hi, points=200, tol=1e-10)
    best = min(best, objective(hi))
    return max(0.0, LN2 * best)


@dataclass(frozen=True)
class CycleParams:
    """Derived constants of the q-cycle.

    For odd q, ``q_prime = 1 + 1/cos(pi/q)`` is the fractional alphabet size
    and ``theta_l = q cos(pi/q) / (1 + cos(pi/q))`` the Lovasz number, with
    ``theta_l * q_prime == q``. Both are ``None`` for even q.
    """

    q: int
    parity: str
    q_prime: float | None
    theta_l: float | None


def cycle_params(q: int) -> CycleParams:
    if int(q) != q or q < 3:
        raise DomainError(f"cycle order must be an integer >= 3, got {q}")
    q = int(q)
    if q % 2 == 0:
        return CycleParams(q, "even", None, None)
    c = math.cos(math.pi / q)
    return CycleParams(q, "odd", 1.0 + 1.0 / c, q * c / (1.0 + c))


def _odd_params(q: int) -> CycleParams:
    p = cycle_params(q)
    if p.parity != "odd":
        raise DomainError(f"q={q} is even; use compose_binary for even cycles")
    return p


def upper_main(q: int, delta: float) -> float:
    """``ln theta_L(C_q) + R_LP1(q', delta)`` for odd q."""
    p = _odd_params(q)
    return math.log(p.theta_l) + rate_lp1(p.q_prime, delta)


def upper_schur(q: int, delta: float) -> float:
    """``ln theta_L(C_q) + R_LP1(q, delta)`` (integer alphabet in the LP term)."""
    p = _odd_params(q)
    return math.log(p.theta_l) + rate_lp1(float(p.q), delta)


def compose_binary(m: int, binary_curve: Callable[[float], float], delta: float) -> float:
    """``ln(m/2) + binary_curve(delta)``."""
    if m < 2:
        raise DomainError("m must be >= 2")
    _check_delta(delta)
    return math.log(m / 2.0) + binary_curve(delta)


def lower_pentagon(delta: float) -> float:
    """``(1/2) ln 5 + (1/2) R_GV(5, 2 delta)``."""
    return lower_2r1(2, delta)


def lower_2r1(r: int, delta: float) -> float:
    """``((r-1)/r) ln q + (1/r) R_GV(q, r delta)`` for q = 2^r + 1."""
    if r < 2:
        raise DomainError("r must be >= 2")
    _check_delta(delta)
    q = 2 ** r + 1
    inner = r * delta
    tail = rate_gv(q, inner) if inner <= 1.0 else 0.0
    return (r - 1) / r * math.log(q) + tail / r


# ---------------------------------------------------------------------------
# maximum-entropy weighted GV


def max_entropy_distribution(weights: WeightTable, delta_w: float):
    """Maximum-entropy law on ``Z_q`` with mean weight at most ``delta_w``.

    Returns ``(P, lam)`` where ``P`` is proportional to ``exp(-lam * w)``;
    ``lam = 0`` when the uniform law already meets the constraint and
    ``lam = inf`` when only zero-weight symbols are allowed.
    """
    if delta_w < 0 or math.isnan(delta_w):
        raise DomainError("delta_w must be nonnegative")
    w = np.array(weights.w, dtype=float)
    if not (w > 0).any():
        raise DegenerateTableError("weight table has no positive entries")
    q = weights.q
    uniform_mean = w.mean()
    if delta_w >= uniform_mean:
        return np.full(q, 1.0 / q), 0.0
    zero = w == 0
    if delta_w == 0:
        return zero / zero.sum(), math.inf
    finite = np.isfinite(w)

    def law(lam):
        logits = np.where(finite, -lam * np.where(finite, w, 0.0), -np.inf)
        logits -= logits.max()
        p = np.exp(logits)
        return p / p.sum()

    def neg_mean(lam):
        # decreasing in lam; bisect on its negation
        p = law(lam)
        return -float((p[finite] * w[finite]).sum())

    hi = 60.0
    while -neg_mean(hi) > delta_w:
        hi *= 2.0
    lam = bisect_increasing(neg_mean, -delta_w, 0.0, hi, tol=1e-15)
    return law(lam), lam


def weighted_gv_rate(weights: WeightTable, delta_w: float) -> float:
    """``ln q - H(P*)`` for the maximum-entropy ``P*`` with mean weight <= delta_w."""
    p, _ = max_entropy_distribution(weights, delta_w)
    ent = -sum(_xlogx(float(x)) for x in p)
    return max(0.0, math.log(weights.q) - ent)


def ninecycle_multiplier(delta_w: float) -> float:
    """Positive root t of ``2t^2(2 - d) + 6t(1 - d) - d = 0``; 1 beyond d = 10/9."""
    if delta_w >= 10.0 / 9.0:
        return 1.0
    if delta_w <= 0:
        return 0.0
    a = 2.0 * (2.0 - delta_w)
    b = 6.0 * (1.0 - delta_w)
    disc = math.sqrt(b * b + 8.0 * delta_w * (2.0 - delta_w))
    if b >= 0:
        return 2.0 * delta_w / (disc + b)
    return (disc - b) / (2.0 * a)


def ninecycle_rate_closed_form(delta_w: float) -> float:
    """R'(delta_w) from the explicit law (1,t,t,t^2,t,t,t^2,t,t)/(1+6t+2t^2)."""
    if delta_w >= 10.0 / 9.0:
        return 0.0
    t = ninecycle_multiplier(delta_w)
    p = np.array([1, t, t, t * t, t, t, t * t, t, t]) / (1.0 + 6.0 * t + 2.0 * t * t)
    return max(0.0, math.log(9.0) + sum(_xlogx(float(x)) for x in p))


def lower_9cycle(delta: float) -> float:
    """``(2/3) ln 9 + (1/3) R'(3 delta)`` with the exact factor weights of C_9^3."""
    _check_delta(delta)
    return 2.0 / 3.0 * math.log(9.0) + weighted_gv_rate(NINE_CYCLE_WEIGHTS, 3.0 * delta) / 3.0


# ---------------------------------------------------------------------------
# curves


class RatePoint(NamedTuple):
    delta: float
    rate: float


@dataclass(frozen=True)
class BoundCurve:
    label: str
    kind: str
    q: int
    deltas: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        if self.kind not in ("upper", "lower"):
            raise DomainError(f"kind must be 'upper' or 'lower', got {self.kind!r}")
        d = np.asarray(self.deltas, dtype=float)
        r = np.asarray(self.rates, dtype=float)
        if d.shape != r.shape or d.ndim != 1:
            raise DomainError("deltas and rates must be 1-d arrays of equal length")
        if len(d) > 1 and not (np.diff(d) > 0).all():
            raise DomainError("deltas must be strictly increasing")
        if len(d) and (d[0] < 0 or d[-1] > 1):
            raise DomainError("deltas must lie in [0, 1]")
        if not np.isfinite(r).all() or (r < 0).any():
            raise DomainError("rates must be finite and nonnegative")
        object.__setattr__(self, "deltas", d)
        object.__setattr__(self, "rates", r)

    @property
    def points(self) -> list:
        return [RatePoint(float(a), float(b)) for a, b in zip(self.deltas, self.rates)]

    def __len__(self):
        return len(self.deltas)


def delta_grid(steps: int = DEFAULT_STEPS, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if not 0.0 <= lo <= hi <= 1.0:
        raise DomainError("need 0 <= delta-min <= delta-max <= 1")
    if steps == 1:
        return np.array([lo])
    return np.linspace(lo, hi, steps)


def _r_of(q: int) -> int:
    r = int(round(math.log2(q - 1))) if q > 2 else 0
    if r < 2 or 2 ** r + 1 != q:
        raise DomainError(f"q={q} is not of the form 2^r + 1 with r >= 2")
    return r


def curve_function(curve_id: str, q: int) -> tuple:
    """Return ``(kind, delta -> rate)`` for a named curve at cycle order q."""
    even = q % 2 == 0
    if curve_id == "upper-main":
        return "upper", lambda d: upper_main(q, d)
    if curve_id == "upper-schur":
        return "upper", lambda d: upper_schur(q, d)
    if curve_id == "upper-prop2-lp1":
        return "upper", lambda d: compose_binary(q, lambda x: rate_lp1(2.0, x), d)
    if curve_id == "upper-prop2-lp2":
        return "upper", lambda d: compose_binary(q, rate_lp2_binary, d)
    if curve_id == "lower-prop2-gv":
        m = q if even else q - 1
        return "lower", lambda d: compose_binary(m, lambda x: rate_gv(2.0, x), d)
    if curve_id == "lower-gv-pentagon":
        if q != 5:
            raise DomainError("lower-gv-pentagon is defined for q = 5 only")
        return "lower", lower_pentagon
    if curve_id == "lower-2r1-gv":
        r = _r_of(q)
        return "lower", lambda d: lower_2r1(r, d)
    if curve_id == "lower-9cycle":
        if q != 9:
            raise DomainError("lower-9cycle is defined for q = 9 only")
        return "lower", lower_9cycle
    raise DomainError(f"unknown curve id {curve_id!r}")


CURVE_IDS = (
    "upper-main", "upper-schur", "upper-prop2-lp1", "upper-prop2-lp2",
    "lower-prop2-gv", "lower-gv-pentagon", "lower-2r1-gv", "lower-9cycle",
)


def applicable_curves(q: int) -> list:
    """Curve ids that are defined for cycle order q, in canonical order."""
    out = []
    for cid in CURVE_IDS:
        if q % 2 == 0 and cid in ("upper-main", "upper-schur"):
            continue
        try:
            curve_function(cid, q)
        except DomainError:
            continue
        out.append(cid)
    return out


def sample_curve(curve_id: str, q: int, deltas: Sequence[float] | None = None) -> BoundCurve:
    if q < 3:
        raise DomainError("cycle order must be >= 3")
    kind, fn = curve_function(curve_id, q)
    deltas = delta_grid() if deltas is None else np.asarray(deltas, dtype=float)
    rates = np.array([fn(float(d)) for d in deltas])
    return BoundCurve(curve_id, kind, q, deltas, rates)


def envelope(curves: Sequence[BoundCurve], kind: str) -> BoundCurve:
    """Pointwise minimum (``upper``) or maximum (``lower``) of same-grid curves."""
    if not curves:
        raise DomainError("need at least one curve")
    first = curves[0]
    for c in curves[1:]:
        if c.q != first.q or not np.array_equal(c.deltas, first.deltas):
            raise GridMismatchError(f"curve {c.label} is not on the grid of {first.label}")
    stack = np.vstack([c.rates for c in curves])
    rates = stack.min(axis=0) if kind == "upper" else stack.max(axis=0)
    label = first.label if len(curves) == 1 else f"envelope-{kind}"
    return BoundCurve(label, kind, first.q, first.deltas.copy(), rates)
