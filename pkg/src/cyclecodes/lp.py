"""Finite-length linear programming bound in the fractional Krawtchouk scheme.

A certificate is a coefficient vector ``H_0..H_n`` of
``H(u) = sum_l H_l K_l(u; q')`` with ``H_0 > 0``, every ``H_l >= 0`` and
``H(u) <= 0`` on the integers ``d..n``. Each such vector bounds the code size
by ``theta_L^n * H(0) / H_0``. Certificates are accepted only after
:func:`certificate_check` has re-evaluated every constraint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ._numerics import golden_section_min
from .bounds import cycle_params
from .errors import DomainError, InfeasibleDegreeError, LPError
from .krawtchouk import (
    SchemeParams,
    binomial_diagnostic,
    coeff_extract,
    kraw_first_roots,
    kraw_norms,
    kraw_table,
)
from .simplex import PIVOT_TOL, simplex_max

CHECK_RTOL = 1e-9


def _parse_distance(scheme: SchemeParams, d) -> int:
    if d is None or d == math.inf or (isinstance(d, str) and d.strip().lower() == "inf"):
        return scheme.n + 1
    d = int(d)
    if not 1 <= d <= scheme.n + 1:
        raise DomainError(f"distance {d} outside [1, {scheme.n + 1}]")
    return d


@dataclass(frozen=True)
class LPCertificate:
    scheme: SchemeParams
    coeffs: np.ndarray
    d: int

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.shape != (self.scheme.n + 1,):
            raise DomainError(f"expected {self.scheme.n + 1} coefficients, got {c.shape}")
        if not 1 <= self.d <= self.scheme.n + 1:
            raise DomainError(f"distance {self.d} outside [1, {self.scheme.n + 1}]")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def values(self) -> np.ndarray:
        """``H(u)`` at ``u = 0..n``."""
        return self.coeffs @ kraw_table(self.scheme, np.arange(self.scheme.n + 1))

    @property
    def raw_value(self) -> float:
        return float(self.values()[0] / self.coeffs[0])


@dataclass(frozen=True)
class LPBoundResult:
    value: float
    log_bound: float
    rate: float


@dataclass(frozen=True)
class CheckReport:
    feasible: bool
    certified_value: float
    min_coeff: float
    max_constraint: float
    tol: float


def certificate_check(cert: LPCertificate, rtol: float = CHECK_RTOL) -> CheckReport:
    """Re-evaluate every constraint of ``cert`` and derive a safe bound value.

    The certified value covers small violations: lifting every coefficient by
    ``eps = max(0, -min H_l)`` adds ``eps q'^n`` at u = 0 only, and adding
    ``s`` times ``sum_{l >= 1} K_l`` lowers ``H`` by ``s`` off the origin while
    adding ``s (q'^n - 1)`` at it. With ``s`` the largest constraint value
    the modified polynomial is feasible, so its ratio is a true bound.
    """
    scheme = cert.scheme
    coeffs = cert.coeffs
    tol = rtol * float(np.max(np.abs(coeffs)))
    H = cert.values()
    min_coeff = float(coeffs.min())
    far = H[cert.d:]
    max_con = float(far.max()) if len(far) else -math.inf
    feasible = bool(coeffs[0] > 0 and min_coeff >= -tol and max_con <= tol)
    if not feasible:
        return CheckReport(False, math.inf, min_coeff, max_con, tol)
    eps = max(0.0, -min_coeff)
    s = max(0.0, max_con)
    qn = scheme.q_prime ** scheme.n
    value = (H[0] + s * (qn - 1.0) + eps * qn) / (coeffs[0] + eps)
    return CheckReport(True, float(value), min_coeff, max_con, tol)


def _theta_from_qprime(q_prime: float) -> float:
    # q' = 1 + 1/cos(pi/q) determines a (possibly non-integer) q; theta_L = q/q'
    c = 1.0 / (q_prime - 1.0)
    if not 0.0 < c < 1.0:
        raise DomainError(f"q'={q_prime} does not come from a cycle (need q' > 2)")
    return (math.pi / math.acos(c)) / q_prime


def _result(scheme: SchemeParams, value: float, theta_l: float | None) -> LPBoundResult:
    if theta_l is None:
        theta_l = _theta_from_qprime(scheme.q_prime)
    log_bound = scheme.n * math.log(theta_l) + math.log(value)
    return LPBoundResult(value=value, log_bound=log_bound, rate=log_bound / scheme.n)


def mrrw_certificate(scheme: SchemeParams, d) -> LPCertificate:
    """Christoffel-Darboux certificate of degree ``2t + 1``.

    ``t`` is the least degree whose successor has its first root below ``d``.
    The free parameter ``a`` starts at the midpoint of its admissible range
    and is refined by golden-section search on ``H(0) / H_0``.
    """
    n = scheme.n
    d = _parse_distance(scheme, d)
    if d > n:
        raise DomainError(f"distance {d} must be at most n={n}")
    t_max = n // 2
    roots = kraw_first_roots(scheme, min(t_max + 1, n))
    t = next((t for t in range(t_max + 1) if t + 1 <= len(roots) and roots[t] < d), None)
    if t is None:
        raise InfeasibleDegreeError(
            f"no degree t <= {t_max} has a first root of K_(t+1) below d={d}"
        )
    lo = roots[t]
    hi = float(d) if t == 0 else min(float(d), roots[t - 1])

    u = np.arange(n + 1, dtype=float)
    K = kraw_table(scheme, u, t + 1)
    Kt, Kt1 = K[t], K[t + 1]

    def values(a):
        ka = kraw_table(scheme, [a], t + 1)[:, 0]
        p = ka[t] * Kt1 - ka[t + 1] * Kt
        diff = a - u
        out = np.zeros(n + 1)
        nz = diff != 0.0
        # p vanishes at u = a, and so does p^2 / (a - u)
        out[nz] = p[nz] ** 2 / diff[nz]
        return out

    def ratio(a):
        H = values(a)
        h0 = binomial_diagnostic(scheme, coeff_extract(scheme, H))
        return H[0] / h0 if h0 > 0 else math.inf

    mid = 0.5 * (lo + hi)
    a, fa = golden_section_min(ratio, lo, hi, tol=1e-12 * max(1.0, hi))
    if ratio(mid) <= fa and mid < a:
        a = mid
    coeffs = coeff_extract(scheme, values(a))
    coeffs = coeffs / coeffs[0]
    # the expansion has degree 2t+1 and nonnegative coefficients; anything else
    # is rounding noise
    coeffs[2 * t + 2:] = 0.0
    coeffs = np.clip(coeffs, 0.0, None)
    return LPCertificate(scheme, _absorb_violation(scheme, coeffs, d), d)


def _rounding(n: int, magnitude):
    """Bound on summation error for n+1 terms of the given absolute size."""
    return 4 * np.finfo(float).eps * (n + 1) * magnitude


def _absorb_violation(scheme: SchemeParams, coeffs: np.ndarray, d: int) -> np.ndarray:
    """Shift ``H`` down by its largest value on ``[d, n]`` plus a rounding margin.

    With ``a`` close to ``d`` the true ``H(d)`` is a tiny negative number that
    rounding can push above zero. Lowering ``H_0`` moves every value down by
    the same amount and keeps the other coefficients untouched.
    """
    K = kraw_table(scheme, np.arange(scheme.n + 1))
    H = coeffs @ K
    margin = _rounding(scheme.n, np.abs(coeffs) @ np.abs(K))
    shift = max(0.0, float((H + margin)[d:].max()))
    if shift >= 0.5 * coeffs[0]:
        return coeffs
    out = coeffs.copy()
    out[0] -= shift
    return out / out[0]


def _polish(k: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Re-solve the tight constraints on the support of ``x`` directly.

    Reduced costs carry the accumulated pivoting error; a single square solve
    on the optimal basis removes most of it. The polished point is kept only
    if it is nonnegative and violates the constraints less.
    """
    active = np.nonzero(y > 0)[0]
    support = np.nonzero(x > 0)[0]
    if len(active) != len(support) or len(active) == 0:
        return x
    try:
        xs = np.linalg.solve(k[np.ix_(active, support)], -np.ones(len(active)))
    except np.linalg.LinAlgError:
        return x
    if np.any(xs < 0):
        return x
    cand = np.zeros_like(x)
    cand[support] = xs
    if np.min(-(k @ cand)) >= np.min(-(k @ x)):
        return cand
    return x


def _highs_primal(k: np.ndarray) -> np.ndarray:
    out = linprog(np.ones(k.shape[1]), A_ub=k, b_ub=-np.ones(k.shape[0]),
                  bounds=(0, None), method="highs")
    if out.status != 0:
        raise LPError(f"HiGHS fallback failed: {out.message}", out.nit)
    return out.x


def lp_solve(scheme: SchemeParams, d, theta_l: float | None = None):
    """Optimal certificate of the finite LP and its bound.

    Minimizes ``H(0)`` subject to ``H_0 = 1``, ``H_l >= 0`` and ``H(u) <= 0``
    for integers ``u`` in ``[d, n]``. Returns ``(LPCertificate, LPBoundResult)``.
    ``theta_l`` defaults to the Lovasz number of the cycle that ``q'`` comes
    from; it only enters ``log_bound`` and ``rate``.
    """
    n = scheme.n
    d = _parse_distance(scheme, d)
    if d == n + 1:
        coeffs = np.zeros(n + 1)
        coeffs[0] = 1.0
        cert = LPCertificate(scheme, coeffs, d)
        return cert, _result(scheme, 1.0, theta_l)

    # Scaled variables x_l = H_l K_l(0) turn the table into k(u, l) in [-1, 1].
    norms = kraw_norms(scheme)
    us = np.arange(d, n + 1, dtype=float)
    k = (kraw_table(scheme, us)[1:] / norms[1:, None]).T       # rows u, cols l >= 1
    # Primal: min sum x  s.t.  k x <= -1, x >= 0. Its dual has the origin
    # feasible: max sum y  s.t.  -k^T y <= 1, y >= 0.
    try:
        res = simplex_max(np.ones(len(us)), -k.T, np.ones(n), tol=PIVOT_TOL)
        x, iters = _polish(k, np.clip(res.duals, 0.0, None), res.y), res.iterations
    except LPError as exc:
        # long lengths make the tableau ill-conditioned; fall back to HiGHS
        x, iters = _highs_primal(k), exc.iterations
    x = np.clip(x, 0.0, None)

    lhs = -(k @ x)
    if not lhs.min() > 0:
        raise LPError(f"solver returned an infeasible point (margin {lhs.min():.3e})", iters)
    # scale so that every constraint clears its own rounding bound
    margin = _rounding(n, 1.0 + np.abs(k) @ x)
    x *= float(np.max((1.0 + margin) / lhs))

    coeffs = np.concatenate([[1.0], x / norms[1:]])
    cert = LPCertificate(scheme, coeffs, d)
    report = certificate_check(cert)
    if not report.feasible:
        raise LPError(
            f"certificate rejected (min coeff {report.min_coeff:.3e}, "
            f"max constraint {report.max_constraint:.3e})",
            iters,
        )
    return cert, _result(scheme, report.certified_value, theta_l)


def finite_n_rate(q: int, n: int, d) -> float:
    """Certified upper bound on ``(1/n) ln M_q(n, d)`` for odd ``q``, in nats."""
    p = cycle_params(q)
    if p.parity != "odd":
        raise DomainError(f"q={q} must be odd")
    scheme = SchemeParams(n, p.q_prime)
    _, res = lp_solve(scheme, d, theta_l=p.theta_l)
    return res.rate
