"""Krawtchouk polynomials ``K_l(u; q')`` for a real alphabet parameter ``q' > 1``.

The working path is the three-term recurrence in the degree,

    (l+1) K_{l+1}(u) = ((n-l)(q'-1) + l - q' u) K_l(u) - (q'-1)(n-l+1) K_{l-1}(u),

which holds for real ``u`` and real ``q'``. Run forward from ``l = 0`` it
loses accuracy for degrees past ``n/2`` once ``q'`` is irrational (about
1e-4 relative at ``n = 40``), so degrees above ``n/2`` are obtained by running
it backward from ``K_n`` and ``K_{n-1}``. The explicit alternating sum,
evaluated in exact rational arithmetic on the binary value of ``q'``, is the
independent check.

The polynomials are orthogonal for the binomial law ``Binomial(n, 1 - 1/q')``
on ``{0, ..., n}``, with ``E[K_l(U) K_m(U)] = [l == m] K_l(0)`` and
``K_l(0) = C(n, l) (q'-1)^l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.stats import binom

from .errors import DomainError, RootFindingError

AGREEMENT_RTOL = 1e-9
CANCEL_RTOL = 1e-12
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class SchemeParams:
    n: int
    q_prime: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"length n must be an integer >= 1, got {self.n}")
        if not self.q_prime > 1.0:
            raise DomainError(f"q' must exceed 1, got {self.q_prime}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "q_prime", float(self.q_prime))

    @property
    def p(self) -> float:
        """Success probability ``1 - 1/q'`` of the orthogonality measure."""
        return 1.0 - 1.0 / self.q_prime


def _check_ell(scheme: SchemeParams, ell: int):
    if not 0 <= ell <= scheme.n:
        raise DomainError(f"degree {ell} outside [0, {scheme.n}]")


def _forward(n, qp, u, top):
    out = np.empty((top + 1, len(u)))
    out[0] = 1.0
    if top >= 1:
        out[1] = n * (qp - 1.0) - qp * u
    for ell in range(1, top):
        a = (n - ell) * (qp - 1.0) + ell - qp * u
        b = (qp - 1.0) * (n - ell + 1)
        out[ell + 1] = (a * out[ell] - b * out[ell - 1]) / (ell + 1)
    return out


def _top_pair(scheme, u):
    """``K_n(u)`` and ``K_{n-1}(u)``; closed forms at integer u in [0, n]."""
    n, qp = scheme.n, scheme.q_prime
    kn = np.empty(len(u))
    kn1 = np.empty(len(u))
    for i, x in enumerate(u):
        if x == int(x) and 0 <= x <= n:
            x = int(x)
            sign = -1.0 if x % 2 else 1.0
            kn[i] = sign * (qp - 1.0) ** (n - x)
            kn1[i] = -sign * x * (qp - 1.0) ** (n - x)
            if x < n:
                kn1[i] += sign * (n - x) * (qp - 1.0) ** (n - 1 - x)
        else:
            kn[i] = kraw_explicit(scheme, n, float(x))
            kn1[i] = kraw_explicit(scheme, n - 1, float(x))
    return kn, kn1


def kraw_table(scheme: SchemeParams, u, max_degree: int | None = None) -> np.ndarray:
    """``K_l(u)`` for ``l = 0..max_degree`` (rows) at every point of ``u`` (columns)."""
    n, qp = scheme.n, scheme.q_prime
    top = n if max_degree is None else max_degree
    if not 0 <= top <= n:
        raise DomainError(f"degree {top} outside [0, {n}]")
    u = np.atleast_1d(np.asarray(u, dtype=float))
    split = n // 2
    if top <= split or n < 2:
        return _forward(n, qp, u, top)
    out = np.empty((n + 1, len(u)))
    out[:split + 1] = _forward(n, qp, u, split)
    out[n], out[n - 1] = _top_pair(scheme, u)
    for ell in range(n - 1, split + 1, -1):
        a = (n - ell) * (qp - 1.0) + ell - qp * u
        b = (qp - 1.0) * (n - ell + 1)
        out[ell - 1] = (a * out[ell] - (ell + 1) * out[ell + 1]) / b
    return out[:top + 1]


def _frac_binom(x: Fraction, j: int) -> Fraction:
    val = Fraction(1)
    for i in range(j):
        val *= (x - i) / (i + 1)
    return val


def kraw_explicit(scheme: SchemeParams, ell: int, u: float) -> float:
    """``sum_j (-1)^j (q'-1)^(l-j) C(u, j) C(n-u, l-j)``, summed exactly.

    The float inputs are converted to exact rationals, so the result is the
    correctly rounded value of the polynomial at the given binary ``q'``.
    """
    _check_ell(scheme, ell)
    n = scheme.n
    q1 = Fraction(scheme.q_prime) - 1
    x = Fraction(u)
    total = Fraction(0)
    for j in range(ell + 1):
        term = q1 ** (ell - j) * _frac_binom(x, j) * _frac_binom(n - x, ell - j)
        total += -term if j % 2 else term
    return float(total)


def _explicit_scale(scheme: SchemeParams, ell: int, u: float) -> float:
    n, q1 = scheme.n, scheme.q_prime - 1.0
    total = 0.0
    for j in range(ell + 1):
        a, b = 1.0, 1.0
        for i in range(j):
            a *= (u - i) / (i + 1)
        for i in range(ell - j):
            b *= (n - u - i) / (i + 1)
        total += abs(q1 ** (ell - j) * a * b)
    return total


def kraw_eval(scheme: SchemeParams, ell: int, u: float) -> float:
    """``K_ell(u; q')`` via the recurrence, cross-checked against the explicit sum."""
    _check_ell(scheme, ell)
    val = float(kraw_table(scheme, [u], ell)[ell, 0])
    ref = kraw_explicit(scheme, ell, u)
    # near a root the sum cancels; allow rounding at the size of its terms
    allowed = AGREEMENT_RTOL * abs(ref) + CANCEL_RTOL * _explicit_scale(scheme, ell, u)
    if abs(val - ref) > allowed:
        raise RuntimeError(
            f"recurrence {val!r} and explicit sum {ref!r} disagree for ell={ell}, u={u}"
        )
    return val


def kraw_first_roots(scheme: SchemeParams, upto: int) -> list:
    """Smallest roots of ``K_1 .. K_upto``.

    Interlacing places the first root of ``K_l`` strictly inside
    ``(0, r_{l-1})``, where ``K_l`` changes sign exactly once, so plain
    bisection on that bracket is enough.
    """
    if not 1 <= upto <= scheme.n:
        raise DomainError(f"degree {upto} outside [1, {scheme.n}]")
    return list(_first_roots(scheme, upto))


@lru_cache(maxsize=256)
def _first_roots(scheme: SchemeParams, upto: int) -> tuple:
    n, qp = scheme.n, scheme.q_prime

    # bracketing only needs signs; the forward recurrence is accurate enough
    # this close to the bottom of the spectrum
    def k(ell, x):
        return _forward(n, qp, np.array([x]), ell)[ell, 0]

    roots = [n * (qp - 1.0) / qp]
    for ell in range(2, upto + 1):
        lo, hi = 0.0, roots[-1]
        if not (k(ell, lo) > 0 and k(ell, hi) < 0):
            raise RootFindingError(f"no sign change for K_{ell} on [0, {hi}]")
        while hi - lo > ROOT_TOL:
            mid = 0.5 * (lo + hi)
            if k(ell, mid) > 0:
                lo = mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return tuple(roots)


def kraw_first_root(scheme: SchemeParams, ell: int) -> float:
    return kraw_first_roots(scheme, ell)[-1]


def binomial_weights(scheme: SchemeParams) -> np.ndarray:
    """``C(n,u)(q'-1)^u / q'^n`` for u = 0..n, i.e. the Binomial(n, 1-1/q') pmf."""
    return binom.pmf(np.arange(scheme.n + 1), scheme.n, scheme.p)


def kraw_norms(scheme: SchemeParams) -> np.ndarray:
    """``K_l(0) = C(n,l) (q'-1)^l``, also the squared norm under the binomial law."""
    n, qp = scheme.n, scheme.q_prime
    return np.array([math.comb(n, ell) * (qp - 1.0) ** ell for ell in range(n + 1)])


def coeff_extract(scheme: SchemeParams, H_values) -> np.ndarray:
    """Krawtchouk coefficients of a function given at ``u = 0..n``.

    ``H_l = E[H(U) K_l(U)] / K_l(0)``; equivalently the classical
    ``[q'^n C(n,l)(q'-1)^l]^{-1} sum_u C(n,u)(q'-1)^u H(u) K_l(u)``.
    """
    H = np.asarray(H_values, dtype=float)
    if H.shape != (scheme.n + 1,):
        raise DomainError(f"expected {scheme.n + 1} values, got shape {H.shape}")
    K = kraw_table(scheme, np.arange(scheme.n + 1))
    w = binomial_weights(scheme)
    return (K @ (w * H)) / kraw_norms(scheme)


def evaluate_expansion(scheme: SchemeParams, coeffs, u=None) -> np.ndarray:
    """``H(u) = sum_l coeffs[l] K_l(u)``, by default at u = 0..n."""
    coeffs = np.asarray(coeffs, dtype=float)
    u = np.arange(scheme.n + 1) if u is None else u
    K = kraw_table(scheme, u, len(coeffs) - 1)
    return coeffs @ K


def binomial_diagnostic(scheme: SchemeParams, coeffs) -> float:
    """``E[H(U)]`` for ``U ~ Binomial(n, 1 - 1/q')``, computed by direct summation.

    By orthogonality this equals the constant coefficient of the expansion.
    """
    H = evaluate_expansion(scheme, coeffs)
    return float(binomial_weights(scheme) @ H)
