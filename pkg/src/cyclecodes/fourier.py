"""Fourier analysis on ``Z_q^n`` and the product test function ``f = g h``.

Transforms use ``F(w) = sum_x f(x) exp(2 pi i <w, x> / q)``, applied one
coordinate at a time (cost ``n q^(n+1)``). Every function handled here is
even, so transforms are real; the imaginary residue is checked, not dropped
silently.

``g`` is the product of the one-dimensional Lovasz assignment
``g_1 = 1_0 + phi 1_{+-1}``, ``phi = 1 / (2 cos(pi/q))``, whose transform
vanishes at the two frequencies ``+-c``, ``c = (q-1)/2``. ``h`` has transform
constant on the frequency spheres ``S_l^c`` (exactly ``l`` coordinates equal
to ``+-c``, the rest zero); those values come from an LP certificate, so
that ``h`` restricted to ``{0, +-1}^n`` reproduces ``H(u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import cycle_params
from .codes import WeightTable, all_words
from .errors import BudgetExceededError, CertificateRejected, DomainError
from .krawtchouk import SchemeParams, kraw_eval
from .lp import LPCertificate

DFT_BUDGET = 10 ** 6
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class FourierTable:
    """A real function on ``Z_q^n`` together with its transform (flat, index order)."""

    q: int
    n: int
    values: np.ndarray
    transform: np.ndarray
    d: int | None = None      # distance the function was built for, if any

    def __post_init__(self):
        size = self.q ** self.n
        for name in ("values", "transform"):
            arr = np.array(getattr(self, name), dtype=float).reshape(-1)
            if arr.shape != (size,):
                raise DomainError(f"{name} must have {size} entries")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def plancherel_error(self) -> float:
        """Relative gap in ``q^-n sum F(w)^2 = sum f(x)^2``."""
        lhs = float(self.transform @ self.transform) / self.q ** self.n
        rhs = float(self.values @ self.values)
        return abs(lhs - rhs) / max(rhs, np.finfo(float).tiny)

    def zero_ratio(self) -> float:
        """``q^n f(0) / F(0)``, the size bound carried by the function."""
        return self.q ** self.n * self.values[0] / self.transform[0]


def _check_budget(q, n, budget):
    if q ** n > budget:
        raise BudgetExceededError(f"table of {q}^{n} entries exceeds budget {budget}")


def _char_matrix(q: int) -> np.ndarray:
    k = np.arange(q)
    return np.exp(2j * np.pi * np.outer(k, k) / q)


def transform_array(q: int, n: int, values) -> np.ndarray:
    """Complex transform of a flat table, computed coordinate by coordinate."""
    W = _char_matrix(q)
    a = np.asarray(values, dtype=complex).reshape((q,) * n)
    for axis in range(n):
        a = np.moveaxis(np.tensordot(W, a, axes=([1], [axis])), 0, axis)
    return a.reshape(-1)


def dft(q: int, n: int, f, budget: int = DFT_BUDGET, d: int | None = None) -> FourierTable:
    """Transform a real table ``f`` (flat or shaped ``(q,)*n``)."""
    _check_budget(q, n, budget)
    values = np.asarray(f, dtype=float).reshape(-1)
    if values.shape != (q ** n,):
        raise DomainError(f"expected {q ** n} table entries, got {values.size}")
    F = transform_array(q, n, values)
    scale = max(1.0, float(np.abs(F).max()))
    resid = float(np.abs(F.imag).max())
    if resid > IMAG_TOL * scale:
        raise CertificateRejected("imaginary-residue", resid)
    return FourierTable(q, n, values, F.real, d)


def _odd(q):
    p = cycle_params(q)
    if p.parity != "odd":
        raise DomainError(f"q={q} must be odd")
    return p


def build_g(q: int, n: int, budget: int = DFT_BUDGET) -> FourierTable:
    """Tensor power of the one-dimensional Lovasz assignment, with its checks."""
    p = _odd(q)
    _check_budget(q, n, budget)
    phi = 1.0 / (2.0 * math.cos(math.pi / q))
    g1 = np.zeros(q)
    g1[0], g1[1], g1[-1] = 1.0, phi, phi
    g = np.ones(1)
    for _ in range(n):
        g = np.kron(g, g1)
    table = dft(q, n, g, budget)
    G = table.transform
    scale = float(np.abs(G).max())
    if G.min() < -1e-12 * scale:
        raise CertificateRejected("g-transform-nonnegative", float(-G.min()))
    c = (q - 1) // 2
    hit = np.isin(all_words(q, n), (c, q - c)).any(axis=1)
    if hit.any() and np.abs(G[hit]).max() > 1e-12 * scale:
        raise CertificateRejected("g-transform-zero-set", float(np.abs(G[hit]).max()))
    ratio = table.zero_ratio()
    target = p.theta_l ** n
    if abs(ratio - target) > 1e-12 * target:
        raise CertificateRejected("g-bound", abs(ratio - target) / target)
    return table


def sphere_levels(q: int, n: int, centre: int) -> np.ndarray:
    """Per word: number of coordinates equal to ``+-centre`` if all others are 0, else -1."""
    words = all_words(q, n)
    on = (words == centre) | (words == (q - centre) % q)
    level = on.sum(axis=1)
    level[~(on | (words == 0)).all(axis=1)] = -1
    return level


@dataclass(frozen=True)
class SphereReport:
    lhs: float
    rhs: float
    max_rel_error: float


def verify_sphere_transform(q: int, n: int, ell: int, u: int,
                            budget: int = DFT_BUDGET) -> SphereReport:
    """Transform of ``1_{S_ell^c}`` on the words of ``S_u^1`` versus
    ``(2 cos(pi/q))^ell K_ell(u; q')``."""
    p = _odd(q)
    if not (0 <= ell <= n and 0 <= u <= n):
        raise DomainError("ell and u must lie in [0, n]")
    _check_budget(q, n, budget)
    c = (q - 1) // 2
    indicator = (sphere_levels(q, n, c) == ell).astype(float)
    F = dft(q, n, indicator, budget).transform
    pts = sphere_levels(q, n, 1) == u
    rhs = (2.0 * math.cos(math.pi / q)) ** ell * kraw_eval(SchemeParams(n, p.q_prime), ell, u)
    lhs_vals = F[pts]
    err = float(np.abs(lhs_vals - rhs).max()) / max(abs(rhs), 1e-300)
    return SphereReport(float(lhs_vals[0]), float(rhs), err)


def build_f(q: int, n: int, cert: LPCertificate, budget: int = DFT_BUDGET) -> FourierTable:
    """Assemble ``f = g h`` from an LP certificate and verify it.

    Clauses: (i) the transform of ``f`` is nonnegative, (ii) ``f <= 0`` on words
    at distance at least ``cert.d`` from 0, (iii) ``F(0) = q^-n G(0) h_0`` and
    (iv) ``q^n f(0) / F(0) = theta_L^n H(0) / H_0``. A failed clause raises
    :class:`CertificateRejected` naming it.
    """
    p = _odd(q)
    if cert.scheme.n != n or abs(cert.scheme.q_prime - p.q_prime) > 1e-12 * p.q_prime:
        raise DomainError("certificate scheme does not match (q, n)")
    _check_budget(q, n, budget)
    g = build_g(q, n, budget)

    two_cos = 2.0 * math.cos(math.pi / q)
    h_hat_levels = q ** n * cert.coeffs / two_cos ** np.arange(n + 1)
    levels = sphere_levels(q, n, (q - 1) // 2)
    h_hat = np.where(levels >= 0, h_hat_levels[np.clip(levels, 0, None)], 0.0)
    # the spheres are symmetric under negation, so the inverse transform is
    # the forward one scaled by q^-n
    h = dft(q, n, h_hat, budget).transform / q ** n

    f = dft(q, n, g.values * h, budget, d=cert.d)
    F = f.transform
    fmax = float(F.max())
    if F.min() < -1e-8 * fmax:
        raise CertificateRejected("(i) transform nonnegative", float(-F.min()) / fmax)

    wt = WeightTable.cycle(q).word_weights(all_words(q, n))
    far = wt >= cert.d
    if far.any():
        worst = float(f.values[far].max())
        if worst > 1e-10 * max(1.0, abs(f.values[0])):
            raise CertificateRejected("(ii) nonpositive on far words", worst)

    expected = g.transform[0] * h_hat_levels[0] / q ** n
    rel = abs(F[0] - expected) / abs(expected)
    if rel > 1e-9:
        raise CertificateRejected("(iii) transform at zero", rel)

    H = cert.values()
    target = p.theta_l ** n * H[0] / cert.coeffs[0]
    rel = abs(f.zero_ratio() - target) / abs(target)
    if rel > 1e-8:
        raise CertificateRejected("(iv) bound factorization", rel)
    return f
