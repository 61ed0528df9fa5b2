"""Matrix witnesses for theta-type bounds and their verification.

A witness is a symmetric matrix ``D`` with ``D - J`` positive semidefinite
whose entries are pinned on some vertex pairs: zero on non-edges of the graph
being bounded, and possibly nonpositive on further pairs. Its largest diagonal
entry bounds the independence number. Nothing here solves a semidefinite
program; witnesses come from closed forms or from LP output and are checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cholesky, eigvalsh, LinAlgError

from .bounds import cycle_params
from .codes import WeightTable, all_words, word_index
from .errors import CertificateRejected, DomainError
from .fourier import FourierTable

EIGEN_LIMIT = 2000
ENTRY_TOL = 1e-10


def min_eigenvalue(M) -> float:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    M = 0.5 * (M + M.T)
    return float(eigvalsh(M, subset_by_index=[0, 0])[0])


def psd_check(M, tol: float = 1e-8) -> bool:
    """Whether the symmetrized ``M`` has every eigenvalue ``>= -tol``.

    Matrices up to ``EIGEN_LIMIT`` rows get a symmetric eigen-solve; larger
    ones a Cholesky factorization of ``M + tol I``, which exists exactly when
    the smallest eigenvalue exceeds ``-tol``.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] <= EIGEN_LIMIT:
        return min_eigenvalue(M) >= -tol
    S = 0.5 * (M + M.T) + tol * np.eye(M.shape[0])
    try:
        cholesky(S, lower=True, check_finite=True)
    except LinAlgError:
        return False
    return True


@dataclass(frozen=True)
class CirculantCert:
    """Circulant witness for ``C_q`` with first row ``(d0, d1, 0, ..., 0, d1)``."""

    q: int
    d0: float
    d1: float

    def matrix(self) -> np.ndarray:
        row = np.zeros(self.q)
        row[0], row[1], row[-1] = self.d0, self.d1, self.d1
        idx = (np.arange(self.q)[None, :] - np.arange(self.q)[:, None]) % self.q
        return row[idx]

    def spectrum(self) -> np.ndarray:
        k = np.arange(self.q)
        return self.d0 + 2.0 * self.d1 * np.cos(2.0 * np.pi * k / self.q)

    def min_gap(self) -> float:
        """Smallest eigenvalue of ``D - J`` read off the circulant spectrum."""
        spec = self.spectrum()
        spec[0] -= self.q          # J contributes q on the constant vector only
        return float(spec.min())

    def to_matrix_cert(self) -> "MatrixCert":
        D = self.matrix()
        zero = np.isinf(WeightTable.cycle(self.q).word_weights(
            (np.arange(self.q)[:, None] - np.arange(self.q)[None, :])[..., None]))
        return MatrixCert(D, zero_mask=zero)


def lovasz_circulant(q: int) -> CirculantCert:
    p = cycle_params(q)
    if p.parity != "odd":
        raise DomainError(f"q={q} must be odd")
    c = math.cos(math.pi / q)
    cert = CirculantCert(q, p.theta_l, q / (2.0 * (1.0 + c)))
    if cert.min_gap() < -1e-10:
        raise CertificateRejected("circulant D - J psd", -cert.min_gap())
    if cert.d1 < 0:
        raise CertificateRejected("circulant entries nonnegative", -cert.d1)
    return cert


@dataclass(frozen=True)
class MatrixCert:
    matrix: np.ndarray
    zero_mask: np.ndarray | None = None      # entries required to vanish
    nonpos_mask: np.ndarray | None = None    # entries required to be <= 0
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        D = np.array(self.matrix, dtype=float)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {D.shape}")
        m = D.shape[0]
        masks = {}
        for name in ("zero_mask", "nonpos_mask"):
            mask = getattr(self, name)
            mask = np.zeros((m, m), dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
            if mask.shape != (m, m):
                raise DomainError(f"{name} has shape {mask.shape}, expected {(m, m)}")
            masks[name] = mask
        object.__setattr__(self, "matrix", D)
        object.__setattr__(self, "zero_mask", masks["zero_mask"])
        object.__setattr__(self, "nonpos_mask", masks["nonpos_mask"])

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def value(self) -> float:
        return float(np.diag(self.matrix).max())

    def violations(self) -> dict:
        """Largest violation of each defining condition (0 when satisfied)."""
        D = self.matrix
        m = self.size
        asym = float(np.abs(D - D.T).max())
        zero = float(np.abs(D[self.zero_mask]).max()) if self.zero_mask.any() else 0.0
        nonpos = float(D[self.nonpos_mask].max()) if self.nonpos_mask.any() else 0.0
        eig = min_eigenvalue(D - np.ones((m, m))) if m <= EIGEN_LIMIT else None
        return {
            "symmetric": asym,
            "zero-entries": zero,
            "nonpositive-entries": max(0.0, nonpos),
            "psd": max(0.0, -eig) if eig is not None else None,
        }

    def verify(self, psd_tol: float | None = None) -> dict:
        """Raise :class:`CertificateRejected` on the first failed condition."""
        m = self.size
        scale = max(1.0, float(np.abs(self.matrix).max()))
        if psd_tol is None:
            psd_tol = 1e-8 * m
        v = self.violations()
        for name in ("symmetric", "zero-entries", "nonpositive-entries"):
            if v[name] > ENTRY_TOL * scale:
                raise CertificateRejected(name, v[name])
        if v["psd"] is None:
            if not psd_check(self.matrix - np.ones((m, m)), psd_tol):
                raise CertificateRejected("psd", math.nan)
        elif v["psd"] > psd_tol:
            raise CertificateRejected("psd", v["psd"])
        return v


def all_ones_cert(m: int) -> MatrixCert:
    return MatrixCert(np.ones((m, m)))


def schur_combine(D1: MatrixCert, D2: MatrixCert) -> MatrixCert:
    """Entrywise product of two witnesses, re-verified.

    A pair pinned to zero in either factor stays pinned. A pair that is
    nonpositive in one factor and unpinned-nonnegative in the other stays
    nonpositive. Positive semidefiniteness of ``D - J`` is checked again.
    """
    if D1.size != D2.size:
        raise DomainError(f"size mismatch: {D1.size} vs {D2.size}")
    D = D1.matrix * D2.matrix
    zero = D1.zero_mask | D2.zero_mask
    nonneg1 = D1.matrix >= 0
    nonneg2 = D2.matrix >= 0
    nonpos = ((D1.nonpos_mask & nonneg2) | (D2.nonpos_mask & nonneg1)) & ~zero
    out = MatrixCert(D, zero, nonpos)
    out.verify()
    return out


def tensor_power(cert: MatrixCert, n: int) -> MatrixCert:
    """Kronecker power; a pair is pinned to zero if any coordinate pair is."""
    if n < 1:
        raise DomainError("power must be >= 1")
    D = np.ones((1, 1))
    free = np.ones((1, 1), dtype=bool)
    for _ in range(n):
        D = np.kron(D, cert.matrix)
        free = np.kron(free, ~cert.zero_mask)
    return MatrixCert(D, zero_mask=~free)


def cert_from_function(q: int, n: int, f: FourierTable, d=None,
                       tol: float | None = None) -> MatrixCert:
    """Translation-invariant witness ``D(x, y) = q^n f(x - y) / F(0)``.

    Its spectrum is ``q^n F(w) / F(0)``, so ``D - J`` is positive semidefinite
    once ``F >= 0``. Pairs at infinite distance are pinned to zero; if a
    distance ``d`` is known (argument or ``f.d``), pairs at finite distance
    ``>= d`` are pinned nonpositive.
    """
    if (f.q, f.n) != (q, n):
        raise DomainError("table does not match (q, n)")
    size = q ** n
    if size > EIGEN_LIMIT:
        raise DomainError(f"{size} vertices exceed the dense witness limit {EIGEN_LIMIT}")
    F = f.transform
    if not F[0] > 0:
        raise CertificateRejected("transform at zero positive", float(-F[0]))
    if F.min() < -1e-8 * F.max():
        raise CertificateRejected("transform nonnegative", float(-F.min()))
    d = f.d if d is None else d

    words = all_words(q, n)
    diff = (words[:, None, :] - words[None, :, :]) % q
    idx = word_index(diff, q)
    D = size * f.values[idx] / F[0]
    wt = WeightTable.cycle(q).word_weights(diff)
    zero = np.isinf(wt)
    nonpos = (~zero) & (wt >= d) if d is not None else None
    out = MatrixCert(D, zero, nonpos, info={"d": d})
    out.verify(psd_tol=1e-8 * size if tol is None else tol)
    return out
