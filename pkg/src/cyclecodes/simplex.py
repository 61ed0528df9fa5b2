"""Dense tableau simplex for ``max c.y  s.t.  A y <= b, y >= 0`` with ``b >= 0``.

The slack basis is feasible from the start, so no phase one is needed.
Bland's rule (lowest index enters, lowest basic index leaves on ratio ties)
rules out cycling on degenerate vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LPError

PIVOT_TOL = 1e-11


@dataclass
class SimplexResult:
    y: np.ndarray          # primal solution
    duals: np.ndarray      # shadow prices of the rows of A
    objective: float
    iterations: int


def simplex_max(c, A, b, tol: float = PIVOT_TOL, max_iter: int | None = None) -> SimplexResult:
    c = np.asarray(c, dtype=float)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    m, nv = A.shape
    if c.shape != (nv,) or b.shape != (m,):
        raise LPError("inconsistent LP dimensions", iterations=0)
    if np.any(b < 0):
        raise LPError("right-hand side must be nonnegative", iterations=0)
    if max_iter is None:
        max_iter = 50 * (m + nv) + 1000

    T = np.zeros((m + 1, nv + m + 1))
    T[:m, :nv] = A
    T[:m, nv:nv + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :nv] = -c
    basis = list(range(nv, nv + m))

    it = 0
    while True:
        cand = np.nonzero(T[m, :-1] < -tol)[0]
        if len(cand) == 0:
            break
        if it >= max_iter:
            raise LPError(f"no convergence after {it} pivots", iterations=it)
        j = int(cand[0])
        col = T[:m, j]
        rows = np.nonzero(col > tol)[0]
        if len(rows) == 0:
            raise LPError(f"unbounded direction at column {j}", iterations=it)
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        # Bland: among (near-)ties take the row whose basic variable is lowest
        ties = rows[ratios <= best + tol * max(1.0, abs(best))]
        i = int(min(ties, key=lambda r: basis[r]))
        T[i] /= T[i, j]
        for r in range(m + 1):
            if r != i and T[r, j] != 0.0:
                T[r] -= T[r, j] * T[i]
        basis[i] = j
        it += 1

    y = np.zeros(nv)
    for r, var in enumerate(basis):
        if var < nv:
            y[var] = T[r, -1]
    return SimplexResult(y=y, duals=T[m, nv:nv + m].copy(), objective=float(T[m, -1]), iterations=it)
