"""Exact maximum codes ``M_q(n, d) = alpha(C_q(n, d-1))`` by branch and bound.

The independent-set search works on Python integers used as bitsets. Vertices
are relabelled so that bit order follows the static branching order (degree
descending, ties broken by lexicographic word order). The pruning bound is a
greedy partition of the candidate set into cliques; for cycle graphs with
d >= 2 it is complemented by a partition into coordinate lines, each of which
induces a copy of ``C_q`` whose independence number is read from a table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import Code, all_words, finite_offsets, word_index
from .errors import BudgetExceededError, DomainError

DEFAULT_BUDGET = 1000


def _parse_d(d):
    if d is None or d == math.inf:
        return math.inf
    if isinstance(d, str):
        if d.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        d = int(d)
    if d < 1:
        raise DomainError("minimum distance must be >= 1")
    return int(d)


def conflict_graph(q: int, n: int, d) -> list:
    """Neighbour lists of ``C_q(n, d-1)``: words closer than ``d`` are joined."""
    d = _parse_d(d)
    words = all_words(q, n)
    offs, weights = finite_offsets(q, n)
    keep = weights <= (d - 1) if d != math.inf else np.ones(len(weights), dtype=bool)
    offs = offs[keep]
    nbrs = []
    for w in words:
        idx = np.unique(word_index(w + offs, q)) if len(offs) else np.empty(0, dtype=np.int64)
        nbrs.append(idx.tolist())
    return nbrs


def _cycle_alpha_table(q: int) -> list:
    """alpha of the subgraph of C_q induced by each subset mask of its vertices."""
    table = [0] * (1 << q)
    for mask in range(1 << q):
        if mask == (1 << q) - 1:
            table[mask] = q // 2
            continue
        # break the cycle at an absent vertex and sum ceil(len/2) over runs
        start = next(i for i in range(q) if not mask >> i & 1)
        total, run = 0, 0
        for j in range(1, q + 1):
            i = (start + j) % q
            if mask >> i & 1:
                run += 1
            else:
                total += (run + 1) // 2
                run = 0
        table[mask] = total
    return table


@dataclass
class _Graph:
    size: int
    adj: list          # bitsets in relabelled positions
    label: list        # position -> original vertex
    lines: list        # list of position lists, one per coordinate line
    line_alpha: list


class _Solver:
    def __init__(self, graph: _Graph):
        self.g = graph
        self.best = []
        self.nodes = 0

    def _clique_cover(self, P):
        """Greedy clique partition of P; returns positions and running bounds."""
        adj = self.g.adj
        order, bounds = [], []
        U = P
        k = 0
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U &= ~low
                Q &= ~low
                Q &= adj[v]
                order.append(v)
                bounds.append(k)
        return order, bounds

    def _line_bound(self, P):
        g = self.g
        total = 0
        for line in g.lines:
            mask = 0
            for j, pos in enumerate(line):
                if P >> pos & 1:
                    mask |= 1 << j
            total += g.line_alpha[mask]
        return total

    def expand(self, S, P):
        self.nodes += 1
        if self.g.lines and len(S) + self._line_bound(P) <= len(self.best):
            return
        order, bounds = self._clique_cover(P)
        for i in range(len(order) - 1, -1, -1):
            if len(S) + bounds[i] <= len(self.best):
                return
            v = order[i]
            bit = 1 << v
            S.append(v)
            newP = P & ~self.g.adj[v] & ~bit
            if newP:
                self.expand(S, newP)
            elif len(S) > len(self.best):
                self.best = list(S)
            S.pop()
            P &= ~bit


def _build(q: int, n: int, d) -> _Graph:
    nbrs = conflict_graph(q, n, d)
    size = len(nbrs)
    order = sorted(range(size), key=lambda v: (-len(nbrs[v]), v))
    pos = [0] * size
    for p, v in enumerate(order):
        pos[v] = p
    adj = [0] * size
    for v in range(size):
        bits = 0
        for u in nbrs[v]:
            bits |= 1 << pos[u]
        adj[pos[v]] = bits
    lines, line_alpha = [], []
    if q >= 3 and _parse_d(d) >= 2:
        # lines along the last coordinate: consecutive vertex indices
        line_alpha = _cycle_alpha_table(q)
        for base in range(0, size, q):
            lines.append([pos[base + j] for j in range(q)])
    return _Graph(size, adj, order, lines, line_alpha)


def _greedy_lower_bound(q: int, n: int, d) -> int:
    d = _parse_d(d)
    offs, weights = finite_offsets(q, n)
    keep = weights <= (d - 1) if d != math.inf else np.ones(len(weights), dtype=bool)
    offs = offs[keep]
    words = all_words(q, n) if q ** n <= 10 ** 6 else None
    if words is None:
        return 1
    blocked = np.zeros(q ** n, dtype=bool)
    count = 0
    for i, w in enumerate(words):
        if blocked[i]:
            continue
        count += 1
        blocked[i] = True
        if len(offs):
            blocked[word_index(w + offs, q)] = True
    return count


def alpha_search(q: int, n: int, d, budget: int = DEFAULT_BUDGET):
    """Exact ``M_q(n, d)`` with a witness code.

    ``d`` may be an integer >= 1 or ``inf`` (zero-error codes). Instances
    with more than ``budget`` vertices are refused with a greedy lower bound
    attached to the error.

    Returns ``(M, witness)`` where ``witness`` is a :class:`Code`.
    """
    if q < 2 or n < 1:
        raise DomainError("need q >= 2 and n >= 1")
    d = _parse_d(d)
    size = q ** n
    if size > budget:
        lb = _greedy_lower_bound(q, n, d)
        raise BudgetExceededError(
            f"{size} vertices exceed the budget of {budget}; greedy code has {lb} words",
            lower_bound=lb,
        )
    words = all_words(q, n)
    if d == 1:
        return size, Code.from_array(q, words)
    g = _build(q, n, d)
    solver = _Solver(g)
    # the graph is a Cayley graph on Z_q^n, so some maximum set contains word 0
    zero = g.label.index(0)
    P = ((1 << size) - 1) & ~g.adj[zero] & ~(1 << zero)
    solver.best = [zero]
    if P:
        solver.expand([zero], P)
    chosen = sorted(g.label[p] for p in solver.best)
    return len(chosen), Code.from_array(q, words[chosen])
