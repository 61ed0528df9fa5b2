"""Words, codes and the {0, 1, inf} semimetric on cycles, plus constructions.

Words are plain tuples of integers in ``range(q)``. Vertices of ``C_q^n`` are
indexed lexicographically (first coordinate most significant), which is the
order used by every table in the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, DuplicateCosetError, NotASubgroupError

INF = math.inf

Word = tuple


def symbol_distance(a: int, b: int, q: int) -> float:
    diff = (a - b) % q
    if diff == 0:
        return 0
    if diff == 1 or diff == q - 1:
        return 1
    return INF


def dist(x: Sequence[int], y: Sequence[int], q: int) -> float:
    """Additive extension of the per-coordinate cycle semimetric."""
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    total = 0
    for a, b in zip(x, y):
        s = symbol_distance(a, b, q)
        if s == INF:
            return INF
        total += s
    return total


def weight(x: Sequence[int], q: int) -> float:
    return dist(x, (0,) * len(x), q)


@dataclass(frozen=True)
class Code:
    """A deduplicated, lexicographically sorted set of words over ``Z_q^n``."""

    q: int
    n: int
    words: tuple

    def __post_init__(self):
        if self.q < 2 or self.n < 1:
            raise DomainError(f"bad code parameters q={self.q}, n={self.n}")
        clean = set()
        for w in self.words:
            w = tuple(int(s) for s in w)
            if len(w) != self.n:
                raise DomainError(f"word {w} has length {len(w)}, expected {self.n}")
            if any(s < 0 or s >= self.q for s in w):
                raise DomainError(f"word {w} has a symbol outside [0, {self.q})")
            clean.add(w)
        if not clean:
            raise DomainError("a code must contain at least one word")
        object.__setattr__(self, "words", tuple(sorted(clean)))

    @classmethod
    def from_words(cls, q: int, words: Iterable[Sequence[int]]) -> "Code":
        """Build a code, reducing every symbol mod ``q``."""
        words = [tuple(int(s) % q for s in w) for w in words]
        if not words:
            raise DomainError("a code must contain at least one word")
        return cls(q, len(words[0]), tuple(words))

    @classmethod
    def from_array(cls, q: int, arr: np.ndarray) -> "Code":
        arr = np.asarray(arr) % q
        return cls(q, arr.shape[1], tuple(map(tuple, arr.tolist())))

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word):
        return tuple(word) in set(self.words)

    def array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.int64).reshape(len(self.words), self.n)

    def indices(self) -> np.ndarray:
        return word_index(self.array(), self.q)


def word_index(arr: np.ndarray, q: int) -> np.ndarray:
    """Lexicographic vertex index of each row of ``arr``."""
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[-1]
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (arr % q) @ powers


def all_words(q: int, n: int) -> np.ndarray:
    """Every word of ``Z_q^n`` as a ``(q**n, n)`` array in index order."""
    grids = np.indices((q,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def finite_offsets(q: int, n: int):
    """Nonzero difference vectors at finite distance, with their weights.

    Every pair of words at finite distance differs by one of these offsets.
    """
    steps = (0, 1) if q == 2 else (0, 1, q - 1)
    offs = np.array(list(itertools.product(steps, repeat=n)), dtype=np.int64)[1:]
    weights = (offs != 0).sum(axis=1)
    return offs, weights


def _pairwise_dmin(arr: np.ndarray, q: int) -> float:
    best = INF
    m = len(arr)
    chunk = max(1, 4_000_000 // max(1, m * arr.shape[1]))
    for start in range(0, m - 1, chunk):
        block = arr[start:start + chunk]
        diff = (block[:, None, :] - arr[None, :, :]) % q
        adj = (diff == 1) | (diff == q - 1)
        finite = ((diff == 0) | adj).all(axis=2)
        d = adj.sum(axis=2)
        rows = np.arange(len(block))[:, None] + start
        cols = np.arange(m)[None, :]
        mask = finite & (cols > rows)
        if mask.any():
            best = min(best, int(d[mask].min()))
            if best == 1:
                break
    return best


def _offset_dmin(arr: np.ndarray, q: int) -> float:
    n = arr.shape[1]
    member = np.zeros(q ** n, dtype=bool)
    member[word_index(arr, q)] = True
    offs, weights = finite_offsets(q, n)
    best = INF
    for w in sorted(set(weights.tolist())):
        for off in offs[weights == w]:
            if member[word_index(arr + off, q)].any():
                return w
    return best


def dmin(code: Code) -> float:
    """Minimum pairwise distance; ``inf`` for a singleton or a zero-error code."""
    if len(code) <= 1:
        return INF
    arr = code.array()
    m = len(arr)
    n_offsets = (2 if code.q == 2 else 3) ** code.n
    if n_offsets * m < m * m // 2 and code.q ** code.n <= 50_000_000:
        return _offset_dmin(arr, code.q)
    return _pairwise_dmin(arr, code.q)


@dataclass(frozen=True)
class WeightTable:
    """Per-symbol additive weights on ``Z_q``; ``inf`` entries allowed."""

    q: int
    w: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        if len(w) != self.q:
            raise DomainError(f"weight table has {len(w)} entries, expected {self.q}")
        if w[0] != 0:
            raise DomainError("weight of the zero symbol must be 0")
        if any(x < 0 or math.isnan(x) for x in w):
            raise DomainError("weights must be nonnegative")
        object.__setattr__(self, "w", w)

    @classmethod
    def hamming(cls, q: int) -> "WeightTable":
        return cls(q, (0,) + (1,) * (q - 1))

    @classmethod
    def cycle(cls, q: int) -> "WeightTable":
        return cls(q, tuple(symbol_distance(x, 0, q) for x in range(q)))

    def is_symmetric(self) -> bool:
        return all(self.w[x] == self.w[(-x) % self.q] for x in range(self.q))

    def word_weights(self, arr: np.ndarray) -> np.ndarray:
        table = np.array(self.w)
        return table[np.asarray(arr) % self.q].sum(axis=-1)

    def ball_size(self, k: int, radius: float) -> int:
        """Number of words of ``Z_q^k`` with additive weight at most ``radius``."""
        counts = {0.0: 1}
        for _ in range(k):
            nxt = {}
            for tot, c in counts.items():
                for x in self.w:
                    t = tot + x
                    if t <= radius:
                        nxt[t] = nxt.get(t, 0) + c
            counts = nxt
        return sum(counts.values())


# Exact factor weights of C_9^3 modulo the r = 3 doubling set, indexed by the
# last coordinate of the coset representative (0, 0, x).
NINE_CYCLE_WEIGHTS = WeightTable(9, (0, 1, 1, 2, 1, 1, 2, 1, 1))


# ---------------------------------------------------------------------------
# group codes


def span(q: int, generator: np.ndarray) -> Code:
    """All ``Z_q``-linear combinations of the rows of ``generator``."""
    g = np.asarray(generator, dtype=np.int64) % q
    coeffs = all_words(q, g.shape[0])
    return Code.from_array(q, coeffs @ g % q)


def is_subgroup(code: Code) -> bool:
    """Whether the word set is closed under addition mod q.

    Builds the subgroup generated by the words one generator at a time and
    compares sizes, so closure is verified rather than assumed.
    """
    q, n = code.q, code.n
    idx = set(code.indices().tolist())
    if 0 not in idx:
        return False
    arr = code.array()
    group = np.zeros((1, n), dtype=np.int64)
    members = {0}
    for row in arr:
        if int(word_index(row, q)) in members:
            continue
        order = q // math.gcd(q, math.gcd(*[int(s) for s in row]) or q)
        layers = [(group + j * row) % q for j in range(order)]
        group = np.unique(np.concatenate(layers), axis=0)
        members = set(word_index(group, q).tolist())
        if len(members) > len(idx):
            return False
    return members == idx


def _require_subgroup(code: Code):
    if not is_subgroup(code):
        raise NotASubgroupError("code is not closed under addition mod q")


def factor_weight(group_code: Code, rep: Sequence[int], weights: WeightTable | None = None) -> float:
    """Minimum weight over the coset ``rep + group_code``."""
    _require_subgroup(group_code)
    weights = weights or WeightTable.cycle(group_code.q)
    coset = (group_code.array() + np.asarray(rep, dtype=np.int64)) % group_code.q
    return float(weights.word_weights(coset).min())


def coset_label(group_arr: np.ndarray, rep: Sequence[int], q: int) -> int:
    return int(word_index((group_arr + np.asarray(rep, dtype=np.int64)) % q, q).min())


def coset_lift(group_code: Code, factor_reps: Sequence[Sequence[int]]) -> Code:
    """Union of the cosets ``rep + group_code`` over distinct-coset reps."""
    _require_subgroup(group_code)
    q = group_code.q
    garr = group_code.array()
    labels = [coset_label(garr, r, q) for r in factor_reps]
    if len(set(labels)) != len(labels):
        raise DuplicateCosetError("two representatives lie in the same coset")
    reps = np.asarray(factor_reps, dtype=np.int64).reshape(len(labels), group_code.n)
    words = (garr[None, :, :] + reps[:, None, :]) % q
    return Code.from_array(q, words.reshape(-1, group_code.n))


def greedy_gv_factor(weights: WeightTable, k: int, d_w: float) -> list:
    """Lexicographic greedy code in ``Z_q^k`` with weighted distance >= d_w."""
    q = weights.q
    table = np.array(weights.w)
    chosen = np.empty((0, k), dtype=np.int64)
    for word in all_words(q, k):
        if len(chosen):
            dists = table[(word - chosen) % q].sum(axis=1)
            if dists.min() < d_w:
                continue
        chosen = np.vstack([chosen, word])
    return [tuple(int(s) for s in w) for w in chosen]


def greedy_hamming_code(q: int, k: int, d: int) -> list:
    return greedy_gv_factor(WeightTable.hamming(q), k, d)


# ---------------------------------------------------------------------------
# constructions


def construct_even(q: int, binary_code: Code) -> Code:
    """Lift a binary code to ``C_q^n`` for even q by adding ``{0,2,..,q-2}^n``."""
    if q % 2 or q < 2:
        raise DomainError("construct_even needs an even q")
    if binary_code.q != 2:
        raise DomainError("the base code must be binary")
    n = binary_code.n
    evens = 2 * all_words(q // 2, n)
    words = (evens[:, None, :] + binary_code.array()[None, :, :]) % q
    return Code.from_array(q, words.reshape(-1, n))


def _block_generator(r: int, k: int) -> np.ndarray:
    """Generator ``[I_{(r-1)k} | 2I_k; 4I_k; ...; 2^{r-1}I_k]``."""
    rows = (r - 1) * k
    g = np.zeros((rows, r * k), dtype=np.int64)
    g[:, :rows] = np.eye(rows, dtype=np.int64)
    for j in range(1, r):
        g[(j - 1) * k:j * k, rows:] = (2 ** j) * np.eye(k, dtype=np.int64)
    return g


def pentagon_base_code(k: int) -> Code:
    """Row span of ``[1, 2] (x) I_k = [I_k | 2 I_k]`` over F_5 (Shannon's code for k=1)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return span(5, _block_generator(2, k))


def doubling_group_code(r: int, k: int = 1) -> Code:
    """Infinite-distance group code of rate (1 - 1/r) log q in ``C_q^{rk}``, q = 2^r + 1.

    For k = 1 this is ``{(a_1..a_r): a_r = 2a_1 + 4a_2 + ... + 2^{r-1}a_{r-1}}``.
    """
    if r < 2 or k < 1:
        raise DomainError("need r >= 2 and k >= 1")
    return span(2 ** r + 1, _block_generator(r, k))


def _embed_last(reps: Sequence[Sequence[int]], zeros: int) -> list:
    return [(0,) * zeros + tuple(x) for x in reps]


def construct_pentagon(k: int, d: int) -> Code:
    """Pentagon base code lifted by a greedy F_5^k Hamming code of distance d."""
    if not 1 <= d <= k:
        raise DomainError("need 1 <= d <= k")
    factor = greedy_hamming_code(5, k, d)
    return coset_lift(pentagon_base_code(k), _embed_last(factor, k))


def construct_2r1(r: int, k: int, d: int) -> Code:
    """Doubling group code lifted by a greedy q-ary Hamming code (q = 2^r + 1)."""
    if not 1 <= d <= k:
        raise DomainError("need 1 <= d <= k")
    q = 2 ** r + 1
    factor = greedy_hamming_code(q, k, d)
    return coset_lift(doubling_group_code(r, k), _embed_last(factor, (r - 1) * k))


def construct_ninecycle(k: int, d_w: int) -> Code:
    """r = 3 group code lifted by a greedy code under the exact factor weight."""
    factor = greedy_gv_factor(NINE_CYCLE_WEIGHTS, k, d_w)
    return coset_lift(doubling_group_code(3, k), _embed_last(factor, 2 * k))


SHANNON_PENTAGON = Code(5, 2, ((0, 0), (1, 2), (2, 4), (3, 1), (4, 3)))
