import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclecodes import codes as C
from cyclecodes.errors import DomainError, DuplicateCosetError, NotASubgroupError

INF = math.inf


def brute_dmin(code):
    best = INF
    for x, y in itertools.combinations(code.words, 2):
        best = min(best, C.dist(x, y, code.q))
    return best


class TestSemimetric:
    def test_examples(self):
        assert C.dist((0, 1), (0, 1), 5) == 0
        assert C.dist((0, 1), (1, 2), 5) == 2
        assert C.dist((0, 1), (1, 4), 5) == INF
        assert C.dist((0,), (4,), 5) == 1

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            C.dist((0, 1), (0,), 5)

    @pytest.mark.parametrize("q", [5, 9])
    def test_axioms_exhaustive(self, q):
        words = [tuple(w) for w in C.all_words(q, 2)]
        table = {(x, y): C.dist(x, y, q) for x in words for y in words}
        for x in words:
            for y in words:
                assert table[x, y] == table[y, x]
                assert (table[x, y] == 0) == (x == y)
        for x, y, z in itertools.product(words[::3], words[::2], words):
            a, b, c = table[x, y], table[y, z], table[x, z]
            if max(a, b, c) < INF:
                assert c <= a + b

    @given(st.integers(3, 12), st.lists(st.integers(0, 100), min_size=1, max_size=6), st.data())
    def test_weight_translation_invariant(self, q, x, data):
        y = data.draw(st.lists(st.integers(0, 100), min_size=len(x), max_size=len(x)))
        z = [(a - b) % q for a, b in zip(x, y)]
        assert C.dist([a % q for a in x], [b % q for b in y], q) == C.weight(z, q)


class TestCode:
    def test_canonical(self):
        c = C.Code.from_words(5, [(6, 2), (0, 0), (1, 2)])
        assert c.words == ((0, 0), (1, 2))
        assert (1, 2) in c and len(c) == 2

    def test_validation(self):
        with pytest.raises(DomainError):
            C.Code(5, 2, ((0, 5),))
        with pytest.raises(DomainError):
            C.Code(5, 2, ((0,),))
        with pytest.raises(DomainError):
            C.Code(5, 2, ())

    def test_dmin_examples(self):
        assert C.dmin(C.SHANNON_PENTAGON) == INF
        assert C.dmin(C.Code(5, 2, ((0, 0), (1, 1)))) == 2
        assert C.dmin(C.Code(7, 3, ((1, 2, 3),))) == INF

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([3, 4, 5, 7]), st.integers(1, 4), st.data())
    def test_dmin_matches_pairwise(self, q, n, data):
        words = data.draw(st.lists(st.tuples(*[st.integers(0, q - 1)] * n), min_size=1, max_size=40))
        code = C.Code.from_words(q, words)
        assert C.dmin(code) == brute_dmin(code)

    def test_index_order(self):
        words = C.all_words(3, 2)
        assert words[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]
        np.testing.assert_array_equal(C.word_index(words, 3), np.arange(9))


class TestWeights:
    def test_tables(self):
        assert C.WeightTable.cycle(5).w == (0, 1, INF, INF, 1)
        assert C.WeightTable.hamming(3).w == (0, 1, 1)
        assert C.NINE_CYCLE_WEIGHTS.is_symmetric()
        with pytest.raises(DomainError):
            C.WeightTable(3, (1, 0, 0))

    def test_ninecycle_ball_sizes(self):
        assert C.NINE_CYCLE_WEIGHTS.ball_size(1, 1) == 7
        assert C.NINE_CYCLE_WEIGHTS.ball_size(2, 1) == 13

    def test_ninecycle_table_is_exact_factor_weight(self):
        group = C.doubling_group_code(3)
        cyc = C.WeightTable.cycle(9)
        for x in range(9):
            assert C.factor_weight(group, (0, 0, x), cyc) == C.NINE_CYCLE_WEIGHTS.w[x]


class TestGroupCodes:
    def test_pentagon_base(self):
        assert C.pentagon_base_code(1).words == C.SHANNON_PENTAGON.words
        two = C.pentagon_base_code(2)
        assert len(two) == 25 and brute_dmin(two) == INF
        assert C.is_subgroup(two)

    def test_subgroup_check(self):
        assert not C.is_subgroup(C.Code(5, 2, ((0, 0), (1, 2))))
        with pytest.raises(NotASubgroupError):
            C.factor_weight(C.Code(5, 2, ((0, 0), (1, 2))), (0, 1))

    def test_factor_weight_examples(self):
        base = C.pentagon_base_code(1)
        assert C.factor_weight(base, (1, 2)) == 0
        assert C.factor_weight(base, (0, 1)) == 1
        assert C.factor_weight(base, (0, 2)) == 1

    @pytest.mark.parametrize("k", [1, 2])
    def test_pentagon_isometry(self, k):
        base = C.pentagon_base_code(k)
        for x in itertools.product(range(5), repeat=k):
            rep = (0,) * k + x
            assert C.factor_weight(base, rep) == sum(1 for s in x if s)

    def test_coset_lift_examples(self):
        base = C.pentagon_base_code(1)
        assert C.coset_lift(base, [(0, 0)]).words == base.words
        lifted = C.coset_lift(base, [(0, 0), (0, 1)])
        assert len(lifted) == 10 and C.dmin(lifted) == 1
        with pytest.raises(DuplicateCosetError):
            C.coset_lift(base, [(0, 0), (1, 2)])

    def test_coset_lift_distance(self):
        base = C.pentagon_base_code(2)
        reps = C.greedy_hamming_code(5, 2, 2)
        lifted = C.coset_lift(base, [(0, 0) + r for r in reps])
        assert brute_dmin(lifted) == 2


class TestConstructions:
    def test_even_examples(self):
        c = C.construct_even(4, C.Code(2, 2, ((0, 0), (1, 1))))
        assert len(c) == 8 and C.dmin(c) == 2
        single = C.construct_even(4, C.Code(2, 3, ((0, 0, 0),)))
        assert len(single) == 8 and C.dmin(single) == INF
        six = C.construct_even(6, C.Code(2, 3, ((0, 0, 0), (1, 1, 1))))
        assert len(six) == 54 and C.dmin(six) == 3
        with pytest.raises(DomainError):
            C.construct_even(5, C.Code(2, 1, ((0,),)))

    def test_pentagon(self):
        assert len(C.construct_pentagon(1, 1)) == 25
        c = C.construct_pentagon(2, 2)
        assert len(c) == 125 and C.dmin(c) == 2
        c = C.construct_pentagon(3, 3)
        assert C.dmin(c) == 3 and len(c) == 125 * len(C.greedy_hamming_code(5, 3, 3))
        full = C.construct_pentagon(2, 1)
        assert len(full) == 5 ** 4 and C.dmin(full) == 1

    def test_2r1_small(self):
        c1 = C.doubling_group_code(3)
        assert len(c1) == 81
        for a1, a2, a3 in c1.words:
            assert a3 == (2 * a1 + 4 * a2) % 9
        assert C.construct_2r1(2, 1, 1).words == C.construct_pentagon(1, 1).words
        assert C.doubling_group_code(2).words == C.pentagon_base_code(1).words
        lift = C.construct_2r1(3, 2, 2)
        assert C.dmin(lift) >= 2

    def test_doubling_code_maximal_independent(self):
        code = C.doubling_group_code(3)
        assert C.dmin(code) == INF
        members = set(code.words)
        offs, _ = C.finite_offsets(9, 3)
        for w in C.all_words(9, 3):
            if tuple(w) in members:
                continue
            nbrs = {tuple(x) for x in (w + offs) % 9}
            assert nbrs & members, w

    def test_2r1_factor_weight_dominates_hamming(self):
        group = C.doubling_group_code(3, 1)
        for x in range(9):
            assert C.factor_weight(group, (0, 0, x)) >= (1 if x else 0)

    def test_ninecycle(self):
        code = C.construct_ninecycle(1, 2)
        assert C.dmin(code) >= 2
        assert len(code) == 81 * len(C.greedy_gv_factor(C.NINE_CYCLE_WEIGHTS, 1, 2))

    def test_greedy_factor(self):
        w = C.NINE_CYCLE_WEIGHTS
        assert len(C.greedy_gv_factor(w, 2, 1)) == 81
        one = C.greedy_gv_factor(w, 1, 2)
        assert len(one) >= 9 / 7
        two = C.greedy_gv_factor(w, 2, 2)
        assert len(two) >= 81 / 13
        table = np.array(w.w)
        for x, y in itertools.combinations(two, 2):
            assert table[(np.array(x) - np.array(y)) % 9].sum() >= 2

    def test_greedy_is_deterministic(self):
        assert C.greedy_hamming_code(5, 3, 2) == C.greedy_hamming_code(5, 3, 2)
