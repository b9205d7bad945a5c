from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matschub.errors import IndexOutOfRange, NotABijection, OutOfRange, SizeLimitExceeded
from matschub.permcore import (
    Permutation, Word, all_permutations, classify, parse_permutation, rank_function,
    reduced_words, word_product,
)
from matschub.oracles import reduced_words_exhaustive
from matschub.regions import rothe_diagram

from conftest import permutations_upto


def count_ones(pi, a, b):
    m = pi.matrix()
    return sum(m[i][j] for i in range(a) for j in range(b))


class TestParse:
    def test_digit_string(self):
        assert parse_permutation("[25413]") == Permutation((2, 5, 4, 1, 3))

    def test_single(self):
        assert parse_permutation("[1]") == Permutation.identity(1)

    def test_comma_and_json(self):
        assert parse_permutation("[2,5,4,1,3]") == parse_permutation("2 5 4 1 3")

    def test_repeat(self):
        with pytest.raises(NotABijection):
            parse_permutation("[2,2,1]")

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            parse_permutation("[1,4]")

    def test_str_roundtrip(self):
        pi = Permutation((2, 5, 4, 1, 3))
        assert str(pi) == "[25413]"
        assert parse_permutation(str(pi)) == pi


class TestRank:
    def test_values(self):
        assert rank_function(parse_permutation("[14523]"), 3, 3) == count_ones(parse_permutation("[14523]"), 3, 3) == 1
        assert rank_function(parse_permutation("[25413]"), 1, 3) == 0

    def test_identity_is_min(self):
        e = Permutation.identity(5)
        assert all(rank_function(e, a, b) == min(a, b) for a in range(1, 6) for b in range(1, 6))

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            rank_function(Permutation.identity(3), 4, 1)

    @given(permutations_upto(6))
    def test_matches_matrix_and_steps(self, pi):
        n = pi.n
        assert rank_function(pi, n, n) == n
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                r = rank_function(pi, a, b)
                assert r == count_ones(pi, a, b)
                if a < n:
                    assert rank_function(pi, a + 1, b) - r in (0, 1)
                if b < n:
                    assert rank_function(pi, a, b + 1) - r in (0, 1)


class TestLength:
    def test_values(self):
        assert parse_permutation("[25413]").length() == 6
        assert parse_permutation("[14523]").length() == 4
        assert Permutation.identity(4).length() == 0

    def test_equals_diagram_size(self):
        for n in range(1, 7):
            for pi in all_permutations(n):
                assert pi.length() == len(rothe_diagram(pi))


class TestWords:
    def test_figure_product(self):
        assert word_product(Word((4, 2, 3), 6)) == Permutation((1, 3, 5, 2, 4, 6))
        assert word_product(Word((4, 2, 3), 6)).trimmed() == parse_permutation("[13524]")

    def test_empty_and_involution(self):
        assert word_product(Word((), 4)) == Permutation.identity(4)
        assert word_product(Word((1, 1), 3)) == Permutation.identity(3)

    def test_blanks_skipped(self):
        assert word_product(Word((1, 0, 2), 3)) == word_product(Word((1, 2), 3))

    def test_subword_and_complement(self):
        Q = Word((1, 2, 3, 1, 2), 4)
        J = Q.subword({1, 3, 5})
        assert J.letters == (1, 0, 3, 0, 2)
        assert Q.complement(J).letters == (0, 2, 0, 1, 0)

    def test_letter_range(self):
        with pytest.raises(OutOfRange):
            Word((3,), 3)

    @given(st.lists(st.integers(1, 5), max_size=8))
    def test_word_times_reverse_is_identity(self, letters):
        w = tuple(letters) + tuple(reversed(letters))
        assert word_product(Word(w, 6)) == Permutation.identity(6)


class TestReducedWords:
    def test_321(self):
        assert {w.letters for w in reduced_words(parse_permutation("[321]"))} == {(1, 2, 1), (2, 1, 2)}

    def test_trivial(self):
        assert {w.letters for w in reduced_words(Permutation.identity(3))} == {()}
        assert {w.letters for w in reduced_words(parse_permutation("[213]"))} == {(1,)}

    def test_bound(self):
        with pytest.raises(SizeLimitExceeded):
            reduced_words(Permutation.identity(8))
        assert reduced_words(Permutation.identity(8), bound=8)

    def test_matches_exhaustive_search(self):
        for n in range(1, 5):
            for pi in all_permutations(n):
                ours = {w.letters for w in reduced_words(pi)}
                assert ours == reduced_words_exhaustive(pi)

    def test_no_shorter_word(self):
        for pi in all_permutations(4):
            ell = pi.length()
            for k in range(ell):
                for w in product(range(1, 4), repeat=k):
                    assert word_product(w, 4) != pi


class TestClassify:
    def test_examples(self):
        assert classify(parse_permutation("[1432]"))["is_one_dominant"]
        assert classify(Permutation.identity(4))["is_one_dominant"]
        assert not classify(parse_permutation("[25413]"))["is_one_dominant"]
        assert classify(parse_permutation("[321]"))["is_dominant"]

    def test_132_pattern(self):
        # Dominant permutations are exactly the 132-avoiding ones.
        for n in range(1, 6):
            for pi in all_permutations(n):
                w = pi.one_line
                has_132 = any(w[i] < w[k] < w[j] for i in range(n) for j in range(i + 1, n)
                              for k in range(j + 1, n))
                assert classify(pi)["is_dominant"] == (not has_132)

    @settings(max_examples=50)
    @given(permutations_upto(6))
    def test_inverse_involution(self, pi):
        assert pi.inverse().inverse() == pi
        assert pi.inverse().length() == pi.length()
