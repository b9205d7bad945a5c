from math import comb

from matschub.oracles import (
    all_reduced_pipe_dreams, cone_contains, cross_and_elbow_boxes, dot_drop_tree,
    monotone_path_count, noncrossing_alternating_forests, reduced_words_exhaustive, trace_pipes,
)
from matschub.permcore import Permutation, all_permutations, parse_permutation
from matschub.regions import bottom_pipe_dream, top_pipe_dream


def test_trace_pipes_empty_grid_is_identity():
    assert trace_pipes(frozenset(), 4) == (1, 2, 3, 4)


def test_trace_pipes_single_cross():
    # a cross at (1,1) swaps the pipes entering rows 1 and 2
    assert trace_pipes(frozenset({(1, 1)}), 3) == (2, 1, 3)


def test_164235_extremes_are_reduced_pipe_dreams():
    pi = parse_permutation("[164235]")
    dreams = set(all_reduced_pipe_dreams(pi))
    assert bottom_pipe_dream(pi).boxes in dreams
    assert top_pipe_dream(pi).boxes in dreams


def test_pipe_dream_totals():
    # every permutation has at least one reduced pipe dream
    for n in range(1, 5):
        for pi in all_permutations(n):
            assert all_reduced_pipe_dreams(pi), pi


def test_1432():
    assert len(all_reduced_pipe_dreams(parse_permutation("[1432]"))) == 5
    assert len(cross_and_elbow_boxes(parse_permutation("[1432]"))) > 0


def test_reduced_words_321():
    assert reduced_words_exhaustive(parse_permutation("[321]")) == {(1, 2, 1), (2, 1, 2)}
    assert reduced_words_exhaustive(Permutation.identity(3)) == {()}


def test_forests_rectangle():
    boxes = frozenset((i, j) for i in range(1, 3) for j in range(1, 4))
    assert len(noncrossing_alternating_forests(boxes, 2, 3)) == comb(3, 1)


def test_path_count():
    boxes = frozenset((i, j) for i in range(1, 4) for j in range(1, 4))
    assert monotone_path_count(boxes) == 6


def test_cone_contains():
    assert cone_contains([(1, 0), (0, 1)], (2, 3))
    assert not cone_contains([(1, 0), (0, 1)], (-1, 0))
    assert cone_contains([], (0, 0))


def test_dot_drop_15342():
    res = dot_drop_tree(parse_permutation("[15342]"))
    assert res["edges"] == {(1, 2), (2, 3), (2, 5), (4, 5), (5, 6)}
    assert res["m"] == 6 and not res["bad_dots"]
