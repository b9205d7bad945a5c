import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matschub.errors import NotExpressible
from matschub.oracles import all_reduced_pipe_dreams
from matschub.permcore import Permutation, Word, all_permutations, parse_permutation
from matschub.regions import BoxSet, region_bundle
from matschub.subword import (
    SimplicialComplex, convention_audit, find_isomorphism, mirror, pd_core, pipe_dream_complex,
    shape_word_and_p, subword_complex, subword_complex_bruteforce, topology_check,
    triangle_boxes, triangular_word, verify_sc_realization,
)

from conftest import permutations_upto


def rectangle(r, c):
    return BoxSet({(i, j) for i in range(1, r + 1) for j in range(1, c + 1)})


class TestComplex:
    def test_rejects_non_maximal(self):
        with pytest.raises(ValueError):
            SimplicialComplex((1, 2), (frozenset({1}), frozenset({1, 2})))

    def test_f_vector_and_chi(self):
        triangle_boundary = SimplicialComplex.from_sets([{1, 2}, {2, 3}, {1, 3}])
        assert triangle_boundary.f_vector() == [1, 3, 3]
        assert triangle_boundary.euler_characteristic() == 0
        assert topology_check(triangle_boundary)["verdict"] == "sphere"

    def test_cone(self):
        C = SimplicialComplex.from_sets([{1, 2}, {2, 3}]).cone(2)
        assert C.cone_points() == {2, ("cone", 1), ("cone", 2)}
        assert C.dimension == 3

    def test_restrict_and_delete(self):
        C = SimplicialComplex.from_sets([{1, 2, 3}, {2, 3, 4}])
        assert C.cone_points() == {2, 3}
        assert set(C.delete({2, 3}).facets) == {frozenset({1}), frozenset({4})}
        assert set(C.restrict({1, 4}).facets) == {frozenset({1}), frozenset({4})}

    def test_topology_other(self):
        # three triangles sharing an edge: ridge degree 3
        C = SimplicialComplex.from_sets([{1, 2, 3}, {1, 2, 4}, {1, 2, 5}])
        assert topology_check(C)["verdict"] == "other"
        impure = SimplicialComplex.from_sets([{1, 2, 3}, {4}])
        assert topology_check(impure)["verdict"] == "other"

    def test_isomorphism(self):
        A = SimplicialComplex.from_sets([{1, 2}, {2, 3}])
        B = SimplicialComplex.from_sets([{"a", "c"}, {"c", "b"}])
        iso = find_isomorphism(A, B)
        assert iso is not None and iso[2] == "c"
        assert find_isomorphism(A, SimplicialComplex.from_sets([{1, 2}, {3, 4}])) is None


class TestSubwordComplex:
    def test_s1s2s1_for_213(self):
        C = subword_complex(Word((1, 2, 1), 3), parse_permutation("[213]"))
        assert set(C.facets) == {frozenset({2, 3}), frozenset({1, 2})}
        assert topology_check(C)["verdict"] == "ball"

    def test_not_expressible(self):
        with pytest.raises(NotExpressible):
            subword_complex(Word((1, 1), 3), parse_permutation("[231]"))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(1, 3), min_size=0, max_size=8), permutations_upto(4))
    def test_matches_bruteforce(self, letters, pi):
        Q = Word(tuple(letters), 4)
        brute = subword_complex_bruteforce(Q, pi)
        if not brute:
            with pytest.raises(NotExpressible):
                subword_complex(Q, pi)
        else:
            assert set(subword_complex(Q, pi).facets) == set(brute)

    def test_reduced_word_gives_point(self):
        C = subword_complex(Word((1, 2, 1), 3), parse_permutation("[321]"))
        assert C.facets == (frozenset(),)
        assert topology_check(C)["verdict"] == "sphere"


class TestPipeDreamComplex:
    def test_triangular_word(self):
        assert triangular_word(4).letters == (3, 2, 3, 1, 2, 3)
        assert triangle_boxes(3) == [(2, 1), (1, 1), (1, 2)]

    def test_1432_has_five(self):
        assert len(pipe_dream_complex(parse_permutation("[1432]")).facets) == 5

    def test_164235_extremes_are_facets(self):
        pi = parse_permutation("[164235]")
        C = pipe_dream_complex(pi)
        tri = set(triangle_boxes(6))
        from matschub.regions import bottom_pipe_dream, top_pipe_dream
        for crosses in (bottom_pipe_dream(pi), top_pipe_dream(pi)):
            assert frozenset(tri - crosses.boxes) in C.facets

    def test_counts_match_oracle_s4(self):
        for pi in all_permutations(4):
            C = pipe_dream_complex(pi)
            tri = frozenset(triangle_boxes(4))
            ours = {tri - f for f in C.facets}
            assert ours == set(all_reduced_pipe_dreams(pi)), pi

    def test_core_of_1432(self):
        core = pd_core(parse_permutation("[1432]"))
        assert topology_check(core)["verdict"] in ("ball", "sphere")


class TestShapeWords:
    def test_figure_shape(self):
        rb = region_bundle(parse_permutation("[14523]"))
        data = shape_word_and_p(rb.L - rb.Ess)
        assert data["p_word"].letters == (4, 2, 3)
        assert data["p"].trimmed() == parse_permutation("[13524]")

    def test_3x3(self):
        data = shape_word_and_p(rectangle(3, 3), mirrored=True)
        assert data["B"] == BoxSet({(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)})
        assert data["P"] == BoxSet({(1, 2), (1, 3), (2, 2), (2, 3)})
        assert data["p_word"].letters == (3, 4, 2, 3)

    def test_mirror(self):
        Lbar, m = mirror(BoxSet({(2, 3), (2, 4), (3, 3)}))
        assert Lbar == BoxSet({(2, 4), (2, 3), (3, 4)})
        assert m[(3, 3)] == (3, 4)

    @given(permutations_upto(5))
    def test_p_length_is_P_size(self, pi):
        L = region_bundle(pi).L
        if not L:
            return
        data = shape_word_and_p(L)
        assert data["p"].length() == len(data["P"])


class TestRealization:
    def test_examples(self):
        for w in ("[25413]", "[14523]", "[1432]", "[2143]"):
            rep = verify_sc_realization(parse_permutation(w))
            assert rep["pass"], rep

    def test_identity_vacuous(self):
        assert verify_sc_realization(Permutation.identity(4))["status"] == "vacuous"

    def test_audit_s4(self):
        audit = convention_audit(all_permutations(4))
        assert set(audit) == {"weak", "figure"}
        assert audit["weak"]["first_failure"] is None
        assert audit["figure"]["first_failure"] is None
