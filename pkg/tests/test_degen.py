from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matschub.degen import (
    acyclic_root_polytope, canonical_triangulation, check_degen_domain, degeneration_map,
    ess_face, moment_polytope, pullback_triangulation, transitive_closure, transitive_reduction,
    tree_T, verify_c_realization,
)
from matschub.errors import CyclicGraph, NotOneDominant
from matschub.oracles import dot_drop_tree
from matschub.permcore import Permutation, all_permutations, classify, parse_permutation
from matschub.regions import core_regions, region_bundle
from matschub.rootgeom import affine_dimension, validate_triangulation


def one_dominant(n):
    return [pi for pi in all_permutations(n)
            if classify(pi)["is_one_dominant"] and pi != Permutation.identity(n)]


def closure_by_matrix(m, edges):
    reach = [[False] * (m + 1) for _ in range(m + 1)]
    for a, b in edges:
        reach[a][b] = True
    for k in range(1, m + 1):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    return {(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if reach[i][j]}


def nc_alt_trees_bruteforce(m, closure):
    out = set()
    for chosen in combinations(sorted(closure), m - 1):
        verts = {1}
        changed = True
        while changed:
            changed = False
            for a, b in chosen:
                if (a in verts) != (b in verts):
                    verts |= {a, b}
                    changed = True
        if len(verts) != m:
            continue
        lefts = {a for a, _ in chosen}
        rights = {b for _, b in chosen}
        if lefts & rights:
            continue
        if any(a < x < b < y for a, b in chosen for x, y in chosen):
            continue
        out.add(frozenset(chosen))
    return out


dags = st.integers(2, 6).flatmap(
    lambda m: st.tuples(st.just(m), st.sets(
        st.tuples(st.integers(1, m), st.integers(1, m)).filter(lambda e: e[0] < e[1]), max_size=8)))


class TestGraphs:
    @given(dags)
    def test_closure_matches_warshall(self, g):
        m, edges = g
        assert transitive_closure(m, edges) == closure_by_matrix(m, edges)

    @given(dags)
    def test_reduction_has_same_closure(self, g):
        m, edges = g
        red = transitive_reduction(m, edges)
        assert red <= edges
        assert transitive_closure(m, red) == transitive_closure(m, edges)

    def test_cycle(self):
        with pytest.raises(CyclicGraph):
            transitive_closure(2, {(1, 2), (2, 1)})
        with pytest.raises(CyclicGraph):
            acyclic_root_polytope((2, {(2, 1)}))


class TestAcyclicRootPolytope:
    def test_path(self):
        P = acyclic_root_polytope((3, {(1, 2), (2, 3)}))
        assert P.vertices[0] == (0, 0, 0)
        assert len(P) == 4  # origin plus e1-e2, e1-e3, e2-e3
        T = canonical_triangulation((3, {(1, 2), (2, 3)}))
        assert len(T) == 2
        rep = validate_triangulation(T)
        assert rep["pass"] and rep["unimodular"]

    def test_star(self):
        T = canonical_triangulation((4, {(1, 2), (1, 3), (1, 4)}))
        assert len(T) == 1 and validate_triangulation(T)["pass"]

    @settings(max_examples=40, deadline=None)
    @given(dags)
    def test_trees_match_bruteforce(self, g):
        m, edges = g
        closure = transitive_closure(m, edges)
        T = canonical_triangulation((m, edges))
        got = {frozenset(tuple(e) for e in lab["tree"]) for lab in T.labels}
        assert got == nc_alt_trees_bruteforce(m, closure)

    def test_validates_on_all_noncrossing_trees(self):
        count = 0
        for m in range(2, 6):
            pairs = [(a, b) for a in range(1, m + 1) for b in range(a + 1, m + 1)]
            for edges in combinations(pairs, m - 1):
                if any(a < x < b < y for a, b in edges for x, y in edges):
                    continue
                if not _spanning(m, edges):
                    continue
                count += 1
                rep = validate_triangulation(canonical_triangulation((m, edges)))
                assert rep["pass"] and rep["unimodular"], edges
        assert count > 50

    def test_crossing_graph_is_not_covered(self):
        # negative control: the validator catches the missing volume
        rep = validate_triangulation(canonical_triangulation((5, {(1, 4), (2, 3), (2, 5), (4, 5)})))
        assert not rep["pass"] and rep["failure"]["check"] == "c"

    def test_T_pi_is_noncrossing(self):
        for n in range(3, 6):
            for pi in one_dominant(n):
                E = tree_T(pi).edges
                assert not any(a < x < b < y for a, b in E for x, y in E)


def _spanning(m, edges):
    seen, stack = {1}, [1]
    while stack:
        v = stack.pop()
        for a, b in edges:
            for u, w in ((a, b), (b, a)):
                if u == v and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == m


class TestTree:
    def test_15342(self):
        T = tree_T(parse_permutation("[15342]"))
        assert T.edges == {(1, 2), (2, 3), (2, 5), (4, 5), (5, 6)}
        assert T.m == 6

    def test_14523(self):
        T = tree_T(parse_permutation("[14523]"))
        assert T.edges == {(1, 3), (2, 3), (3, 4), (3, 5)}
        assert [s["label"] for s in T.boundary_labeling if s["in_A"]] == [1, 2, 3, 4, 5]

    def test_is_tree(self):
        for n in range(3, 6):
            for pi in one_dominant(n):
                T = tree_T(pi)
                assert len(T.edges) == T.m - 1
                assert transitive_closure(T.m, T.edges) == transitive_closure(T.m, T.region_edges)

    def test_domain(self):
        with pytest.raises(NotOneDominant):
            tree_T(parse_permutation("[25413]"))
        with pytest.raises(NotOneDominant):
            check_degen_domain(Permutation.identity(3))
        with pytest.raises(NotOneDominant):
            check_degen_domain(parse_permutation("[1243]"), strict=True)
        check_degen_domain(parse_permutation("[1243]"))

    def test_dot_drop_agrees(self):
        for n in range(3, 7):
            for pi in one_dominant(n):
                dd = dot_drop_tree(pi)
                assert not dd["bad_dots"]
                assert dd["edges"] == tree_T(pi).edges, pi


class TestMaps:
    def test_1243_cells(self):
        res = degeneration_map(parse_permutation("[1243]"))
        cells = res["cells"]
        assert cells[(1, 3)]["K"] == {"x1": 1, "x3": -1}
        assert cells[(2, 3)]["K"] == {"x2": 1, "x3": -1}
        assert cells[(3, 3)]["K"] == {} and cells[(3, 3)]["LK"] == {}
        expected_lk = {(3, 1): (1, 3), (2, 1): (1, 4), (1, 1): (1, 5), (3, 2): (2, 3),
                       (2, 2): (2, 4), (1, 2): (2, 5), (2, 3): (3, 4), (1, 3): (3, 5)}
        for box, (a, b) in expected_lk.items():
            assert cells[box]["LK"] == {f"e{a}": 1, f"e{b}": -1}
        assert res["image_check"]

    def test_image_for_all_one_dominant(self):
        for n in range(3, 6):
            for pi in one_dominant(n):
                assert degeneration_map(pi)["image_check"], pi

    def test_moment_polytope(self):
        pi = parse_permutation("[1243]")
        P = moment_polytope(pi)
        assert len(P) == len(region_bundle(pi).L)


class TestEssFace:
    def test_1243(self):
        res = ess_face(parse_permutation("[1243]"))
        assert res["max"] == 2 and res["argmax"] == [(3, 3)] and res["is_face"]

    def test_one_dominant_s5(self):
        for pi in one_dominant(5):
            res = ess_face(pi)
            assert res["is_face"] and res["max"] == res["k"] + 1


class TestRealization:
    def test_1432(self):
        rep = verify_c_realization(parse_permutation("[1432]"))
        assert rep["pass"], rep
        assert rep["facet_counts"]["core"] == rep["facet_counts"]["nat"]

    def test_132(self):
        rep = verify_c_realization(parse_permutation("[132]"))
        assert rep["pass"]
        # s_2 has two reduced pipe dreams, so two simplices
        assert len(pullback_triangulation(parse_permutation("[132]"))) == 2

    def test_cress(self):
        for pi in one_dominant(5):
            assert core_regions(pi)["matches_nw_minus_ess"]
