"""Trees T(pi), acyclic root polytopes, canonical triangulations and the
degeneration of the moment polytope of Y_pi onto P(T(pi)).

Everything here is stated for pi = 1 pi' with pi' dominant. The tree is
read off the region NW(pi) - Ess(pi): walking its south-east boundary from
the south-west corner, every N step gets a fresh label, and so does every E
step that is not the top edge of an essential box; such E steps inherit the
label of the N step just before them. A box in row i, column j then joins
the label of column j to the (larger) label of row i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import CyclicGraph, NotOneDominant
from .permcore import Permutation, classify
from .regions import Box, BoxSet, region_bundle
from .rootgeom.linalg import rank
from .rootgeom.polytope import LatticePolytope, affine_dimension
from .rootgeom.triangulation import Triangulation, validate_triangulation

__all__ = [
    "RootTree", "tree_T", "acyclic_root_polytope", "canonical_triangulation",
    "degeneration_map", "ess_face", "pullback_triangulation", "verify_c_realization",
    "transitive_closure", "transitive_reduction", "moment_polytope", "check_degen_domain",
]

Edge = tuple[int, int]


@dataclass(frozen=True)
class RootTree:
    """Tree on labels 1..m with edges (i, j), i < j, oriented i -> j.

    ``region_edges`` keeps one edge per box of NW - Ess (the transitively
    closed graph T-bar); ``edges`` is its transitive reduction, the tree.
    """

    m: int
    edges: frozenset[Edge]
    region_edges: frozenset[Edge] = frozenset()
    boundary_labeling: tuple[dict, ...] = ()
    row_label: dict = field(default_factory=dict, compare=False)
    col_label: dict = field(default_factory=dict, compare=False)
    box_edge: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "edges": sorted(list(e) for e in self.edges),
            "region_edges": sorted(list(e) for e in self.region_edges),
            "boundary_labeling": list(self.boundary_labeling),
        }


def check_degen_domain(pi: Permutation, strict: bool = False) -> None:
    """Raise NotOneDominant outside the class the constructions are defined on.

    The strict class is pi = 1 pi' with pi' dominant and pi not the identity.
    The relaxed class (default) keeps pi(1) = 1 and a nonempty essential set
    and only asks that every essential box be an outer corner of NW(pi),
    which is all the boundary labelling needs; it admits e.g. [1243].
    """
    if pi(1) != 1:
        raise NotOneDominant(f"{pi}: pi(1) = {pi(1)} != 1")
    rb = region_bundle(pi)
    if not rb.Ess:
        raise NotOneDominant(f"{pi}: empty essential set")
    if strict:
        if not classify(pi)["is_one_dominant"]:
            raise NotOneDominant(f"{pi} is not of the form 1pi' with pi' dominant")
        return
    for i, j in rb.Ess:
        if (i + 1, j) in rb.NW or (i, j + 1) in rb.NW:
            raise NotOneDominant(f"{pi}: essential box {(i, j)} is not an outer corner of NW")


def transitive_closure(m: int, edges: Iterable[Edge]) -> frozenset[Edge]:
    succ = {v: set() for v in range(1, m + 1)}
    for a, b in edges:
        succ[a].add(b)
    closure = set()
    for start in range(1, m + 1):
        stack, seen = list(succ[start]), set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            if v == start:
                raise CyclicGraph(f"directed cycle through {start}")
            seen.add(v)
            stack.extend(succ[v])
        closure.update((start, v) for v in seen)
    return frozenset(closure)


def transitive_reduction(m: int, edges: Iterable[Edge]) -> frozenset[Edge]:
    edges = frozenset(edges)
    closure = transitive_closure(m, edges)
    return frozenset((a, b) for a, b in edges
                     if not any((a, c) in closure and (c, b) in closure for c in range(1, m + 1)))


def tree_T(pi: Permutation) -> RootTree:
    check_degen_domain(pi)
    rb = region_bundle(pi)
    region = rb.NW - rb.Ess
    ess = rb.Ess.boxes
    rows = region.rows()
    labeling = []
    row_label: dict[int, int] = {}
    col_label: dict[int, int] = {}
    counter, prev_len, last_n = 0, 0, None
    for r in reversed(rows):
        length = len(region.row(r))
        for c in range(prev_len + 1, length + 1):
            bounds_ess = (r + 1, c) in ess
            if bounds_ess:
                col_label[c] = last_n
            else:
                counter += 1
                col_label[c] = counter
            labeling.append({"step": "E", "index": c, "label": col_label[c], "in_A": not bounds_ess})
        counter += 1
        row_label[r] = counter
        last_n = counter
        labeling.append({"step": "N", "index": r, "label": counter, "in_A": True})
        prev_len = max(prev_len, length)
    box_edge = {(i, j): (col_label[j], row_label[i]) for i, j in region.boxes}
    region_edges = frozenset(box_edge.values())
    tree = transitive_reduction(counter, region_edges)
    return RootTree(counter, tree, region_edges, tuple(labeling), row_label, col_label, box_edge)


def _root(m: int, i: int, j: int) -> tuple[int, ...]:
    v = [0] * m
    v[i - 1] += 1
    v[j - 1] -= 1
    return tuple(v)


def _tree_parts(G: RootTree | tuple[int, Iterable[Edge]]) -> tuple[int, frozenset[Edge]]:
    if isinstance(G, RootTree):
        return G.m, G.edges
    m, edges = G
    return m, frozenset(tuple(e) for e in edges)


def acyclic_root_polytope(G: RootTree | tuple[int, Iterable[Edge]]) -> LatticePolytope:
    """conv(0 and e_i - e_j for every directed path i -> j); index 0 is the origin."""
    m, edges = _tree_parts(G)
    for a, b in edges:
        if not a < b:
            raise CyclicGraph(f"edge {(a, b)} not oriented from smaller to larger label")
    closure = sorted(transitive_closure(m, edges))
    verts = [tuple([0] * m)] + [_root(m, i, j) for i, j in closure]
    return LatticePolytope(m, tuple(verts), True, tuple([None] + closure))


def _nc_alternating_trees(m: int, closure: list[Edge]) -> list[frozenset[Edge]]:
    """Noncrossing alternating spanning trees on 1..m drawn in order, by backtracking."""
    out: list[frozenset[Edge]] = []
    need = m - 1
    chosen: list[Edge] = []
    left, right = set(), set()
    parent = list(range(m + 1))

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    def walk(k: int):
        if len(chosen) == need:
            out.append(frozenset(chosen))
            return
        if len(chosen) + (len(closure) - k) < need:
            return
        a, b = closure[k]
        ok = a not in right and b not in left
        ok = ok and not any(x < a < y < b or a < x < b < y for x, y in chosen)
        if ok:
            ra, rb_ = find(a), find(b)
            if ra != rb_:
                parent[ra] = rb_
                chosen.append((a, b))
                added_l, added_r = a not in left, b not in right
                left.add(a)
                right.add(b)
                walk(k + 1)
                chosen.pop()
                if added_l:
                    left.discard(a)
                if added_r:
                    right.discard(b)
                parent[ra] = ra
        walk(k + 1)

    if m == 1:
        return [frozenset()]
    walk(0)
    return out


def canonical_triangulation(G: RootTree | tuple[int, Iterable[Edge]]) -> Triangulation:
    """Simplices conv(0, edges of T) over noncrossing alternating spanning trees T
    of the transitive closure.

    Intended for noncrossing trees such as T(pi). For graphs with crossing
    edges the simplices can fail to cover the polytope, e.g. edges
    (1,4), (2,3), (2,5), (4,5) give one simplex of volume 1 inside a
    polytope of volume 2; run validate_triangulation when in doubt.
    """
    P = acyclic_root_polytope(G)
    m = P.ambient_dim
    closure = [lab for lab in P.labels if lab is not None]
    index = {lab: k for k, lab in enumerate(P.labels)}
    trees = _nc_alternating_trees(m, closure)
    for t in trees:
        # Alternating trees have no directed path of length two.
        assert transitive_closure(m, t) == t
    facets = tuple(frozenset({0} | {index[e] for e in t}) for t in trees)
    labels = tuple({"tree": sorted(t)} for t in trees)
    return Triangulation(P, facets, labels)


# ----------------------------------------------------------------------------
# Moment polytope and the maps K, L


def _xy_vector(n: int, i: int, j: int) -> tuple[int, ...]:
    v = [0] * (2 * n)
    v[i - 1] += 1
    v[n + j - 1] -= 1
    return tuple(v)


def moment_polytope(pi: Permutation) -> LatticePolytope:
    """conv(x_i - y_j : (i, j) in L(pi)) in the basis x_1..x_n, y_1..y_n."""
    L = sorted(region_bundle(pi).L.boxes)
    return LatticePolytope(2 * pi.n, tuple(_xy_vector(pi.n, i, j) for i, j in L), False, tuple(L))


def _fmt(vec: dict[str, int]) -> dict[str, int]:
    return {k: v for k, v in sorted(vec.items()) if v}


def degeneration_map(pi: Permutation) -> dict:
    """K and L as coefficient maps, the composite on each box, and the image check."""
    check_degen_domain(pi)
    rb = region_bundle(pi)
    tree = tree_T(pi)
    n = pi.n
    ess_col = {j: i for i, j in rb.Ess.boxes}
    K = {f"x{i}": {f"x{i}": 1} for i in range(1, n + 1)}
    for j in range(1, n + 1):
        K[f"y{j}"] = {f"x{ess_col[j]}": 1} if j in ess_col else {f"y{j}": 1}
    Lmap: dict[str, dict[str, int]] = {}
    for i in range(1, n + 1):
        Lmap[f"x{i}"] = {f"e{tree.row_label[i]}": -1} if i in tree.row_label else {}
    for j in range(1, n + 1):
        if j in ess_col or j not in tree.col_label:
            Lmap[f"y{j}"] = {}
        else:
            Lmap[f"y{j}"] = {f"e{tree.col_label[j]}": -1}

    def apply(M, vec: dict[str, int]) -> dict[str, int]:
        out: dict[str, int] = {}
        for key, coef in vec.items():
            for k2, c2 in M[key].items():
                out[k2] = out.get(k2, 0) + coef * c2
        return _fmt(out)

    cells = {}
    images = set()
    for i, j in sorted(rb.L.boxes):
        v = {f"x{i}": 1, f"y{j}": -1}
        kv = apply(K, v)
        lkv = apply(Lmap, kv)
        cells[(i, j)] = {"K": kv, "LK": lkv}
        vec = [0] * tree.m
        for key, coef in lkv.items():
            vec[int(key[1:]) - 1] += coef
        images.add(tuple(vec))
    target = set(acyclic_root_polytope(tree).vertices)
    return {
        "K": K, "L": Lmap, "cells": cells, "tree": tree,
        "image_check": images == target,
        "image": sorted(images), "target": sorted(target),
    }


def ess_face(pi: Permutation) -> dict:
    check_degen_domain(pi)
    rb = region_bundle(pi)
    ess = sorted(rb.Ess.boxes)
    k = len(ess)
    functional: dict[str, int] = {}
    for idx, (a, b) in enumerate(ess, start=1):
        functional[f"x{a}"] = idx
        functional[f"y{b}"] = idx - k - 1
    values = {}
    for i, j in sorted(rb.L.boxes):
        values[(i, j)] = functional.get(f"x{i}", 0) - functional.get(f"y{j}", 0)
    top = max(values.values())
    argmax = {b for b, v in values.items() if v == top}
    return {"functional": functional, "max": top, "argmax": sorted(argmax), "k": k,
            "is_face": top == k + 1 and argmax == set(ess)}


def pullback_triangulation(pi: Permutation) -> Triangulation:
    """Facets conv(q_1..q_k, w(v) : v nonzero vertex of a canonical simplex)."""
    check_degen_domain(pi)
    rb = region_bundle(pi)
    tree = tree_T(pi)
    Phi = moment_polytope(pi)
    index = {lab: k for k, lab in enumerate(Phi.labels)}
    preimage: dict[Edge, Box] = {}
    for box, edge in tree.box_edge.items():
        if edge in preimage:
            raise AssertionError(f"two boxes map to {edge}")
        preimage[edge] = box
    q = {index[b] for b in rb.Ess.boxes}
    canon = canonical_triangulation(tree)
    facets, labels = [], []
    for label in canon.labels:
        boxes = [preimage[tuple(e)] for e in label["tree"]]
        facets.append(frozenset(q | {index[b] for b in boxes}))
        labels.append({"tree": label["tree"], "boxes": sorted(boxes)})
    return Triangulation(Phi, tuple(facets), tuple(labels))


def _complex_of(T: Triangulation):
    from .subword import SimplicialComplex
    labels = T.polytope.labels
    names = [lab if lab is not None else "origin" for lab in labels]
    return SimplicialComplex(tuple(names), tuple(frozenset(names[k] for k in f) for f in T.facets))


def verify_c_realization(pi: Permutation, volume_oracle: bool = True) -> dict:
    """Pullback triangulation versus the core of PD(pi) coned |Ess|+1 times."""
    from .rootgeom import nat_triangulation
    from .subword import find_isomorphism, pd_core

    check_degen_domain(pi, strict=True)
    rb = region_bundle(pi)
    tree = tree_T(pi)
    canon = canonical_triangulation(tree)
    pull = pullback_triangulation(pi)
    core = pd_core(pi)
    nat = nat_triangulation(rb.L)
    report: dict = {"permutation": pi.to_json(), "ess": rb.Ess.to_json()}

    pull_complex = _complex_of(pull)
    canon_complex = _complex_of(canon)
    pull_cones = pull_complex.cone_points()
    canon_cones = canon_complex.cone_points()
    core_cones = core.cone_points()
    k = len(rb.Ess)
    report["cone_points"] = sorted(list(b) for b in pull_cones)
    report["cone_count_ok"] = len(pull_cones) == k + 1 + len(core_cones)
    report["canonical_cone_count_ok"] = len(canon_cones) == 2 + len(core_cones)

    stripped_core = core.delete(core_cones)
    stripped_pull = pull_complex.delete(pull_cones)
    identity_ok = set(stripped_pull.facets) == set(stripped_core.facets)
    bijection = None if identity_ok else find_isomorphism(stripped_pull, stripped_core)
    report["identity_bijection"] = identity_ok
    report["isomorphic_to_core"] = identity_ok or bijection is not None
    if bijection is not None:
        report["bijection"] = sorted([list(a), list(b)] for a, b in bijection.items())
    canon_iso = find_isomorphism(canon_complex.delete(canon_cones), stripped_core)
    report["canonical_isomorphic_to_core"] = canon_iso is not None

    dim_phi = affine_dimension(pull.polytope)
    dim_tree = affine_dimension(canon.polytope)
    report["dim_phi"], report["dim_tree_polytope"] = dim_phi, dim_tree
    report["dim_ok"] = dim_phi - dim_tree == k - 1

    counts = {"canonical": len(canon), "core": len(core.facets), "pullback": len(pull),
              "nat": len(nat)}
    report["facet_counts"] = counts
    report["counts_ok"] = len(set(counts.values())) == 1
    report["image_check"] = degeneration_map(pi)["image_check"]

    val_pull = validate_triangulation(pull, volume_oracle)
    val_canon = validate_triangulation(canon, volume_oracle)
    report["pullback_valid"] = val_pull["pass"]
    report["canonical_valid"] = val_canon["pass"]
    report["canonical_unimodular"] = val_canon.get("unimodular", False)
    independent = True
    for f in pull.facets:
        pts = [pull.polytope.vertices[i] for i in sorted(f)]
        base = pts[0]
        if rank([[a - b for a, b in zip(p, base)] for p in pts[1:]]) != len(pts) - 1:
            independent = False
    report["pullback_independent"] = independent
    report["pullback_sizes_ok"] = all(len(f) == dim_phi + 1 for f in pull.facets)
    keys = ["cone_count_ok", "canonical_cone_count_ok", "isomorphic_to_core",
            "canonical_isomorphic_to_core", "dim_ok", "counts_ok", "image_check",
            "pullback_valid", "canonical_valid", "pullback_independent", "pullback_sizes_ok"]
    report["pass"] = all(report[key] for key in keys)
    if not report["pass"]:
        report["failed"] = [key for key in keys if not report[key]]
    return report
