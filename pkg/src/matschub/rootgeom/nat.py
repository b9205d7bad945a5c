"""Bipartite diagram graphs, their root polytopes and the noncrossing
alternating triangulation (NAT) read off from monotone lattice paths.

Rows and columns are compressed to 1..r and 1..c. The graph is drawn on a
line in the order x_r, ..., x_1, y_c, ..., y_1; every edge goes from an x
vertex to a y vertex. Lattice paths run from the north-east box of a
component to its south-west box by unit south or west steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from ..errors import DegenerateLift, EmptyDiagram, InvalidForest, NotIndependent, PathLeavesDiagram
from ..regions import Box, BoxSet, SkewDiagram, skew_diagram
from .linalg import AffineFrame
from .polytope import LatticePolytope
from .triangulation import Triangulation

Edge = tuple[int, int]
Path = tuple[Box, ...]


@dataclass(frozen=True)
class DiagramGraph:
    r: int
    c: int
    edges: frozenset[Edge]

    def position(self, vertex: tuple[str, int]) -> int:
        """Index of ``("x", i)`` or ``("y", j)`` in the drawing order."""
        kind, i = vertex
        return self.r - i if kind == "x" else self.r + self.c - i

    def drawing_order(self) -> list[str]:
        return [f"x{i}" for i in range(self.r, 0, -1)] + [f"y{j}" for j in range(self.c, 0, -1)]

    def arc(self, edge: Edge) -> tuple[int, int]:
        return (self.r - edge[0], self.r + self.c - edge[1])

    def components(self) -> int:
        parent = {("x", i): ("x", i) for i in range(1, self.r + 1)}
        parent.update({("y", j): ("y", j) for j in range(1, self.c + 1)})

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i, j in self.edges:
            parent[find(("x", i))] = find(("y", j))
        return len({find(v) for v in parent})

    def n_vertices(self) -> int:
        return self.r + self.c


def _as_skew(D: SkewDiagram | BoxSet | Iterable[Box]) -> SkewDiagram:
    return D if isinstance(D, SkewDiagram) else skew_diagram(D)


def diagram_graph(D: SkewDiagram | BoxSet) -> DiagramGraph:
    D = _as_skew(D)
    if len(D) == 0:
        raise EmptyDiagram("diagram graph of an empty shape")
    return DiagramGraph(D.r, D.c, frozenset(D.compressed))


def root_polytope(G: DiagramGraph, include_origin: bool = False) -> LatticePolytope:
    """Points e_i - e_{r+j}, one per edge in row-major order, then the origin."""
    N = G.r + G.c
    verts, labels = [], []
    for i, j in sorted(G.edges):
        v = [0] * N
        v[i - 1] = 1
        v[G.r + j - 1] = -1
        verts.append(tuple(v))
        labels.append((i, j))
    if include_origin:
        verts.append(tuple([0] * N))
        labels.append(None)
    return LatticePolytope(N, tuple(verts), include_origin, tuple(labels))


def is_noncrossing(G: DiagramGraph, edges: Iterable[Edge]) -> bool:
    arcs = [G.arc(e) for e in edges]
    for a, b in arcs:
        for c, d in arcs:
            if a < c < b < d:
                return False
    return True


def is_alternating(G: DiagramGraph, edges: Iterable[Edge]) -> bool:
    """No vertex with both an incoming and an outgoing edge (edges oriented by drawing order)."""
    incoming, outgoing = set(), set()
    for e in edges:
        left, right = G.arc(e)
        outgoing.add(left)
        incoming.add(right)
    return not (incoming & outgoing)


def _corners(component: frozenset[Box]) -> tuple[Box, Box]:
    top = min(r for r, _ in component)
    bottom = max(r for r, _ in component)
    ne = (top, max(c for r, c in component if r == top))
    sw = (bottom, min(c for r, c in component if r == bottom))
    return ne, sw


def monotone_paths(component: frozenset[Box]) -> list[Path]:
    """All south/west lattice paths from the NE box to the SW box of a component."""
    ne, sw = _corners(component)
    out: list[Path] = []

    def walk(path: list[Box]):
        r, c = path[-1]
        if (r, c) == sw:
            out.append(tuple(path))
            return
        for nxt in ((r + 1, c), (r, c - 1)):
            if nxt in component:
                path.append(nxt)
                walk(path)
                path.pop()

    walk([ne])
    return out


def paths_to_forest(D: SkewDiagram | BoxSet, paths: Sequence[Path]) -> frozenset[Edge]:
    """Edge set of the forest whose edges are the boxes on the paths (compressed coords)."""
    D = _as_skew(D)
    comps = D.components()
    if len(paths) != len(comps):
        raise PathLeavesDiagram(f"expected {len(comps)} paths, got {len(paths)}")
    edges = set()
    for comp, path in zip(comps, paths):
        path = tuple(tuple(b) for b in path)
        ne, sw = _corners(comp)
        if not path or path[0] != ne or path[-1] != sw:
            raise PathLeavesDiagram(f"path {path} does not run from {ne} to {sw}")
        for a, b in zip(path, path[1:]):
            if b not in ((a[0] + 1, a[1]), (a[0], a[1] - 1)):
                raise PathLeavesDiagram(f"step {a}->{b} is not south or west")
        for box in path:
            if box not in comp:
                raise PathLeavesDiagram(f"box {box} outside its component")
        edges.update(path)
    return frozenset(edges)


def forest_to_paths(D: SkewDiagram | BoxSet, forest: Iterable[Edge]) -> tuple[Path, ...]:
    D = _as_skew(D)
    forest = frozenset(tuple(e) for e in forest)
    G = diagram_graph(D)
    if not forest <= G.edges:
        raise InvalidForest("forest uses an edge outside the diagram graph")
    if len(forest) != G.n_vertices() - G.components():
        raise InvalidForest("wrong number of edges for a spanning forest")
    if DiagramGraph(G.r, G.c, forest).components() != G.components():
        raise InvalidForest("edge set is not a spanning forest")
    if not is_noncrossing(G, forest) or not is_alternating(G, forest):
        raise InvalidForest("forest is not noncrossing alternating")
    paths = []
    for comp in D.components():
        boxes = sorted((b for b in forest if b in comp), key=lambda b: (b[0], -b[1]))
        path = tuple(boxes)
        try:
            paths_to_forest_component(comp, path)
        except PathLeavesDiagram as exc:
            raise InvalidForest(str(exc)) from exc
        paths.append(path)
    return tuple(paths)


def paths_to_forest_component(comp: frozenset[Box], path: Path) -> None:
    ne, sw = _corners(comp)
    if not path or path[0] != ne or path[-1] != sw:
        raise PathLeavesDiagram(f"boxes {list(path)} do not run from {ne} to {sw}")
    for a, b in zip(path, path[1:]):
        if b not in ((a[0] + 1, a[1]), (a[0], a[1] - 1)):
            raise PathLeavesDiagram(f"step {a}->{b} is not south or west")


def forest_path_bijection(D: SkewDiagram | BoxSet, item):
    """Map a forest (set of edges) to its path tuple, or a path tuple to its forest."""
    if isinstance(item, (set, frozenset)):
        return forest_to_paths(D, item)
    return paths_to_forest(D, item)


def nat_triangulation(D: SkewDiagram | BoxSet) -> Triangulation:
    """Facets indexed by tuples of monotone paths, one path per component."""
    D = _as_skew(D)
    G = diagram_graph(D)
    P = root_polytope(G)
    index = {label: k for k, label in enumerate(P.labels)}
    per_component = [monotone_paths(comp) for comp in D.components()]
    facets, labels = [], []
    for paths in product(*per_component):
        boxes = frozenset(b for p in paths for b in p)
        facets.append(frozenset(index[b] for b in boxes))
        labels.append({"forest": sorted(boxes), "paths": [list(p) for p in paths]})
    return Triangulation(P, tuple(facets), tuple(labels))


def path_count(D: SkewDiagram | BoxSet) -> int:
    D = _as_skew(D)
    total = 1
    for comp in D.components():
        total *= len(monotone_paths(comp))
    return total


def dprime_completion(D: SkewDiagram | BoxSet) -> dict:
    """Smallest D' = lambda / omega containing D with a connected diagram graph.

    omega_i = min(mu_i, lambda_{i+1} - 1) for rows with a successor and
    omega_r = mu_r; B = D' - D. Returned box sets are in ambient coordinates.
    """
    D = _as_skew(D)
    lam, mu = D.lam, D.mu
    r = len(lam)
    omega = [min(mu[i], lam[i + 1] - 1) for i in range(r - 1)] + [mu[-1]]
    compressed = {(i + 1, j) for i in range(r) for j in range(omega[i] + 1, lam[i] + 1)}
    B_comp = compressed - D.compressed
    ambient = BoxSet({D.ambient(b) for b in compressed})
    B = BoxSet({D.ambient(b) for b in B_comp}, ambient.ambient_n)
    Dprime = skew_diagram(ambient)
    connected = diagram_graph(Dprime).components() == 1
    minimal = all(
        DiagramGraph(D.r, D.c, frozenset(compressed - {b})).components() > 1 for b in B_comp
    )
    return {"Dprime": Dprime, "B": B, "connected": connected, "minimal": minimal}


def lift_height(i: int, j: int, r: int) -> int:
    return (i - (r + j)) ** 2


def regularity_certificate(D: SkewDiagram | BoxSet) -> dict:
    """Check the squared-distance lift induces exactly the NAT.

    For each NAT facet the affine function agreeing with the lift on the
    facet must lie strictly above the lift at every other point.
    """
    D = _as_skew(D)
    T = nat_triangulation(D)
    P = T.polytope
    heights = {label: Fraction(lift_height(label[0], label[1], D.r)) for label in P.labels}
    violations = []
    for facet in T.facets:
        idx = sorted(facet)
        try:
            frame = AffineFrame([P.vertices[k] for k in idx])
        except NotIndependent as exc:
            raise DegenerateLift(f"facet {idx} does not span its affine hull") from exc
        for w in range(len(P)):
            if w in facet:
                continue
            beta = frame.barycentric(P.vertices[w])
            if beta is None:
                raise DegenerateLift(f"point {w} outside the affine hull of facet {idx}")
            h = sum(b * heights[P.labels[k]] for b, k in zip(beta, idx))
            if not h > heights[P.labels[w]]:
                violations.append({"facet": [list(P.labels[k]) for k in idx],
                                   "point": list(P.labels[w]),
                                   "affine_value": str(h), "height": str(heights[P.labels[w]])})
    return {
        "heights": {f"{i},{j}": int(v) for (i, j), v in heights.items()},
        "matches_nat": not violations,
        "violations": violations,
    }
