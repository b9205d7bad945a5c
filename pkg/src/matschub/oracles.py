"""Independent brute-force oracles.

Each function here recomputes something the main modules produce, by a
different and deliberately naive route: exhaustive word search, tracing
pipes through tiles, enumerating edge subsets, exact linear programming.
None of them call the constructions they are used to check.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

from .permcore import Permutation
from .regions import Box, BoxSet, bottom_pipe_dream, core_regions
from .rootgeom.linalg import feasible_nonneg

__all__ = [
    "reduced_words_exhaustive", "trace_pipes", "all_reduced_pipe_dreams",
    "noncrossing_alternating_forests", "cone_contains", "dot_drop_tree",
    "monotone_path_count",
]


def reduced_words_exhaustive(pi: Permutation) -> set[tuple[int, ...]]:
    """Every word of length l(pi) over s_1..s_{n-1} whose product is pi."""
    n, ell = pi.n, pi.length()
    out = set()
    for word in product(range(1, n), repeat=ell):
        w = list(range(1, n + 1))
        for a in word:
            w[a - 1], w[a] = w[a], w[a - 1]
        if tuple(w) == pi.one_line:
            out.add(word)
    return out


def trace_pipes(crosses: frozenset[Box], n: int) -> tuple[int, ...]:
    """Exit column of the pipe entering each row from the west.

    Every box of the n x n grid that is not a cross is an elbow joining its
    west and north edges and its south and east edges.
    """
    exits = []
    for start in range(1, n + 1):
        r, c, heading = start, 1, "E"
        while r >= 1:
            if (r, c) in crosses:
                if heading == "E":
                    c += 1
                else:
                    r -= 1
            elif heading == "E":
                heading = "N"
                r -= 1
            else:
                heading = "E"
                c += 1
        exits.append(c)
    return tuple(exits)


@lru_cache(maxsize=None)
def _pipe_dreams_by_permutation(n: int) -> dict[tuple[int, ...], list[frozenset[Box]]]:
    triangle = [(i, j) for i in range(1, n) for j in range(1, n - i + 1)]
    out: dict[tuple[int, ...], list[frozenset[Box]]] = {}
    for k in range(len(triangle) + 1):
        for chosen in combinations(triangle, k):
            crosses = frozenset(chosen)
            exits = trace_pipes(crosses, n)
            inversions = sum(1 for i in range(n) for j in range(i + 1, n) if exits[i] > exits[j])
            if inversions == k:
                out.setdefault(exits, []).append(crosses)
    return out


def all_reduced_pipe_dreams(pi: Permutation) -> list[frozenset[Box]]:
    """Cross sets of all reduced pipe dreams of ``pi`` (pipe from row i exits at column pi^-1(i))."""
    key = pi.inverse().one_line
    return list(_pipe_dreams_by_permutation(pi.n).get(key, []))


def cross_and_elbow_boxes(pi: Permutation) -> BoxSet:
    """Boxes that are a cross in some reduced pipe dream and an elbow in another."""
    dreams = all_reduced_pipe_dreams(pi)
    union = frozenset().union(*dreams) if dreams else frozenset()
    inter = frozenset.intersection(*dreams) if dreams else frozenset()
    return BoxSet(union - inter, pi.n)


def noncrossing_alternating_forests(boxes: frozenset[Box], r: int, c: int) -> list[frozenset[Box]]:
    """Spanning forests of the bipartite graph with edge (i, j) per box,
    noncrossing for the order x_r..x_1, y_c..y_1, with |V| - k edges."""
    edges = sorted(boxes)

    def comps(edge_set) -> int:
        par = list(range(r + c))

        def find(v):
            while par[v] != v:
                v = par[v]
            return v

        for i, j in edge_set:
            a, b = find(i - 1), find(r + j - 1)
            if a != b:
                par[a] = b
        return len({find(v) for v in range(r + c)})

    k = comps(edges)
    size = r + c - k
    pos = {e: (r - e[0], r + c - e[1]) for e in edges}
    out = []
    for chosen in combinations(edges, size):
        if comps(chosen) != k:
            continue
        arcs = [pos[e] for e in chosen]
        if any(a < x < b < y for a, b in arcs for x, y in arcs):
            continue
        out.append(frozenset(chosen))
    return out


def monotone_path_count(component: frozenset[Box]) -> int:
    """Lattice paths NE -> SW with S/W steps, counted by dynamic programming."""
    top = min(r for r, _ in component)
    bottom = max(r for r, _ in component)
    ne = (top, max(c for r, c in component if r == top))
    sw = (bottom, min(c for r, c in component if r == bottom))
    ways = {ne: 1}
    for box in sorted(component, key=lambda b: (b[0], -b[1])):
        if box == ne:
            continue
        r, c = box
        ways[box] = ways.get((r - 1, c), 0) + ways.get((r, c + 1), 0)
    return ways.get(sw, 0)


def cone_contains(generators: list[tuple[int, ...]], target: tuple[int, ...]) -> bool:
    """Exact test: is ``target`` a nonnegative combination of ``generators``?"""
    if not generators:
        return all(x == 0 for x in target)
    dim = len(target)
    A = [[g[t] for g in generators] for t in range(dim)]
    return feasible_nonneg(A, list(target)) is not None


def _young_boundary(region: BoxSet):
    """SW-to-NE boundary steps of a Young-diagram region as (kind, index, box)."""
    rows = region.rows()
    steps = []
    prev_len = 0
    for r in reversed(rows):
        cols = region.row(r)
        if cols != list(range(1, len(cols) + 1)):
            raise ValueError("region is not a Young diagram")
        for c in range(prev_len + 1, len(cols) + 1):
            steps.append(("E", c, (r, c)))
        steps.append(("N", r, (r, len(cols))))
        prev_len = max(prev_len, len(cols))
    return steps


def dot_drop_tree(pi: Permutation) -> dict:
    """Tree from the bottom reduced pipe dream drawn inside R = {(1,1)} + cr.

    Boundary steps of R are labelled from the south-west: every N step, and
    an E step exactly when the bottom pipe dream has a cross in the box above
    it but not in the box left of the N step directly before it. Elbows of
    the bottom pipe dream inside R become dots, which fall to the bottom of
    their column; a dot in row i, column j joins the E label of column j to
    the N label of row i.
    """
    R = core_regions(pi)["R"]
    crosses = bottom_pipe_dream(pi).boxes
    steps = _young_boundary(R)
    labels, row_label, col_label = [], {}, {}
    counter = 0
    last_n = None
    previous = None
    for kind, index, box in steps:
        if kind == "N":
            counter += 1
            row_label[index] = counter
            labels.append({"step": "N", "index": index, "label": counter, "in_A": True})
            last_n = (counter, box)
        else:
            bounded = box in crosses
            prev_n_bounds = previous is not None and previous[0] == "N" and previous[2] in crosses
            in_a = bounded and not prev_n_bounds
            if in_a:
                counter += 1
                col_label[index] = counter
            else:
                col_label[index] = last_n[0] if last_n else None
            labels.append({"step": "E", "index": index, "label": col_label[index], "in_A": in_a})
        previous = (kind, index, box)
    dots = R.boxes - crosses
    dropped = set()
    for c in R.cols():
        column = R.col(c)
        count = sum(1 for (r, cc) in dots if cc == c)
        dropped.update((r, c) for r in column[len(column) - count:])
    edges = set()
    bad = []
    for r, c in dropped:
        a, b = col_label.get(c), row_label.get(r)
        if a is None or b is None or not a < b:
            bad.append((r, c))
        else:
            edges.add((a, b))
    return {"m": counter, "edges": frozenset(edges), "labels": labels,
            "dots": sorted(dropped), "bad_dots": sorted(bad)}
