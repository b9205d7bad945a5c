"""Lattice polytopes given by point lists, exact dimension and volume, and the
pulling triangulation used as an independent volume oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..errors import NotIndependent
from .linalg import lattice_index, nullspace_vector, rank, rref

Point = tuple[int, ...]


@dataclass(frozen=True)
class LatticePolytope:
    ambient_dim: int
    vertices: tuple[Point, ...]
    include_origin: bool = False
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex vectors")
        for v in verts:
            if len(v) != self.ambient_dim:
                raise ValueError(f"vertex {v} not in Z^{self.ambient_dim}")
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, point: Sequence[int]) -> int:
        return self.vertices.index(tuple(point))

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim,
                "vertices": [list(v) for v in self.vertices],
                "include_origin": self.include_origin}


def _differences(points: Sequence[Point]) -> list[list[int]]:
    base = points[0]
    return [[a - b for a, b in zip(p, base)] for p in points[1:]]


def affine_dimension(P: LatticePolytope | Sequence[Point]) -> int:
    points = list(P.vertices if isinstance(P, LatticePolytope) else P)
    if not points:
        return -1
    return rank(_differences(points)) if len(points) > 1 else 0


def normalized_volume(simplex: Sequence[Point]) -> int:
    """Lattice-normalised volume of a simplex inside its own affine lattice.

    The affine lattice of an integer simplex is (aff - v0) intersected with
    Z^N; its volume is the index of the difference lattice in that
    saturation. Unimodular simplices return 1.
    """
    points = [tuple(p) for p in simplex]
    if not points:
        raise NotIndependent("empty simplex")
    if len(points) == 1:
        return 1
    index = lattice_index(_differences(points))
    if index == 0:
        raise NotIndependent("simplex vertices are affinely dependent")
    return index


def _local_coordinates(points: Sequence[Point]) -> tuple[list[Point], int]:
    """Project onto coordinates that are injective on the affine hull."""
    diffs = _differences(points)
    if not diffs:
        return [()] * len(points), 0
    # Pivot columns of the difference matrix are independent coordinates.
    _, chosen = rref(diffs)
    return [tuple(p[t] for t in chosen) for p in points], len(chosen)


@lru_cache(maxsize=4096)
def _facets(points: tuple[Point, ...]) -> tuple[frozenset[int], ...]:
    """Facets (as index sets into ``points``) of conv(points), brute force, exact."""
    proj, d = _local_coordinates(points)
    n = len(points)
    if d == 0:
        return ()
    if d == 1:
        vals = [p[0] for p in proj]
        lo, hi = min(vals), max(vals)
        return (frozenset(i for i in range(n) if vals[i] == lo),
                frozenset(i for i in range(n) if vals[i] == hi))
    found: list[frozenset[int]] = []
    for combo in combinations(range(n), d):
        if any(set(combo) <= f for f in found):
            continue
        base = proj[combo[0]]
        rows = [[a - b for a, b in zip(proj[i], base)] for i in combo[1:]]
        normal = nullspace_vector(rows, d)
        if normal is None:
            continue
        offset = sum(a * b for a, b in zip(normal, base))
        signs = [sum(a * b for a, b in zip(normal, p)) - offset for p in proj]
        if all(s >= 0 for s in signs) or all(s <= 0 for s in signs):
            found.append(frozenset(i for i, s in enumerate(signs) if s == 0))
    return tuple(found)


def facets(points: Sequence[Point]) -> list[frozenset[int]]:
    return list(_facets(tuple(tuple(p) for p in points)))


def pulling_triangulation(P: LatticePolytope) -> list[frozenset[int]]:
    """Pulling triangulation, pulling the lexicographically least point first.

    Recursively: cone the least point of a face over the pulled
    triangulations of the face's facets that avoid it.
    """
    points = P.vertices
    order = sorted(range(len(points)), key=lambda i: points[i])
    rank_of = {i: pos for pos, i in enumerate(order)}

    memo: dict[frozenset[int], list[frozenset[int]]] = {}

    def pull(face: frozenset[int]) -> list[frozenset[int]]:
        if face in memo:
            return memo[face]
        idx = sorted(face)
        dim = affine_dimension([points[i] for i in idx])
        if len(idx) == dim + 1:
            memo[face] = [face]
            return memo[face]
        apex = min(face, key=rank_of.__getitem__)
        out = []
        for local in facets([points[i] for i in idx]):
            sub = frozenset(idx[i] for i in local)
            if apex in sub:
                continue
            out.extend(s | {apex} for s in pull(sub))
        memo[face] = out
        return out

    if not points:
        return []
    return pull(frozenset(range(len(points))))


def total_volume(P: LatticePolytope, simplices: Sequence[frozenset[int]]) -> int:
    return sum(normalized_volume([P.vertices[i] for i in sorted(s)]) for s in simplices)
