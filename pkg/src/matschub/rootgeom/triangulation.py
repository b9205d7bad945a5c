"""Triangulations as facet lists over a point configuration, and their exact
validation: dimension, proper pairwise intersection, and a volume certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from ..errors import NotIndependent
from .linalg import AffineFrame, feasible_le
from .polytope import LatticePolytope, affine_dimension, normalized_volume, pulling_triangulation


@dataclass(frozen=True)
class Triangulation:
    polytope: LatticePolytope
    facets: tuple[frozenset[int], ...]
    labels: tuple[Any, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.facets)

    def facet_points(self, i: int) -> list[tuple[int, ...]]:
        return [self.polytope.vertices[j] for j in sorted(self.facets[i])]

    def to_json(self) -> list[list[int]]:
        return [sorted(f) for f in self.facets]


def _intersect_properly(frame: AffineFrame, S: Sequence[int], S2: Sequence[int],
                        points: Sequence[tuple[int, ...]]) -> bool:
    """conv(S) and conv(S2) meet exactly in conv(S & S2).

    Equivalent to an affine functional vanishing on the common vertices,
    positive on the rest of S and negative on the rest of S2. Parametrised by
    its values on S it becomes a small exact feasibility problem.
    """
    common = set(S) & set(S2)
    own = [s for s in S if s not in common]
    other = [t for t in S2 if t not in common]
    if not own or not other:
        return False
    pos = {s: k for k, s in enumerate(S)}
    rows, rhs = [], []
    for t in other:
        beta = frame.barycentric(points[t])
        if beta is None:
            return False
        coeffs = [beta[pos[s]] for s in own]
        rows.append(coeffs)
        rhs.append(Fraction(-1) - sum(coeffs))
    return feasible_le(rows, rhs) is not None


def validate_triangulation(T: Triangulation, volume_oracle: bool = True) -> dict:
    """Check a facet list is a triangulation of its polytope.

    (a) each facet is an affinely independent set of dim(P)+1 points;
    (b) every pair of facets meets in a common face;
    (c) the facet volumes add up to the pulling-triangulation volume
        (skipped when ``volume_oracle`` is false).
    """
    P = T.polytope
    points = P.vertices
    d = affine_dimension(P)
    report: dict[str, Any] = {"pass": False, "dimension": d, "facet_count": len(T.facets),
                              "failure": None}
    frames = []
    volumes = []
    for i, facet in enumerate(T.facets):
        idx = sorted(facet)
        if len(idx) != d + 1:
            report["failure"] = {"check": "a", "facet": idx, "reason": "wrong size"}
            return report
        try:
            frames.append(AffineFrame([points[j] for j in idx]))
            volumes.append(normalized_volume([points[j] for j in idx]))
        except NotIndependent:
            report["failure"] = {"check": "a", "facet": idx, "reason": "affinely dependent"}
            return report
    if len(set(T.facets)) != len(T.facets):
        report["failure"] = {"check": "b", "reason": "repeated facet"}
        return report
    for i in range(len(T.facets)):
        Si = sorted(T.facets[i])
        for j in range(i + 1, len(T.facets)):
            Sj = sorted(T.facets[j])
            if not _intersect_properly(frames[i], Si, Sj, points):
                report["failure"] = {"check": "b", "facets": [Si, Sj]}
                return report
    report["volume"] = sum(volumes)
    report["unimodular"] = all(v == 1 for v in volumes)
    if volume_oracle:
        pulled = pulling_triangulation(P)
        oracle = sum(normalized_volume([points[j] for j in sorted(s)]) for s in pulled)
        report["oracle_volume"] = oracle
        if oracle != report["volume"]:
            report["failure"] = {"check": "c", "volume": report["volume"], "oracle_volume": oracle}
            return report
    report["pass"] = True
    return report
