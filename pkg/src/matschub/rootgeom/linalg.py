"""Exact rational linear algebra on small dense systems.

Everything here works on Python ints and ``fractions.Fraction``; nothing is
ever rounded. Matrices are lists of row lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = Sequence[int]

__all__ = [
    "rank", "rref", "nullspace_vector", "AffineFrame", "lattice_index",
    "feasible_nonneg", "feasible_le",
]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank via fraction-free elimination on integer rows."""
    m = [list(row) for row in rows]
    if not m:
        return 0
    if any(isinstance(x, Fraction) for row in m for x in row):
        return len(rref(m)[1])
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = [p * a - f * b for a, b in zip(m[i], m[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def nullspace_vector(rows: Sequence[Sequence[int]], ncols: int) -> list[int] | None:
    """A primitive integer vector spanning a one-dimensional null space, else None."""
    m, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * ncols
    vec[f] = Fraction(1)
    for i, pc in enumerate(pivots):
        vec[pc] = -m[i][f]
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


class AffineFrame:
    """Barycentric coordinates with respect to an affinely independent point set.

    Points are assumed to lie in the affine hull of the frame; ``barycentric``
    checks this exactly and returns None otherwise.
    """

    def __init__(self, points: Sequence[Vector]):
        self.points = [tuple(p) for p in points]
        k = len(self.points)
        dim = len(self.points[0])
        # Columns are the points lifted by a trailing 1.
        lifted_rows = [[p[t] for p in self.points] for t in range(dim)] + [[1] * k]
        _, pivots = rref([list(row) for row in zip(*lifted_rows)])
        if len(pivots) != k:
            from ..errors import NotIndependent
            raise NotIndependent("frame points are affinely dependent")
        self._rows = pivots
        square = [lifted_rows[t] for t in pivots]
        aug = [list(map(Fraction, square[i])) + [Fraction(int(i == j)) for j in range(k)]
               for i in range(k)]
        red, _ = rref(aug)
        self._inverse = [row[k:] for row in red]
        self._lifted_rows = lifted_rows

    def barycentric(self, point: Vector) -> list[Fraction] | None:
        target = list(point) + [1]
        rhs = [target[t] for t in self._rows]
        lam = [sum(a * b for a, b in zip(row, rhs)) for row in self._inverse]
        for t, row in enumerate(self._lifted_rows):
            if sum(a * b for a, b in zip(row, lam)) != target[t]:
                return None
        return lam


def lattice_index(rows: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``rows`` inside its saturation.

    Equals the gcd of the maximal minors; returns 0 when the rows are
    linearly dependent. Computed by unimodular row/column reduction to a
    diagonal form.
    """
    m = [list(map(int, row)) for row in rows]
    k = len(m)
    if k == 0:
        return 1
    n = len(m[0])
    product = 1
    for t in range(k):
        while True:
            best = None
            for i in range(t, k):
                for j in range(t, n):
                    if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return 0
            i, j = best
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
            p = m[t][t]
            clean = True
            for i in range(t + 1, k):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    clean = False
            if clean:
                break
        product *= abs(m[t][t])
    return product


def feasible_nonneg(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Find x >= 0 with A x = b exactly, or return None.

    Phase-one simplex on a dense Fraction tableau with Bland's rule.
    """
    m = len(A)
    if m == 0:
        return []
    nv = len(A[0])
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(int(i == j)) for j in range(m)] + [rhs])
    basis = [nv + i for i in range(m)]
    width = nv + m + 1
    # Reduced costs of the auxiliary objective (sum of artificials).
    cost = [-sum(T[i][j] for i in range(m)) for j in range(nv)] + [Fraction(0)] * m
    cost.append(-sum(T[i][-1] for i in range(m)))
    while True:
        enter = next((j for j in range(nv + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return None  # unbounded auxiliary problem cannot happen; treat as infeasible
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        f = cost[enter]
        cost = [a - f * c for a, c in zip(cost, T[leave])]
        basis[leave] = enter
        assert len(T[leave]) == width
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = T[i][-1]
        elif T[i][-1] != 0:
            return None
    return x


def feasible_le(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Find z >= 0 with A z <= b exactly, or return None."""
    m = len(A)
    if m == 0:
        return []
    nv = len(A[0])
    Aeq = [list(A[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    sol = feasible_nonneg(Aeq, b)
    return None if sol is None else sol[:nv]
