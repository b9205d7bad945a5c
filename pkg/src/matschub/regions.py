"""Box-set combinatorics on the n x n grid: diagrams, essential sets and the
regions carved out of them.

Boxes are 1-based ``(row, col)`` pairs. The north-west hull is taken weakly:
a box belongs to ``NW(pi)`` when it sits weakly north-west of some diagram box,
so the diagram itself is contained in it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import NotSkew
from .permcore import Permutation, rank_function

Box = tuple[int, int]

__all__ = [
    "Box", "BoxSet", "SkewDiagram", "RegionBundle", "rothe_diagram", "essential_set",
    "region_bundle", "hook_decomposition", "is_toric", "dims", "core_regions",
    "bottom_pipe_dream", "top_pipe_dream", "is_partition_at", "skew_diagram", "is_hook",
    "rank_zero_boxes",
]


@dataclass(frozen=True)
class BoxSet:
    boxes: frozenset[Box]
    ambient_n: int

    def __init__(self, boxes: Iterable[Box] = (), ambient_n: int | None = None):
        bs = frozenset((int(r), int(c)) for r, c in boxes)
        if ambient_n is None:
            ambient_n = max([max(b) for b in bs] + [0])
        for r, c in bs:
            if not (1 <= r <= ambient_n and 1 <= c <= ambient_n):
                raise ValueError(f"box {(r, c)} outside [1,{ambient_n}]^2")
        object.__setattr__(self, "boxes", bs)
        object.__setattr__(self, "ambient_n", ambient_n)

    def __iter__(self) -> Iterator[Box]:
        return iter(sorted(self.boxes))

    def __len__(self) -> int:
        return len(self.boxes)

    def __contains__(self, box) -> bool:
        return tuple(box) in self.boxes

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def __sub__(self, other: "BoxSet | Iterable[Box]") -> "BoxSet":
        other_boxes = other.boxes if isinstance(other, BoxSet) else frozenset(other)
        return BoxSet(self.boxes - other_boxes, self.ambient_n)

    def __or__(self, other: "BoxSet | Iterable[Box]") -> "BoxSet":
        other_boxes = other.boxes if isinstance(other, BoxSet) else frozenset(other)
        return BoxSet(self.boxes | other_boxes, max(self.ambient_n, *(max(b) for b in other_boxes), 0))

    def __and__(self, other: "BoxSet | Iterable[Box]") -> "BoxSet":
        other_boxes = other.boxes if isinstance(other, BoxSet) else frozenset(other)
        return BoxSet(self.boxes & other_boxes, self.ambient_n)

    def __eq__(self, other) -> bool:
        if isinstance(other, BoxSet):
            return self.boxes == other.boxes
        if isinstance(other, (set, frozenset)):
            return self.boxes == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.boxes)

    def __repr__(self) -> str:
        return f"BoxSet({sorted(self.boxes)})"

    def issubset(self, other: "BoxSet") -> bool:
        return self.boxes <= other.boxes

    def rows(self) -> list[int]:
        return sorted({r for r, _ in self.boxes})

    def cols(self) -> list[int]:
        return sorted({c for _, c in self.boxes})

    def row(self, r: int) -> list[int]:
        return sorted(c for rr, c in self.boxes if rr == r)

    def col(self, c: int) -> list[int]:
        return sorted(r for r, cc in self.boxes if cc == c)

    def components(self) -> list["BoxSet"]:
        """Edge-connected components, ordered by their first box."""
        seen: set[Box] = set()
        comps = []
        for start in sorted(self.boxes):
            if start in seen:
                continue
            stack, comp = [start], set()
            seen.add(start)
            while stack:
                r, c = stack.pop()
                comp.add((r, c))
                for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                    if nb in self.boxes and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            comps.append(BoxSet(comp, self.ambient_n))
        return comps

    def has_square(self) -> bool:
        """True if some 2 x 2 block lies entirely inside the set."""
        b = self.boxes
        return any((r + 1, c) in b and (r, c + 1) in b and (r + 1, c + 1) in b for r, c in b)

    def to_json(self) -> list[list[int]]:
        return [[r, c] for r, c in sorted(self.boxes)]


def rothe_diagram(pi: Permutation) -> BoxSet:
    """Boxes (pi_j, i) with i < j and pi_i > pi_j."""
    w = pi.one_line
    n = len(w)
    return BoxSet({(w[j], i + 1) for i in range(n) for j in range(i + 1, n) if w[i] > w[j]}, n)


def essential_set(diagram: BoxSet) -> BoxSet:
    b = diagram.boxes
    return BoxSet({(r, c) for r, c in b if (r + 1, c) not in b and (r, c + 1) not in b},
                  diagram.ambient_n)


def is_partition_at(boxes: BoxSet, a: int, b: int) -> bool:
    """True if ``boxes`` is a Young diagram (English) with corner box (a, b), or empty."""
    if not boxes:
        return True
    rows = boxes.rows()
    if rows[0] != a or rows != list(range(a, a + len(rows))):
        return False
    previous = None
    for r in rows:
        cols = boxes.row(r)
        if cols != list(range(b, b + len(cols))):
            return False
        if previous is not None and len(cols) > previous:
            return False
        previous = len(cols)
    return True


def _weak_nw(diagram: BoxSet) -> BoxSet:
    # For each row, the reach is the largest column of a diagram box weakly south.
    n = diagram.ambient_n
    reach = [0] * (n + 2)
    for r, c in diagram.boxes:
        reach[r] = max(reach[r], c)
    for r in range(n - 1, 0, -1):
        reach[r] = max(reach[r], reach[r + 1])
    return BoxSet({(r, c) for r in range(1, n + 1) for c in range(1, reach[r] + 1)}, n)


def _dominant_piece(diagram: BoxSet) -> BoxSet:
    if (1, 1) not in diagram:
        return BoxSet((), diagram.ambient_n)
    for comp in diagram.components():
        if (1, 1) in comp:
            return comp
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class RegionBundle:
    permutation: Permutation
    D: BoxSet
    Ess: BoxSet
    dom: BoxSet
    NW: BoxSet
    L: BoxSet
    Lprime: BoxSet
    q: int

    def to_json(self) -> dict:
        return {
            "D": self.D.to_json(), "Ess": self.Ess.to_json(), "dom": self.dom.to_json(),
            "NW": self.NW.to_json(), "L": self.L.to_json(), "Lprime": self.Lprime.to_json(),
            "q": self.q,
        }


def region_bundle(pi: Permutation) -> RegionBundle:
    D = rothe_diagram(pi)
    nw = _weak_nw(D)
    dom = _dominant_piece(D)
    L = nw - dom
    return RegionBundle(
        permutation=pi, D=D, Ess=essential_set(D), dom=dom, NW=nw, L=L,
        Lprime=L - D, q=pi.n ** 2 - len(nw),
    )


@dataclass(frozen=True)
class SkewDiagram:
    """A skew shape lambda / mu, with rows and columns compressed to 1..r, 1..c.

    ``row_labels[i-1]`` and ``col_labels[j-1]`` give the ambient grid index of
    compressed row i and column j.
    """

    boxes: BoxSet
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    row_labels: tuple[int, ...]
    col_labels: tuple[int, ...]
    compressed: frozenset[Box] = field(repr=False)

    @property
    def r(self) -> int:
        return len(self.row_labels)

    @property
    def c(self) -> int:
        return len(self.col_labels)

    def components(self) -> list[frozenset[Box]]:
        """Connected components in compressed coordinates, north-east first."""
        comps = BoxSet(self.compressed).components()
        return [c.boxes for c in comps]

    @property
    def k(self) -> int:
        return len(self.components())

    def ambient(self, box: Box) -> Box:
        return (self.row_labels[box[0] - 1], self.col_labels[box[1] - 1])

    def compress(self, box: Box) -> Box:
        return (self.row_labels.index(box[0]) + 1, self.col_labels.index(box[1]) + 1)

    def __len__(self) -> int:
        return len(self.compressed)


def skew_diagram(boxes: BoxSet | Iterable[Box]) -> SkewDiagram:
    """Compress ``boxes`` and check that the result is a skew Ferrers shape."""
    if not isinstance(boxes, BoxSet):
        boxes = BoxSet(boxes)
    rows, cols = boxes.rows(), boxes.cols()
    rpos = {r: i + 1 for i, r in enumerate(rows)}
    cpos = {c: j + 1 for j, c in enumerate(cols)}
    comp = frozenset((rpos[r], cpos[c]) for r, c in boxes.boxes)
    lam, mu = [], []
    for i in range(1, len(rows) + 1):
        cs = sorted(c for r, c in comp if r == i)
        if cs != list(range(cs[0], cs[-1] + 1)):
            raise NotSkew(f"row {rows[i - 1]} is not contiguous")
        lam.append(cs[-1])
        mu.append(cs[0] - 1)
    for i in range(1, len(lam)):
        if lam[i] > lam[i - 1] or mu[i] > mu[i - 1]:
            raise NotSkew("row ends are not weakly decreasing")
    return SkewDiagram(boxes, tuple(lam), tuple(mu), tuple(rows), tuple(cols), comp)


def is_hook(component: BoxSet) -> bool:
    """One row segment and one column segment meeting in a common box.

    Every hook is 2x2-free, but not conversely: ribbons and crosses of boxes
    avoid 2x2 blocks without being hooks, so the stronger test is used.
    """
    if not component:
        return False
    for r0 in component.rows():
        for c0 in component.row(r0):
            if all(r == r0 or c == c0 for r, c in component.boxes):
                return True
    return False


def hook_decomposition(S: BoxSet) -> dict:
    comps = S.components()
    ok = all(is_hook(comp) for comp in comps)
    if ok:
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                if set(a.rows()) & set(b.rows()) or set(a.cols()) & set(b.cols()):
                    ok = False
    return {"is_disjoint_hooks": ok, "hooks": comps if ok else []}


def is_toric(pi: Permutation) -> bool:
    return hook_decomposition(region_bundle(pi).Lprime)["is_disjoint_hooks"]


def dims(pi: Permutation) -> dict[str, int]:
    rb = region_bundle(pi)
    n2 = pi.n ** 2
    if rb.L:
        sd = skew_diagram(rb.L)
        dim_polytope = sd.r + sd.c - sd.k - 1
    else:
        dim_polytope = -1
    return {
        "dim_X": n2 - pi.length(),
        "dim_V": n2 - len(rb.NW),
        "dim_Y": len(rb.Lprime),
        "dim_polytope": dim_polytope,
    }


def bottom_pipe_dream(pi: Permutation) -> BoxSet:
    """Cross set obtained by pushing every row of the diagram to the left."""
    D = rothe_diagram(pi)
    return BoxSet({(r, c) for r in D.rows() for c in range(1, len(D.row(r)) + 1)}, pi.n)


def top_pipe_dream(pi: Permutation) -> BoxSet:
    """Cross set obtained by pushing every column of the diagram up."""
    D = rothe_diagram(pi)
    return BoxSet({(r, c) for c in D.cols() for r in range(1, len(D.col(c)) + 1)}, pi.n)


def core_regions(pi: Permutation) -> dict:
    """Core region (union of the two extreme cross sets) and R = {(1,1)} + core.

    ``matches_nw_minus_ess`` records whether R equals NW - Ess; this is only
    guaranteed for 1pi' with pi' dominant and is reported, not raised, elsewhere.
    """
    cr = bottom_pipe_dream(pi) | top_pipe_dream(pi)
    R = cr | {(1, 1)}
    rb = region_bundle(pi)
    return {"cr": cr, "R": R, "matches_nw_minus_ess": R == (rb.NW - rb.Ess)}


def rank_zero_boxes(pi: Permutation) -> BoxSet:
    n = pi.n
    return BoxSet({(a, b) for a in range(1, n + 1) for b in range(1, n + 1)
                   if rank_function(pi, a, b) == 0}, n)
