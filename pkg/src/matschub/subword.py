"""Subword complexes, shape words of skew shapes, pipe dream complexes, cores,
topology checks, and the check that NAT triangulations realise subword
complexes.

Facets of a subword complex are stored as sets of positions (1-based) of the
word; these are the letters *left out*, so for a pipe dream they are the
elbow tiles and their complements are the crosses.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import EmptyDiagram, NotExpressible, NotSkew, SizeLimitExceeded
from .permcore import Permutation, Word, size_cap, word_product
from .regions import Box, BoxSet, bottom_pipe_dream, core_regions, region_bundle, skew_diagram, top_pipe_dream

__all__ = [
    "SimplicialComplex", "LabeledShape", "subword_complex", "shape_word_and_p",
    "triangular_word", "pipe_dream_complex", "extreme_pipe_dreams", "core_and_cones",
    "verify_sc_realization", "topology_check", "mirror", "find_isomorphism",
]


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets; ``vertex_labels`` fixes a display order."""

    vertex_labels: tuple
    facets: tuple[frozenset, ...]

    def __post_init__(self):
        facets = tuple(sorted({frozenset(f) for f in self.facets}, key=_facet_key))
        for a in facets:
            for b in facets:
                if a < b:
                    raise ValueError(f"facet {sorted(a)} is contained in {sorted(b)}")
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "vertex_labels", tuple(self.vertex_labels))

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable], vertex_labels: Sequence | None = None):
        """Build from arbitrary faces, keeping only the maximal ones."""
        faces = {frozenset(s) for s in sets}
        maximal = [f for f in faces if not any(f < g for g in faces)]
        if vertex_labels is None:
            vertex_labels = sorted({v for f in maximal for v in f}, key=_label_key)
        return cls(tuple(vertex_labels), tuple(maximal))

    def vertices(self) -> set:
        return set().union(*self.facets) if self.facets else set()

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> set[frozenset]:
        out: set[frozenset] = set()
        for f in self.facets:
            items = sorted(f, key=_label_key)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return out

    def f_vector(self) -> list[int]:
        """f_{-1}, f_0, ..., f_d (the empty face counted first)."""
        counts = Counter(len(f) for f in self.faces())
        return [counts.get(k, 0) for k in range(self.dimension + 2)]

    def euler_characteristic(self) -> int:
        fv = self.f_vector()
        return sum((-1) ** k * fv[k + 1] for k in range(len(fv) - 1))

    def cone_points(self) -> set:
        if not self.facets:
            return set()
        common = set(self.facets[0])
        for f in self.facets[1:]:
            common &= f
        return common

    def restrict(self, vertices: Iterable) -> "SimplicialComplex":
        keep = frozenset(vertices)
        order = [v for v in self.vertex_labels if v in keep]
        return SimplicialComplex.from_sets((f & keep for f in self.facets), order)

    def delete(self, vertices: Iterable) -> "SimplicialComplex":
        drop = set(vertices)
        return self.restrict(v for v in self.vertex_labels if v not in drop)

    def cone(self, times: int) -> "SimplicialComplex":
        fresh = tuple(("cone", t) for t in range(1, times + 1))
        return SimplicialComplex(self.vertex_labels + fresh,
                                 tuple(f | set(fresh) for f in self.facets))

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex(tuple(mapping[v] for v in self.vertex_labels),
                                 tuple(frozenset(mapping[v] for v in f) for f in self.facets))

    def to_json(self) -> dict:
        return {"vertices": [_jsonable(v) for v in self.vertex_labels],
                "facets": [sorted((_jsonable(v) for v in f), key=_label_key) for f in self.facets]}


def _label_key(v):
    if isinstance(v, tuple):
        return (1, tuple(_label_key(x) for x in v))
    if isinstance(v, str):
        return (2, v)
    return (0, v)


def _facet_key(f):
    return sorted((_label_key(v) for v in f))


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


# ----------------------------------------------------------------------------
# Subword complexes


def subword_complex(Q: Word, pi: Permutation) -> SimplicialComplex:
    """Facets F (position sets) with prod(Q minus F) a reduced word for ``pi``.

    Depth-first search over positions: a letter is kept in the complement
    only while the running product stays a length-additive prefix of pi.
    """
    m = max(Q.ambient_rank, pi.n)
    target = pi.extend(m).one_line
    goal_len = pi.length()
    inv_target = [0] * m
    for pos, val in enumerate(target):
        inv_target[val - 1] = pos
    letters = Q.letters
    size = len(letters)
    facets: list[frozenset[int]] = []

    def descends(current: list[int], a: int) -> bool:
        # Right multiplication by s_a swaps positions a, a+1; it stays a prefix
        # of pi iff it adds an inversion that pi also has.
        u, v = current[a - 1], current[a]
        return u < v and inv_target[u - 1] > inv_target[v - 1]

    def walk(k: int, current: list[int], used: int, skipped: list[int]):
        if used + (size - k) < goal_len:
            return
        if k == size:
            if used == goal_len and tuple(current) == target:
                facets.append(frozenset(skipped))
            return
        a = letters[k]
        if a and used < goal_len and descends(current, a):
            current[a - 1], current[a] = current[a], current[a - 1]
            walk(k + 1, current, used + 1, skipped)
            current[a - 1], current[a] = current[a], current[a - 1]
        skipped.append(k + 1)
        walk(k + 1, current, used, skipped)
        skipped.pop()

    walk(0, list(range(1, m + 1)), 0, [])
    if not facets:
        raise NotExpressible(f"{Q} contains no reduced word for {pi}")
    return SimplicialComplex(tuple(range(1, size + 1)), tuple(facets))


def subword_complex_bruteforce(Q: Word, pi: Permutation) -> list[frozenset[int]]:
    """All position sets F with |Q - F| = length(pi) and product pi; 2^|Q| scan."""
    m = max(Q.ambient_rank, pi.n)
    target = pi.extend(m)
    size = len(Q)
    ell = pi.length()
    out = []
    for keep in combinations(range(1, size + 1), ell):
        if any(Q.letters[k - 1] == 0 for k in keep):
            continue
        if word_product(Q.subword(keep).nonblank(), m) == target:
            out.append(frozenset(set(range(1, size + 1)) - set(keep)))
    return sorted(out, key=sorted)


# ----------------------------------------------------------------------------
# Shape words


@dataclass(frozen=True)
class LabeledShape:
    """Boxes of a shape with letter s_{i+j-1}, read bottom row first, left to right."""

    shape: BoxSet
    order: tuple[Box, ...] = field(init=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.shape.boxes, key=lambda b: (-b[0], b[1])))
        object.__setattr__(self, "order", ordered)

    @staticmethod
    def letter(box: Box) -> int:
        return box[0] + box[1] - 1

    def word(self, ambient_rank: int | None = None) -> Word:
        letters = tuple(self.letter(b) for b in self.order)
        rank = ambient_rank if ambient_rank is not None else max([a + 1 for a in letters] + [2])
        return Word(letters, rank)

    def position(self, box: Box) -> int:
        return self.order.index(tuple(box)) + 1


def mirror(L: BoxSet) -> tuple[BoxSet, dict[Box, Box]]:
    """Reflect columns inside the occupied column range; rows are kept."""
    if not L:
        return L, {}
    cols = L.cols()
    lo, hi = cols[0], cols[-1]
    mapping = {(r, c): (r, lo + hi - c) for r, c in L.boxes}
    return BoxSet(mapping.values(), L.ambient_n), mapping


def _lowest_path(component: frozenset[Box]) -> list[Box]:
    top = min(r for r, _ in component)
    start = (top, min(c for r, c in component if r == top))
    bottom = max(r for r, _ in component)
    end = (bottom, max(c for r, c in component if r == bottom))
    path = [start]
    while path[-1] != end:
        r, c = path[-1]
        if (r + 1, c) in component:
            path.append((r + 1, c))
        elif (r, c + 1) in component:
            path.append((r, c + 1))
        else:
            raise NotSkew(f"no south/east step out of {(r, c)}")
    return path


def shape_word_and_p(L: BoxSet, mirrored: bool = False) -> dict:
    """Word of the mirrored shape, its lowest paths B, the rest P and p = prod(P).

    ``L`` is the unmirrored skew shape unless ``mirrored`` is set.
    """
    if not L:
        raise EmptyDiagram("shape word of an empty shape")
    if mirrored:
        Lbar = L
    else:
        skew_diagram(L)  # raises NotSkew
        Lbar, _ = mirror(L)
    labeled = LabeledShape(Lbar)
    letters = [labeled.letter(b) for b in labeled.order]
    rows, cols = Lbar.rows(), Lbar.cols()
    rank = max(max(letters) + 1, len(rows) + len(cols))
    B: set[Box] = set()
    for comp in Lbar.components():
        B.update(_lowest_path(comp.boxes))
    P = Lbar.boxes - B
    p_letters = [labeled.letter(b) for b in labeled.order if b in P]
    return {
        "Lbar": Lbar,
        "Qword": labeled.word(rank),
        "order": labeled.order,
        "B": BoxSet(B, Lbar.ambient_n),
        "P": BoxSet(P, Lbar.ambient_n),
        "p_word": Word(tuple(p_letters), rank),
        "p": word_product(p_letters, rank),
    }


# ----------------------------------------------------------------------------
# Pipe dreams


def triangle_boxes(n: int) -> list[Box]:
    """Boxes (i, j) with i + j <= n in reading order (bottom row first)."""
    return [(i, j) for i in range(n - 1, 0, -1) for j in range(1, n - i + 1)]


def triangular_word(n: int) -> Word:
    return Word(tuple(i + j - 1 for i, j in triangle_boxes(n)), max(n, 2))


def pipe_dream_complex(pi: Permutation, bound: int | None = None) -> SimplicialComplex:
    """PD(pi) with vertices relabelled by grid boxes; facets are elbow sets."""
    cap = bound if bound is not None else size_cap(6)
    if pi.n > cap:
        raise SizeLimitExceeded(f"n={pi.n} exceeds pipe dream bound {cap}")
    boxes = triangle_boxes(pi.n)
    Q = triangular_word(pi.n)
    if not boxes:
        return SimplicialComplex((), (frozenset(),))
    C = subword_complex(Q, pi)
    return C.relabel({k: boxes[k - 1] for k in range(1, len(boxes) + 1)})


def extreme_pipe_dreams(pi: Permutation) -> dict[str, BoxSet]:
    return {"bottom": bottom_pipe_dream(pi), "top": top_pipe_dream(pi)}


def core_and_cones(C: SimplicialComplex, region: Iterable | None = None) -> dict:
    """Cone points, the core (restriction to ``region`` or cone points deleted)."""
    cones = C.cone_points()
    if region is not None:
        core = C.restrict(region)
    else:
        core = C.delete(cones)
    return {"cone_points": cones, "core": core, "cone": core.cone}


def pd_core(pi: Permutation) -> SimplicialComplex:
    cr = core_regions(pi)["cr"]
    return pipe_dream_complex(pi).restrict(cr.boxes)


# ----------------------------------------------------------------------------
# Topology


def topology_check(C: SimplicialComplex) -> dict:
    """Necessary conditions for a ball or a sphere: purity, chi and ridge degrees."""
    pure = C.is_pure() and bool(C.facets)
    chi = C.euler_characteristic() if C.facets else 0
    d = C.dimension
    ridge_count: Counter = Counter()
    if pure and d >= 0:
        for f in C.facets:
            for v in f:
                ridge_count[f - {v}] += 1
    degrees = set(ridge_count.values())
    thin = degrees <= {1, 2}
    boundary = 1 in degrees
    if not pure:
        verdict = "other"
    elif thin and not boundary and chi == 1 + (-1) ** d:
        verdict = "sphere"
    elif thin and boundary and chi == 1:
        verdict = "ball"
    else:
        verdict = "other"
    return {"pure": pure, "dimension": d, "euler_char": chi,
            "pseudomanifold_boundary": boundary, "verdict": verdict}


# ----------------------------------------------------------------------------
# Isomorphism of small complexes


def find_isomorphism(A: SimplicialComplex, B: SimplicialComplex) -> dict | None:
    """A vertex bijection carrying the facets of A onto those of B, or None."""
    va, vb = sorted(A.vertices(), key=_label_key), sorted(B.vertices(), key=_label_key)
    if len(va) != len(vb) or len(A.facets) != len(B.facets):
        return None
    if sorted(len(f) for f in A.facets) != sorted(len(f) for f in B.facets):
        return None
    deg_a = Counter(v for f in A.facets for v in f)
    deg_b = Counter(v for f in B.facets for v in f)
    if sorted(deg_a.values()) != sorted(deg_b.values()):
        return None

    def pair_counts(C):
        out: Counter = Counter()
        for f in C.facets:
            for x in f:
                for y in f:
                    out[(x, y)] += 1
        return out

    pa, pb = pair_counts(A), pair_counts(B)
    order = sorted(va, key=lambda v: (-deg_a[v], _label_key(v)))
    target_facets = set(B.facets)
    mapping: dict = {}
    used: set = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return {frozenset(mapping[v] for v in f) for f in A.facets} == target_facets
        v = order[k]
        for w in vb:
            if w in used or deg_b[w] != deg_a[v]:
                continue
            if any(pa[(v, u)] != pb[(w, mapping[u])] for u in mapping):
                continue
            mapping[v] = w
            used.add(w)
            if extend(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


# ----------------------------------------------------------------------------
# NAT triangulations versus shape subword complexes


def _convention_shape(pi: Permutation, convention: str) -> BoxSet:
    rb = region_bundle(pi)
    if convention == "weak":
        return rb.L
    if convention == "figure":
        return rb.L - rb.Ess
    raise ValueError(f"unknown convention {convention!r}")


def verify_sc_realization(pi: Permutation, convention: str = "weak") -> dict:
    """Compare NAT(L) facets, mirrored, with the facets of Delta(Q(Lbar), p).

    ``convention`` selects L = NW - dom ("weak") or that shape with the
    essential boxes removed ("figure").
    """
    from .rootgeom import nat_triangulation  # local: rootgeom is heavier to import

    L = _convention_shape(pi, convention)
    report: dict = {"permutation": pi.to_json(), "convention": convention}
    if not L:
        report.update(status="vacuous", pass_=True)
        return _finish(report)
    try:
        sd = skew_diagram(L)
    except NotSkew as exc:
        report.update(status="not_skew", pass_=None, reason=str(exc))
        return _finish(report)
    data = shape_word_and_p(L)
    _, mirror_map = mirror(L)
    order = data["order"]
    pos_of = {b: k + 1 for k, b in enumerate(order)}
    nat = nat_triangulation(sd)
    nat_sets = {frozenset(pos_of[mirror_map[sd.ambient(b)]] for b in label["forest"])
                for label in nat.labels}
    try:
        delta = subword_complex(data["Qword"], data["p"])
    except NotExpressible:
        report.update(status="fail", pass_=False, reason="p is not expressible in Q")
        return _finish(report)
    delta_sets = set(delta.facets)
    nat_complex = SimplicialComplex.from_sets(nat_sets)
    dim_expected = len(data["B"]) - 1
    faces_agree = nat_complex.faces() == SimplicialComplex.from_sets(delta_sets).faces()
    ok = (nat_sets == delta_sets and faces_agree and delta.is_pure()
          and delta.dimension == dim_expected and nat_complex.dimension == dim_expected)
    report.update(
        status="pass" if ok else "fail", pass_=ok,
        nat_facets=len(nat_sets), delta_facets=len(delta_sets),
        dimension=delta.dimension, B_size=len(data["B"]),
        p=data["p"].trimmed().to_json(), Qword=data["Qword"].to_json(),
    )
    if not ok:
        only_nat = sorted(sorted(order[k - 1] for k in f) for f in nat_sets - delta_sets)
        only_delta = sorted(sorted(order[k - 1] for k in f) for f in delta_sets - nat_sets)
        report["counterexample"] = {"only_nat": only_nat[:3], "only_delta": only_delta[:3]}
    return _finish(report)


def _finish(report: dict) -> dict:
    report["pass"] = report.pop("pass_")
    return report


def convention_audit(perms: Iterable[Permutation]) -> dict:
    """Evaluate the realization check under both L conventions."""
    perms = list(perms)
    summary = {}
    for convention in ("weak", "figure"):
        counts: Counter = Counter()
        first_failure = None
        for pi in perms:
            rep = verify_sc_realization(pi, convention)
            counts[rep["status"]] += 1
            if rep["status"] == "fail" and first_failure is None:
                first_failure = rep["permutation"]
        summary[convention] = {"counts": dict(sorted(counts.items())),
                               "first_failure": first_failure}
    return summary
