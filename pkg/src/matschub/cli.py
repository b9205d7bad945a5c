"""Command-line front end.

    matschub analyze "[25413]"
    matschub triangulate "[1243]"
    matschub subword "[14523]" [--convention weak|figure]
    matschub degenerate "[15342]"
    matschub verify --n 4 [--deep] [--checks toric,nat] [--convention weak] [--jobs 2]
    matschub oracle pipe-dreams "[1432]"

Every command prints one UTF-8 JSON document carrying ``"schema": "1"``.
Exit codes: 0 success, 2 precondition failure, 1 failed check.
Logs and timings go to stderr only, so stdout is reproducible.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .errors import DegenerateLift, OutOfRange, PreconditionError, SchubertError, SizeLimitExceeded
from .permcore import Permutation, Word, all_permutations, classify, parse_permutation, size_cap, word_product
from .regions import core_regions, dims, hook_decomposition, is_toric, rank_zero_boxes, region_bundle, skew_diagram

log = logging.getLogger("matschub")

SCHEMA = "1"
LIGHT_CHECKS = ["regions", "toric", "nat_count", "cress"]
HEAVY_CHECKS = ["nat", "regular", "sc", "topology", "pipe_dreams", "degen"]
ALL_CHECKS = ["regions", "toric", "nat_count", "nat", "regular", "sc", "topology",
              "pipe_dreams", "cress", "degen"]


def to_jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((to_jsonable(v) for v in obj), key=lambda v: json.dumps(v))
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    return obj


def _key(k: Any) -> str:
    if isinstance(k, tuple):
        return ",".join(map(str, k))
    return str(k)


def emit(payload: dict, stream=None) -> None:
    stream = stream or sys.stdout
    doc = {"schema": SCHEMA, **payload}
    stream.write(json.dumps(to_jsonable(doc), ensure_ascii=False) + "\n")


# ----------------------------------------------------------------------------
# Single-permutation commands


def run_analyze(pi: Permutation) -> tuple[dict, int]:
    rb = region_bundle(pi)
    hooks = hook_decomposition(rb.Lprime)
    cores = core_regions(pi)
    payload = {
        "command": "analyze", "permutation": pi, "length": pi.length(),
        **rb.to_json(), **classify(pi),
        "is_toric": is_toric(pi), "hooks": hooks["hooks"], **dims(pi),
        "cr": cores["cr"], "R": cores["R"], "R_equals_NW_minus_Ess": cores["matches_nw_minus_ess"],
    }
    return payload, 0


def run_triangulate(pi: Permutation) -> tuple[dict, int]:
    from .rootgeom import nat_triangulation, regularity_certificate, validate_triangulation

    L = region_bundle(pi).L
    sd = skew_diagram(L)
    T = nat_triangulation(sd)
    report = validate_triangulation(T)
    try:
        reg = regularity_certificate(sd)
    except DegenerateLift as exc:
        reg = {"matches_nat": False, "degenerate": str(exc)}
    payload = {
        "command": "triangulate", "permutation": pi,
        "rows": list(sd.row_labels), "cols": list(sd.col_labels),
        "vertices": [list(v) for v in T.polytope.vertices],
        "vertex_boxes": [list(sd.ambient(b)) for b in T.polytope.labels],
        "facets": T.to_json(),
        "paths": [[[list(sd.ambient(b)) for b in p] for p in lab["paths"]] for lab in T.labels],
        "dimension": report["dimension"], "volume": report.get("volume"),
        "validation": report, "regularity": reg,
    }
    ok = report["pass"] and reg["matches_nat"]
    return payload, 0 if ok else 1


def run_subword(pi: Permutation, convention: str = "weak") -> tuple[dict, int]:
    from .rootgeom import nat_triangulation
    from .subword import _convention_shape, shape_word_and_p, subword_complex, topology_check, verify_sc_realization

    L = _convention_shape(pi, convention)
    data = shape_word_and_p(L)
    delta = subword_complex(data["Qword"], data["p"])
    nat = nat_triangulation(L)
    sd = skew_diagram(L)
    report = verify_sc_realization(pi, convention)
    order = data["order"]
    payload = {
        "command": "subword", "permutation": pi, "convention": convention,
        "Qword": data["Qword"], "reading_order": [list(b) for b in order],
        "B": data["B"], "P": data["P"], "p": data["p"].trimmed(),
        "delta_facets": [sorted(list(order[k - 1]) for k in f) for f in delta.facets],
        "nat_facets": [sorted(list(sd.ambient(b)) for b in lab["forest"]) for lab in nat.labels],
        "topology": topology_check(delta), "realization": report,
    }
    return payload, 0 if report["pass"] else 1


def run_degenerate(pi: Permutation) -> tuple[dict, int]:
    from .degen import (canonical_triangulation, check_degen_domain, degeneration_map, ess_face,
                        pullback_triangulation, tree_T, verify_c_realization)

    check_degen_domain(pi)
    tree = tree_T(pi)
    dm = degeneration_map(pi)
    face = ess_face(pi)
    canon = canonical_triangulation(tree)
    pull = pullback_triangulation(pi)
    payload = {
        "command": "degenerate", "permutation": pi, "tree": tree,
        "K": dm["K"], "L": dm["L"],
        "cells": {_key(b): v for b, v in dm["cells"].items()},
        "image_check": dm["image_check"], "ess_face": face,
        "canonical_facets": [lab["tree"] for lab in canon.labels],
        "pullback_facets": [lab["boxes"] for lab in pull.labels],
    }
    ok = dm["image_check"] and face["is_face"]
    if classify(pi)["is_one_dominant"]:
        rep = verify_c_realization(pi)
        payload["realization"] = rep
        ok = ok and rep["pass"]
    return payload, 0 if ok else 1


# ----------------------------------------------------------------------------
# Verification sweep


def convention_self_test() -> bool:
    """The product convention must reproduce s4 s2 s3 = [13524]."""
    return word_product(Word((4, 2, 3), 5)) == Permutation((1, 3, 5, 2, 4))


def _check_regions(pi: Permutation, ctx: dict) -> dict:
    rb = region_bundle(pi)
    d = dims(pi)
    ok = (rb.D.issubset(rb.NW) and rb.dom.issubset(rb.D) and rb.Lprime == rb.L - rb.D
          and len(rb.NW) == len(rb.L) + len(rb.dom) and rank_zero_boxes(pi) == rb.dom
          and d["dim_Y"] == len(rb.NW) - len(rb.D) and pi.length() == len(rb.D))
    return {"pass": ok}


def _check_toric(pi: Permutation, ctx: dict) -> dict:
    from .rootgeom import affine_dimension, diagram_graph, root_polytope

    rb = region_bundle(pi)
    hook = is_toric(pi)
    if rb.L:
        sd = skew_diagram(rb.L)
        dim = affine_dimension(root_polytope(diagram_graph(sd)))
        formula = sd.r + sd.c - sd.k - 1
    else:
        dim = formula = -1
    geometric = dim == len(rb.Lprime) - 1
    out = {"pass": hook == geometric and dim == formula, "hook": hook, "geometric": geometric}
    if not out["pass"]:
        out["counterexample"] = {"dim": dim, "formula": formula, "Lprime": rb.Lprime}
    return out


def _check_nat_count(pi: Permutation, ctx: dict) -> dict:
    from .oracles import monotone_path_count
    from .rootgeom import monotone_paths

    L = region_bundle(pi).L
    if not L:
        return {"pass": None}
    sd = skew_diagram(L)
    ours = [len(monotone_paths(c)) for c in sd.components()]
    dp = [monotone_path_count(c) for c in sd.components()]
    return {"pass": ours == dp, "paths": ours}


def _check_nat(pi: Permutation, ctx: dict) -> dict:
    from .oracles import noncrossing_alternating_forests
    from .rootgeom import nat_triangulation, path_count, validate_triangulation

    L = region_bundle(pi).L
    if not L:
        return {"pass": None}
    sd = skew_diagram(L)
    T = nat_triangulation(sd)
    forests = {frozenset(lab["forest"]) for lab in T.labels}
    oracle = set(noncrossing_alternating_forests(sd.compressed, sd.r, sd.c))
    rep = validate_triangulation(T, volume_oracle=ctx["deep"])
    ok = (rep["pass"] and rep["unimodular"] and len(T) == path_count(sd) and forests == oracle)
    out = {"pass": ok, "facets": len(T), "volume": rep.get("volume")}
    if ctx["deep"]:
        out["oracle_volume"] = rep.get("oracle_volume")
    if not ok:
        out["counterexample"] = {"validation": rep, "forests_match": forests == oracle}
    return out


def _check_regular(pi: Permutation, ctx: dict) -> dict:
    from .rootgeom import regularity_certificate

    L = region_bundle(pi).L
    if not L:
        return {"pass": None}
    try:
        rep = regularity_certificate(L)
    except DegenerateLift as exc:
        return {"pass": False, "counterexample": {"degenerate": str(exc)}}
    out = {"pass": rep["matches_nat"]}
    if not rep["matches_nat"]:
        out["counterexample"] = rep["violations"][:1]
    return out


def _check_sc(pi: Permutation, ctx: dict) -> dict:
    from .subword import verify_sc_realization

    rep = verify_sc_realization(pi, ctx["convention"])
    if rep["status"] in ("vacuous", "not_skew"):
        return {"pass": None, "status": rep["status"]}
    out = {"pass": rep["pass"], "facets": rep["nat_facets"]}
    if not rep["pass"]:
        out["counterexample"] = rep
    return out


def _check_topology(pi: Permutation, ctx: dict) -> dict:
    from .subword import pipe_dream_complex, shape_word_and_p, subword_complex, topology_check

    verdicts = {"pd": topology_check(pipe_dream_complex(pi))["verdict"]}
    L = region_bundle(pi).L
    if L:
        data = shape_word_and_p(L)
        verdicts["shape"] = topology_check(subword_complex(data["Qword"], data["p"]))["verdict"]
    ok = all(v in ("ball", "sphere") for v in verdicts.values())
    return {"pass": ok, **verdicts}


def _check_pipe_dreams(pi: Permutation, ctx: dict) -> dict:
    from .oracles import all_reduced_pipe_dreams, cross_and_elbow_boxes
    from .subword import extreme_pipe_dreams, pipe_dream_complex, triangle_boxes

    pd = pipe_dream_complex(pi)
    triangle = set(triangle_boxes(pi.n))
    size_ok = all(len(f) == len(triangle) - pi.length() for f in pd.facets)
    ext = extreme_pipe_dreams(pi)
    extremes_ok = all(frozenset(triangle - e.boxes) in set(pd.facets) for e in ext.values())
    out = {"pass": size_ok and extremes_ok, "facets": len(pd.facets)}
    if ctx["deep"]:
        oracle = {frozenset(triangle - c) for c in all_reduced_pipe_dreams(pi)}
        out["oracle_facets"] = len(oracle)
        out["pass"] = out["pass"] and oracle == set(pd.facets)
        if classify(pi)["is_one_dominant"] and pi.length():
            out["pass"] = out["pass"] and cross_and_elbow_boxes(pi) == core_regions(pi)["cr"]
    return out


def _check_cress(pi: Permutation, ctx: dict) -> dict:
    from .degen import tree_T
    from .oracles import dot_drop_tree

    if not classify(pi)["is_one_dominant"] or pi.length() == 0:
        return {"pass": None}
    cores = core_regions(pi)
    tree = tree_T(pi)
    oracle = dot_drop_tree(pi)
    rule_ok = ([s["in_A"] for s in tree.boundary_labeling]
               == [s["in_A"] for s in oracle["labels"]])
    ok = cores["matches_nw_minus_ess"] and rule_ok and tree.edges == oracle["edges"]
    out = {"pass": ok, "R_equals_NW_minus_Ess": cores["matches_nw_minus_ess"],
           "E_step_rule": rule_ok, "tree_matches_dot_drop": tree.edges == oracle["edges"]}
    return out


def _check_degen(pi: Permutation, ctx: dict) -> dict:
    from .degen import ess_face, verify_c_realization

    if not classify(pi)["is_one_dominant"] or pi.length() == 0:
        return {"pass": None}
    rep = verify_c_realization(pi, volume_oracle=ctx["deep"])
    face = ess_face(pi)
    out = {"pass": rep["pass"] and face["is_face"], "facet_counts": rep["facet_counts"],
           "ess_face": face["is_face"]}
    if not out["pass"]:
        out["counterexample"] = {"realization": rep, "ess_face": face}
    return out


CHECKS: dict[str, Callable[[Permutation, dict], dict]] = {
    "regions": _check_regions, "toric": _check_toric, "nat_count": _check_nat_count,
    "nat": _check_nat, "regular": _check_regular, "sc": _check_sc, "topology": _check_topology,
    "pipe_dreams": _check_pipe_dreams, "cress": _check_cress, "degen": _check_degen,
}


def _run_one(args: tuple[tuple[int, ...], tuple[str, ...], dict]) -> dict:
    one_line, checks, ctx = args
    pi = Permutation(one_line)
    result: dict = {"permutation": list(one_line), "checks": {}}
    for name in checks:
        try:
            result["checks"][name] = CHECKS[name](pi, ctx)
        except SchubertError as exc:
            result["checks"][name] = {"pass": False, "counterexample": {"error": type(exc).__name__,
                                                                        "message": str(exc)}}
    return result


def run_verify_sweep(n: int, checks: Sequence[str] | None = None, deep: bool = False,
                     convention: str = "weak", jobs: int = 1, audit: bool = True) -> tuple[dict, int]:
    cap = size_cap(7)
    if n > cap:
        raise SizeLimitExceeded(f"n={n} exceeds sweep cap {cap} (set SCHUBERT_MAX_N to override)")
    if n < 2:
        raise OutOfRange("sweeps need n >= 2")
    selected = list(checks) if checks else list(ALL_CHECKS)
    unknown = [c for c in selected if c not in CHECKS]
    if unknown:
        raise OutOfRange(f"unknown checks {unknown}; choose from {ALL_CHECKS}")
    heavy_cap = size_cap(5)
    skipped = [c for c in selected if c in HEAVY_CHECKS and n > heavy_cap]
    active = tuple(c for c in ALL_CHECKS if c in selected and c not in skipped)
    ctx = {"deep": deep, "convention": convention}
    tasks = [(pi.one_line, active, ctx) for pi in all_permutations(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_one(t) for t in tasks]
    summary = {}
    for name in active:
        counts = {"pass": 0, "fail": 0, "n/a": 0}
        first = None
        for res in results:
            verdict = res["checks"][name]["pass"]
            key = "n/a" if verdict is None else ("pass" if verdict else "fail")
            counts[key] += 1
            if key == "fail" and first is None:
                first = res["permutation"]
        summary[name] = {**counts, "first_failure": first}
    self_test = convention_self_test()
    payload: dict = {
        "command": "verify", "n": n, "deep": deep, "convention": convention,
        "checks": list(active), "skipped": skipped, "word_convention_self_test": self_test,
        "summary": summary, "results": results,
    }
    if audit and "sc" in active:
        from .subword import convention_audit
        payload["convention_audit"] = convention_audit(all_permutations(n))
    failed = (not self_test) or any(s["fail"] for s in summary.values())
    payload["total_failures"] = sum(s["fail"] for s in summary.values())
    return payload, 1 if failed else 0


# ----------------------------------------------------------------------------
# Oracles


def run_oracle(name: str, pi: Permutation) -> tuple[dict, int]:
    from . import oracles
    from .regions import skew_diagram as _skew

    payload: dict = {"command": "oracle", "oracle": name, "permutation": pi}
    if name == "reduced-words":
        payload["words"] = sorted(oracles.reduced_words_exhaustive(pi))
    elif name == "pipe-dreams":
        dreams = oracles.all_reduced_pipe_dreams(pi)
        payload["count"] = len(dreams)
        payload["crosses"] = sorted(sorted(list(b) for b in d) for d in dreams)
    elif name == "forests":
        sd = _skew(region_bundle(pi).L)
        forests = oracles.noncrossing_alternating_forests(sd.compressed, sd.r, sd.c)
        payload["count"] = len(forests)
        payload["forests"] = sorted(sorted(list(sd.ambient(b)) for b in f) for f in forests)
    elif name == "dot-drop":
        payload.update(oracles.dot_drop_tree(pi))
    else:
        raise OutOfRange(f"unknown oracle {name!r}")
    return payload, 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matschub", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "triangulate", "degenerate"):
        p = sub.add_parser(name)
        p.add_argument("permutation")
    p = sub.add_parser("subword")
    p.add_argument("permutation")
    p.add_argument("--convention", choices=["weak", "figure"], default="weak")
    p = sub.add_parser("verify")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="pulling-volume and pipe-dream oracles")
    p.add_argument("--checks", default="", help=f"comma list from {','.join(ALL_CHECKS)}")
    p.add_argument("--convention", choices=["weak", "figure"], default="weak")
    p.add_argument("--jobs", type=int, default=1)
    p = sub.add_parser("oracle")
    p.add_argument("name", choices=["reduced-words", "pipe-dreams", "forests", "dot-drop"])
    p.add_argument("permutation")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        if args.command == "verify":
            checks = [c.strip() for c in args.checks.split(",") if c.strip()]
            payload, code = run_verify_sweep(args.n, checks, args.deep, args.convention, args.jobs)
        else:
            pi = parse_permutation(args.permutation)
            if args.command == "analyze":
                payload, code = run_analyze(pi)
            elif args.command == "triangulate":
                payload, code = run_triangulate(pi)
            elif args.command == "subword":
                payload, code = run_subword(pi, args.convention)
            elif args.command == "degenerate":
                payload, code = run_degenerate(pi)
            else:
                payload, code = run_oracle(args.name, pi)
    except PreconditionError as exc:
        emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)})
        log.error("%s: %s", type(exc).__name__, exc)
        return 2
    except SchubertError as exc:
        emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)})
        log.error("%s: %s", type(exc).__name__, exc)
        return 1
    emit(payload)
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
