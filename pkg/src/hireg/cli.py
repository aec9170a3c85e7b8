"""Command-line front end: construct graphs, run verifications, list types.

Exit codes: 0 pass, 1 verification failed or inconclusive, 2 usage,
3 I/O failure, 4 resource limit.  Reports are single JSON documents on
stdout; a short human-readable summary goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from .coherent import (
    ColorMatrix,
    certify_orbitals,
    expected_constants,
    homogeneity_degree,
    rho_coherent_config,
    verify_coherent,
    wl_closure,
)
from .family import (
    build_gamma,
    build_gamma_hat,
    build_upsilon,
    expected_parameters,
    rho_color_matrix,
    sigma_color_matrix,
    triangle_profile,
)
from .graphs import DenseGraph, graph6_encode, srg_parameters, subconstituent
from .groups import gm_generators, translation_generators, triple_orbit_count
from .partitions import (
    CASES,
    build_proof_partition,
    projection_injective,
    verify_equitable,
)
from .regularity import (
    MODE_EXHAUSTIVE,
    MODE_ORBIT,
    check_mn_regularity,
    enumerate_graph_types,
    filter_types,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_RESOURCE = 4

FAMILIES = ("gamma", "gamma-hat", "upsilon-a", "upsilon-b", "gamma1", "gamma2")
CHECKS = (
    "srg",
    "constants",
    "orbitals",
    "homogeneity",
    "not-2-homog",
    "regularity",
    "partitions",
    "hat-experimental",
)


def _cache_dir(args) -> Optional[str]:
    return args.cache or os.environ.get("HIREG_CACHE")


def _cached_graph(args, family: str, m: int, builder) -> DenseGraph:
    cache = _cache_dir(args)
    if cache is None:
        return builder(m)
    os.makedirs(cache, exist_ok=True)
    path = os.path.join(cache, f"{family}-{m}-{__version__}.json")
    if os.path.exists(path):
        with open(path) as fh:
            return DenseGraph.from_json(fh.read())
    g = builder(m)
    with open(path, "w") as fh:
        fh.write(g.to_json())
    return g


def _build_family(args, family: str, m: int) -> DenseGraph:
    if family == "gamma":
        return _cached_graph(args, "gamma", m, build_gamma)
    if family == "gamma-hat":
        return _cached_graph(args, "gamma-hat", m, build_gamma_hat)
    if family in ("upsilon-a", "upsilon-b"):
        return build_upsilon(m, family[-1])[0]
    if family in ("gamma1", "gamma2"):
        host = _cached_graph(args, "gamma", m, build_gamma)
        return subconstituent(host, 0, int(family[-1]))
    raise ValueError(f"unknown family: {family}")


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def command_construct(args) -> int:
    try:
        g = _build_family(args, args.family, args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "graph6":
        _write_output(graph6_encode(g) + "\n", args.out)
    else:
        _write_output(g.to_json() + "\n", args.out)
    print(f"{args.family} m={args.m}: {g.n} vertices", file=sys.stderr)
    return EXIT_PASS


def _result(name: str, verdict: str, **values) -> dict:
    return {"name": name, "verdict": verdict, **values}


def _check_srg(args) -> list[dict]:
    m = args.m
    g = _build_family(args, "gamma", m)
    results = []
    got = srg_parameters(g)
    want = expected_parameters(m, "gamma").combinatorial()
    results.append(
        _result(
            "srg-gamma",
            "pass" if got == want else "fail",
            observed=list(got) if got else None,
            expected=list(want),
        )
    )
    for which in (1, 2):
        sub = subconstituent(g, 0, which)
        got = srg_parameters(sub)
        want = expected_parameters(m, f"gamma{which}").combinatorial()
        results.append(
            _result(
                f"srg-gamma{which}",
                "pass" if got == want else "fail",
                observed=list(got) if got else None,
                expected=list(want),
            )
        )
    return results


def _check_constants(args) -> list[dict]:
    config = rho_coherent_config(args.m)
    want = expected_constants(args.m)
    matched = int((config.constants == want).sum())
    verdict = "pass" if matched == want.size else "fail"
    return [_result("constants", verdict, matched_cells=matched, total=int(want.size))]


def _check_orbitals(args) -> list[dict]:
    g = _build_family(args, "gamma", args.m)
    cert = certify_orbitals(g, gm_generators(args.m))
    verdict = "pass" if cert.verdict == "Certified" else "inconclusive"
    return [
        _result(
            "orbitals",
            verdict,
            wl_rank=cert.wl_rank,
            group_pair_orbits=cert.group_pair_orbits,
        )
    ]


def _check_homogeneity(args) -> list[dict]:
    m = args.m
    colors = ColorMatrix.from_array(rho_color_matrix(m) - 1)
    gens = gm_generators(m)
    ok3 = homogeneity_degree(colors, gens, 3)
    return [
        _result(
            "homogeneity-3",
            "pass" if ok3 else "fail",
            triple_orbits=triple_orbit_count(m),
        )
    ]


def _check_not_2_homog(args) -> list[dict]:
    m = args.m
    ga, _ = build_upsilon(m, "a")
    gb, _ = build_upsilon(m, "b")
    pa = triangle_profile(ga)
    pb = triangle_profile(gb)
    same_shape = ga.n == gb.n and ga.degree(0) == gb.degree(0)
    distinct = set(pa) != set(pb)
    verdict = "pass" if (same_shape and len(pa) == 1 and distinct) else "fail"
    return [
        _result(
            "not-2-homog",
            verdict,
            profile_a=sorted(pa),
            profile_b=sorted(pb),
            order=ga.n,
        )
    ]


def _check_regularity(args) -> list[dict]:
    m = args.m
    g = _build_family(args, "gamma", m)
    ka, la = args.order if args.order else (3, 5)
    mode = MODE_ORBIT if args.mode == "orbit" else MODE_EXHAUSTIVE
    gens = gm_generators(m) if mode == MODE_ORBIT else None
    reports = check_mn_regularity(g, ka, la, use_filter=args.filter, mode=mode, gens=gens)
    bad = [r for r in reports if not r.passed()]
    return [
        _result(
            "regularity",
            "pass" if not bad else "fail",
            order=[ka, la],
            reports=[r.to_json() for r in reports],
        )
    ]


def _check_partitions(args) -> list[dict]:
    m = args.m
    g = _build_family(args, "gamma", m)
    results = []
    for case in CASES:
        pp = build_proof_partition(m, case, g)
        pm = verify_equitable(g, pp.partition)
        ok = (
            pm is not None
            and np.array_equal(pm.counts, pp.expected)
            and projection_injective(pp)
        )
        results.append(
            _result(
                f"partition-{case}",
                "pass" if ok else "fail",
                sizes=list(pp.partition.sizes),
                arcs=pm.arc_count() if pm else None,
            )
        )
    return results


def _check_hat(args) -> list[dict]:
    m = args.m
    results = []
    colors = ColorMatrix.from_array(sigma_color_matrix(m) - 1)
    stable = wl_closure(colors)
    config = verify_coherent(stable)
    coherent_ok = bool(config) and stable.rank == 5
    results.append(
        _result(
            "hat-coherent",
            "pass" if coherent_ok else "fail",
            wl_rank=stable.rank,
        )
    )
    gh = _build_family(args, "gamma-hat", m)
    params = srg_parameters(gh)
    results.append(
        _result(
            "hat-srg",
            "pass" if params is not None else "fail",
            parameters=list(params) if params else None,
        )
    )
    reports = check_mn_regularity(
        gh, 2, 4, use_filter=False, mode=MODE_ORBIT, gens=translation_generators(m)
    )
    verdicts = {r.status for r in reports}
    results.append(
        _result(
            "hat-24-experiment",
            "pass",  # experimental: reporting the outcome is the contract
            outcome="regular" if verdicts <= {"Constant", "Vacuous"} else "violated",
            reports=[r.to_json() for r in reports],
        )
    )
    return results


_CHECK_TABLE = {
    "srg": _check_srg,
    "constants": _check_constants,
    "orbitals": _check_orbitals,
    "homogeneity": _check_homogeneity,
    "not-2-homog": _check_not_2_homog,
    "regularity": _check_regularity,
    "partitions": _check_partitions,
    "hat-experimental": _check_hat,
}


def command_verify(args) -> int:
    t0 = time.time()
    try:
        results = _CHECK_TABLE[args.check](args)
    except MemoryError:
        print("error: resource limit", file=sys.stderr)
        return EXIT_RESOURCE
    bundle = {
        "command": "verify",
        "version": __version__,
        "inputs": {"m": args.m, "check": args.check},
        "results": results,
        "note": "family-wide claims are sampled at small m",
        "timings": {"seconds": round(time.time() - t0, 3)},
    }
    json.dump(bundle, sys.stdout)
    sys.stdout.write("\n")
    ok = all(r["verdict"] == "pass" for r in results)
    for r in results:
        print(f"{r['name']}: {r['verdict']}", file=sys.stderr)
    return EXIT_PASS if ok else EXIT_FAIL


def command_types(args) -> int:
    ka, la = args.order
    if la > 7:
        print("error: order limited to n <= 7", file=sys.stderr)
        return EXIT_USAGE
    try:
        types = enumerate_graph_types(ka, la)
    except MemoryError:
        print("error: resource limit", file=sys.stderr)
        return EXIT_RESOURCE
    if args.action == "filter":
        types = filter_types(types)
    lines = [
        graph6_encode(t.graph) + " " + ",".join(str(i) for i in range(t.anchors))
        for t in types
    ]
    _write_output("".join(line + "\n" for line in lines), args.out)
    print(f"count {len(types)}", file=sys.stderr)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hireg")
    parser.add_argument("--cache", default=None, help="cache directory")
    parser.add_argument(
        "--threads", type=int, default=None, help="worker bound (results independent)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="build and export a graph")
    pc.add_argument("--m", type=int, required=True)
    pc.add_argument("--family", choices=FAMILIES, required=True)
    pc.add_argument("--format", choices=("graph6", "json"), default="graph6")
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=command_construct)

    pv = sub.add_parser("verify", help="run a verification check")
    pv.add_argument("--m", type=int, required=True)
    pv.add_argument("--check", choices=CHECKS, required=True)
    pv.add_argument("--order", type=int, nargs=2, default=None)
    pv.add_argument("--mode", choices=("exhaustive", "orbit"), default="exhaustive")
    pv.add_argument("--filter", action=argparse.BooleanOptionalAction, default=True)
    pv.set_defaults(func=command_verify)

    pt = sub.add_parser("types", help="enumerate or filter graph types")
    pt.add_argument("--order", type=int, nargs=2, required=True)
    pt.add_argument("action", choices=("enumerate", "filter"))
    pt.add_argument("--out", default=None)
    pt.set_defaults(func=command_types)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
