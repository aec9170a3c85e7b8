"""Graph-type enumeration and extension-count regularity checks."""
import numpy as np
import pytest

from hireg.family import build_gamma
from hireg.graphs import DenseGraph, anchored_canonical_form, is_complete
from hireg.groups import gm_generators, trivial_generators
from hireg.regularity import (
    MODE_EXHAUSTIVE,
    MODE_ORBIT,
    GraphType,
    check_mn_regularity,
    check_type_regularity,
    count_extensions,
    enumerate_graph_types,
    enumerate_kappas,
    filter_types,
    orbit_kappas,
)


@pytest.mark.parametrize(
    "mt,nt,count",
    [(1, 2, 2), (2, 3, 6), (3, 5, 148)],
)
def test_enumeration_counts(mt, nt, count):
    assert len(enumerate_graph_types(mt, nt)) == count


def test_enumeration_count_order_3_7():
    assert len(enumerate_graph_types(3, 7)) == 20364


def test_filter_keeps_four_complete_closures_at_order_3_5():
    kept = filter_types(enumerate_graph_types(3, 5))
    assert len(kept) == 4
    assert all(is_complete(t.closure()) for t in kept)
    assert sorted(t.key()[-8:] for t in kept) == [
        "050303ec",
        "050303ed",
        "050303ef",
        "050303ff",
    ]


def test_enumeration_is_complete_and_irredundant_at_order_2_3():
    """Every labeled pattern on (2,3) is anchored-isomorphic to exactly
    one representative."""
    reps = enumerate_graph_types(2, 3)
    rep_codes = {t.canonical_code() for t in reps}
    assert len(rep_codes) == len(reps) == 6
    pairs = [(0, 1), (0, 2), (1, 2)]
    seen = set()
    for code in range(8):
        edges = [pairs[b] for b in range(3) if (code >> b) & 1]
        t = GraphType(DenseGraph.from_edges(3, edges), 2)
        canon = anchored_canonical_form(t.graph, range(2))
        assert canon in rep_codes
        seen.add(canon)
    assert seen == rep_codes


def _edge_type():
    # anchors: one edge; extension: one common neighbor (a triangle)
    g = DenseGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    return GraphType(g, 2)


def test_constant_on_k4():
    k4 = DenseGraph.from_edges(4, [(i, j) for i in range(4) for j in range(i)])
    report = check_type_regularity(k4, _edge_type())
    assert report.status == "Constant"
    assert report.value == 2
    assert report.passed()


def test_violated_with_witnesses():
    # C6 plus a disjoint triangle: triangle edges lie on 1 triangle,
    # hexagon edges on 0
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(6, 7), (7, 8), (6, 8)]
    g = DenseGraph.from_edges(9, edges)
    report = check_type_regularity(g, _edge_type())
    assert report.status == "Violated"
    assert not report.passed()
    counts = sorted(w["count"] for w in report.witnesses)
    assert counts == [0, 1]
    for w in report.witnesses:
        u, v = w["kappa"]
        assert g.has_edge(u, v)
        both = [x for x in range(g.n) if g.has_edge(u, x) and g.has_edge(v, x)]
        assert len(both) == w["count"]


def test_vacuous_on_triangle_free_host():
    c5 = DenseGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    # anchors form a triangle: no placement exists in a triangle-free graph
    t = GraphType(
        DenseGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]), 3
    )
    report = check_type_regularity(c5, t)
    assert report.status == "Vacuous"
    assert report.value is None
    assert report.passed()


def test_count_extensions_matches_batch():
    g = build_gamma(3)
    t = _edge_type()
    kappas = enumerate_kappas(g, t)
    report = check_type_regularity(g, t)
    assert report.status == "Constant"
    for kappa in kappas[:10]:
        assert count_extensions(g, t, [int(x) for x in kappa]) == report.value


def test_exhaustive_and_orbit_modes_agree_on_gamma3():
    g = build_gamma(3)
    gens = gm_generators(3)
    for t in filter_types(enumerate_graph_types(3, 5)):
        r_ex = check_type_regularity(g, t, MODE_EXHAUSTIVE)
        r_orb = check_type_regularity(g, t, MODE_ORBIT, gens)
        assert r_ex.status == r_orb.status == "Constant"
        assert r_ex.value == r_orb.value
        assert r_orb.mode == MODE_ORBIT


def test_check_mn_regularity_report_shape():
    g = build_gamma(3)
    reports = check_mn_regularity(g, 2, 3)
    assert all(r.passed() for r in reports)
    orders = {r.order for r in reports}
    assert orders == {(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)}
    js = reports[0].to_json()
    assert set(js) == {"type", "order", "status", "value", "witnesses", "mode"}


def test_orbit_kappas_validates_group():
    g = build_gamma(3)
    t = _edge_type()
    with pytest.raises(ValueError):
        orbit_kappas(g, t, trivial_generators(3))  # not transitive
    # generators of the wrong degree
    with pytest.raises(ValueError):
        orbit_kappas(g, t, gm_generators(4))
