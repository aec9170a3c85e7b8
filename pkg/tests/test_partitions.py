"""Equitable partitions of common neighborhoods of base triples."""
import numpy as np
import pytest

from hireg.family import build_gamma
from hireg.graphs import DenseGraph
from hireg.partitions import (
    OrderedPartition,
    build_proof_partition,
    projection_injective,
    verify_equitable,
)
from hireg.regularity import GraphType, count_extensions

ALL_CASES = ["T3Case1", "T3Case2", "T4Case1", "T4Case2", "T4Case3"]


@pytest.mark.parametrize("case", ALL_CASES)
def test_cases_verify_at_m4(case):
    m = 4
    g = build_gamma(m)
    pp = build_proof_partition(m, case, g)
    # base triples carry one edge in the T3 cases and none in the T4 cases
    z, a, b = pp.base
    n_edges = sum(g.has_edge(u, v) for u, v in ((z, a), (z, b), (a, b)))
    assert n_edges == (1 if case.startswith("T3") else 0)
    # every class is non-empty and its matrix is the closed-form one
    assert all(s > 0 for s in pp.partition.sizes)
    pm = verify_equitable(g, pp.partition)
    assert pm is not None
    assert np.array_equal(pm.counts, pp.expected)
    assert projection_injective(pp)


def test_sizes_follow_theta_at_m4():
    # theta for the two-step-smaller parameter set is 2
    pp = build_proof_partition(4, "T3Case1")
    assert sorted(pp.partition.sizes, reverse=True) == [6, 6, 6, 6, 3, 1]


def test_arc_counts_match_direct_extension_counts():
    m = 4
    g = build_gamma(m)
    # extension vertex adjacent to all three anchors; anchor edges free
    star = GraphType(
        DenseGraph.from_edges(4, [(0, 3), (1, 3), (2, 3)]), 3
    )
    arcs = {}
    for case in ALL_CASES:
        pp = build_proof_partition(m, case, g)
        n_common = sum(pp.partition.sizes)
        assert count_extensions(g, star, list(pp.base)) == n_common
        pm = verify_equitable(g, pp.partition)
        arcs.setdefault(case[:2], set()).add(pm.arc_count())
    # arcs inside the common neighborhood depend only on the case family
    assert arcs == {"T3": {336}, "T4": {192}}


def test_unknown_case_and_small_m_rejected():
    with pytest.raises(ValueError):
        build_proof_partition(4, "T5Case1")
    with pytest.raises(ValueError):
        build_proof_partition(2, "T3Case1")


def test_verify_equitable_refuses_uneven_split():
    c5 = DenseGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert verify_equitable(c5, OrderedPartition(((0, 1), (2, 3, 4)))) is None


def test_verify_equitable_bipartition_of_c6():
    c6 = DenseGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    pm = verify_equitable(c6, OrderedPartition(((0, 2, 4), (1, 3, 5))))
    assert pm is not None
    assert pm.counts.tolist() == [[0, 2], [2, 0]]
    assert pm.arc_count() == 12


def test_partition_classes_must_be_disjoint():
    with pytest.raises(ValueError):
        OrderedPartition(((0, 1), (1, 2)))
