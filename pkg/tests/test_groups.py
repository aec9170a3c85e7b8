"""Affine maps, generators, orbits, group order."""
import numpy as np
import pytest

from hireg.family import rho_color_bits
from hireg.gf2 import BitMatrix, BitVector
from hireg.groups import (
    AffineMap,
    GeneratorSet,
    generated_order,
    gm_generators,
    hm_generators,
    orbits,
    pair_orbit_labels,
    point_orbit_labels,
    preserves_relations,
    translation_generators,
    triple_orbit_count,
    trivial_generators,
)

GL_ORDERS = {2: 6, 3: 168, 4: 20160}


def _shear_count(m):
    return 1 << (m * (m - 1) // 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_generated_order_of_stabilizer(m):
    assert generated_order(hm_generators(m)) == GL_ORDERS[m] * _shear_count(m)


def test_point_permutation_matches_apply():
    amap = gm_generators(2).maps[-1]
    perm = amap.point_permutation()
    for v in range(16):
        assert perm[v] == amap.apply_bits(v)
    inv = amap.inverse()
    assert all(inv.apply_bits(amap.apply_bits(v)) == v for v in range(16))


def test_translations_act_regularly():
    gens = translation_generators(3)
    labels = point_orbit_labels(gens)
    assert len(np.unique(labels)) == 1


def test_full_group_transitive_stabilizer_orbits_are_colors():
    m = 3
    assert len(np.unique(point_orbit_labels(gm_generators(m)))) == 1
    labels = point_orbit_labels(hm_generators(m))
    colors = np.array([rho_color_bits(m, d) for d in range(1 << (2 * m))])
    # each stabilizer orbit carries one color and vice versa
    pairs = {(int(a), int(b)) for a, b in zip(labels, colors)}
    assert len(pairs) == len(np.unique(labels)) == 4


def test_pair_orbits_of_full_group():
    m = 3
    labels = pair_orbit_labels(gm_generators(m))
    assert len(np.unique(labels)) == 4


def test_trivial_group_orbits_are_singletons():
    gens = trivial_generators(2)
    assert len(np.unique(point_orbit_labels(gens))) == 16


def test_orbits_filter():
    m = 2
    classes = orbits(gm_generators(m), "points")
    assert len(classes) == 1
    nonzero = orbits(hm_generators(m), "points", filter=lambda p: p != 0)
    assert sum(len(c) for c in nonzero) == (1 << (2 * m)) - 1


def test_triple_orbit_count():
    assert triple_orbit_count(4) == 21


def test_preserves_relations():
    m = 2
    n = 1 << (2 * m)
    colors = np.array(
        [[rho_color_bits(m, u ^ v) for v in range(n)] for u in range(n)],
        dtype=np.int32,
    )
    for amap in gm_generators(m).maps:
        assert preserves_relations(amap, colors)
    swap = AffineMap(
        BitMatrix.identity(2 * m), BitVector.zero(2 * m)
    )  # identity trivially preserves
    assert preserves_relations(swap, colors)
    # a map scrambling colors must be rejected
    rows = (0b0001, 0b0010, 0b1000, 0b0100)
    bad = AffineMap(BitMatrix(4, 4, rows), BitVector.zero(4))
    assert not preserves_relations(bad, colors)
