"""Graph family construction: difference sets, colors, parameters."""
from fractions import Fraction

import numpy as np
import pytest

from hireg.family import (
    FamilyParams,
    build_gamma,
    build_gamma_hat,
    build_upsilon,
    color_of_pair,
    expected_parameters,
    gamma_difference_set,
    gamma_hat_difference_set,
    rho_color_bits,
    rho_color_matrix,
    sigma_color_bits,
    sigma_color_matrix,
    triangle_profile,
    upsilon_base_points,
    upsilon_witness_triangle,
)
from hireg.graphs import srg_parameters, subconstituent


def test_theta_values():
    assert FamilyParams.for_m(3).theta == 1
    assert FamilyParams.for_m(4).theta == 2
    assert FamilyParams.for_m(2).theta == Fraction(1, 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_difference_set_symmetric_and_sized(m):
    d = set(gamma_difference_set(m))
    theta = FamilyParams.for_m(m).theta
    assert len(d) == 4 * theta * (8 * theta - 1)
    assert 0 not in d
    # connection set of an undirected Cayley graph: closed under negation
    # (self-inverse over GF(2), so just a sanity membership check)
    assert all(0 < x < (1 << (2 * m)) for x in d)


def test_rho_colors_partition_nonzero():
    m = 3
    counts = {c: 0 for c in (2, 3, 4)}
    for d in range(1, 1 << (2 * m)):
        counts[rho_color_bits(m, d)] += 1
    theta = 1
    assert counts[2] == 8 * theta - 1
    assert counts[3] == 4 * theta * (8 * theta - 1)
    assert counts[4] == (1 << (2 * m)) - 1 - counts[2] - counts[3]
    assert rho_color_bits(m, 0) == 1


def test_sigma_colors_partition_nonzero():
    m = 4
    counts = {}
    for d in range(1, 1 << (2 * m)):
        counts[sigma_color_bits(m, d)] = counts.get(sigma_color_bits(m, d), 0) + 1
    assert counts == {2: 7, 3: 112, 4: 24, 5: 112}


def test_color_matrices_translation_invariant():
    m = 3
    rho = rho_color_matrix(m)
    n = rho.shape[0]
    idx = np.arange(n)
    assert np.array_equal(rho, rho[0][idx[:, None] ^ idx[None, :]])
    assert color_of_pair("rho", m, 5, 9) == rho[5, 9]
    sig = sigma_color_matrix(m)
    assert np.array_equal(sig, sig[0][idx[:, None] ^ idx[None, :]])


@pytest.mark.parametrize("m", [2, 3, 4])
def test_gamma_is_srg(m):
    g = build_gamma(m)
    assert srg_parameters(g) == expected_parameters(m, "gamma").combinatorial()


@pytest.mark.parametrize("m", [3, 4])
def test_subconstituents_match_table(m):
    g = build_gamma(m)
    for which in (1, 2):
        sub = subconstituent(g, 0, which)
        want = expected_parameters(m, f"gamma{which}").combinatorial()
        assert srg_parameters(sub) == want


def test_gamma_hat_difference_set_and_srg():
    m = 4
    d = set(gamma_hat_difference_set(m))
    assert len(d) == 112 + 7  # sigma2 and sigma5 classes
    g = build_gamma_hat(m)
    assert srg_parameters(g) == (256, 119, 54, 56)


def test_upsilon_shapes_and_profiles():
    m = 4
    ga, hosts_a = build_upsilon(m, "a")
    gb, hosts_b = build_upsilon(m, "b")
    assert ga.n == gb.n == 64
    assert ga.degree(0) == gb.degree(0)
    assert set(triangle_profile(ga)) == {6}
    profile_b = triangle_profile(gb)
    assert set(profile_b) != {6}
    assert 5 in profile_b
    z, a = upsilon_base_points(m, "a")
    assert z == 0 and a == 1
    # the witness triangle realizes the minimum
    tri = upsilon_witness_triangle(m)
    pos = [hosts_b.index(v) for v in tri]
    assert all(gb.has_edge(pos[i], pos[j]) for i in range(3) for j in range(i))


def test_expected_parameters_rejects_bad_m():
    with pytest.raises(Exception):
        expected_parameters(1, "gamma")
