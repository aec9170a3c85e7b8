"""Construction of the graph family over GF(2)^{2m} and its companions.

The main graph joins two vectors when their difference lies on the
hyperbolic quadric but outside the fixed maximal singular subspace.  Also
provided: the rank-4/rank-5 pair colorings, closed-form parameter tables,
the two auxiliary distinguisher subgraphs, triangle profiles, and the
companion graph built from the elliptic form.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf2 import (
    FormKind,
    bilinear_form_bits,
    in_singular_subspace,
    quadratic_form_bits,
)
from .graphs import DenseGraph, VertexSet, induced_subgraph


@dataclass(frozen=True)
class FamilyParams:
    m: int
    theta: Fraction

    @classmethod
    def for_m(cls, m: int) -> "FamilyParams":
        if m < 2:
            raise ValueError("m must be at least 2")
        return cls(m, Fraction(2) ** (m - 3))


@dataclass(frozen=True)
class SRGParameters:
    v: int
    k: int
    lam: int
    mu: int
    r: int
    s: int
    f: int
    g: int

    def __post_init__(self):
        assert 1 + self.f + self.g == self.v
        assert self.k + self.f * self.r + self.g * self.s == 0

    def combinatorial(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def _check_m(m: int, low: int = 2) -> None:
    if not low <= m <= 6:
        raise ValueError(f"m must be in {low}..6")


def _perp_of_singular(m: int, d: int) -> bool:
    """Membership in the orthogonal complement of the elliptic singular space.

    The complement consists of the vectors whose first m-1 y-coordinates
    vanish (with respect to the symplectic form attached to either kind).
    """
    y = d >> m
    return y & ((1 << (m - 1)) - 1) == 0


def rho_color_bits(m: int, d: int) -> int:
    """Color in 1..4 of a pair with difference d, hyperbolic family."""
    if d == 0:
        return 1
    if in_singular_subspace(FormKind.HYPERBOLIC, m, d):
        return 2
    if quadratic_form_bits(FormKind.HYPERBOLIC, m, d) == 0:
        return 3
    return 4


def sigma_color_bits(m: int, d: int) -> int:
    """Color in 1..5 of a pair with difference d, elliptic family."""
    if d == 0:
        return 1
    if in_singular_subspace(FormKind.ELLIPTIC, m, d):
        return 2
    if quadratic_form_bits(FormKind.ELLIPTIC, m, d) == 0:
        return 3
    if _perp_of_singular(m, d):
        return 4
    return 5


def color_of_pair(fam: str, m: int, v, w) -> int:
    """Relation index of the ordered pair (v, w); fam is 'rho' or 'sigma'."""
    vb = v if isinstance(v, int) else v.bits
    wb = w if isinstance(w, int) else w.bits
    if max(vb, wb) >> (2 * m):
        raise ValueError("vector out of range")
    if fam == "rho":
        return rho_color_bits(m, vb ^ wb)
    if fam == "sigma":
        return sigma_color_bits(m, vb ^ wb)
    raise ValueError(f"unknown family {fam!r}")


def _difference_graph(m: int, diffs: list[int]) -> DenseGraph:
    n = 1 << (2 * m)
    rows = [0] * n
    for v in range(n):
        bits = 0
        for d in diffs:
            bits |= 1 << (v ^ d)
        rows[v] = bits
    return DenseGraph(n, rows)


def gamma_difference_set(m: int) -> list[int]:
    n = 1 << (2 * m)
    return [d for d in range(1, n) if rho_color_bits(m, d) == 3]


def build_gamma(m: int) -> DenseGraph:
    """The main graph: vertices GF(2)^{2m}, edges at rho-color-3 differences."""
    _check_m(m)
    return _difference_graph(m, gamma_difference_set(m))


def gamma_hat_difference_set(m: int) -> list[int]:
    n = 1 << (2 * m)
    return [d for d in range(1, n) if sigma_color_bits(m, d) in (2, 5)]


def build_gamma_hat(m: int) -> DenseGraph:
    """The companion graph: edges at sigma-color-2 or 5 differences."""
    _check_m(m, low=3)
    return _difference_graph(m, gamma_hat_difference_set(m))


def rho_color_matrix(m: int) -> np.ndarray:
    """n x n matrix of rho colors 1..4 (translation-invariant)."""
    n = 1 << (2 * m)
    row0 = np.array([rho_color_bits(m, d) for d in range(n)], dtype=np.int32)
    idx = np.arange(n)
    return row0[idx[:, None] ^ idx[None, :]]


def sigma_color_matrix(m: int) -> np.ndarray:
    n = 1 << (2 * m)
    row0 = np.array([sigma_color_bits(m, d) for d in range(n)], dtype=np.int32)
    idx = np.arange(n)
    return row0[idx[:, None] ^ idx[None, :]]


_PARAM_TABLE = {
    "gamma": dict(
        v=lambda t: 64 * t**2,
        k=lambda t: 4 * t * (8 * t - 1),
        lam=lambda t: 4 * t * (4 * t - 1),
        mu=lambda t: 4 * t * (4 * t - 1),
        r=lambda t: 4 * t,
        s=lambda t: -4 * t,
        f=lambda t: 4 * t * (8 * t - 1),
        g=lambda t: (4 * t + 1) * (8 * t - 1),
    ),
    "gamma1": dict(
        v=lambda t: 4 * t * (8 * t - 1),
        k=lambda t: 4 * t * (4 * t - 1),
        lam=lambda t: 2 * t * (4 * t - 1),
        mu=lambda t: 4 * t * (2 * t - 1),
        r=lambda t: 4 * t,
        s=lambda t: -2 * t,
        f=lambda t: (4 * t - 1) * (8 * t - 1) / 3,
        g=lambda t: 4 * (4 * t - 1) * (4 * t + 1) / 3,
    ),
    "gamma2": dict(
        v=lambda t: (4 * t + 1) * (8 * t - 1),
        k=lambda t: 16 * t**2,
        lam=lambda t: 2 * t * (4 * t - 1),
        mu=lambda t: 8 * t**2,
        r=lambda t: 2 * t,
        s=lambda t: -4 * t,
        f=lambda t: 4 * (4 * t + 1) * (4 * t - 1) / 3,
        g=lambda t: 2 * (2 * t + 1) * (8 * t - 1) / 3,
    ),
}


def expected_parameters(m: int, which: str) -> SRGParameters:
    """Closed-form parameter row, evaluated exactly over rationals."""
    params = FamilyParams.for_m(m)
    try:
        row = _PARAM_TABLE[which]
    except KeyError:
        raise ValueError(f"unknown table row {which!r}") from None
    values = {}
    for name, formula in row.items():
        val = formula(params.theta)
        frac = Fraction(val)
        if frac.denominator != 1:
            raise ValueError(f"non-integral parameter {name} at m={m}")
        values[name] = int(frac)
    return SRGParameters(**values)


def upsilon_base_points(m: int, which: str) -> tuple[int, int]:
    """(base vertex z, excluded vertex) for the two distinguisher subgraphs."""
    if which == "a":
        return 0, 1  # x-block e_1
    if which == "b":
        return 0, 1 | (1 << m)  # e_1 in both blocks
    raise ValueError(f"which must be 'a' or 'b', got {which!r}")


def build_upsilon(m: int, which: str) -> tuple[DenseGraph, list[int]]:
    """Neighbors of 0 that are non-neighbors of the excluded vertex.

    Returns the induced subgraph and the embedding map back into the host
    (list of host vertex indices, ascending).
    """
    _check_m(m, low=3)
    host = build_gamma(m)
    z, excl = upsilon_base_points(m, which)
    bits = host.adj[z] & ~host.adj[excl] & ~(1 << excl)
    return induced_subgraph(host, VertexSet(host.n, bits))


def triangle_profile(g: DenseGraph) -> Counter:
    """Histogram of common-neighbor counts over all triangles."""
    profile = Counter()
    for u in range(g.n):
        row_u = g.adj[u] >> (u + 1) << (u + 1)  # neighbors above u
        for v in _iter_bits(row_u):
            both = g.adj[u] & g.adj[v]
            for w in _iter_bits(both >> (v + 1) << (v + 1)):
                profile[(both & g.adj[w]).bit_count()] += 1
    return profile


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def upsilon_witness_triangle(m: int) -> tuple[int, int, int]:
    """A triangle of the 'b' distinguisher attaining the low count.

    Host-graph vertices with y-coordinates 2, 3, 4 set, respectively
    (requires m >= 4).
    """
    if m < 4:
        raise ValueError("witness triangle requires m >= 4")
    return tuple(1 << (m + i) for i in (1, 2, 3))
