"""Affine symmetry groups over GF(2)^{2m} given by generators.

Contains the linear stabilizer group (block shape [[A, AS], [O, (A^T)^-1]])
and its affine extension by all coordinate translations, together with
orbit machinery on points and ordered pairs, and the base-point-reduced
orbit count on ordered triples.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .gf2 import BitMatrix, BitVector


@dataclass(frozen=True)
class AffineMap:
    """v -> matrix @ v + translation over GF(2)^{dim}."""

    matrix: BitMatrix
    translation: BitVector

    def __post_init__(self):
        if self.matrix.nrows != self.matrix.ncols:
            raise ValueError("matrix must be square")
        if self.matrix.nrows != self.translation.length:
            raise ValueError("dimension mismatch")
        if self.matrix.inverse() is None:
            raise ValueError("matrix must be invertible")

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def apply_bits(self, v: int) -> int:
        return self.matrix.mat_vec(v).bits ^ self.translation.bits

    def apply(self, v: BitVector) -> BitVector:
        return BitVector(self.dim, self.apply_bits(v.bits))

    def inverse(self) -> "AffineMap":
        inv = self.matrix.inverse()
        return AffineMap(inv, inv.mat_vec(self.translation.bits))

    def point_permutation(self) -> np.ndarray:
        """Image of every point of GF(2)^dim as a numpy permutation array."""
        images = np.array([self.translation.bits], dtype=np.int64)
        for j in range(self.dim):
            col = self.matrix.mat_vec(1 << j).bits
            images = np.concatenate([images, images ^ col])
        return images


@dataclass(frozen=True)
class GeneratorSet:
    m: int
    maps: tuple[AffineMap, ...]

    def __post_init__(self):
        for g in self.maps:
            if g.dim != 2 * self.m:
                raise ValueError("generator dimension mismatch")

    @property
    def dim(self) -> int:
        return 2 * self.m

    @property
    def n_points(self) -> int:
        return 1 << (2 * self.m)


def _check_m(m: int) -> None:
    if not 2 <= m <= 6:
        raise ValueError("m must be in 2..6")


def _gl_generators(m: int) -> list[BitMatrix]:
    """The standard generating pair of GL(m,2): transvection + full cycle."""
    if m == 2:
        trans = BitMatrix.from_lists([[1, 1], [0, 1]])
        cyc = BitMatrix.from_lists([[0, 1], [1, 0]])
        return [trans, cyc]
    trans_rows = [[1 if i == j or (i, j) == (0, 1) else 0 for j in range(m)] for i in range(m)]
    cyc_rows = [[1 if j == (i + 1) % m else 0 for j in range(m)] for i in range(m)]
    return [BitMatrix.from_lists(trans_rows), BitMatrix.from_lists(cyc_rows)]


def _embed_linear(a: BitMatrix) -> BitMatrix:
    """[[A, O], [O, (A^T)^-1]] acting on GF(2)^{2m}."""
    m = a.nrows
    bottom = a.transpose().inverse()
    assert bottom is not None
    rows = [a.rows[i] for i in range(m)]
    rows += [bottom.rows[i] << m for i in range(m)]
    return BitMatrix(2 * m, 2 * m, tuple(rows))


def _embed_shear(s: BitMatrix) -> BitMatrix:
    """[[I, S], [O, I]] acting on GF(2)^{2m}."""
    m = s.nrows
    rows = [(1 << i) | (s.rows[i] << m) for i in range(m)]
    rows += [1 << (m + i) for i in range(m)]
    return BitMatrix(2 * m, 2 * m, tuple(rows))


def hm_generators(m: int) -> GeneratorSet:
    """Generators of the linear stabilizer of the zero vector."""
    _check_m(m)
    zero = BitVector.zero(2 * m)
    maps = [AffineMap(_embed_linear(a), zero) for a in _gl_generators(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rows = [0] * m
            rows[i] = 1 << j
            rows[j] = 1 << i
            maps.append(AffineMap(_embed_shear(BitMatrix(m, m, tuple(rows))), zero))
    return GeneratorSet(m, tuple(maps))


def gm_generators(m: int) -> GeneratorSet:
    """Stabilizer generators plus the 2m coordinate translations."""
    base = hm_generators(m)
    ident = BitMatrix.identity(2 * m)
    trans = [AffineMap(ident, BitVector.unit(i, 2 * m)) for i in range(2 * m)]
    return GeneratorSet(m, base.maps + tuple(trans))


def translation_generators(m: int) -> GeneratorSet:
    """The 2m coordinate translations alone (regular on points)."""
    _check_m(m)
    ident = BitMatrix.identity(2 * m)
    trans = [AffineMap(ident, BitVector.unit(i, 2 * m)) for i in range(2 * m)]
    return GeneratorSet(m, tuple(trans))


def trivial_generators(m: int) -> GeneratorSet:
    _check_m(m)
    return GeneratorSet(m, (AffineMap(BitMatrix.identity(2 * m), BitVector.zero(2 * m)),))


MAX_ORBIT_DOMAIN = 1 << 20


def _component_labels(n_nodes: int, edge_pairs) -> np.ndarray:
    """Connected-component labels for the union of permutation graphs."""
    srcs, dsts = [], []
    for src, dst in edge_pairs:
        srcs.append(np.asarray(src, dtype=np.int64))
        dsts.append(np.asarray(dst, dtype=np.int64))
    if not srcs:
        return np.arange(n_nodes, dtype=np.int64)
    row = np.concatenate(srcs)
    col = np.concatenate(dsts)
    mat = sp.coo_matrix(
        (np.ones(len(row), dtype=np.int8), (row, col)), shape=(n_nodes, n_nodes)
    )
    _, labels = connected_components(mat, directed=True, connection="weak")
    return labels


def _labels_to_classes(labels: np.ndarray) -> list[np.ndarray]:
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    boundaries = np.flatnonzero(np.diff(sorted_labels)) + 1
    classes = np.split(order, boundaries)
    classes.sort(key=lambda cls: int(cls[0]))
    return [np.sort(c) for c in classes]


def point_orbit_labels(gens: GeneratorSet) -> np.ndarray:
    n = gens.n_points
    edges = []
    for g in gens.maps:
        perm = g.point_permutation()
        edges.append((np.arange(n, dtype=np.int64), perm))
    return _component_labels(n, edges)


def pair_orbit_labels(gens: GeneratorSet) -> np.ndarray:
    """Orbit labels on ordered pairs, pair (u,v) encoded as u*n + v."""
    n = gens.n_points
    if n * n > MAX_ORBIT_DOMAIN:
        raise ValueError("pair domain too large")
    idx = np.arange(n * n, dtype=np.int64)
    edges = []
    for g in gens.maps:
        perm = g.point_permutation()
        src_u, src_v = idx // n, idx % n
        edges.append((idx, perm[src_u] * n + perm[src_v]))
    return _component_labels(n * n, edges)


def orbits(gens: GeneratorSet, domain: str, filter=None) -> list[np.ndarray]:
    """Orbit partition on 'points' or ordered 'pairs' (encoded u*n+v).

    Classes are returned in order of smallest representative.  An optional
    predicate restricts the domain (only orbits whose representative
    satisfies it are returned; the predicate must be invariant).
    """
    if domain == "points":
        labels = point_orbit_labels(gens)
    elif domain == "pairs":
        labels = pair_orbit_labels(gens)
    else:
        raise ValueError(f"unknown domain {domain!r}")
    classes = _labels_to_classes(labels)
    if filter is not None:
        classes = [c for c in classes if filter(int(c[0]))]
    return classes


def triple_orbit_count(m: int) -> int:
    """Stabilizer-orbit count on ordered pairs of distinct nonzero vectors.

    By base-point reduction this equals the orbit count of the full affine
    group on ordered triples of distinct points.
    """
    if not 2 <= m <= 5:
        raise ValueError("m must be in 2..5")
    gens = hm_generators(m)
    n = gens.n_points

    def distinct_nonzero(p: int) -> bool:
        u, v = p // n, p % n
        return u != 0 and v != 0 and u != v

    return len(orbits(gens, "pairs", filter=distinct_nonzero))


def preserves_relations(amap: AffineMap, colors: np.ndarray) -> bool:
    """True iff the map preserves every pair color exhaustively."""
    n = colors.shape[0]
    if (1 << amap.dim) != n:
        raise ValueError("dimension mismatch")
    perm = amap.point_permutation()
    return bool(np.array_equal(colors[np.ix_(perm, perm)], colors))


def generated_order(gens: GeneratorSet) -> int:
    """Order of the generated matrix group (zero translations only).

    Breadth-first closure; matrices are encoded into single 64-bit words
    (row i in byte i), so the dimension is limited to 2m <= 8.
    """
    d = gens.dim
    if d > 8:
        raise ValueError("generated_order limited to 2m <= 8")
    if any(g.translation.bits for g in gens.maps):
        raise ValueError("generated_order expects linear generators")

    def encode(mat: BitMatrix) -> np.uint64:
        val = 0
        for i in range(d):
            val |= mat.rows[i] << (8 * i)
        return np.uint64(val)

    # table[g][r] = row r (an 8-bit selector) times generator g
    tables = []
    for g in gens.maps:
        tbl = np.zeros(256, dtype=np.uint64)
        for r in range(1 << d):
            acc = 0
            rr = r
            while rr:
                j = (rr & -rr).bit_length() - 1
                acc ^= g.matrix.rows[j]
                rr &= rr - 1
            tbl[r] = acc
        tables.append(tbl)

    seen = np.array([encode(BitMatrix.identity(d))], dtype=np.uint64)
    frontier = seen.copy()
    while frontier.size:
        nxt = []
        for tbl in tables:
            prod = np.zeros_like(frontier)
            for k in range(d):
                rows_k = (frontier >> np.uint64(8 * k)) & np.uint64(0xFF)
                prod |= tbl[rows_k.astype(np.int64)] << np.uint64(8 * k)
            nxt.append(prod)
        candidates = np.unique(np.concatenate(nxt))
        pos = np.searchsorted(seen, candidates)
        pos_clipped = np.minimum(pos, seen.size - 1)
        fresh = candidates[seen[pos_clipped] != candidates]
        if fresh.size == 0:
            break
        seen = np.union1d(seen, fresh)
        frontier = fresh
    return int(seen.size)
