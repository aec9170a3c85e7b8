"""Graph types and extension-regularity checking.

A graph type of order (mt, nt) is a pattern graph on nt vertices whose
first mt vertices are anchors.  A host graph is regular with respect to
the type when every induced copy of the anchor subgraph extends to the
full pattern in the same number of ways.  Checking all types of order
(k, l) for k <= m, k <= l <= n is (m, n)-regularity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._kernels import batch_extension_counts
from .graphs import (
    DenseGraph,
    anchored_canonical_form,
    induced_subgraph,
    is_complete,
    vertex_connectivity,
    VertexSet,
)
from .groups import (
    GeneratorSet,
    pair_orbit_labels,
    point_orbit_labels,
    preserves_relations,
    trivial_generators,
)

MODE_EXHAUSTIVE = "Exhaustive"
MODE_ORBIT = "OrbitReduced"


@dataclass(frozen=True)
class GraphType:
    """Pattern graph whose first `anchors` vertices form the base graph."""

    graph: DenseGraph
    anchors: int

    def __post_init__(self):
        if not 1 <= self.anchors <= self.graph.n:
            raise ValueError("anchor count out of range")

    @property
    def order(self) -> tuple[int, int]:
        return (self.anchors, self.graph.n)

    def delta(self) -> DenseGraph:
        sub, _ = induced_subgraph(
            self.graph, VertexSet.from_indices(range(self.anchors), self.graph.n)
        )
        return sub

    def closure(self) -> DenseGraph:
        """The pattern with a clique installed on the anchors."""
        extra = [
            (i, j)
            for i in range(self.anchors)
            for j in range(i + 1, self.anchors)
            if not self.graph.has_edge(i, j)
        ]
        return DenseGraph.from_edges(self.graph.n, list(self.graph.edges()) + extra)

    def canonical_code(self) -> bytes:
        return anchored_canonical_form(self.graph, range(self.anchors))

    def key(self) -> str:
        return self.canonical_code().hex()


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _type_from_code(code: int, mt: int, nt: int) -> GraphType:
    edges = [p for b, p in enumerate(_pairs(nt)) if (code >> b) & 1]
    return GraphType(DenseGraph.from_edges(nt, edges), mt)


def enumerate_graph_types(mt: int, nt: int) -> list[GraphType]:
    """All graph types of order (mt, nt) up to anchored isomorphism.

    Representatives are the minimal upper-triangle edge codes under the
    group permuting anchors and non-anchors separately; this matches the
    ordering used by anchored_canonical_form.
    """
    if not 1 <= mt <= nt:
        raise ValueError("need 1 <= mt <= nt")
    if nt > 7:
        raise ValueError("type enumeration limited to nt <= 7")
    pairs = _pairs(nt)
    nbits = len(pairs)
    codes = np.arange(1 << nbits, dtype=np.uint32)
    canon = codes.copy()
    pos = {p: b for b, p in enumerate(pairs)}
    nchunks = (nbits + 7) // 8
    for pa in itertools.permutations(range(mt)):
        for pr in itertools.permutations(range(mt, nt)):
            perm = pa + pr
            if perm == tuple(range(nt)):
                continue
            tabs = np.zeros((nchunks, 256), dtype=np.uint32)
            vals = np.arange(256, dtype=np.uint32)
            for b, (i, j) in enumerate(pairs):
                a, c = perm[i], perm[j]
                dest = pos[(a, c) if a < c else (c, a)]
                tabs[b >> 3] |= ((vals >> (b & 7)) & 1) << dest
            permuted = tabs[0][codes & 255]
            for ci in range(1, nchunks):
                permuted |= tabs[ci][(codes >> (8 * ci)) & 255]
            np.minimum(canon, permuted, out=canon)
    reps = codes[canon == codes]
    return [_type_from_code(int(c), mt, nt) for c in reps]


def filter_types(types: list[GraphType]) -> list[GraphType]:
    """Keep only types whose closure is complete or (mt+1)-connected."""
    kept = []
    for t in types:
        cl = t.closure()
        if is_complete(cl) or vertex_connectivity(cl) >= t.anchors + 1:
            kept.append(t)
    return kept


@dataclass(frozen=True)
class RegularityReport:
    type_key: str
    order: tuple[int, int]
    status: str  # "Constant" | "Violated" | "Vacuous"
    value: Optional[int]
    mode: str
    witnesses: list = field(default_factory=list)

    def passed(self) -> bool:
        return self.status in ("Constant", "Vacuous")

    def to_json(self) -> dict:
        return {
            "type": self.type_key,
            "order": list(self.order),
            "status": self.status,
            "value": self.value,
            "witnesses": self.witnesses,
            "mode": self.mode,
        }


def _relation_masks(g: DenseGraph) -> tuple[np.ndarray, np.ndarray]:
    a = g.to_numpy().astype(bool)
    n = ~a
    np.fill_diagonal(n, False)
    return a, n


def enumerate_kappas(g: DenseGraph, gtype: GraphType) -> np.ndarray:
    """All ordered anchor placements inducing the base graph, shape (K, mt)."""
    mt = gtype.anchors
    th = gtype.graph
    n = g.n
    if mt == 1:
        return np.arange(n, dtype=np.int64)[:, None]
    adj, non = _relation_masks(g)
    p01 = adj if th.has_edge(0, 1) else non
    if mt == 2:
        us, vs = np.nonzero(p01)
        return np.stack([us, vs], axis=1).astype(np.int64)
    if mt == 3:
        p02 = adj if th.has_edge(0, 2) else non
        p12 = adj if th.has_edge(1, 2) else non
        blocks = []
        for u in range(n):
            vs = np.nonzero(p01[u])[0]
            if vs.size == 0:
                continue
            hit = p12[vs] & p02[u][None, :]
            vi, ws = np.nonzero(hit)
            if vi.size:
                col_u = np.full(vi.size, u, dtype=np.int64)
                blocks.append(np.stack([col_u, vs[vi], ws], axis=1))
        if not blocks:
            return np.empty((0, 3), dtype=np.int64)
        return np.concatenate(blocks).astype(np.int64)
    raise ValueError("anchor placement supports mt <= 3")


def orbit_kappas(
    g: DenseGraph, gtype: GraphType, gens: GeneratorSet
) -> np.ndarray:
    """One anchor placement per orbit of the generated automorphism group.

    Sound because each generator is checked exhaustively to preserve the
    adjacency of g, and the group acts transitively on vertices; the
    point 0 stabilizer is taken as the zero-translation generators.
    """
    if g.n != gens.n_points:
        raise ValueError("generator domain does not match graph order")
    colors = g.to_numpy().astype(np.int32)
    for amap in gens.maps:
        if not preserves_relations(amap, colors):
            raise ValueError("generator does not preserve adjacency")
    if len(np.unique(point_orbit_labels(gens))) != 1:
        raise ValueError("orbit reduction requires vertex transitivity")
    mt = gtype.anchors
    if mt == 1:
        return np.array([[0]], dtype=np.int64)
    stab_maps = tuple(mp for mp in gens.maps if mp.translation.bits == 0)
    stab = (
        GeneratorSet(gens.m, stab_maps)
        if stab_maps
        else trivial_generators(gens.m)
    )
    adj, non = _relation_masks(g)
    th = gtype.graph
    p01 = adj if th.has_edge(0, 1) else non
    if mt == 2:
        labels = point_orbit_labels(stab)
        _, first = np.unique(labels, return_index=True)
        ys = np.array(sorted(int(y) for y in first if p01[0, y]), dtype=np.int64)
        out = np.zeros((ys.size, 2), dtype=np.int64)
        out[:, 1] = ys
        return out
    if mt == 3:
        p02 = adj if th.has_edge(0, 2) else non
        p12 = adj if th.has_edge(1, 2) else non
        labels = pair_orbit_labels(stab)
        _, first = np.unique(labels, return_index=True)
        rows = []
        n = g.n
        for idx in sorted(int(i) for i in first):
            y, z = divmod(idx, n)
            if p01[0, y] and p02[0, z] and p12[y, z]:
                rows.append((0, y, z))
        return np.array(rows, dtype=np.int64).reshape(-1, 3)
    raise ValueError("anchor placement supports mt <= 3")


def _pack_bool(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    w = max(1, (n + 63) // 64)
    out = np.zeros((n, w), dtype=np.uint64)
    shifts = np.arange(64, dtype=np.uint64)
    for k in range(w):
        block = mat[:, 64 * k : 64 * (k + 1)].astype(np.uint64)
        out[:, k] = (block << shifts[: block.shape[1]]).sum(
            axis=1, dtype=np.uint64
        )
    return out


def _requirement_table(gtype: GraphType) -> np.ndarray:
    mt, nt = gtype.order
    e = nt - mt
    req = np.zeros((max(e, 1), nt), dtype=np.uint8)
    for p in range(e):
        for s in range(mt + p):
            req[p, s] = 1 if gtype.graph.has_edge(mt + p, s) else 0
    return req


def _batch_counts(g: DenseGraph, gtype: GraphType, kappas: np.ndarray) -> np.ndarray:
    adj, non = _relation_masks(g)
    adjp = _pack_bool(adj)
    nonp = _pack_bool(non)
    e = gtype.graph.n - gtype.anchors
    return batch_extension_counts(
        adjp, nonp, np.ascontiguousarray(kappas), _requirement_table(gtype), e
    )


def count_extensions(g: DenseGraph, gtype: GraphType, kappa) -> int:
    """Number of induced extensions of one anchor placement to the pattern."""
    kap = np.array([list(kappa)], dtype=np.int64)
    if kap.shape[1] != gtype.anchors:
        raise ValueError("placement length must equal anchor count")
    return int(_batch_counts(g, gtype, kap)[0])


def check_type_regularity(
    g: DenseGraph,
    gtype: GraphType,
    mode: str = MODE_EXHAUSTIVE,
    gens: Optional[GeneratorSet] = None,
) -> RegularityReport:
    """Is the extension count constant over all anchor placements?"""
    if mode == MODE_ORBIT:
        if gens is None:
            raise ValueError("OrbitReduced mode needs generators")
        kappas = orbit_kappas(g, gtype, gens)
    elif mode == MODE_EXHAUSTIVE:
        kappas = enumerate_kappas(g, gtype)
    else:
        raise ValueError(f"unknown mode: {mode}")
    key = gtype.key()
    if kappas.shape[0] == 0:
        return RegularityReport(key, gtype.order, "Vacuous", None, mode)
    counts = _batch_counts(g, gtype, kappas)
    lo = int(counts.min())
    hi = int(counts.max())
    if lo == hi:
        return RegularityReport(key, gtype.order, "Constant", lo, mode)
    i_lo = int(np.argmin(counts))
    i_hi = int(np.argmax(counts))
    witnesses = [
        {"kappa": [int(x) for x in kappas[i]], "count": int(counts[i])}
        for i in (i_lo, i_hi)
    ]
    return RegularityReport(key, gtype.order, "Violated", None, mode, witnesses)


def check_mn_regularity(
    g: DenseGraph,
    m: int,
    n: int,
    use_filter: bool = True,
    mode: str = MODE_EXHAUSTIVE,
    gens: Optional[GeneratorSet] = None,
) -> list[RegularityReport]:
    """Reports for every type of order (k, l), k <= m, k <= l <= n.

    With use_filter, only types whose closure is complete or
    (k+1)-connected are checked; constancy on those implies constancy on
    all types of the covered orders.
    """
    reports = []
    for k in range(1, m + 1):
        for l in range(k, n + 1):
            types = enumerate_graph_types(k, l)
            if use_filter:
                types = filter_types(types)
            for t in types:
                reports.append(check_type_regularity(g, t, mode, gens))
    return reports
