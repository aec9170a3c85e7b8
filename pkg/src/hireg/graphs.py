"""Dense simple graphs with bitset adjacency rows.

Provides common-neighborhood and subgraph operations, combinatorial
strong-regularity testing, brute-force vertex connectivity, anchored
canonical forms, and graph6 I/O.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class VertexSet:
    """Subset of {0..width-1} packed into an integer bitset."""

    width: int
    bits: int

    def __post_init__(self):
        if self.bits >> self.width:
            raise ValueError("bits set above width")

    @classmethod
    def from_indices(cls, indices, width: int) -> "VertexSet":
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise ValueError(f"vertex {i} out of range")
            bits |= 1 << i
        return cls(width, bits)

    def indices(self) -> list[int]:
        return _bit_indices(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.width and (self.bits >> i) & 1 == 1


def _bit_indices(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


class DenseGraph:
    """Simple undirected graph; adjacency row i is an integer bitset."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj):
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency row count mismatch")
        full = (1 << n) - 1
        for u, row in enumerate(adj):
            if row & ~full:
                raise ValueError("adjacency bits out of range")
            if (row >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
        for u in range(n):
            for v in _bit_indices(adj[u]):
                if not (adj[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency {u},{v}")
        self.n = n
        self.adj = adj

    @classmethod
    def from_edges(cls, n: int, edges) -> "DenseGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "DenseGraph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << i) for i in range(n)])

    @classmethod
    def empty(cls, n: int) -> "DenseGraph":
        return cls(n, [0] * n)

    @classmethod
    def cycle(cls, n: int) -> "DenseGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in _bit_indices(self.adj[u]):
                if u < v:
                    out.append((u, v))
        return out

    def neighbors(self, u: int) -> list[int]:
        return _bit_indices(self.adj[u])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DenseGraph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def to_numpy(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, row in enumerate(self.adj):
            for v in _bit_indices(row):
                a[u, v] = 1
        return a

    def to_packed(self) -> np.ndarray:
        """Adjacency rows packed into 64-bit words, shape (n, ceil(n/64))."""
        w = max(1, (self.n + 63) // 64)
        out = np.zeros((self.n, w), dtype=np.uint64)
        mask = (1 << 64) - 1
        for u, row in enumerate(self.adj):
            for k in range(w):
                out[u, k] = (row >> (64 * k)) & mask
        return out

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": sorted(self.edges())})

    @classmethod
    def from_json(cls, text: str) -> "DenseGraph":
        data = json.loads(text)
        return cls.from_edges(data["n"], data["edges"])


def common_neighbors(g: DenseGraph, vset: VertexSet) -> VertexSet:
    """Vertices adjacent to every member of vset (all vertices if empty)."""
    if vset.width != g.n:
        raise ValueError("vertex set width mismatch")
    bits = (1 << g.n) - 1
    for i in vset.indices():
        bits &= g.adj[i]
    return VertexSet(g.n, bits)


def induced_subgraph(g: DenseGraph, vset: VertexSet) -> tuple[DenseGraph, list[int]]:
    """Induced subgraph plus the list of original vertex indices."""
    verts = vset.indices()
    if not verts:
        raise ValueError("empty vertex set")
    pos = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for i, v in enumerate(verts):
        for u in _bit_indices(g.adj[v] & vset.bits):
            rows[i] |= 1 << pos[u]
    return DenseGraph(len(verts), rows), verts


def subconstituent(g: DenseGraph, v: int, which: int) -> DenseGraph:
    """Induced subgraph on neighbors (which=1) or non-neighbors (which=2) of v."""
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    if which == 1:
        bits = g.adj[v]
    elif which == 2:
        bits = ((1 << g.n) - 1) & ~g.adj[v] & ~(1 << v)
    else:
        raise ValueError("which must be 1 or 2")
    if bits == 0:
        return DenseGraph.empty(0)
    sub, _ = induced_subgraph(g, VertexSet(g.n, bits))
    return sub


def srg_parameters(g: DenseGraph) -> tuple[int, int, int, int] | None:
    """(v,k,lambda,mu) if g is strongly regular, else None.

    Purely combinatorial: checks regularity and constant common-neighbor
    counts over adjacent and non-adjacent pairs.
    """
    n = g.n
    if n < 3:
        return None
    k = g.adj[0].bit_count()
    if any(r.bit_count() != k for r in g.adj):
        return None
    a = g.to_numpy()
    common = (a.astype(np.float64) @ a.astype(np.float64)).astype(np.int64)
    adj = a.astype(bool)
    off = ~np.eye(n, dtype=bool)
    lam_vals = common[adj]
    mu_vals = common[off & ~adj]
    if lam_vals.size == 0 or mu_vals.size == 0:
        return None
    if lam_vals.min() != lam_vals.max() or mu_vals.min() != mu_vals.max():
        return None
    lam, mu = int(lam_vals[0]), int(mu_vals[0])
    assert k * (k - lam - 1) == (n - k - 1) * mu
    return (n, k, lam, mu)


def _is_connected_bits(adj: tuple, alive: int) -> bool:
    start = alive & -alive
    if start == 0:
        return True
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bit_indices(frontier):
            nxt |= adj[v] & alive
        frontier = nxt & ~seen
        seen |= nxt
    return seen == alive


def is_complete(g: DenseGraph) -> bool:
    full = (1 << g.n) - 1
    return all(g.adj[u] == full ^ (1 << u) for u in range(g.n))


def vertex_connectivity(g: DenseGraph) -> int:
    """Minimum vertex cut size, by exhaustive removal (n-1 for complete)."""
    n = g.n
    if n > 12:
        raise ValueError("vertex_connectivity limited to n <= 12")
    if n <= 1:
        return 0
    if is_complete(g):
        return n - 1
    full = (1 << n) - 1
    for size in range(0, n - 1):
        for cut in itertools.combinations(range(n), size):
            removed = 0
            for c in cut:
                removed |= 1 << c
            if not _is_connected_bits(g.adj, full & ~removed):
                return size
    return n - 1


# --- anchored canonical forms ----------------------------------------------


def _pair_index(i: int, j: int, n: int) -> int:
    """Index of pair (i<j) in row-major upper-triangle order."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def _edge_code(adj: tuple, order, n: int) -> int:
    """Upper-triangle edge bits of the graph relabeled by `order`."""
    code = 0
    for i in range(n):
        ri = adj[order[i]]
        for j in range(i + 1, n):
            if (ri >> order[j]) & 1:
                code |= 1 << _pair_index(i, j, n)
    return code


def anchored_canonical_form(g: DenseGraph, anchors) -> bytes:
    """Canonical code under isomorphisms fixing the anchor set setwise."""
    anchors = list(anchors)
    n = g.n
    m = len(anchors)
    if n > 10:
        raise ValueError("anchored_canonical_form limited to n <= 10")
    if len(set(anchors)) != m:
        raise ValueError("anchors must be distinct")
    rest = [v for v in range(n) if v not in set(anchors)]
    best = None
    for pa in itertools.permutations(anchors):
        for pr in itertools.permutations(rest):
            code = _edge_code(g.adj, pa + pr, n)
            if best is None or code < best:
                best = code
    nbytes = max(1, (n * (n - 1) // 2 + 7) // 8)
    return bytes([n, m]) + best.to_bytes(nbytes, "big")


# --- graph6 -----------------------------------------------------------------


def graph6_encode(g: DenseGraph) -> str:
    n = g.n
    if n > 4096:
        raise ValueError("graph6 encoding limited to n <= 4096")
    if n <= 62:
        head = chr(63 + n)
    else:
        head = "~" + "".join(
            chr(63 + ((n >> s) & 63)) for s in (12, 6, 0)
        )
    bits = []
    for j in range(n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chunks = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        chunks.append(chr(63 + val))
    return head + "".join(chunks)


def graph6_decode(text: str) -> DenseGraph:
    data = text.strip()
    pos = 0
    try:
        if not data:
            raise ValueError("empty input")
        if data[0] == "~":
            if len(data) >= 2 and data[1] == "~":
                raise ValueError("graph6 n > 258047 not supported")
            if len(data) < 4:
                raise ValueError("truncated size field")
            n = 0
            for c in data[1:4]:
                n = (n << 6) | (ord(c) - 63)
            pos = 4
        else:
            n = ord(data[0]) - 63
            pos = 1
        if n < 0:
            raise ValueError("bad vertex count")
        nbits = n * (n - 1) // 2
        nchunks = (nbits + 5) // 6
        if len(data) - pos != nchunks:
            raise ValueError(f"expected {nchunks} edge bytes, got {len(data) - pos}")
        bits = []
        for c in data[pos:]:
            val = ord(c) - 63
            if not 0 <= val < 64:
                raise ValueError(f"byte {ord(c)} out of graph6 range")
            bits.extend((val >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
        rows = [0] * n
        idx = 0
        for j in range(n):
            for i in range(j):
                if bits[idx]:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                idx += 1
        return DenseGraph(n, rows)
    except ValueError as exc:
        raise ValueError(f"malformed graph6 at byte {pos}: {exc}") from exc
