"""Equitable partitions certifying the arc-counting proofs.

Each case fixes a base triple of vertices in the 2^(2m)-point graph,
partitions their common neighborhood into explicitly defined classes,
and predicts the class-to-class neighbor counts by structure constants
of the two-levels-smaller configuration.  A projection dropping fixed
coordinates of each block is injective on every class, which is what
ties the counts to the smaller configuration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .coherent import expected_constants
from .family import build_gamma
from .graphs import DenseGraph

CASES = ("T3Case1", "T3Case2", "T4Case1", "T4Case2", "T4Case3")


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered classes of host-vertex indices (pairwise disjoint)."""

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            for v in cls:
                if v in seen:
                    raise ValueError("classes are not disjoint")
                seen.add(v)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def support(self) -> list[int]:
        return sorted(v for cls in self.classes for v in cls)


@dataclass(frozen=True)
class PartitionMatrix:
    """Constant neighbor counts between classes of an equitable partition."""

    counts: np.ndarray
    sizes: tuple[int, ...]

    def arc_count(self) -> int:
        """Total ordered adjacent pairs inside the partitioned set."""
        return int(np.dot(np.array(self.sizes), self.counts.sum(axis=1)))

    def to_json(self) -> dict:
        return {"sizes": list(self.sizes), "matrix": self.counts.tolist()}


def verify_equitable(
    g: DenseGraph, partition: OrderedPartition
) -> Optional[PartitionMatrix]:
    """The partition matrix, or None when some count is not constant."""
    adj = g.to_numpy().astype(np.int64)
    k = len(partition.classes)
    counts = np.zeros((k, k), dtype=np.int64)
    for i, ci in enumerate(partition.classes):
        for j, cj in enumerate(partition.classes):
            block = adj[np.ix_(list(ci), list(cj))].sum(axis=1)
            if block.size and block.min() != block.max():
                return None
            counts[i, j] = int(block[0]) if block.size else 0
    return PartitionMatrix(counts, partition.sizes)


def _coord(block: int, i: int) -> int:
    """Coordinate i of a block, numbered from 1."""
    return (block >> (i - 1)) & 1


def _mid(block: int, lo: int, hi: int) -> int:
    """Coordinates lo..hi of a block as an integer (empty range -> 0)."""
    if hi < lo:
        return 0
    return (block >> (lo - 1)) & ((1 << (hi - lo + 1)) - 1)


def _project(v: int, m: int, drop: tuple[int, ...]) -> int:
    """Both blocks with the dropped coordinates removed, re-packed."""
    keep = [i for i in range(1, m + 1) if i not in drop]
    x1, x2 = v & ((1 << m) - 1), v >> m
    out = 0
    for pos, i in enumerate(keep):
        out |= _coord(x1, i) << pos
        out |= _coord(x2, i) << (pos + len(keep))
    return out


def _t3case1(m: int):
    u, w, v = 0, 1 << (2 * m - 1), 1 | (1 << m)
    e1m = 1 | (1 << (m - 1))

    def preds(x1: int, x2: int) -> list[bool]:
        a, b, c = _coord(x1, 1), _coord(x2, 1), _coord(x2, m)
        mid = _mid(x2, 2, m - 1)
        return [
            a == 1 and b == 0 and c == 0,
            a == 1 and b == 0 and c == 1,
            a == 0 and b == 1 and c == 0,
            a == 0 and b == 1 and c == 1 and mid != 0,
            a == 0 and b == 1 and c == 1 and mid == 0 and x1 != 0,
            x1 == 0 and x2 == e1m,
        ]

    def matrix(p) -> list[list]:
        s3 = p(3, 1, 3) + p(3, 2, 3) + p(3, 3, 3)
        return [
            [p(3, 3, 3), s3, p(3, 4, 3), p(3, 4, 3), p(2, 4, 3), 0],
            [s3, p(3, 3, 3), p(3, 4, 3), p(3, 4, 3), p(2, 4, 3), 0],
            [p(3, 4, 3), p(3, 4, 3), p(3, 3, 3), s3, p(2, 3, 3), p(1, 3, 3)],
            [p(3, 4, 3), p(3, 4, 3), s3, p(3, 3, 3), p(2, 3, 3), p(1, 3, 3)],
            [p(3, 4, 2), p(3, 4, 2), p(3, 3, 2), p(3, 3, 2), 0, 0],
            [0, 0, p(3, 3, 1), p(3, 3, 1), 0, 0],
        ]

    return (u, w, v), (u, w, v), preds, matrix, (1, m)


def _t3case2(m: int):
    u, w, v = 0, 1 << m, 1

    def preds(x1: int, x2: int) -> list[bool]:
        a, b = _coord(x1, m), _coord(x2, m)
        mid = _mid(x2, 1, m - 1)
        return [
            a == 1 and b == 0,
            a == 1 and b == 1,
            a == 0 and b == 0,
            a == 0 and b == 1 and mid != 0,
            a == 0 and b == 1 and mid == 0 and x1 != 0,
            a == 0 and b == 1 and mid == 0 and x1 == 0,
        ]

    def matrix(p) -> list[list]:
        s33 = p(3, 1, 3) + p(3, 2, 3) + p(3, 3, 3)
        s43 = p(4, 1, 3) + p(4, 2, 3) + p(4, 3, 3)
        s34 = p(3, 1, 4) + p(3, 2, 4) + p(3, 3, 4)
        return [
            [p(3, 3, 3), s43, p(3, 3, 3), p(3, 4, 3), p(2, 4, 3), 0],
            [s34, p(4, 3, 4), p(3, 4, 4), p(3, 3, 4), p(2, 3, 4), 0],
            [p(3, 3, 3), p(4, 4, 3), p(3, 3, 3), s33, p(2, 3, 3), p(1, 3, 3)],
            [p(3, 4, 3), p(4, 3, 3), s33, p(3, 3, 3), p(2, 3, 3), p(1, 3, 3)],
            [p(3, 4, 2), p(4, 3, 2), p(3, 3, 2), p(3, 3, 2), 0, 0],
            [0, 0, p(3, 3, 1), p(3, 3, 1), 0, 0],
        ]

    return (u, w, v), (u, w, v), preds, matrix, (1, m)


def _t4case1(m: int):
    u, v, w = 0, 1, 2

    def preds(x1: int, x2: int) -> list[bool]:
        a, b = _coord(x1, 1), _coord(x1, 2)
        return [
            a == 0 and b == 0,
            a == 0 and b == 1,
            a == 1 and b == 0,
            a == 1 and b == 1,
        ]

    def matrix(p) -> list[list]:
        a = p(3, 3, 3)
        return [[a] * 4 for _ in range(4)]

    return (u, v, w), (u, v, w), preds, matrix, (1, 2)


def _t4case2(m: int):
    u, v, w = 0, 1, 2 | (2 << m)

    def preds(x1: int, x2: int) -> list[bool]:
        a, b, c = _coord(x1, 1), _coord(x1, 2), _coord(x2, 2)
        return [
            a == 0 and b == 0 and c == 1,
            a == 0 and b == 1 and c == 0,
            a == 1 and b == 0 and c == 1,
            a == 1 and b == 1 and c == 0,
        ]

    def matrix(p) -> list[list]:
        a, b = p(3, 3, 3), p(3, 4, 3)
        return [[a, b, a, b], [b, a, b, a], [a, b, a, b], [b, a, b, a]]

    return (u, v, w), (u, v, w), preds, matrix, (1, 2)


def _t4case3(m: int):
    u, v, w = 0, 1 | (1 << m), 3 | (2 << m)

    def preds(x1: int, x2: int) -> list[bool]:
        sig = (_coord(x1, 1), _coord(x1, 2), _coord(x2, 1), _coord(x2, 2))
        return [
            sig == (0, 0, 1, 0),
            sig == (0, 1, 1, 1),
            sig == (1, 0, 0, 1),
            sig == (1, 1, 0, 0),
        ]

    def matrix(p) -> list[list]:
        a, b = p(3, 3, 3), p(3, 4, 3)
        return [[a, b, b, b], [b, a, b, b], [b, b, a, b], [b, b, b, a]]

    return (u, v, w), (u, v, w), preds, matrix, (1, 2)


_CASE_TABLE: dict[str, Callable] = {
    "T3Case1": _t3case1,
    "T3Case2": _t3case2,
    "T4Case1": _t4case1,
    "T4Case2": _t4case2,
    "T4Case3": _t4case3,
}


@dataclass(frozen=True)
class ProofPartition:
    case: str
    m: int
    base: tuple[int, int, int]
    kappa: tuple[int, int, int]
    partition: OrderedPartition
    expected: np.ndarray
    drop: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "m": self.m,
            "base": list(self.base),
            "sizes": list(self.partition.sizes),
            "expected": self.expected.tolist(),
        }


def build_proof_partition(
    m: int, case: str, graph: Optional[DenseGraph] = None
) -> ProofPartition:
    """Classify the common neighborhood of the case's base triple.

    Raises ValueError when some common neighbor matches zero or several
    class predicates, so a returned partition always covers the whole
    common neighborhood exactly once.
    """
    if case not in _CASE_TABLE:
        raise ValueError(f"unknown case: {case}")
    if m < 3:
        raise ValueError("proof partitions need m >= 3")
    g = graph if graph is not None else build_gamma(m)
    base, kappa, preds, matrix, drop = _CASE_TABLE[case](m)
    common = g.adj[base[0]] & g.adj[base[1]] & g.adj[base[2]]
    nclasses = None
    lists: list[list[int]] = []
    rest = common
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        x1, x2 = v & ((1 << m) - 1), v >> m
        hits = preds(x1, x2)
        if nclasses is None:
            nclasses = len(hits)
            lists = [[] for _ in range(nclasses)]
        if sum(hits) != 1:
            raise ValueError(f"vertex {v} matches {sum(hits)} classes")
        lists[hits.index(True)].append(v)
    part = OrderedPartition(tuple(tuple(c) for c in lists))
    consts = expected_constants(m - 2)

    def p(j: int, k: int, i: int) -> int:
        return int(consts[j - 1, k - 1, i - 1])

    expected = np.array(matrix(p), dtype=np.int64)
    return ProofPartition(case, m, base, kappa, part, expected, drop)


def projection_injective(pp: ProofPartition) -> bool:
    """Is the coordinate-dropping projection one-to-one on every class?"""
    for cls in pp.partition.classes:
        imgs = {_project(v, pp.m, pp.drop) for v in cls}
        if len(imgs) != len(cls):
            return False
    return True
