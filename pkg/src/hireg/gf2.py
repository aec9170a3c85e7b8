"""Linear algebra over GF(2) with bit-packed vectors and matrices.

Vectors of length <= 64 are stored as machine integers (bit i = coordinate
i, 0-based).  A vector over GF(2)^{2m} is split into an x-block (bits
0..m-1) and a y-block (bits m..2m-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

MAX_LEN = 64


class FormKind(Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"


def _check_len(n: int) -> None:
    if not 0 <= n <= MAX_LEN:
        raise ValueError(f"vector length {n} out of range 0..{MAX_LEN}")


@dataclass(frozen=True)
class BitVector:
    """Immutable GF(2) vector packed into a machine word."""

    length: int
    bits: int

    def __post_init__(self):
        _check_len(self.length)
        if self.bits >> self.length:
            raise ValueError("bits set above vector length")

    @classmethod
    def zero(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def unit(cls, i: int, n: int) -> "BitVector":
        """Standard basis vector e_{i+1} (0-based index i)."""
        if not 0 <= i < n:
            raise ValueError("unit index out of range")
        return cls(n, 1 << i)

    @classmethod
    def from_bits(cls, coords) -> "BitVector":
        coords = list(coords)
        bits = 0
        for i, c in enumerate(coords):
            if c & 1:
                bits |= 1 << i
        return cls(len(coords), bits)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]


@dataclass(frozen=True)
class BitMatrix:
    """GF(2) matrix; each row packed into an integer."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        _check_len(self.ncols)
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            if r >> self.ncols:
                raise ValueError("bits set beyond column count")

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "BitMatrix":
        m = n if m is None else m
        return cls(n, m, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "BitMatrix":
        rows = [r.bits if isinstance(r, BitVector) else int(r) for r in rows]
        if ncols is None:
            ncols = max((r.bit_length() for r in rows), default=0)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_lists(cls, entries) -> "BitMatrix":
        rows = [BitVector.from_bits(row).bits for row in entries]
        ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column_bits(self, j: int) -> int:
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return bits

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def has_zero_diagonal(self) -> bool:
        return all((r >> i) & 1 == 0 for i, r in enumerate(self.rows))

    def mat_vec(self, v: BitVector | int) -> BitVector:
        vb = v.bits if isinstance(v, BitVector) else int(v)
        if isinstance(v, BitVector) and v.length != self.ncols:
            raise ValueError("dimension mismatch")
        out = 0
        for i, r in enumerate(self.rows):
            if (r & vb).bit_count() & 1:
                out |= 1 << i
        return BitVector(self.nrows, out)

    def mat_mul(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        # row i of product = xor of rows of `other` selected by bits of row i
        out = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                j = (rr & -rr).bit_length() - 1
                acc ^= other.rows[j]
                rr &= rr - 1
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def __matmul__(self, other):
        if isinstance(other, BitMatrix):
            return self.mat_mul(other)
        return self.mat_vec(other)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            rr = r
            while rr:
                j = (rr & -rr).bit_length() - 1
                out[j] |= 1 << i
                rr &= rr - 1
        return BitMatrix(self.ncols, self.nrows, tuple(out))

    def inverse(self) -> "BitMatrix | None":
        """Gauss-Jordan inverse; None if singular.  Pivot = lowest row index."""
        if self.nrows != self.ncols:
            raise ValueError("inverse requires a square matrix")
        n = self.nrows
        a = list(self.rows)
        b = [1 << i for i in range(n)]
        for col in range(n):
            pivot = None
            for i in range(col, n):
                if (a[i] >> col) & 1:
                    pivot = i
                    break
            if pivot is None:
                return None
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
            for i in range(n):
                if i != col and (a[i] >> col) & 1:
                    a[i] ^= a[col]
                    b[i] ^= b[col]
        return BitMatrix(n, n, tuple(b))

    def rank(self) -> int:
        a = list(self.rows)
        rank = 0
        for col in range(self.ncols):
            pivot = None
            for i in range(rank, self.nrows):
                if (a[i] >> col) & 1:
                    pivot = i
                    break
            if pivot is None:
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            for i in range(self.nrows):
                if i != rank and (a[i] >> col) & 1:
                    a[i] ^= a[rank]
            rank += 1
        return rank


# --- quadratic and bilinear forms ------------------------------------------


def _split(bits: int, m: int) -> tuple[int, int]:
    return bits & ((1 << m) - 1), bits >> m


def quadratic_form_bits(kind: FormKind, m: int, bits: int) -> int:
    """Value of the fixed quadratic form on a packed vector of GF(2)^{2m}."""
    x, y = _split(bits, m)
    if kind is FormKind.HYPERBOLIC:
        return (x & y).bit_count() & 1
    # elliptic representative: sum_{i<m} x_i y_i + x_m^2 + x_m y_m + y_m^2
    low = (1 << (m - 1)) - 1
    xm = (x >> (m - 1)) & 1
    ym = (y >> (m - 1)) & 1
    return ((x & y & low).bit_count() + xm + xm * ym + ym) & 1


def quadratic_form(kind: FormKind, m: int, v: BitVector) -> int:
    if m < 2:
        raise ValueError("m must be at least 2")
    if v.length != 2 * m:
        raise ValueError(f"expected vector of length {2*m}, got {v.length}")
    return quadratic_form_bits(kind, m, v.bits)


def bilinear_form_bits(kind: FormKind, m: int, x: int, y: int) -> int:
    q = quadratic_form_bits
    return q(kind, m, x ^ y) ^ q(kind, m, x) ^ q(kind, m, y)


def bilinear_form(kind: FormKind, m: int, x: BitVector, y: BitVector) -> int:
    if x.length != 2 * m or y.length != 2 * m:
        raise ValueError("length mismatch")
    return bilinear_form_bits(kind, m, x.bits, y.bits)


def in_singular_subspace(kind: FormKind, m: int, bits: int) -> bool:
    """Membership in the fixed maximal singular subspace of the form."""
    x, y = _split(bits, m)
    if kind is FormKind.HYPERBOLIC:
        return y == 0
    return y == 0 and (x >> (m - 1)) & 1 == 0


def solve_symmetric_zero_diag(u: BitVector, v: BitVector) -> BitMatrix | None:
    """Symmetric zero-diagonal S with S*u = v, or None if impossible.

    Solvable exactly when u = v = 0, or u != 0 and u.v = 0.  The matrix is
    built as a graph on the index set: a clique on the positions where both
    u and v are 1, plus one edge into the support of u from each position
    where only v is 1.
    """
    if u.length != v.length:
        raise ValueError("length mismatch")
    m = u.length
    if u.is_zero():
        return BitMatrix.zero(m) if v.is_zero() else None
    if u.dot(v):
        return None
    i1 = [i for i in range(m) if u[i]]
    i11 = [i for i in i1 if v[i]]
    i01 = [i for i in range(m) if not u[i] and v[i]]
    rows = [0] * m
    for a in i11:
        for b in i11:
            if a != b:
                rows[a] |= 1 << b
    anchor = i1[0]
    for j in i01:
        rows[j] |= 1 << anchor
        rows[anchor] |= 1 << j
    s = BitMatrix(m, m, tuple(rows))
    assert s.mat_vec(u).bits == v.bits
    return s
