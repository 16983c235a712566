"""Exact linear algebra over GF(2) on bit-packed vectors.

A vector in GF(2)^n is a Python int: bit j of the int is coordinate j,
so the bitstring "1100" parses to the int 3.  Ints cannot carry their
own length, so matrices and subspaces store an explicit column count n
and every routine takes n from there.  "Smallest" or "lexicographically
first" always means smallest under this integer encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .config import LIMITS
from .errors import LimitError

__all__ = [
    "vec",
    "vec_text",
    "dot",
    "GF2Matrix",
    "Subspace",
    "rref",
    "reduce_vector",
    "rank",
    "kernel",
    "solve",
    "orthogonal_complement",
    "min_weight_nonzero",
    "subspaces_of_dim",
    "enumerate_subspaces",
]


def vec(text: str) -> int:
    """Parse a 0/1 string into a vector; the leftmost character is coordinate 0."""
    value = 0
    for j, ch in enumerate(text):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise ValueError(f"bad vector character {ch!r}")
    return value


def vec_text(x: int, n: int) -> str:
    """Inverse of vec for a vector of known length."""
    return "".join("1" if (x >> j) & 1 else "0" for j in range(n))


def dot(x: int, y: int) -> int:
    """Inner product over GF(2)."""
    return (x & y).bit_count() & 1


@dataclass(frozen=True)
class GF2Matrix:
    """A fully specified matrix, one int per row."""

    n: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one column")
        mask = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits outside the declared width")

    @property
    def m(self) -> int:
        return len(self.rows)

    def mul_vec(self, x: int) -> int:
        """Matrix-vector product; bit i of the result is <row_i, x>."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= dot(r, x) << i
        return out

    def transpose(self) -> "GF2Matrix":
        cols = []
        for j in range(self.n):
            c = 0
            for i, r in enumerate(self.rows):
                c |= ((r >> j) & 1) << i
            cols.append(c)
        return GF2Matrix(max(self.m, 1), tuple(cols))


def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span of the given vectors.

    Pivots are the lowest set bits, fixed left to right; each pivot
    coordinate appears in exactly one basis vector.  The result is the
    canonical basis of the subspace, independent of input order.
    """
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v == 0:
            continue
        p = v & -v
        for i, b in enumerate(basis):
            if b & p:
                basis[i] = b ^ v
        basis.append(v)
        basis.sort(key=lambda r: r & -r)
    return tuple(basis)


def reduce_vector(v: int, basis: Iterable[int]) -> int:
    """Reduce v modulo an rref basis; zero iff v lies in the span."""
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def rank(M: GF2Matrix) -> int:
    return len(rref(M.rows))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of GF(2)^n held by its canonical rref basis."""

    n: int
    basis: tuple[int, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[int], n: int) -> "Subspace":
        return cls(n, rref(vectors))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: int) -> bool:
        return reduce_vector(x, self.basis) == 0

    def vectors(self) -> Iterator[int]:
        """All 2^dim member vectors, Gray-code order, starting at 0."""
        cur = 0
        yield cur
        for i in range(1, 1 << self.dim):
            cur ^= self.basis[(i & -i).bit_length() - 1]
            yield cur


def kernel(M: GF2Matrix) -> Subspace:
    """Right kernel {x : Mx = 0}."""
    basis = rref(M.rows)
    pivots = {(b & -b).bit_length() - 1 for b in basis}
    kb = []
    for f in range(M.n):
        if f in pivots:
            continue
        v = 1 << f
        for b in basis:
            if (b >> f) & 1:
                v |= 1 << ((b & -b).bit_length() - 1)
        kb.append(v)
    return Subspace(M.n, rref(kb))


def solve(M: GF2Matrix, b: int) -> int | None:
    """One solution of Mx = b, or None.

    Deterministic: free coordinates (non-pivots of the rref) are set to
    zero, so the answer is canonical for the given system.
    """
    n = M.n
    aug = [row | (((b >> i) & 1) << n) for i, row in enumerate(M.rows)]
    basis = rref(aug)
    x = 0
    for r in basis:
        p = r & -r
        if p == (1 << n):
            return None  # a zero row demanding a one
        if (r >> n) & 1:
            x |= p
    return x


def orthogonal_complement(S: Subspace) -> Subspace:
    """All vectors orthogonal to every member of S."""
    if not S.basis:
        return Subspace(S.n, rref(1 << j for j in range(S.n)))
    return kernel(GF2Matrix(S.n, S.basis))


def min_weight_nonzero(S: Subspace, limit: int = LIMITS.min_weight_dim) -> int | None:
    """Smallest Hamming weight among nonzero members; None for the zero space."""
    if S.dim == 0:
        return None
    if S.dim > limit:
        raise LimitError(f"minimum-weight scan over dimension {S.dim} exceeds {limit}")
    best = S.n + 1
    cur = 0
    for i in range(1, 1 << S.dim):
        cur ^= S.basis[(i & -i).bit_length() - 1]
        w = cur.bit_count()
        if w < best:
            best = w
            if best == 1:
                break
    return best


def subspaces_of_dim(n: int, k: int) -> Iterator[Subspace]:
    """All k-dimensional subspaces of GF(2)^n, one canonical basis each.

    Bases are generated directly in rref: choose pivot columns, then fill
    every position that is right of its pivot and not a pivot column.
    """
    if k == 0:
        yield Subspace(n, ())
        return
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        slots = [
            (i, j)
            for i, p in enumerate(pivots)
            for j in range(p + 1, n)
            if j not in pivot_set
        ]
        base = [1 << p for p in pivots]
        for fill in range(1 << len(slots)):
            rows = list(base)
            for t, (i, j) in enumerate(slots):
                if (fill >> t) & 1:
                    rows[i] |= 1 << j
            yield Subspace(n, tuple(rows))


def enumerate_subspaces(
    n: int, max_dim: int | None = None, limit: int = LIMITS.subspace_n
) -> Iterator[Subspace]:
    """All subspaces of GF(2)^n with dim <= max_dim, dimension ascending."""
    if n > limit:
        raise LimitError(f"subspace enumeration over GF(2)^{n} exceeds n <= {limit}")
    top = n if max_dim is None else min(max_dim, n)
    for k in range(top + 1):
        yield from subspaces_of_dim(n, k)
