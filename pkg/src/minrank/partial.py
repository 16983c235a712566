"""Partial (0,1,*) matrices over GF(2) and their completion ranks.

A partial matrix stores, per row, the mask of fixed ones and the mask of
star positions; the two masks are disjoint.  A completion replaces every
star independently by 0 or 1, so row i of any completion lies in the
coset a_i + span{e_j : j in S_i}.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import LIMITS
from .errors import LimitError
from .gf2 import GF2Matrix, rank, reduce_vector, rref, solve

__all__ = [
    "PartialMatrix",
    "IsolationWitness",
    "canonical_completion",
    "enumerate_completions",
    "min_rank",
    "min_rank_completion",
    "max_rank",
    "star_matching",
    "line_cover_number",
    "stars_independent",
    "max_independent_rows",
    "row_min_rank",
    "col_min_rank",
    "isolation",
    "is_star_monotone",
]


@dataclass(frozen=True)
class PartialMatrix:
    """An m x n matrix with entries 0, 1, or star.

    ones[i] holds the 1 entries of row i, stars[i] the star positions;
    a position in neither mask is a fixed 0.
    """

    n: int
    ones: tuple[int, ...]
    stars: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one column")
        if len(self.ones) != len(self.stars):
            raise ValueError("ones and stars must pair up row by row")
        mask = (1 << self.n) - 1
        for a, s in zip(self.ones, self.stars):
            if a < 0 or s < 0 or (a | s) & ~mask:
                raise ValueError("row has bits outside the declared width")
            if a & s:
                raise ValueError("a position cannot be both fixed and star")

    @property
    def m(self) -> int:
        return len(self.ones)

    @property
    def star_count(self) -> int:
        return sum(s.bit_count() for s in self.stars)

    def row(self, i: int) -> tuple[int, int]:
        return self.ones[i], self.stars[i]

    def transpose(self) -> "PartialMatrix":
        """Columns become rows, stars staying stars."""
        cols_a, cols_s = [], []
        for j in range(self.n):
            a = s = 0
            for i in range(self.m):
                a |= ((self.ones[i] >> j) & 1) << i
                s |= ((self.stars[i] >> j) & 1) << i
            cols_a.append(a)
            cols_s.append(s)
        return PartialMatrix(max(self.m, 1), tuple(cols_a), tuple(cols_s))


@dataclass(frozen=True)
class IsolationWitness:
    """Vectors z_1..z_m certifying an isolation property row by row."""

    vectors: tuple[int, ...]
    strong: bool


def canonical_completion(A: PartialMatrix) -> GF2Matrix:
    """The completion with every star set to 0."""
    return GF2Matrix(A.n, A.ones)


def enumerate_completions(
    A: PartialMatrix, limit: int = LIMITS.stars
) -> Iterator[GF2Matrix]:
    """Yield all 2^(#stars) completions, star positions filled row-major."""
    positions = [
        (i, j) for i in range(A.m) for j in range(A.n) if (A.stars[i] >> j) & 1
    ]
    k = len(positions)
    if k > limit:
        raise LimitError(f"enumerating 2^{k} completions exceeds the {limit}-star cap")
    for fill in range(1 << k):
        rows = list(A.ones)
        for t, (i, j) in enumerate(positions):
            if (fill >> t) & 1:
                rows[i] |= 1 << j
        yield GF2Matrix(A.n, tuple(rows))


# ---------------------------------------------------------------------------
# minimum rank over completions


def _prepare_rows(A: PartialMatrix):
    """Dedupe rows, drop all-star-or-zero rows, sort by star count.

    Rows with no fixed ones always admit the zero completion, which lies
    in every span, so they never force rank.  Returns the worklist plus a
    map from each original row index to its worklist slot (or None).
    """
    slot: dict[tuple[int, int], int] = {}
    origin: list[int | None] = []
    work: list[tuple[int, int]] = []
    for a, s in zip(A.ones, A.stars):
        if a == 0:
            origin.append(None)
            continue
        key = (a, s)
        if key not in slot:
            slot[key] = len(work)
            work.append(key)
        origin.append(slot[key])
    order = sorted(range(len(work)), key=lambda t: work[t][1].bit_count())
    inv = [0] * len(work)
    for pos, t in enumerate(order):
        inv[t] = pos
    ordered = [work[t] for t in order]
    remap = [None if t is None else inv[t] for t in origin]
    return ordered, remap


def _star_basis(s: int, basis: tuple[int, ...]):
    """Rref, with generating star sets, of {e_j mod basis : j in stars}."""
    red: list[tuple[int, int]] = []  # (vector, star subset that generates it)
    for j in range(s.bit_length()):
        if not (s >> j) & 1:
            continue
        v = reduce_vector(1 << j, basis)
        t = 1 << j
        for bv, bt in red:
            if v & (bv & -bv):
                v ^= bv
                t ^= bt
        if v == 0:
            continue
        p = v & -v
        for k, (bv, bt) in enumerate(red):
            if bv & p:
                red[k] = (bv ^ v, bt ^ t)
        red.append((v, t))
        red.sort(key=lambda e: e[0] & -e[0])
    return red


def _insert(basis: tuple[int, ...], v: int) -> tuple[int, ...]:
    # v is already reduced against basis and nonzero
    p = v & -v
    rows = [b ^ v if b & p else b for b in basis]
    rows.append(v)
    rows.sort(key=lambda r: r & -r)
    return tuple(rows)


class _Deadline:
    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.ticks = 0

    def check(self):
        if self.deadline is None:
            return
        self.ticks += 1
        if self.ticks & 1023 == 0 and time.monotonic() > self.deadline:
            raise LimitError("deadline exceeded")


def _complete_within(rows, n: int, target: int, clock: _Deadline):
    """Completions of the worklist spanning at most `target` dimensions.

    Depth-first over rows.  When some completion of the current row
    already lies in the running span we take it and never branch: any
    completion reachable by growing the span is also reachable after
    staying inside it.  Otherwise each branch adjoins one coset
    representative, tried in ascending vector order.
    """
    failed: set = set()

    def go(idx: int, basis: tuple[int, ...]):
        if idx == len(rows):
            return []
        clock.check()
        key = (idx, basis)
        if key in failed:
            return None
        a, s = rows[idx]
        red = _star_basis(s, basis)
        v = reduce_vector(a, basis)
        t = 0
        for bv, bt in red:
            if v & (bv & -bv):
                v ^= bv
                t ^= bt
        if v == 0:
            rest = go(idx + 1, basis)
            if rest is not None:
                return [a ^ t] + rest
            failed.add(key)
            return None
        if len(basis) >= target:
            failed.add(key)
            return None
        ra = reduce_vector(a, basis)
        span = [(0, 0)]
        for bv, bt in red:
            span += [(u ^ bv, ut ^ bt) for u, ut in span]
        for u, ut in sorted((ra ^ u, ut) for u, ut in span):
            rest = go(idx + 1, _insert(basis, u))
            if rest is not None:
                return [a ^ ut] + rest
        failed.add(key)
        return None

    return go(0, ())


def min_rank_completion(
    A: PartialMatrix, deadline: float | None = None
) -> tuple[int, GF2Matrix]:
    """Minimum rank over all completions, with a completion attaining it.

    Exact: iterative deepening on the target rank, so the first target
    that admits a completion is the minimum.
    """
    rows, remap = _prepare_rows(A)
    clock = _Deadline(deadline)
    upper = min(len(rows), A.n)
    for target in range(upper + 1):
        found = _complete_within(rows, A.n, target, clock)
        if found is None:
            continue
        full = [0 if t is None else found[t] for t in remap]
        return target, GF2Matrix(A.n, tuple(full))
    raise AssertionError("unreachable: the canonical completion always fits")


def min_rank(A: PartialMatrix, deadline: float | None = None) -> int:
    """Minimum rank over all completions."""
    return min_rank_completion(A, deadline)[0]


# ---------------------------------------------------------------------------
# maximum rank and star covers


def max_rank(A: PartialMatrix) -> int:
    """Maximum rank over all completions.

    Uses the line-cover identity: the maximum equals the minimum over
    line sets X covering all stars of rank(A with X removed) + |X|.
    Covers are scanned from the smaller side of the matrix, which caps
    the work at 2^min(m, n) rank computations.
    """
    B = A if A.m <= A.n else A.transpose()
    if B.m <= 13:
        return _max_rank_cover(B)
    if A.star_count <= LIMITS.stars:
        return max(rank(M) for M in enumerate_completions(A))
    raise LimitError("matrix too large for either exact max-rank strategy")


def _max_rank_cover(B: PartialMatrix) -> int:
    best = min(B.m, B.n)
    full = (1 << B.m) - 1
    for removed in range(1 << B.m):
        cost = removed.bit_count()
        if cost >= best:
            continue
        kept = full & ~removed
        forced = 0
        for i in range(B.m):
            if (kept >> i) & 1:
                forced |= B.stars[i]
        cost += forced.bit_count()
        if cost >= best:
            continue
        rows = [B.ones[i] & ~forced for i in range(B.m) if (kept >> i) & 1]
        r = len(rref(rows))
        if cost + r < best:
            best = cost + r
    return best


def star_matching(A: PartialMatrix) -> tuple[tuple[int, int], ...]:
    """A maximum matching of star positions, as (row, column) pairs.

    Augmenting-path search; rows are tried in order and columns in
    ascending index, so the result is deterministic.
    """
    match_col: dict[int, int] = {}

    def try_row(i: int, seen: set[int]) -> bool:
        for j in range(A.n):
            if not (A.stars[i] >> j) & 1 or j in seen:
                continue
            seen.add(j)
            if j not in match_col or try_row(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    for i in range(A.m):
        try_row(i, set())
    return tuple(sorted((i, j) for j, i in match_col.items()))


def line_cover_number(A: PartialMatrix) -> int:
    """Minimum number of lines (rows or columns) covering every star.

    Equals the maximum star matching by Konig's theorem.
    """
    return len(star_matching(A))


# ---------------------------------------------------------------------------
# independence of (0,1,*) vectors


def stars_independent(
    rows: Sequence[tuple[int, int]], limit: int = LIMITS.independent_vectors
) -> bool:
    """Whether a set of (0,1,*) vectors is independent.

    A set is dependent iff some nonempty subset can be completed to sum
    to zero, i.e. the xor of its fixed parts vanishes outside the union
    of its star masks.
    """
    k = len(rows)
    if k > limit:
        raise LimitError(f"independence check over {k} vectors exceeds {limit}")

    def dependent(idx: int, x: int, o: int, picked: bool) -> bool:
        if idx == k:
            return picked and x & ~o == 0
        if dependent(idx + 1, x, o, picked):
            return True
        a, s = rows[idx]
        return dependent(idx + 1, x ^ a, o | s, True)

    return not dependent(0, 0, 0, False)


def max_independent_rows(rows: Sequence[tuple[int, int]]) -> int:
    """Size of the largest independent subset of (0,1,*) vectors.

    Depth-first over the rows in order, keeping every subset sum of the
    chosen set so each candidate extension is checked incrementally.
    """
    k = len(rows)
    best = 0

    def extend(start: int, sums: list[tuple[int, int]], size: int):
        nonlocal best
        if size > best:
            best = size
        for i in range(start, k):
            if size + (k - i) <= best:
                break
            a, s = rows[i]
            fresh = []
            ok = True
            for x, o in sums:
                nx, no = x ^ a, o | s
                if nx & ~no == 0:
                    ok = False
                    break
                fresh.append((nx, no))
            if ok:
                extend(i + 1, sums + fresh, size + 1)

    extend(0, [(0, 0)], 0)
    return best


def _dedupe(rows: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    # duplicate (0,1,*) vectors can never both sit in an independent set
    seen = set()
    out = []
    for r in rows:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def row_min_rank(A: PartialMatrix, limit: int = LIMITS.subset_rows) -> int:
    """Largest number of independent rows; a lower bound for min_rank."""
    rows = _dedupe(list(zip(A.ones, A.stars)))
    if len(rows) > limit:
        raise LimitError(f"row search over {len(rows)} distinct rows exceeds {limit}")
    return max_independent_rows(rows)


def col_min_rank(A: PartialMatrix, limit: int = LIMITS.subset_rows) -> int:
    """Largest number of independent columns; a lower bound for min_rank."""
    return row_min_rank(A.transpose(), limit)


# ---------------------------------------------------------------------------
# isolation certificates


def isolation(A: PartialMatrix, strong: bool = False) -> IsolationWitness | None:
    """Vectors z_i with <a_i, z_i> = 1, <a_j, z_i> = 0 for j < i, and
    z_i zero on the stars of row i (of rows j <= i when strong).

    Existence forces every completion to have rank m.  Returns None when
    some row admits no such vector.
    """
    zs = []
    for i in range(A.m):
        smask = A.stars[i]
        if strong:
            for j in range(i):
                smask |= A.stars[j]
        rows = [1 << j for j in range(A.n) if (smask >> j) & 1]
        rows += [A.ones[j] for j in range(i + 1)]
        b = 1 << (len(rows) - 1)
        z = solve(GF2Matrix(A.n, tuple(rows)), b)
        if z is None:
            return None
        zs.append(z)
    return IsolationWitness(tuple(zs), strong)


def is_star_monotone(A: PartialMatrix) -> bool:
    """Whether the star masks can be ordered into a chain under inclusion."""
    masks = sorted(A.stars, key=lambda s: s.bit_count())
    return all(a & ~b == 0 for a, b in zip(masks, masks[1:]))
