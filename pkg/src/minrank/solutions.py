"""Forbidden sets and maximum solution sizes for partial matrices.

For a partial matrix A the forbidden set holds every vector that some
row maps to 1 no matter how the stars are filled: x is forbidden iff
for some row i, x vanishes on the stars of row i and <a_i, x> = 1.
A set L of vectors is a solution iff the difference of any two members
is never forbidden, which makes solutions exactly the independent sets
of the Cayley graph on GF(2)^n generated by the forbidden set.

Sets of vectors over GF(2)^n appear here in two shapes: as Python sets
of ints, and as occupancy bitmaps with bit x marking vector x.  Bitmaps
make the Cayley-graph work cheap: translating a set by x is a fixed
permutation of bitmap blocks, and neighbourhood queries are single ANDs.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .config import LIMITS
from .errors import InternalError, LimitError, OperatorConflict
from .gf2 import (
    GF2Matrix,
    Subspace,
    dot,
    kernel,
    min_weight_nonzero,
    orthogonal_complement,
    rank,
    subspaces_of_dim,
)
from .partial import (
    PartialMatrix,
    canonical_completion,
    enumerate_completions,
    min_rank,
    min_rank_completion,
)

__all__ = [
    "ForbiddenSet",
    "SolutionSet",
    "ConsistentOperator",
    "EpsilonRecord",
    "HullVerdict",
    "forbidden_set",
    "is_solution",
    "opt_exact",
    "brute_force_opt_tiny",
    "lin_exact",
    "separating_min_rank",
    "reconstruct_operator",
    "codistance",
    "linear_hull_check",
    "conjecture_epsilon",
]


# ---------------------------------------------------------------------------
# indicator bitmaps over all 2^n vectors


def _parity_bitmap(a: int, n: int) -> int:
    """Bitmap with bit x = <a, x>, built by doubling over coordinates."""
    bm, size = 0, 1
    for j in range(n):
        mask = (1 << size) - 1
        half = bm ^ mask if (a >> j) & 1 else bm
        bm |= half << size
        size <<= 1
    return bm


def _vanishes_bitmap(s: int, n: int) -> int:
    """Bitmap with bit x = 1 iff x & s == 0."""
    bm, size = 1, 1
    for j in range(n):
        if not (s >> j) & 1:
            bm |= bm << size
        size <<= 1
    return bm


_half_masks: dict[tuple[int, int], int] = {}


def _half_mask(n: int, j: int) -> int:
    # bitmap of the vectors whose coordinate j is zero
    key = (n, j)
    got = _half_masks.get(key)
    if got is None:
        got = _half_masks[key] = _vanishes_bitmap(1 << j, n)
    return got


def xor_translate(bm: int, x: int, n: int) -> int:
    """Bitmap of {v ^ x : v in bm}, as coordinate-wise block swaps."""
    j = 0
    while x:
        if x & 1:
            sh = 1 << j
            zero = _half_mask(n, j)
            bm = ((bm & zero) << sh) | ((bm >> sh) & zero)
        x >>= 1
        j += 1
    return bm


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


# ---------------------------------------------------------------------------
# forbidden sets


@dataclass(frozen=True)
class ForbiddenSet:
    """The union over rows of {x : x vanishes on S_i and <a_i, x> = 1}.

    bitmap is an occupancy bitmap over all 2^n vectors, materialized on
    construction when n is small enough; contains() falls back to the
    row predicate otherwise.
    """

    n: int
    rows: tuple[tuple[int, int], ...]
    bitmap: int | None

    def contains(self, x: int) -> bool:
        if self.bitmap is not None:
            return bool((self.bitmap >> x) & 1)
        return any(x & s == 0 and dot(a, x) == 1 for a, s in self.rows)

    @property
    def size(self) -> int:
        if self.bitmap is None:
            raise LimitError("forbidden set too wide to count explicitly")
        return self.bitmap.bit_count()

    def vectors(self) -> Iterable[int]:
        if self.bitmap is None:
            raise LimitError("forbidden set too wide to enumerate")
        return _bits(self.bitmap)


def forbidden_set(A: PartialMatrix, bitmap_limit: int = LIMITS.ka_bitmap_n) -> ForbiddenSet:
    """Build the forbidden set of A, with a bitmap when n <= bitmap_limit."""
    rows = tuple(zip(A.ones, A.stars))
    if A.n > bitmap_limit:
        return ForbiddenSet(A.n, rows, None)
    bm = 0
    for a, s in rows:
        if a == 0:
            continue
        bm |= _vanishes_bitmap(s, A.n) & _parity_bitmap(a, A.n)
    return ForbiddenSet(A.n, rows, bm)


# ---------------------------------------------------------------------------
# solution sets


@dataclass(frozen=True)
class SolutionSet:
    """A set of vectors proposed as a solution for some partial matrix."""

    n: int
    members: frozenset[int]

    @classmethod
    def of(cls, vectors: Iterable[int], n: int) -> "SolutionSet":
        return cls(n, frozenset(vectors))

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def is_solution(A: PartialMatrix, L: SolutionSet | Iterable[int]) -> bool:
    """Whether no two members of L differ by a forbidden vector."""
    members = L.members if isinstance(L, SolutionSet) else frozenset(L)
    F = forbidden_set(A)
    if F.bitmap is not None:
        lbm = 0
        for x in members:
            lbm |= 1 << x
        return all(xor_translate(F.bitmap, x, A.n) & lbm == 0 for x in members)
    ms = sorted(members)
    return not any(
        F.contains(x ^ y) for i, x in enumerate(ms) for y in ms[i + 1 :]
    )


# ---------------------------------------------------------------------------
# exact maximum solution size


def _drop_unused_columns(A: PartialMatrix) -> tuple[PartialMatrix, list[int], list[int]]:
    """Split off columns that no row fixes or stars.

    Such a coordinate never matters to the forbidden set, so the optimum
    factors: every solution of the core can be crossed with all values
    of the unused coordinates.
    """
    used = 0
    for a, s in zip(A.ones, A.stars):
        used |= a | s
    kept = [j for j in range(A.n) if (used >> j) & 1]
    dropped = [j for j in range(A.n) if not (used >> j) & 1]
    if not dropped or not kept:
        return A, list(range(A.n)), []
    packed_a, packed_s = [], []
    for a, s in zip(A.ones, A.stars):
        pa = ps = 0
        for t, j in enumerate(kept):
            pa |= ((a >> j) & 1) << t
            ps |= ((s >> j) & 1) << t
        packed_a.append(pa)
        packed_s.append(ps)
    core = PartialMatrix(len(kept), tuple(packed_a), tuple(packed_s))
    return core, kept, dropped


class _SearchBudget(Exception):
    """Internal: a bounded search phase ran out of its node budget."""


def _spread(w: int, positions: list[int]) -> int:
    x = 0
    for t, j in enumerate(positions):
        if (w >> t) & 1:
            x |= 1 << j
    return x


class _OptSearch:
    """Branch and bound for maximum independent sets in the Cayley graph.

    Vertex 0 is fixed into the solution (solutions translate, so some
    optimum contains 0).  Candidates are kept as an occupancy bitmap;
    choosing x deletes the translate x ^ K from the candidates.  The
    basic bound |chosen| + |candidates| is strengthened by three
    admissible relaxations:

    * per-row bound: members falling in one projection class of a row's
      star set must agree on their parity against the row, so each class
      contributes the larger parity side only;
    * coset bound: for a subspace U inside K + {0}, every U-coset is a
      clique, so candidates touch at most (touched cosets) further picks;
    * clique bound: for a clique C through 0, translates of C tile the
      graph fractionally, giving |touched| / |C|.

    All tie-breaking is by ascending vector index, so the search and its
    witness are deterministic.
    """

    def __init__(self, A: PartialMatrix, deadline: float | None, budget: int | None = None):
        self.A = A
        self.n = A.n
        self.N = 1 << A.n
        self.full = (1 << self.N) - 1
        self.deadline = deadline
        self.budget = budget
        self.ticks = 0
        F = forbidden_set(A)
        assert F.bitmap is not None
        self.K = F.bitmap
        self.best = 0
        self.best_members: list[int] = [0]
        self.chosen: list[int] = [0]
        self._prepare_row_bounds()
        self._prepare_cliques()

    # -- setup ------------------------------------------------------------

    def _prepare_row_bounds(self):
        rows = []
        seen = set()
        for a, s in zip(self.A.ones, self.A.stars):
            k = s.bit_count()
            if a == 0 or k == 0 or k > 8 or (a, s) in seen:
                continue
            seen.add((a, s))
            parity = _parity_bitmap(a, self.n)
            classes = [self.full]
            for j in _bits(s):
                zero = _half_mask(self.n, j)
                one = self.full ^ zero
                classes = [c & zero for c in classes] + [c & one for c in classes]
            rows.append((parity, classes))
        # fewer classes first: cheaper to evaluate and often tighter
        rows.sort(key=lambda e: len(e[1]))
        self.bound_rows = rows

    def _prepare_cliques(self):
        # Largest subspace U with U \ {0} inside K: every coset of U is a
        # clique, so solutions pick at most one vector per coset.  The
        # search enumerates each candidate subspace once, through its
        # greedy basis chain: extensions scan K ascending and must be the
        # minimum of their coset.  A node cap keeps degenerate forbidden
        # sets cheap; any subspace found is a valid bound regardless.
        K = self.K
        elems = list(_bits(K))
        best = [0]
        budget = [60000]

        def extend(start: int, span_list: list[int]):
            if len(span_list) > len(best):
                best[:] = span_list
            for idx in range(start, len(elems)):
                if budget[0] <= 0:
                    return
                budget[0] -= 1
                e = elems[idx]
                ok = True
                for s in span_list:
                    if s == 0:
                        continue
                    t = e ^ s
                    if t < e or not (K >> t) & 1:
                        ok = False
                        break
                if ok:
                    extend(idx + 1, span_list + [e ^ s for s in span_list])

        extend(0, [0])
        self.coset_U = best if len(best) > 1 else None

        # greedy clique through 0; need not be a subspace, so it can beat
        # the coset bound on very dense forbidden sets
        C = [0]
        scanned = 0
        for x in elems:
            if len(C) >= 64 or scanned >= 4096:
                break
            scanned += 1
            if all((K >> (x ^ c)) & 1 for c in C if c != 0):
                C.append(x)
        self.clique_C = C if len(C) > 2 else None

    # -- bounds -----------------------------------------------------------

    def _strong_bound(self, cand: int, needed: int) -> int:
        """An upper bound on the independent vertices inside cand.

        Stops early once some bound drops below `needed`, since the
        caller only uses the value to prune.
        """
        bound = cand.bit_count()
        for parity, classes in self.bound_rows:
            total = 0
            for cls in classes:
                inside = cand & cls
                if inside == 0:
                    continue
                odd = (inside & parity).bit_count()
                total += max(odd, inside.bit_count() - odd)
                if total >= bound:
                    break
            if total < bound:
                bound = total
                if bound < needed:
                    return bound
        if self.coset_U is not None:
            touched = cand
            for u in self.coset_U[1:]:
                touched |= xor_translate(cand, u, self.n)
            b = touched.bit_count() // len(self.coset_U)
            if b < bound:
                bound = b
                if bound < needed:
                    return bound
        if self.clique_C is not None:
            touched = cand
            for c in self.clique_C[1:]:
                touched |= xor_translate(cand, c, self.n)
            b = touched.bit_count() // len(self.clique_C)
            if b < bound:
                bound = b
        return bound

    def _tick(self):
        self.ticks += 1
        if self.budget is not None and self.ticks > self.budget:
            raise _SearchBudget
        if (
            self.deadline is not None
            and self.ticks & 255 == 0
            and time.monotonic() > self.deadline
        ):
            raise LimitError("deadline exceeded")

    # -- search -----------------------------------------------------------

    def seed(self, members: Iterable[int]):
        """Adopt a known solution as the incumbent if it improves it."""
        ms = sorted(set(members) | {0})
        if len(ms) > self.best:
            self.best = len(ms)
            self.best_members = ms

    def greedy_seed(self, cand: int):
        members = [0]
        while cand:
            x = (cand & -cand).bit_length() - 1
            members.append(x)
            cand &= ~xor_translate(self.K, x, self.n)
            cand &= ~(1 << x)
        self.seed(members)

    def run(self):
        cand = self.full & ~self.K & ~1
        self.greedy_seed(cand)
        self._node(cand, 1)
        return self.best, self.best_members

    def _node(self, cand: int, count: int):
        self._tick()
        added = 0
        stale: int | None = None
        stale_at = 0
        while True:
            if cand == 0:
                if count > self.best:
                    self.best = count
                    self.best_members = list(self.chosen)
                break
            pc = cand.bit_count()
            ub = pc if stale is None else min(pc, stale)
            if count + ub <= self.best:
                break
            if stale is None or pc <= stale_at - 8:
                stale = self._strong_bound(cand, self.best - count)
                stale_at = pc
                if count + min(pc, stale) <= self.best:
                    break
            low = cand & -cand
            x = low.bit_length() - 1
            nbrs = xor_translate(self.K, x, self.n) & cand
            if nbrs == 0:
                # no conflicts left: taking x is never worse
                self.chosen.append(x)
                added += 1
                cand ^= low
                count += 1
                continue
            self.chosen.append(x)
            self._node(cand & ~nbrs & ~low, count + 1)
            self.chosen.pop()
            cand ^= low
        if added:
            del self.chosen[-added:]


def _pattern_classes(a: int, s: int, n: int) -> tuple[int, list[tuple[int, int]]]:
    """Split GF(2)^n by the star pattern of one row.

    Returns the row's parity bitmap and, for every pattern p over the
    star positions, the pair of bitmaps holding the vectors of that
    pattern with odd and even parity against the row.
    """
    parity = _parity_bitmap(a, n)
    full = (1 << (1 << n)) - 1
    classes = [full]
    for j in _bits(s):
        zero = _half_mask(n, j)
        one = full ^ zero
        classes = [c & zero for c in classes] + [c & one for c in classes]
    return parity, [(c & parity, c & ~parity) for c in classes]


def _pair_choice_max(
    cells: list[tuple[int, int, list[list[int]]]],
    best: int,
    tick,
) -> tuple[int, list[int] | None, list[int] | None]:
    """Maximum joint count over the side choices of two remaining rows.

    Each cell (ia, ib, m2) counts surviving vectors by their parity
    against row a and row b; choosing a side per pattern keeps one
    parity per class.  Branch and bound over the choices, pruned with
    two relaxations kept incrementally: fixing consistency per b-class
    while letting every cell pick its own a-side, and the transpose.
    Returns the best total above `best` with the winning choices, or
    (best, None, None) when nothing beats it.
    """
    na = max((ia for ia, _, _ in cells), default=-1) + 1
    nb = max((ib for _, ib, _ in cells), default=-1) + 1
    cells_of_a: list[list[tuple[int, list[list[int]]]]] = [[] for _ in range(na)]
    cells_of_b: list[list[tuple[int, list[list[int]]]]] = [[] for _ in range(nb)]
    for ia, ib, m2 in cells:
        cells_of_a[ia].append((ib, m2))
        cells_of_b[ib].append((ia, m2))
    xa = [-1] * na
    yb = [-1] * nb
    # sb[ib][y]: count with y chosen for ib, open a-sides taken at their max
    sb = [[0, 0] for _ in range(nb)]
    sa = [[0, 0] for _ in range(na)]
    for ia, ib, m2 in cells:
        for y in (0, 1):
            sb[ib][y] += max(m2[0][y], m2[1][y])
        for x in (0, 1):
            sa[ia][x] += max(m2[x][0], m2[x][1])
    contrib_b = [max(v[0], v[1]) for v in sb]
    contrib_a = [max(v[0], v[1]) for v in sa]
    bound_a = sum(contrib_a)
    bound_b = sum(contrib_b)
    state = [bound_a, bound_b, best]
    found: list[list[int] | None] = [None, None]

    def set_x(ia: int, x: int):
        undo = []
        da = sa[ia][x] - contrib_a[ia]
        undo.append((0, ia, contrib_a[ia]))
        contrib_a[ia] = sa[ia][x]
        db = 0
        for ib, m2 in cells_of_a[ia]:
            y = yb[ib]
            old = contrib_b[ib]
            if y >= 0:
                d = m2[x][y] - max(m2[0][y], m2[1][y])
                sb[ib][y] += d
                contrib_b[ib] = sb[ib][y]
                undo.append((1, ib, y, d, old))
            else:
                d0 = m2[x][0] - max(m2[0][0], m2[1][0])
                d1 = m2[x][1] - max(m2[0][1], m2[1][1])
                sb[ib][0] += d0
                sb[ib][1] += d1
                contrib_b[ib] = max(sb[ib][0], sb[ib][1])
                undo.append((2, ib, d0, d1, old))
            db += contrib_b[ib] - old
        xa[ia] = x
        state[0] += da
        state[1] += db
        return undo, da, db

    def unset_x(ia: int, undo, da: int, db: int):
        xa[ia] = -1
        for rec in reversed(undo):
            if rec[0] == 0:
                contrib_a[rec[1]] = rec[2]
            elif rec[0] == 1:
                _, ib, y, d, old = rec
                sb[ib][y] -= d
                contrib_b[ib] = old
            else:
                _, ib, d0, d1, old = rec
                sb[ib][0] -= d0
                sb[ib][1] -= d1
                contrib_b[ib] = old
        state[0] -= da
        state[1] -= db

    def set_y(ib: int, y: int):
        undo = []
        db = sb[ib][y] - contrib_b[ib]
        undo.append((0, ib, contrib_b[ib]))
        contrib_b[ib] = sb[ib][y]
        da = 0
        for ia, m2 in cells_of_b[ib]:
            x = xa[ia]
            old = contrib_a[ia]
            if x >= 0:
                d = m2[x][y] - max(m2[x][0], m2[x][1])
                sa[ia][x] += d
                contrib_a[ia] = sa[ia][x]
                undo.append((1, ia, x, d, old))
            else:
                d0 = m2[0][y] - max(m2[0][0], m2[0][1])
                d1 = m2[1][y] - max(m2[1][0], m2[1][1])
                sa[ia][0] += d0
                sa[ia][1] += d1
                contrib_a[ia] = max(sa[ia][0], sa[ia][1])
                undo.append((2, ia, d0, d1, old))
            da += contrib_a[ia] - old
        yb[ib] = y
        state[0] += da
        state[1] += db
        return undo, da, db

    def unset_y(ib: int, undo, da: int, db: int):
        yb[ib] = -1
        for rec in reversed(undo):
            if rec[0] == 0:
                contrib_b[rec[1]] = rec[2]
            elif rec[0] == 1:
                _, ia, x, d, old = rec
                sa[ia][x] -= d
                contrib_a[ia] = old
            else:
                _, ia, d0, d1, old = rec
                sa[ia][0] -= d0
                sa[ia][1] -= d1
                contrib_a[ia] = old
        state[0] -= da
        state[1] -= db

    def slack_a(ia: int) -> int:
        t = 0
        for _, m2 in cells_of_a[ia]:
            for y in (0, 1):
                t += max(m2[0][y], m2[1][y]) - min(m2[0][y], m2[1][y])
        return t

    def slack_b(ib: int) -> int:
        t = 0
        for _, m2 in cells_of_b[ib]:
            for x in (0, 1):
                t += max(m2[x][0], m2[x][1]) - min(m2[x][0], m2[x][1])
        return t

    ranked = [("a", i, slack_a(i)) for i in range(na)]
    ranked += [("b", i, slack_b(i)) for i in range(nb)]
    order = [(side, i) for side, i, sl in sorted(ranked, key=lambda v: -v[2]) if sl > 0]

    def dive(t: int):
        tick()
        b = state[0] if state[0] < state[1] else state[1]
        if b <= state[2]:
            return
        if t == len(order):
            state[2] = b
            found[0] = list(xa)
            found[1] = list(yb)
            return
        side, i = order[t]
        if side == "a":
            for x in (0, 1):
                undo, da, db = set_x(i, x)
                dive(t + 1)
                unset_x(i, undo, da, db)
        else:
            for y in (0, 1):
                undo, da, db = set_y(i, y)
                dive(t + 1)
                unset_y(i, undo, da, db)

    dive(0)
    return state[2], found[0], found[1]


class _ParityChoiceSearch:
    """Exact solution maximum by branching on per-row parity choices.

    Two members whose difference vanishes on a row's stars must agree on
    that row's parity, so a set is a solution iff, for every row, the
    members of each star-pattern class share one parity.  The search
    assigns a kept parity side per class, row by row, pruning with the
    per-row sums of the larger sides.  Killing a side of class k never
    changes later classes of the same row, so within one row the bound
    updates in constant time from a precomputed suffix.  The last row
    needs no branching (take the larger side of each class), and the
    last two rows are finished together by _pair_choice_max on their
    joint pattern cells.

    Complements _OptSearch: this engine shines when rows have few stars
    (few, large classes), which is where vertex branching drowns in
    near-ties; it degrades when some row has many stars, which is where
    vertex branching is easy.  Only built when every row is thin.
    """

    def __init__(self, A: PartialMatrix, deadline: float | None, budget: int | None = None):
        self.A = A
        self.n = A.n
        self.N = 1 << A.n
        self.full = (1 << self.N) - 1
        self.deadline = deadline
        self.budget = budget
        self.ticks = 0
        F = forbidden_set(A)
        assert F.bitmap is not None
        self.K = F.bitmap
        rows = []
        seen = set()
        for a, s in zip(A.ones, A.stars):
            if a == 0 or (a, s) in seen:
                continue
            seen.add((a, s))
            parity, classes = _pattern_classes(a, s, self.n)
            rows.append((a, s, classes))
        rows.sort(key=lambda r: len(r[2]))
        self.rows = rows
        self.best = 0
        self.best_mask = 0

    def seed(self, members: Iterable[int]):
        mask = 0
        for v in members:
            mask |= 1 << v
        if mask.bit_count() > self.best:
            self.best = mask.bit_count()
            self.best_mask = mask

    def _tick(self):
        self.ticks += 1
        if self.budget is not None and self.ticks > self.budget:
            raise _SearchBudget
        if (
            self.deadline is not None
            and self.ticks & 255 == 0
            and time.monotonic() > self.deadline
        ):
            raise LimitError("deadline exceeded")

    def _row_sum(self, alive: int, classes, cap: int) -> int:
        total = 0
        for om, em in classes:
            odd = (alive & om).bit_count()
            even = (alive & em).bit_count()
            total += odd if odd > even else even
            if total >= cap:
                return total
        return total

    def _finish_one_row(self, alive: int, classes):
        total = 0
        mask = 0
        for om, em in classes:
            odd = alive & om
            even = alive & em
            oc, ec = odd.bit_count(), even.bit_count()
            if oc > ec:
                total += oc
                mask |= odd
            else:
                total += ec
                mask |= even
        if total > self.best:
            self.best = total
            self.best_mask = mask

    def _finish_two_rows(self, alive: int, rowa, rowb):
        aa, sa_, _ = rowa
        ab, sb_, _ = rowb
        joint = sa_ | sb_
        counts: dict[int, list[list[int]]] = {}
        for u in _bits(alive):
            q = u & joint
            m2 = counts.get(q)
            if m2 is None:
                m2 = [[0, 0], [0, 0]]
                counts[q] = m2
            m2[(aa & u).bit_count() & 1][(ab & u).bit_count() & 1] += 1
        pats_a: dict[int, int] = {}
        pats_b: dict[int, int] = {}
        cells = []
        for q, m2 in counts.items():
            ia = pats_a.setdefault(q & sa_, len(pats_a))
            ib = pats_b.setdefault(q & sb_, len(pats_b))
            cells.append((ia, ib, m2))
        value, xa, yb = _pair_choice_max(cells, self.best, self._tick)
        if xa is None or value <= self.best:
            return
        mask = 0
        for u in _bits(alive):
            ia = pats_a[u & sa_]
            ib = pats_b[u & sb_]
            x = xa[ia] if xa[ia] >= 0 else 0
            y = yb[ib] if yb[ib] >= 0 else 0
            if ((aa & u).bit_count() & 1) == x and ((ab & u).bit_count() & 1) == y:
                mask |= 1 << u
        if mask.bit_count() != value:  # pragma: no cover - bookkeeping guard
            raise InternalError("pair choice count disagrees with its witness")
        self.best = value
        self.best_mask = mask

    def run(self) -> tuple[int, list[int]]:
        self._go(self.full & ~self.K, 0)
        return self.best, sorted(_bits(self.best_mask))

    def _go(self, alive: int, ri: int):
        rows = self.rows
        remaining = len(rows) - ri
        if remaining == 0:
            c = alive.bit_count()
            if c > self.best:
                self.best = c
                self.best_mask = alive
            return
        if remaining == 1:
            self._finish_one_row(alive, rows[ri][2])
            return
        if remaining == 2:
            self._finish_two_rows(alive, rows[ri], rows[ri + 1])
            return
        classes = rows[ri][2]
        pairs = []
        for om, em in classes:
            pairs.append(((alive & om).bit_count(), (alive & em).bit_count()))
        order = sorted(range(len(classes)), key=lambda c: -min(pairs[c]))
        suffix = [0] * (len(order) + 1)
        for t in range(len(order) - 1, -1, -1):
            o, e = pairs[order[t]]
            suffix[t] = suffix[t + 1] + (o if o > e else e)
        b_other = alive.bit_count()
        for r in range(ri + 1, len(rows)):
            v = self._row_sum(alive, rows[r][2], b_other)
            if v < b_other:
                b_other = v
        if min(b_other, suffix[0]) <= self.best:
            return
        self._walk(alive, ri, order, suffix, 0, 0)

    def _walk(self, alive: int, ri: int, order, suffix, t: int, prefix: int):
        self._tick()
        classes = self.rows[ri][2]
        while t < len(order):
            if prefix + suffix[t] <= self.best:
                return
            om, em = classes[order[t]]
            odd = alive & om
            even = alive & em
            oc, ec = odd.bit_count(), even.bit_count()
            if oc == 0 or ec == 0:
                prefix += oc + ec
                t += 1
                continue
            if oc >= ec:
                kills = ((even, oc), (odd, ec))
            else:
                kills = ((odd, ec), (even, oc))
            self._walk(alive & ~kills[0][0], ri, order, suffix, t + 1, prefix + kills[0][1])
            if prefix + kills[1][1] + suffix[t + 1] > self.best:
                self._walk(alive & ~kills[1][0], ri, order, suffix, t + 1, prefix + kills[1][1])
            return
        self._go(alive, ri + 1)


# phase budgets for opt_exact: ticks before the next engine takes over
_VERTEX_TICKS = 200_000
_PARITY_TICKS = 400_000


def _parity_choice_ready(
    A: PartialMatrix, class_limit: int = 64, row_limit: int = 12
) -> bool:
    """True when the parity-choice engine fits the instance shape.

    It branches within each row over star-pattern classes, so every
    meaningful row must be thin (few stars), and its per-step row
    bounds only pay off when there are few distinct rows.
    """
    rows = {(a, s) for a, s in zip(A.ones, A.stars) if a != 0}
    return len(rows) <= row_limit and all(
        (1 << s.bit_count()) <= class_limit for _, s in rows
    )


def opt_exact(
    A: PartialMatrix,
    limit_n: int = LIMITS.opt_n,
    deadline: float | None = None,
) -> tuple[int, SolutionSet]:
    """Exact maximum size of a solution for A, with a witness.

    Runs two complementary exact engines.  First a budgeted branch and
    bound over independent sets of the Cayley graph generated by the
    forbidden set (_OptSearch); if that exhausts its node budget and
    every row is thin, a budgeted parity-choice search takes over with
    the incumbent so far (_ParityChoiceSearch); if that also runs out,
    the vertex search finishes unbounded.  Each engine alone is exact,
    so whichever one completes settles the value.  The witness is
    verified before it is returned.
    """
    if A.n > limit_n:
        raise LimitError(f"exact search over GF(2)^{A.n} exceeds n <= {limit_n}")
    if A.n >= 12:
        need = (1 << (A.n - 1)) + 1000
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)
    core, kept, dropped = _drop_unused_columns(A)
    if core is not A:
        cnt, sol = opt_exact(core, limit_n, deadline)
        members = [
            _spread(w, kept) | _spread(d, dropped)
            for w in sol.members
            for d in range(1 << len(dropped))
        ]
        return cnt << len(dropped), SolutionSet.of(members, A.n)

    search = _OptSearch(A, deadline, budget=_VERTEX_TICKS)
    if search.K == 0:
        # edgeless graph: everything is one solution
        return search.N, SolutionSet.of(range(search.N), A.n)

    # a verified linear warm start: the kernel of a min-rank completion
    r, W = min_rank_completion(A, deadline)
    V = kernel(W)
    vbm = 0
    for v in V.vectors():
        vbm |= 1 << v
    if vbm & search.K == 0:
        search.seed(V.vectors())
    else:  # pragma: no cover - would contradict the forbidden-set identity
        raise InternalError("kernel of a completion intersects the forbidden set")

    try:
        best, members = search.run()
    except _SearchBudget:
        best, members = search.best, search.best_members
        settled = False
        if _parity_choice_ready(A):
            alt = _ParityChoiceSearch(A, deadline, budget=_PARITY_TICKS)
            alt.seed(members)
            try:
                best, members = alt.run()
                settled = True
            except _SearchBudget:
                if alt.best > best:
                    best, members = alt.best, sorted(_bits(alt.best_mask))
        if not settled:
            final = _OptSearch(A, deadline)
            final.seed(members)
            best, members = final.run()

    witness = SolutionSet.of(members, A.n)
    if len(members) != best:
        raise InternalError("witness size disagrees with the optimum")
    if len(members) <= 4096 and not is_solution(A, witness):
        raise InternalError("witness fails the solution check")
    return best, witness


def brute_force_opt_tiny(A: PartialMatrix) -> int:
    """Maximum solution size by sheer enumeration, tiny instances only.

    Runs two independent routes and cross-checks them: operators against
    every completion, and operators against the canonical completion
    alone.  The two must agree; a mismatch is an internal error.
    """
    if A.n > LIMITS.tiny_n or A.m > LIMITS.tiny_m:
        raise LimitError("matrix too large for the tiny brute force")
    if any(s.bit_count() > LIMITS.tiny_stars_per_row for s in A.stars):
        raise LimitError("a row has too many stars for the tiny brute force")

    N = 1 << A.n
    full = (1 << N) - 1
    accepts = []
    for s in A.stars:
        classes = [full]
        for j in _bits(s):
            zero = _half_mask(A.n, j)
            one = full ^ zero
            classes = [c & zero for c in classes] + [c & one for c in classes]
        per_table = []
        for t in range(1 << len(classes)):
            acc = 0
            for ci, cls in enumerate(classes):
                if (t >> ci) & 1:
                    acc |= cls
            per_table.append(acc)
        accepts.append(per_table)

    def best_for(M: GF2Matrix) -> int:
        parities = [_parity_bitmap(row, A.n) for row in M.rows]
        best = 0
        for combo in product(*accepts):
            bm = full
            for i, accept in enumerate(combo):
                bm &= ~(parities[i] ^ accept)
                if bm == 0:
                    break
            got = bm.bit_count()
            if got > best:
                best = got
        return best

    over_all = max(best_for(M) for M in enumerate_completions(A))
    canonical_only = best_for(canonical_completion(A))
    if over_all != canonical_only:
        raise InternalError(
            "completion sweep and canonical-completion sweep disagree: "
            f"{over_all} vs {canonical_only}"
        )
    return over_all


def lin_exact(A: PartialMatrix, deadline: float | None = None) -> int:
    """Largest solution that forms a linear subspace: 2^(n - min rank)."""
    return 1 << (A.n - min_rank(A, deadline))


# ---------------------------------------------------------------------------
# separating rank via subspace enumeration

_subspace_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}


def _subspace_bases(n: int, k: int):
    if n > 6:
        return (S.basis for S in subspaces_of_dim(n, k))
    key = (n, k)
    got = _subspace_cache.get(key)
    if got is None:
        got = _subspace_cache[key] = [S.basis for S in subspaces_of_dim(n, k)]
    return got


def separating_min_rank(A: PartialMatrix, limit: int = LIMITS.subspace_n) -> int:
    """n minus the largest dimension of a subspace avoiding the forbidden set."""
    if A.n > limit:
        raise LimitError(f"subspace sweep over GF(2)^{A.n} exceeds n <= {limit}")
    K = forbidden_set(A).bitmap
    assert K is not None
    for k in range(A.n, -1, -1):
        for basis in _subspace_bases(A.n, k):
            cur = 0
            hit = False
            for i in range(1, 1 << k):
                cur ^= basis[(i & -i).bit_length() - 1]
                if (K >> cur) & 1:
                    hit = True
                    break
            if not hit:
                return A.n - k
    raise AssertionError("unreachable: the zero subspace avoids everything")


# ---------------------------------------------------------------------------
# consistent operators


@dataclass(frozen=True)
class ConsistentOperator:
    """Row-wise functions of the star coordinates fitting a solution.

    tables[i] maps the packed star projection of x to the required value
    of row i; projections never seen in the fitted solution default to 0.
    """

    n: int
    star_masks: tuple[int, ...]
    tables: tuple[tuple[tuple[int, int], ...], ...]

    def _proj(self, i: int, x: int) -> int:
        p = 0
        t = 0
        s = self.star_masks[i]
        for j in _bits(s):
            p |= ((x >> j) & 1) << t
            t += 1
        return p

    def component(self, i: int, x: int) -> int:
        p = self._proj(i, x)
        for key, val in self.tables[i]:
            if key == p:
                return val
        return 0

    def apply(self, x: int) -> int:
        out = 0
        for i in range(len(self.star_masks)):
            out |= self.component(i, x) << i
        return out


def reconstruct_operator(A: PartialMatrix, L: SolutionSet | Iterable[int]) -> ConsistentOperator:
    """Fit row operators to L; raises OperatorConflict when none exist."""
    members = sorted(L.members if isinstance(L, SolutionSet) else set(L))
    tables = []
    for i in range(A.m):
        a, s = A.ones[i], A.stars[i]
        positions = list(_bits(s))
        seen: dict[int, tuple[int, int]] = {}
        for x in members:
            p = 0
            for t, j in enumerate(positions):
                p |= ((x >> j) & 1) << t
            val = dot(a, x)
            if p in seen:
                if seen[p][0] != val:
                    raise OperatorConflict(i, seen[p][1], x)
            else:
                seen[p] = (val, x)
        tables.append(tuple(sorted((p, v) for p, (v, _) in seen.items())))
    return ConsistentOperator(A.n, A.stars, tuple(tables))


# ---------------------------------------------------------------------------
# structure checks


def codistance(S: Subspace) -> int | None:
    """Minimum weight of a nonzero vector orthogonal to S; None if S is full."""
    return min_weight_nonzero(orthogonal_complement(S))


@dataclass(frozen=True)
class HullVerdict:
    applicable: bool
    conclusion_holds: bool
    max_stars_per_row: int
    codistance: int | None


def linear_hull_check(
    A: PartialMatrix, L: SolutionSet, W: Subspace
) -> HullVerdict:
    """Check the robust-subspace statement on a concrete instance.

    Premise: L is a solution for A and contains the subspace W whose
    codistance exceeds the largest per-row star count.  Conclusion: the
    linear span of L avoids the forbidden set, i.e. L sits inside a
    solution that is a subspace.  Raises ValueError when L is not a
    solution or W is not contained in L.
    """
    if not is_solution(A, L):
        raise ValueError("L is not a solution for A")
    for w in W.vectors():
        if w not in L.members:
            raise ValueError("W is not contained in L")
    s = max((s.bit_count() for s in A.stars), default=0)
    cod = codistance(W)
    applicable = cod is None or cod >= s + 1
    F = forbidden_set(A)
    span = Subspace.span(L.members, A.n)
    holds = True
    cur = 0
    for i in range(1, 1 << span.dim):
        cur ^= span.basis[(i & -i).bit_length() - 1]
        if F.contains(cur):
            holds = False
            break
    return HullVerdict(applicable, holds, s, cod)


# ---------------------------------------------------------------------------
# the conjectured exponent


@dataclass(frozen=True)
class EpsilonRecord:
    """Exact witnesses for the exponent (n - log2 opt) / minrk."""

    n: int
    opt: int
    minrk: int

    @property
    def value(self) -> float:
        return (self.n - math.log2(self.opt)) / self.minrk


def conjecture_epsilon(
    A: PartialMatrix,
    limit_n: int = LIMITS.opt_n,
    deadline: float | None = None,
) -> EpsilonRecord | None:
    """The observed exponent for A, or None when min rank is zero."""
    r = min_rank(A, deadline)
    if r == 0:
        return None
    opt, _ = opt_exact(A, limit_n, deadline)
    return EpsilonRecord(A.n, opt, r)
