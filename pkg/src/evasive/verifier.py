"""Exact verification that a point set meets every s-space in few points.

The workhorse is a scan over point subsets: every s-space S with
|X ∩ S| = t >= 1 satisfies X ∩ S ⊆ <B> for some B ⊆ X ∩ S with
|B| <= s+1, and conversely the span of any (s+1)-subset of X extends to an
s-space.  The maximum of span_count over subsets of size min(s+1, |X|)
therefore equals the maximum of |X ∩ S| over all s-spaces: a smaller
subset's span count is dominated by any size-(s+1) superset drawn from X.

Subsets are enumerated in lexicographic order over the sorted point list,
so reported witnesses are deterministic: the first qualifying subset wins.
An independent oracle enumerates every s-space of the ambient explicitly
(deliberately plain scalar code) for cross-checking on tiny instances.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .errors import BudgetExceeded, ParameterError
from .projgeom import (
    DEFAULT_BUDGET,
    PointSet,
    SubspaceBasis,
    all_points,
    gaussian_binomial,
    rref,
    span_count,
)

ORACLE_SPACE_CAP = 100_000
ORACLE_SUBSET_CAP = 10**7


@dataclass(frozen=True)
class ViolationWitness:
    """A subspace together with the points of X it captures.

    generating_points span the subspace (rank = span_dim + 1) and are
    contained in the intersection.  For a genuine (r, s) violation,
    span_dim <= s and the intersection holds at least r+1 points.
    """

    generating_points: tuple
    span_dim: int
    intersection: tuple

    @property
    def count(self) -> int:
        return len(self.intersection)

    def recheck(self, X: PointSet) -> None:
        """Assert internal consistency against X (used by tests)."""
        from .projgeom import rank

        assert all(p in X for p in self.generating_points)
        assert rank(X.field, self.generating_points) == self.span_dim + 1
        cnt, members = span_count(self.generating_points, X)
        assert cnt == len(self.intersection)
        assert members == self.intersection
        assert set(self.generating_points) <= set(self.intersection)


def _batch_counts(field, pts_array, idx_batch):
    mats = pts_array[idx_batch]
    _, pivots = linalg.batch_rref(field, mats)
    members = linalg.batch_span_members(field, mats, pivots, pts_array)
    return members.sum(axis=1)


def _count_stream(X: PointSet, m: int, budget: int, threads: int):
    """Yield (start_index, idx_batch, span_counts) in lexicographic order."""
    total = comb(len(X), m)
    if total > budget:
        raise BudgetExceeded(
            f"subset scan needs C({len(X)}, {m}) = {total} spans, budget is {budget}"
        )
    field = X.field
    arr = X.array
    bs = linalg.span_batch_size(len(X), X.n + 1)
    batches = linalg.combination_batches(len(X), m, bs)
    if threads <= 1:
        start = 0
        for idx in batches:
            yield start, idx, _batch_counts(field, arr, idx)
            start += len(idx)
        return
    with ThreadPoolExecutor(max_workers=threads) as ex:
        pending = deque()
        start = 0
        for idx in batches:
            pending.append((start, idx, ex.submit(_batch_counts, field, arr, idx)))
            start += len(idx)
            if len(pending) >= 2 * threads:
                s0, i0, fut = pending.popleft()
                yield s0, i0, fut.result()
        while pending:
            s0, i0, fut = pending.popleft()
            yield s0, i0, fut.result()


def _make_witness(X: PointSet, idx) -> ViolationWitness:
    pts = tuple(X.points[int(i)] for i in idx)
    rows, _ = rref(X.field, pts)
    _, members = span_count(pts, X)
    return ViolationWitness(generating_points=pts, span_dim=len(rows) - 1, intersection=members)


def _check_dims(X: PointSet, s: int) -> None:
    if not 0 <= s < X.n:
        raise ParameterError(f"need 0 <= s < n, got s={s}, n={X.n}")


def max_in_s_space(X: PointSet, s: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1):
    """Maximum of |X ∩ S| over all s-spaces S, with a witness achieving it.

    Runs the subset scan to completion.  The witness is built from the
    lexicographically first subset attaining the maximum.
    """
    _check_dims(X, s)
    if len(X) == 0:
        raise ParameterError("point set is empty")
    m = min(s + 1, len(X))
    best_count = -1
    best_idx = None
    for start, idx, counts in _count_stream(X, m, budget, threads):
        mx = int(counts.max())
        if mx > best_count:
            best_count = mx
            best_idx = idx[int(counts.argmax())].copy()
    return best_count, _make_witness(X, best_idx)


def find_violation(X: PointSet, dim: int, limit: int, *, budget: int = DEFAULT_BUDGET,
                   threads: int = 1) -> ViolationWitness | None:
    """First subset (lex order) of size min(dim+1, |X|) spanning > limit points.

    Returns None when every dim-space meets X in at most `limit` points.
    Aborts the scan at the first violation.
    """
    _check_dims(X, dim)
    if len(X) <= limit:
        return None
    m = min(dim + 1, len(X))
    stream = _count_stream(X, m, budget, threads)
    for start, idx, counts in stream:
        hits = np.nonzero(counts > limit)[0]
        if len(hits):
            witness = _make_witness(X, idx[int(hits[0])])
            stream.close()
            return witness
    return None


def is_rs_set(X: PointSet, r: int, s: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1):
    """Whether every s-space contains at most r points of X.

    Returns (True, None) or (False, witness); the scan aborts on the first
    violation in lexicographic order.
    """
    if r < 1:
        raise ParameterError(f"need r >= 1, got r={r}")
    _check_dims(X, s)
    if len(X) <= r:
        return True, None
    witness = find_violation(X, s, r, budget=budget, threads=threads)
    return witness is None, witness


def is_proper(X: PointSet, r: int, s: int, *, budget: int = DEFAULT_BUDGET,
              threads: int = 1) -> bool:
    """No m-space contains m + 1 + (r - s) points of X, for any m in [0, s]."""
    if not r > s >= 1:
        raise ParameterError(f"need r > s >= 1, got r={r}, s={s}")
    _check_dims(X, s)
    if len(X) == 0:
        return True
    for m_dim in range(s + 1):
        limit = m_dim + r - s
        if find_violation(X, m_dim, limit, budget=budget, threads=threads) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# Independent oracle: enumerate every s-space of the ambient space.

@functools.lru_cache(maxsize=32)
def _all_s_spaces(field, n: int, s: int, cap: int):
    q = field.order
    nspaces = gaussian_binomial(n + 1, s + 1, q)
    if nspaces > cap:
        raise BudgetExceeded(f"{nspaces} s-spaces exceed oracle cap {cap}")
    pts = list(all_points(n, field))
    if comb(len(pts), s + 1) > ORACLE_SUBSET_CAP:
        raise BudgetExceeded("oracle subset enumeration too large")
    seen = {}
    for subset in itertools.combinations(pts, s + 1):
        rows, pivots = rref(field, subset)
        if len(rows) == s + 1:
            seen.setdefault(rows, pivots)
    assert len(seen) == nspaces
    return tuple(
        SubspaceBasis(field=field, n=n, rows=rows, pivots=piv)
        for rows, piv in sorted(seen.items())
    )


def oracle_max_in_s_space(X: PointSet, s: int, *, cap: int = ORACLE_SPACE_CAP) -> int:
    """max |X ∩ S| by explicit enumeration of every s-space (tiny instances)."""
    _check_dims(X, s)
    if len(X) == 0:
        raise ParameterError("point set is empty")
    best = 0
    for space in _all_s_spaces(X.field, X.n, s, cap):
        c = sum(1 for p in X.points if space.contains(p))
        if c > best:
            best = c
    return best
