"""Isomorph-free generation of LCD codes.

Codes are built one row at a time.  An ``[N, m]`` code is stored as the
multiplicity of every column value in ``F_2^m`` (label bit ``m-1-r`` is row
``r``).  Adding a row ``(v | 1)`` under ``(G | 0)`` splits every column class
``p`` of multiplicity ``mu_p`` into ``(p, 0)`` and ``(p, 1)`` with ``t_p`` columns
receiving the new bit, plus the new identity column.  The parent is the
shortened code of the child on that identity coordinate, so every code of the
final level is reached, and keeping one canonical representative per class at
each level keeps the search irredundant.

Shortening can grow the hull by at most one, which is what the per-level hull
caps exploit: an LCD ``[n, k]`` code only has ancestors with ``m`` rows whose
hull has dimension ``<= k - m``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from collections.abc import Callable, Iterator
from itertools import combinations

import numpy as np

from .bounds import griesmer_upper
from .canonical import (
    CanonicalForm,
    canonical_form,
    canonical_multiset,
    matrix_from_multiset,
)
from .codes import CodeMetrics, LinearCode, dual, metrics

__all__ = [
    "ClassificationRecord",
    "ScaleGuardError",
    "SearchNode",
    "SearchSpec",
    "classify",
    "d_lcd_exact",
    "gaussian_binomial",
    "lcd_predicate",
    "oracle_dlcd",
    "oracle_enumerate",
]

MAX_N = 28
MAX_K = 14
ORACLE_LIMIT = 10**7
_CHUNK = 1 << 17


class ScaleGuardError(ValueError):
    """Requested search is larger than the desk-scale guard allows."""


@dataclass(frozen=True)
class SearchSpec:
    n: int
    k: int
    d_min: int = 1
    d_dual_min: int = 1
    max_hull_schedule: tuple[int, ...] | None = None

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise ValueError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.max_hull_schedule is None:
            object.__setattr__(
                self, "max_hull_schedule", tuple(self.k - 1 - m for m in range(self.k))
            )
        sched = tuple(self.max_hull_schedule)
        if len(sched) != self.k or min(sched) < 0:
            raise ValueError("hull schedule needs k non-negative entries")
        object.__setattr__(self, "max_hull_schedule", sched)


@dataclass(frozen=True)
class SearchNode:
    """A partial object: an ``[n - k + level, level]`` code up to equivalence."""

    level: int
    multiset: tuple[tuple[int, int], ...]

    @property
    def code(self) -> LinearCode:
        return LinearCode.span(matrix_from_multiset(self.level, self.multiset))


@dataclass(frozen=True)
class ClassificationRecord:
    canonical: CanonicalForm
    metrics: CodeMetrics = field(compare=False)

    @property
    def code(self) -> LinearCode:
        return LinearCode.span(self.canonical.matrix)

    @classmethod
    def from_code(cls, code: LinearCode) -> "ClassificationRecord":
        return cls(canonical_form(code), metrics(code))


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# batch helpers -------------------------------------------------------------


def _parity_matrix(m: int) -> np.ndarray:
    x = np.arange(1 << m, dtype=np.int64)
    return (np.bitwise_count(x[:, None] & x[None, :]) & 1).astype(np.int64)


def _batch_rank(rows: np.ndarray, width: int) -> np.ndarray:
    """GF(2) rank of each matrix in a batch of ``(N, r)`` bit-packed rows."""
    A = rows.copy()
    N, r = A.shape
    used = np.zeros((N, r), dtype=bool)
    out = np.zeros(N, dtype=np.int64)
    ar = np.arange(N)
    for c in range(width):
        bit = np.int64(1) << np.int64(width - 1 - c)
        has = (A & bit) != 0
        cand = has & ~used
        exists = cand.any(axis=1)
        if not exists.any():
            continue
        piv = cand.argmax(axis=1)
        prow = A[ar, piv]
        flip = has & exists[:, None]
        flip[ar, piv] = False
        A ^= np.where(flip, prow[:, None], 0)
        used[ar[exists], piv[exists]] = True
        out += exists
    return out


def _hull_dims(children: np.ndarray, dim: int) -> np.ndarray:
    """Hull dimension of every code in a batch of multiplicity vectors."""
    labels = np.arange(1 << dim, dtype=np.int64)
    bits = (labels[:, None] >> np.arange(dim - 1, -1, -1)) & 1
    par = children & 1
    rows = np.zeros((len(children), dim), dtype=np.int64)
    for i in range(dim):
        for j in range(dim):
            entry = (par @ (bits[:, i] * bits[:, j])) & 1
            rows[:, i] |= entry << (dim - 1 - j)
    return dim - _batch_rank(rows, dim)


def _vector(multiset, m: int) -> np.ndarray:
    mu = np.zeros(1 << m, dtype=np.int64)
    for p, c in multiset:
        mu[p] = c
    return mu


def _extensions(mu: np.ndarray, m: int, spec: SearchSpec) -> np.ndarray:
    """All admissible one-row extensions of a level-``m`` parent.

    Returns child multiplicity vectors of length ``2^(m+1)``.  The appended
    row is taken to be a minimum-weight vector of its coset of the parent
    code, which loses no child code.
    """
    final = m + 1 == spec.k
    support = np.flatnonzero(mu)
    caps = mu[support]
    lows = np.zeros_like(caps)
    if final and spec.d_dual_min >= 2 and len(support) and support[0] == 0:
        lows[0] = caps[0]  # zero columns would survive as zero coordinates
    if final and spec.d_dual_min >= 3:
        # no repeated columns: each class keeps at most one column per side,
        # and zero columns would pile up on the new identity column
        if mu[0] or (caps > 2).any():
            return np.zeros((0, 1 << (m + 1)), dtype=np.int64)
        lows = np.maximum(lows, caps - 1)
        caps = np.minimum(caps, 1)
    D = _parity_matrix(m)
    wt_parent = D @ mu
    sign = 1 - 2 * D[:, support]
    radix = caps - lows + 1
    total = int(np.prod(radix)) if len(radix) else 1
    strides = np.ones(len(radix), dtype=np.int64)
    for i in range(len(radix) - 2, -1, -1):
        strides[i] = strides[i + 1] * radix[i + 1]
    need = spec.d_min - 1
    kept = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        t = lows + (idx[:, None] // strides) % radix
        u = wt_parent + t @ sign.T
        umin = u.min(axis=1)
        good = (umin >= need) & (u[:, 0] == umin)
        if good.any():
            kept.append(t[good])
    if not kept:
        return np.zeros((0, 1 << (m + 1)), dtype=np.int64)
    t = np.concatenate(kept)
    child = np.zeros((len(t), 1 << (m + 1)), dtype=np.int64)
    child[:, 2 * support] = mu[support] - t
    child[:, 2 * support + 1] = t
    child[:, 1] += 1
    cap = spec.max_hull_schedule[m]
    if cap < m + 1 or final:
        hull = _hull_dims(child, m + 1)
        child = child[hull <= (0 if final else cap)]
    return np.unique(child, axis=0)


def _expand(parents: list, m: int, spec: SearchSpec) -> set:
    out: set = set()
    for ms in parents:
        children = _extensions(_vector(ms, m), m, spec)
        for row in children:
            nz = np.flatnonzero(row)
            counts = {int(p): int(row[p]) for p in nz}
            out.add(canonical_multiset(m + 1, counts))
    return out


def _expand_job(args) -> set:
    return _expand(*args)


def _check_guard(n: int, k: int, override: bool) -> None:
    if override:
        return
    if n > MAX_N or k > min(n, MAX_K):
        raise ScaleGuardError(
            f"[{n},{k}] exceeds the desk-scale guard (n <= {MAX_N}, k <= {MAX_K}); "
            "pass override=True to run anyway"
        )


def search_levels(spec: SearchSpec, threads: int = 1) -> Iterator[tuple[int, set]]:
    """Yield ``(level, classes)`` for every level of the generation tree."""
    layer = {((0, spec.n - spec.k),) if spec.n > spec.k else ()}
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for m in range(spec.k):
            parents = sorted(layer)
            if pool is None or len(parents) < 2:
                layer = _expand(parents, m, spec)
            else:
                size = max(1, len(parents) // (threads * 4))
                jobs = [(parents[i : i + size], m, spec) for i in range(0, len(parents), size)]
                layer = set()
                for part in pool.map(_expand_job, jobs):
                    layer |= part
            yield m + 1, layer
            if not layer:
                return
    finally:
        if pool is not None:
            pool.shutdown()


def _records(classes, k: int, spec: SearchSpec, dualize: bool = False) -> list[ClassificationRecord]:
    recs = []
    for ms in classes:
        code = LinearCode.span(matrix_from_multiset(k, ms))
        if dualize:
            code = dual(code)
        rec = ClassificationRecord.from_code(code)
        met = rec.metrics
        # independent re-verification of everything the search promised; the
        # search prunes on the distance of the searched side only
        assert met.hull_dim == 0 and met.d is not None
        if dualize:
            assert met.d_dual is None or met.d_dual >= spec.d_dual_min
        else:
            assert met.d >= spec.d_min
        if met.d < spec.d_min or (met.d_dual is not None and met.d_dual < spec.d_dual_min):
            continue
        recs.append(rec)
    recs.sort(key=lambda r: r.canonical.certificate)
    return recs


def _first_code(spec: SearchSpec) -> set:
    """Depth-first search for a single final-level class."""
    seen: list[set] = [set() for _ in range(spec.k + 1)]

    def dive(ms, m):
        for row in _extensions(_vector(ms, m), m, spec):
            counts = {int(p): int(row[p]) for p in np.flatnonzero(row)}
            child = canonical_multiset(m + 1, counts)
            if m + 1 == spec.k:
                return child
            if child in seen[m + 1]:
                continue
            seen[m + 1].add(child)
            found = dive(child, m + 1)
            if found is not None:
                return found
        return None

    root = ((0, spec.n - spec.k),) if spec.n > spec.k else ()
    found = dive(root, 0)
    return set() if found is None else {found}


def classify(
    spec: SearchSpec,
    threads: int = 1,
    override: bool = False,
    first_only: bool = False,
) -> list[ClassificationRecord]:
    """Inequivalent LCD ``[n, k, >= d_min]`` codes with dual distance ``>= d_dual_min``.

    Output is sorted by certificate and does not depend on ``threads``.  With
    ``first_only`` the search stops at the first code found (at most one record).
    """
    _check_guard(spec.n, spec.k, override)
    if first_only and spec.d_dual_min <= 1:
        return _records(_first_code(spec), spec.k, spec)
    # LCD codes are closed under duality; for high rates the dual search has
    # fewer levels.  A custom hull schedule pins the search to the primal side.
    dualize = spec.n - spec.k < spec.k and spec.k < spec.n and _default_schedule(spec)
    target = SearchSpec(spec.n, spec.n - spec.k, spec.d_dual_min, spec.d_min) if dualize else spec
    final: set = set()
    for level, classes in search_levels(target, threads):
        if level == target.k:
            final = classes
    recs = _records(final, target.k, spec, dualize)
    return recs[:1] if first_only else recs


def _default_schedule(spec: SearchSpec) -> bool:
    return spec.max_hull_schedule == tuple(spec.k - 1 - m for m in range(spec.k))


def d_lcd_exact(n: int, k: int, override: bool = False) -> int:
    """Largest ``d`` for which an LCD ``[n, k, d]`` code exists (no dual-distance condition)."""
    _check_guard(n, k, override)
    for d in range(griesmer_upper(n, k), 0, -1):
        if classify(SearchSpec(n, k, d, 1), override=True, first_only=True):
            return d
    raise AssertionError(f"no LCD [{n},{k}] code found")  # the code (I_k | 0) is LCD


# oracle ------------------------------------------------------------------------


def _rref_frames(n: int, k: int) -> Iterator[np.ndarray]:
    """Column values of every rref ``k x n`` generator, in chunks, columns sorted.

    Row ``r`` of a generator is bit ``k-1-r`` of a column value.
    """
    for pivots in combinations(range(n), k):
        free = []  # (row, column) of every free entry
        for r, p in enumerate(pivots):
            for j in range(p + 1, n):
                if j not in pivots:
                    free.append((r, j))
        f = len(free)
        for start in range(0, 1 << f, _CHUNK):
            fill = np.arange(start, min(1 << f, start + _CHUNK), dtype=np.int64)
            cols = np.zeros((len(fill), n), dtype=np.int64)
            for r, p in enumerate(pivots):
                cols[:, p] = 1 << (k - 1 - r)
            for b, (r, j) in enumerate(free):
                cols[:, j] |= ((fill >> b) & 1) << (k - 1 - r)
            yield np.sort(cols, axis=1)


def _frame_multisets(n: int, k: int, stats: dict | None) -> list[tuple[int, ...]]:
    if gaussian_binomial(n, k) > ORACLE_LIMIT:
        raise ScaleGuardError(
            f"[{n},{k}]_2 = {gaussian_binomial(n, k)} codes exceeds the oracle limit {ORACLE_LIMIT}"
        )
    seen: set[tuple[int, ...]] = set()
    total = 0
    for block in _rref_frames(n, k):
        total += len(block)
        seen.update(map(tuple, np.unique(block, axis=0).tolist()))
    if stats is not None:
        stats["codes"] = total
        stats["frames"] = len(seen)
    return sorted(seen)


def lcd_predicate(d_min: int = 1, d_dual_min: int = 1) -> Callable[[LinearCode], bool]:
    """LCD with minimum distance ``>= d_min`` and dual distance ``>= d_dual_min``."""

    def pred(code: LinearCode) -> bool:
        met = metrics(code)
        if met.hull_dim != 0 or met.d is None or met.d < d_min:
            return False
        return met.d_dual is None or met.d_dual >= d_dual_min

    return pred


def oracle_enumerate(
    n: int,
    k: int,
    predicate: Callable[[LinearCode], bool],
    stats: dict | None = None,
) -> list[ClassificationRecord]:
    """Brute-force classification through every rref generator matrix.

    Generators with the same sorted column list are column permutations of each
    other, so they are collapsed before ``predicate`` (which must be invariant
    under coordinate permutations) and the canonical form are evaluated.
    """
    by_cert: dict[bytes, ClassificationRecord] = {}
    for cols in _frame_multisets(n, k, stats):
        code = LinearCode.span(matrix_from_multiset(k, tuple((c, 1) for c in cols)))
        if not predicate(code):
            continue
        cf = canonical_form(code)
        if cf.certificate not in by_cert:
            by_cert[cf.certificate] = ClassificationRecord(cf, metrics(code))
    return [by_cert[c] for c in sorted(by_cert)]


def oracle_dlcd(n: int, k: int) -> int:
    """``d_LCD(n, k)`` by brute force over all rref generators."""
    best = 0
    for cols in _frame_multisets(n, k, None):
        code = LinearCode.span(matrix_from_multiset(k, tuple((c, 1) for c in cols)))
        met = metrics(code)
        if met.hull_dim == 0 and met.d is not None:
            best = max(best, met.d)
    return best
