"""Canonical forms of binary codes under coordinate permutations.

A code without its coordinate order is the multiset of its generator columns,
taken up to a change of basis of the message space.  The canonical matrix is
the lexicographically smallest (row-major) generator matrix over all ordered
bases ``y_1 .. y_k`` of the code, with columns sorted ascending.  Row ``j`` of
such a matrix only depends on the cell structure fixed by rows ``< j`` and on
how many columns of every cell ``y_j`` hits, so the minimum is found by a
row-by-row search that only branches on ties.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from collections import Counter
from collections.abc import Sequence

import numpy as np

from .codes import LinearCode, dual
from .gf2 import BinaryMatrix, nullspace_basis

__all__ = [
    "CanonicalForm",
    "are_equivalent",
    "canonical_form",
    "canonical_multiset",
    "certificate_of",
    "matrix_from_multiset",
]

Multiset = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CanonicalForm:
    matrix: BinaryMatrix
    certificate: bytes


def _parity_table(k: int, points: np.ndarray) -> np.ndarray:
    msgs = np.arange(1 << k, dtype=np.int64)
    return (np.bitwise_count(msgs[:, None] & points[None, :]) & 1).astype(np.int64)


def canonical_multiset(k: int, columns: Sequence[int] | dict[int, int]) -> Multiset:
    """Canonical ``(label, multiplicity)`` pairs of a column multiset in ``F_2^k``.

    ``columns`` is either a sequence of column values (bit ``k-1-r`` holds row
    ``r``) or a mapping value -> multiplicity.  Columns must span ``F_2^k``.
    """
    counts = Counter(columns) if not isinstance(columns, dict) else columns
    items = sorted((p, m) for p, m in counts.items() if m)
    if k == 0:
        return tuple(items)
    points = np.array([p for p, _ in items], dtype=np.int64)
    mults = np.array([m for _, m in items], dtype=np.int64)
    parity = _parity_table(k, points)
    weighted = parity * mults
    size = 1 << k
    index = np.arange(size)

    best_key: list[tuple[int, ...]] = []
    best: list[np.ndarray | None] = [None]
    first_basis: list[int] = []
    # symmetries found so far, as permutations of the message space
    gens: list[np.ndarray] = []

    def symmetry(basis: list[int]) -> np.ndarray:
        src = np.zeros(size, dtype=np.int64)
        dst = np.zeros(size, dtype=np.int64)
        for i, (a, b) in enumerate(zip(first_basis, basis)):
            step = 1 << i
            src[step : 2 * step] = src[:step] ^ a
            dst[step : 2 * step] = dst[:step] ^ b
        perm = np.empty(size, dtype=np.int64)
        perm[src] = dst
        return perm

    def orbit_closure(seeds: list[int], prefix: list[int]) -> np.ndarray:
        fixing = [g for g in gens if all(g[y] == y for y in prefix)]
        covered = np.zeros(size, dtype=bool)
        covered[seeds] = True
        frontier = np.array(seeds, dtype=np.int64)
        while len(frontier) and fixing:
            images = np.unique(np.concatenate([g[frontier] for g in fixing]))
            frontier = images[~covered[images]]
            covered[frontier] = True
        return covered

    def explore(level: int, labels: np.ndarray, in_span: np.ndarray, basis: list[int]) -> None:
        if level == k:
            if best[0] is None:
                best[0] = labels
                first_basis[:] = basis
            else:
                gens.append(symmetry(basis))
            return
        cells, cell_of = np.unique(labels, return_inverse=True)
        onehot = np.zeros((len(labels), len(cells)), dtype=np.int64)
        onehot[np.arange(len(labels)), cell_of] = 1
        sig = weighted @ onehot
        cand = np.flatnonzero(~in_span)
        for c in range(len(cells)):
            col = sig[cand, c]
            cand = cand[col == col.min()]
        key = tuple(int(x) for x in sig[cand[0]])
        if level < len(best_key):
            if key > best_key[level]:
                return
            if key < best_key[level]:
                del best_key[level:]
                best[0] = None
        if level == len(best_key):
            best_key.append(key)
        done: list[int] = []
        covered = None
        n_gens = -1
        for y in cand.tolist():
            if done:
                if n_gens != len(gens):
                    covered = orbit_closure(done, basis)
                    n_gens = len(gens)
                if covered[y]:
                    continue
            explore(level + 1, labels * 2 + parity[y], in_span | in_span[index ^ y], basis + [y])
            done.append(y)
            n_gens = -1

    start = np.zeros(size, dtype=bool)
    start[0] = True
    explore(0, np.zeros(len(items), dtype=np.int64), start, [])
    labels = best[0]
    assert labels is not None
    out: Counter[int] = Counter()
    for lab, m in zip(labels.tolist(), mults.tolist()):
        out[lab] += m
    return tuple(sorted(out.items()))


def matrix_from_multiset(k: int, multiset: Multiset) -> BinaryMatrix:
    """Generator with the multiset's columns in ascending order (row 0 = MSB)."""
    cols = [p for p, m in multiset for _ in range(m)]
    n = len(cols)
    rows = []
    for r in range(k):
        shift = k - 1 - r
        v = 0
        for p in cols:
            v = (v << 1) | ((p >> shift) & 1)
        rows.append(v)
    return BinaryMatrix(rows, n)


def certificate_of(matrix: BinaryMatrix) -> bytes:
    n, k = matrix.cols, matrix.rows
    bits = np.array([int(b) for s in matrix.to_strings() for b in s], dtype=np.uint8)
    return struct.pack(">HH", n, k) + np.packbits(bits).tobytes()


def _columns(C: LinearCode) -> list[int]:
    return [C.G.column(c) for c in range(C.n)]


def canonical_form(C: LinearCode) -> CanonicalForm:
    """Canonical generator matrix and certificate of ``C``.

    Codes of dimension above ``n/2`` are canonised through their dual; the
    result is the rref generator of the dual of the dual's canonical matrix.
    """
    n, k = C.n, C.k
    if k == 0 or k == n:
        matrix = C.G
    elif k <= n - k:
        matrix = matrix_from_multiset(k, canonical_multiset(k, _columns(C)))
    else:
        D = dual(C)
        h = matrix_from_multiset(D.k, canonical_multiset(D.k, _columns(D)))
        matrix = LinearCode(nullspace_basis(h)).G
    return CanonicalForm(matrix, certificate_of(matrix))


def are_equivalent(C1: LinearCode, C2: LinearCode) -> bool:
    if (C1.n, C1.k) != (C2.n, C2.k):
        return False
    return canonical_form(C1).certificate == canonical_form(C2).certificate
