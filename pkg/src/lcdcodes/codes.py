"""Binary linear codes and their structural metrics."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from collections.abc import Iterator, Sequence

import numpy as np

from .gf2 import BinaryMatrix, _rref_rows, nullspace_basis, rank, reduce_vector

__all__ = [
    "ENUMERATION_CAP",
    "CodeMetrics",
    "EnumerationCapError",
    "LinearCode",
    "RankDeficientError",
    "ZeroCodeError",
    "codewords",
    "dual",
    "dual_distance",
    "hull_dim",
    "macwilliams",
    "metrics",
    "min_weight",
    "parity_flags",
    "puncture",
    "shorten",
    "weight_enumerator",
]

# full codeword enumeration is refused above this dimension
ENUMERATION_CAP = 28


class RankDeficientError(ValueError):
    pass


class ZeroCodeError(ValueError):
    pass


class EnumerationCapError(ValueError):
    pass


class LinearCode:
    """A binary ``[n, k]`` code stored by its rref generator matrix.

    Two instances compare equal exactly when they have the same row space.
    """

    __slots__ = ("n", "k", "G", "pivots")

    def __init__(self, generator: BinaryMatrix):
        rows, pivots = _rref_rows(generator.row_ints, generator.cols)
        if len(pivots) != generator.rows:
            raise RankDeficientError(
                f"generator has {generator.rows} rows but rank {len(pivots)}"
            )
        self.n = generator.cols
        self.k = len(pivots)
        self.G = BinaryMatrix(rows, generator.cols)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, generator: BinaryMatrix) -> "LinearCode":
        """Row space of ``generator``, dependent rows allowed."""
        rows, pivots = _rref_rows(generator.row_ints, generator.cols)
        return cls(BinaryMatrix(rows[: len(pivots)], generator.cols))

    @classmethod
    def from_strings(cls, lines: Sequence[str], n: int | None = None) -> "LinearCode":
        return cls(BinaryMatrix.from_strings(lines, n))

    @classmethod
    def from_rows(cls, rows: Sequence[int], n: int) -> "LinearCode":
        return cls.span(BinaryMatrix(rows, n))

    @classmethod
    def zero(cls, n: int) -> "LinearCode":
        return cls(BinaryMatrix([], n))

    @classmethod
    def full(cls, n: int) -> "LinearCode":
        return cls(BinaryMatrix((1 << (n - 1 - i) for i in range(n)), n))

    @classmethod
    def repetition(cls, n: int) -> "LinearCode":
        return cls(BinaryMatrix([(1 << n) - 1], n))

    @property
    def rows(self) -> tuple[int, ...]:
        return self.G.row_ints

    def contains(self, word: int) -> bool:
        return reduce_vector(word, self.G.row_ints, self.pivots, self.n) == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.G == other.G

    def __hash__(self) -> int:
        return hash(self.G)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]: {self.G.to_strings()})"


@dataclass(frozen=True)
class CodeMetrics:
    n: int
    k: int
    d: int | None
    d_dual: int | None
    hull_dim: int
    weight_enumerator: tuple[int, ...]
    is_even_like: bool
    has_all_ones: bool

    @property
    def is_lcd(self) -> bool:
        return self.hull_dim == 0


def codewords(C: LinearCode) -> Iterator[int]:
    """All ``2^k`` codewords in Gray-code order, starting from zero."""
    if C.k > ENUMERATION_CAP:
        raise EnumerationCapError(f"k={C.k} exceeds the enumeration cap {ENUMERATION_CAP}")
    rows = C.rows
    word = 0
    yield word
    for i in range(1, 1 << C.k):
        word ^= rows[(i & -i).bit_length() - 1]
        yield word


def _span_array(rows: Sequence[int]) -> np.ndarray:
    out = np.zeros(1, dtype=np.uint64)
    for r in rows:
        out = np.concatenate([out, out ^ np.uint64(r)])
    return out


def _weight_counts(rows: Sequence[int], n: int) -> np.ndarray:
    k = len(rows)
    if k > ENUMERATION_CAP:
        raise EnumerationCapError(f"k={k} exceeds the enumeration cap {ENUMERATION_CAP}")
    counts = np.zeros(n + 1, dtype=np.int64)
    if n > 64:
        for w in codewords(LinearCode.from_rows(rows, n)):
            counts[w.bit_count()] += 1
        return counts
    split = min(k, 16)
    low = _span_array(rows[:split])
    high = _span_array(rows[split:])
    for h in high:
        counts += np.bincount(np.bitwise_count(low ^ h), minlength=n + 1)
    return counts


def weight_enumerator(C: LinearCode) -> tuple[int, ...]:
    """Counts ``A_0 .. A_n`` by full enumeration."""
    return tuple(int(a) for a in _weight_counts(C.rows, C.n))


def min_weight(C: LinearCode) -> int:
    if C.k == 0:
        raise ZeroCodeError("the zero code has no minimum weight")
    counts = _weight_counts(C.rows, C.n)
    return int(np.flatnonzero(counts[1:])[0]) + 1


def dual(C: LinearCode) -> LinearCode:
    if C.k == 0:
        return LinearCode.full(C.n)
    return LinearCode(nullspace_basis(C.G))


def krawtchouk(j: int, i: int, n: int) -> int:
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams(enumerator: Sequence[int], k: int) -> tuple[int, ...]:
    """Weight distribution of the dual of a ``k``-dimensional code."""
    n = len(enumerator) - 1
    out = []
    for j in range(n + 1):
        total = sum(a * krawtchouk(j, i, n) for i, a in enumerate(enumerator) if a)
        q, r = divmod(total, 1 << k)
        if r:
            raise ArithmeticError("enumerator is not the weight distribution of a linear code")
        out.append(q)
    return tuple(out)


def dual_distance(C: LinearCode) -> int | None:
    """Minimum weight of the dual code; ``None`` when the dual is the zero code.

    The dual is enumerated directly when it is the smaller code, otherwise its
    weights come from the MacWilliams transform of this code's enumerator.
    """
    if C.k == C.n:
        return None
    if C.n - C.k <= C.k:
        return min_weight(dual(C))
    enum = macwilliams(weight_enumerator(C), C.k)
    return next(w for w in range(1, C.n + 1) if enum[w])


def hull_dim(C: LinearCode) -> int:
    if C.k == 0:
        return 0
    return C.k - rank(C.G.gram())


def _check_coordinate(C: LinearCode, i: int) -> None:
    if not (0 <= i < C.n):
        raise IndexError(f"coordinate {i} out of range for length {C.n}")
    if C.n == 1:
        raise ValueError("cannot delete the only coordinate of a length-1 code")


def puncture(C: LinearCode, i: int) -> LinearCode:
    """Delete coordinate ``i`` from every codeword."""
    _check_coordinate(C, i)
    return LinearCode.span(C.G.delete_column(i))


def shorten(C: LinearCode, i: int) -> LinearCode:
    """Keep the codewords that vanish at ``i``, then delete coordinate ``i``."""
    _check_coordinate(C, i)
    bit = 1 << (C.n - 1 - i)
    rows = list(C.rows)
    hits = [j for j, r in enumerate(rows) if r & bit]
    if hits:
        pivot = rows.pop(hits[0])
        rows = [r ^ pivot if r & bit else r for r in rows]
    return LinearCode.span(BinaryMatrix(rows, C.n).delete_column(i))


def parity_flags(C: LinearCode) -> tuple[bool, bool]:
    """``(is_even_like, has_all_ones)``.

    Weight parity is linear over GF(2), so the code is even-like exactly when
    every basis row has even weight.
    """
    even = all(r.bit_count() % 2 == 0 for r in C.rows)
    return even, C.contains((1 << C.n) - 1)


def metrics(C: LinearCode) -> CodeMetrics:
    enum = weight_enumerator(C)
    d = next((w for w in range(1, C.n + 1) if enum[w]), None)
    even, all_ones = parity_flags(C)
    return CodeMetrics(
        n=C.n,
        k=C.k,
        d=d,
        d_dual=dual_distance(C),
        hull_dim=hull_dim(C),
        weight_enumerator=enum,
        is_even_like=even,
        has_all_ones=all_ones,
    )
