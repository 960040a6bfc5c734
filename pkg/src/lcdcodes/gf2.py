"""Dense linear algebra over GF(2) on bit-packed rows.

Each row of a :class:`BinaryMatrix` is a Python ``int``; column ``j`` of an
``m x n`` matrix lives in bit ``n - 1 - j`` so that comparing row integers
compares the rows lexicographically as bit strings.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

__all__ = [
    "BinaryMatrix",
    "identity",
    "ones",
    "rref",
    "rank",
    "mat_mul",
    "is_nonsingular",
    "nullspace_basis",
    "dot",
    "reduce_vector",
]


def dot(x: int, y: int) -> int:
    """Standard inner product of two bit-packed vectors, mod 2."""
    return (x & y).bit_count() & 1


class BinaryMatrix:
    """Immutable binary matrix with ``rows x cols`` entries.

    Zero-row matrices are allowed (they generate the zero code); the column
    count must be positive.
    """

    __slots__ = ("_rows", "_cols")

    def __init__(self, rows: Iterable[int], cols: int):
        if cols <= 0:
            raise ValueError(f"a binary matrix needs at least one column, got {cols}")
        rows = tuple(int(r) for r in rows)
        limit = 1 << cols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row value {r} does not fit in {cols} columns")
        self._rows = rows
        self._cols = cols

    # construction -----------------------------------------------------

    @classmethod
    def from_strings(cls, lines: Sequence[str], cols: int | None = None) -> "BinaryMatrix":
        if cols is None:
            if not lines:
                raise ValueError("column count required for an empty matrix")
            cols = len(lines[0])
        rows = []
        for line in lines:
            if len(line) != cols or set(line) - {"0", "1"}:
                raise ValueError(f"bad binary row {line!r} for {cols} columns")
            rows.append(int(line, 2))
        return cls(rows, cols)

    @classmethod
    def from_array(cls, array) -> "BinaryMatrix":
        a = np.asarray(array, dtype=np.int64) % 2
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows = [int("".join(map(str, row)), 2) if a.shape[1] else 0 for row in a]
        return cls(rows, a.shape[1])

    # accessors ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._cols)

    @property
    def row_ints(self) -> tuple[int, ...]:
        return self._rows

    def __getitem__(self, index: tuple[int, int]) -> int:
        r, c = index
        if not (0 <= c < self._cols):
            raise IndexError(f"column {c} out of range")
        return (self._rows[r] >> (self._cols - 1 - c)) & 1

    def row(self, r: int) -> int:
        return self._rows[r]

    def column(self, c: int) -> int:
        """Column ``c`` packed as an int whose most significant bit is row 0."""
        shift = self._cols - 1 - c
        out = 0
        for r in self._rows:
            out = (out << 1) | ((r >> shift) & 1)
        return out

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self._rows):
            for j in range(self._cols):
                out[i, j] = (r >> (self._cols - 1 - j)) & 1
        return out

    def to_strings(self) -> list[str]:
        return [format(r, f"0{self._cols}b") for r in self._rows]

    def transpose(self) -> "BinaryMatrix":
        if not self._rows:
            raise ValueError("cannot transpose a matrix with no rows")
        return BinaryMatrix((self.column(c) for c in range(self._cols)), len(self._rows))

    @property
    def T(self) -> "BinaryMatrix":
        return self.transpose()

    def gram(self) -> "BinaryMatrix":
        """``M M^T`` computed directly from row inner products."""
        rows = self._rows
        k = len(rows)
        if k == 0:
            raise ValueError("Gram matrix of a matrix with no rows is empty")
        out = []
        for a in rows:
            v = 0
            for b in rows:
                v = (v << 1) | dot(a, b)
            out.append(v)
        return BinaryMatrix(out, k)

    def hstack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return BinaryMatrix(
            ((a << other.cols) | b for a, b in zip(self._rows, other._rows)),
            self._cols + other.cols,
        )

    def vstack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return BinaryMatrix(self._rows + other._rows, self._cols)

    def delete_column(self, c: int) -> "BinaryMatrix":
        if not (0 <= c < self._cols):
            raise IndexError(f"column {c} out of range")
        if self._cols == 1:
            raise ValueError("cannot delete the only column")
        shift = self._cols - 1 - c
        low = (1 << shift) - 1
        return BinaryMatrix(
            (((r >> (shift + 1)) << shift) | (r & low) for r in self._rows), self._cols - 1
        )

    def permute_columns(self, perm: Sequence[int]) -> "BinaryMatrix":
        """Column ``j`` of the result is column ``perm[j]`` of ``self``."""
        n = self._cols
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation of the columns")
        out = []
        for r in self._rows:
            v = 0
            for src in perm:
                v = (v << 1) | ((r >> (n - 1 - src)) & 1)
            out.append(v)
        return BinaryMatrix(out, n)

    # dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self._cols == other._cols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._cols, self._rows))

    def __repr__(self) -> str:
        body = ", ".join(self.to_strings())
        return f"BinaryMatrix({self.rows}x{self.cols}: [{body}])"


def identity(k: int) -> BinaryMatrix:
    return BinaryMatrix((1 << (k - 1 - i) for i in range(k)), k)


def ones(rows: int, cols: int | None = None) -> BinaryMatrix:
    cols = rows if cols is None else cols
    return BinaryMatrix([(1 << cols) - 1] * rows, cols)


def _rref_rows(rows: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    work = list(rows)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        bit = 1 << (cols - 1 - c)
        for i in range(r, len(work)):
            if work[i] & bit:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        p = work[r]
        for j in range(len(work)):
            if j != r and work[j] & bit:
                work[j] ^= p
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rref(M: BinaryMatrix) -> tuple[BinaryMatrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows sink to the bottom."""
    rows, pivots = _rref_rows(M.row_ints, M.cols)
    return BinaryMatrix(rows, M.cols), pivots


def rank(M: BinaryMatrix) -> int:
    return len(_rref_rows(M.row_ints, M.cols)[1])


def mat_mul(A: BinaryMatrix, B: BinaryMatrix) -> BinaryMatrix:
    if A.cols != B.rows:
        raise ValueError(f"dimension mismatch: {A.shape} x {B.shape}")
    brows = B.row_ints
    m = A.cols
    out = []
    for a in A.row_ints:
        v = 0
        for j in range(m):
            if (a >> (m - 1 - j)) & 1:
                v ^= brows[j]
        out.append(v)
    return BinaryMatrix(out, B.cols)


def is_nonsingular(M: BinaryMatrix) -> bool:
    if M.rows != M.cols:
        raise ValueError(f"nonsingularity needs a square matrix, got {M.shape}")
    return rank(M) == M.rows


def nullspace_basis(M: BinaryMatrix) -> BinaryMatrix:
    """Basis (as rows) of ``{x : M x^T = 0}``."""
    n = M.cols
    rows, pivots = _rref_rows(M.row_ints, n)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << (n - 1 - f)
        fbit = 1 << (n - 1 - f)
        for r, p in enumerate(pivots):
            if rows[r] & fbit:
                v |= 1 << (n - 1 - p)
        basis.append(v)
    return BinaryMatrix(basis, n)


def reduce_vector(v: int, echelon_rows: Sequence[int], pivots: Sequence[int], cols: int) -> int:
    """Reduce ``v`` against rows in reduced echelon form; 0 means ``v`` is in their span."""
    for row, p in zip(echelon_rows, pivots):
        if (v >> (cols - 1 - p)) & 1:
            v ^= row
    return v
