"""LCD criteria, structured bases and the length-changing constructions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from collections.abc import Sequence

from .codes import (
    LinearCode,
    ZeroCodeError,
    dual,
    dual_distance,
    hull_dim,
    min_weight,
    parity_flags,
    puncture,
    shorten,
)
from .gf2 import BinaryMatrix, dot, is_nonsingular

__all__ = [
    "BasisKind",
    "PreconditionError",
    "SplitWitness",
    "StructuredBasis",
    "duplicate_column",
    "even_like_code",
    "even_punctured_all_lcd",
    "extend_parity",
    "hyperbolic_basis",
    "is_lcd",
    "odd_like_code",
    "odd_like_witnesses",
    "orthonormal_basis",
    "split_witness",
]


class PreconditionError(ValueError):
    """Input code does not satisfy the hypotheses of the requested operation."""


class BasisKind(enum.Enum):
    ORTHONORMAL = "orthonormal"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class StructuredBasis:
    kind: BasisKind
    rows: BinaryMatrix

    def check(self, code: LinearCode | None = None) -> None:
        """Raise ``AssertionError`` unless the basis has the promised inner products."""
        r = self.rows.row_ints
        k = len(r)
        if self.kind is BasisKind.ORTHONORMAL:
            for i in range(k):
                for j in range(k):
                    want = 1 if i == j else 0
                    assert dot(r[i], r[j]) == want, f"c_{i}.c_{j} != {want}"
        else:
            assert k % 2 == 0, "hyperbolic basis needs an even number of rows"
            for i in range(0, k, 2):
                for j in range(0, k, 2):
                    a, a2, b, b2 = r[i], r[i + 1], r[j], r[j + 1]
                    assert dot(a, b) == 0 and dot(a2, b2) == 0, "isotropic vectors not orthogonal"
                    assert dot(a, b2) == (1 if i == j else 0), "pairing broken"
        if code is not None:
            assert LinearCode.span(self.rows) == code, "basis does not span the code"


@dataclass(frozen=True)
class SplitWitness:
    coordinate: int
    shortened_is_lcd: bool
    punctured_is_lcd: bool


def is_lcd(C: LinearCode) -> bool:
    """Massey's test: the Gram matrix ``G G^T`` is nonsingular."""
    if C.k == 0:
        raise ZeroCodeError("LCD-ness of the zero code is not defined here")
    return is_nonsingular(C.G.gram())


def _require_lcd(C: LinearCode) -> None:
    if C.k == 0 or not is_lcd(C):
        raise PreconditionError("code is not LCD")


def _project_out_pair(work: list[int], a: int, b: int) -> list[int]:
    # assumes a.b = 1; removes the components along a and b
    return [x ^ (a if dot(x, b) else 0) ^ (b if dot(x, a) else 0) for x in work]


def orthonormal_basis(C: LinearCode) -> StructuredBasis:
    """Basis with ``c_i . c_j = [i == j]`` of an odd-like LCD code.

    Gram diagonalisation by congruence: peel off odd-weight vectors one at a
    time; when the remaining complement turns even-like, trade one of the
    orthonormal vectors and a hyperbolic pair ``(a, b)`` for three
    orthonormal vectors ``e+a, e+b, e+a+b``.
    """
    _require_lcd(C)
    even, _ = parity_flags(C)
    if even:
        raise PreconditionError("orthonormal bases exist only for odd-like codes")
    ortho: list[int] = []
    work = list(C.rows)
    while work:
        odd = next((i for i, w in enumerate(work) if w.bit_count() & 1), None)
        if odd is not None:
            e = work.pop(odd)
            ortho.append(e)
            work = [x ^ e if dot(x, e) else x for x in work]
            continue
        a = work.pop(0)
        j = next(i for i, w in enumerate(work) if dot(a, w))
        b = work.pop(j)
        work = _project_out_pair(work, a, b)
        e = ortho.pop()
        ortho.extend([e ^ a, e ^ b, e ^ a ^ b])
    basis = StructuredBasis(BasisKind.ORTHONORMAL, BinaryMatrix(ortho, C.n))
    basis.check(C)
    return basis


def hyperbolic_basis(C: LinearCode) -> StructuredBasis:
    """Symplectic basis ``c_1, c'_1, ...`` of an even-like LCD code."""
    _require_lcd(C)
    even, _ = parity_flags(C)
    if not even:
        raise PreconditionError("hyperbolic bases exist only for even-like codes")
    assert C.k % 2 == 0, "even-like LCD code with odd dimension"
    pairs: list[int] = []
    work = list(C.rows)
    while work:
        a = work.pop(0)
        j = next(i for i, w in enumerate(work) if dot(a, w))
        b = work.pop(j)
        work = _project_out_pair(work, a, b)
        pairs.extend([a, b])
    basis = StructuredBasis(BasisKind.HYPERBOLIC, BinaryMatrix(pairs, C.n))
    basis.check(C)
    return basis


def structured_basis(C: LinearCode) -> StructuredBasis:
    even, _ = parity_flags(C)
    return hyperbolic_basis(C) if even else orthonormal_basis(C)


def extend_parity(C: LinearCode, basis: BinaryMatrix | None = None) -> LinearCode:
    """Prepend a 1 to every vector of a structured basis.

    For an LCD ``[n, k, d]`` code with ``k`` even this gives an LCD
    ``[n+1, k, d or d+1]`` code of the opposite parity class.  The result
    depends on the basis; pass ``basis`` to choose one (it is checked).
    """
    if C.k % 2:
        raise PreconditionError(f"parity extension needs even dimension, got k={C.k}")
    _require_lcd(C)
    if basis is None:
        basis = structured_basis(C).rows
    else:
        even, _ = parity_flags(C)
        kind = BasisKind.HYPERBOLIC if even else BasisKind.ORTHONORMAL
        try:
            StructuredBasis(kind, basis).check(C)
        except AssertionError as exc:
            raise PreconditionError(f"not a {kind.value} basis of the code: {exc}") from None
    top = 1 << C.n
    return LinearCode(BinaryMatrix((top | r for r in basis.row_ints), C.n + 1))


def duplicate_column(C: LinearCode, v: Sequence[int]) -> LinearCode:
    """Code generated by ``(v^T v^T G)``; the Gram matrix is unchanged."""
    if C.k == 0:
        raise PreconditionError("column duplication needs k >= 1")
    if len(v) != C.k:
        raise ValueError(f"vector length {len(v)} does not match k={C.k}")
    top = 1 << C.n
    rows = [r | (top * 3 if bit & 1 else 0) for r, bit in zip(C.rows, v)]
    return LinearCode(BinaryMatrix(rows, C.n + 2))


def split_witness(C: LinearCode, i: int) -> SplitWitness:
    """LCD status of the shortened and punctured codes at coordinate ``i``.

    Requires an LCD code with ``d >= 2`` and dual distance ``>= 2``; then exactly
    one of the two flags is set. The zero code counts as LCD (trivial hull).
    """
    problems = []
    if C.k == 0 or not is_lcd(C):
        problems.append("code is not LCD")
    elif min_weight(C) < 2:
        problems.append("minimum distance < 2")
    dd = dual_distance(C) if C.k else None
    if dd is not None and dd < 2:
        problems.append("dual distance < 2")
    if problems:
        raise PreconditionError("; ".join(problems))
    return SplitWitness(
        coordinate=i,
        shortened_is_lcd=hull_dim(shorten(C, i)) == 0,
        punctured_is_lcd=hull_dim(puncture(C, i)) == 0,
    )


def odd_like_witnesses(C: LinearCode) -> tuple[list[int], list[int]]:
    """Coordinates whose shortened (resp. punctured) code is again LCD."""
    _require_lcd(C)
    even, all_ones = parity_flags(C)
    if even:
        raise PreconditionError("code is even-like")
    short = [i for i in range(C.n) if hull_dim(shorten(C, i)) == 0]
    punct = [i for i in range(C.n) if hull_dim(puncture(C, i)) == 0]
    if all_ones:
        assert short == list(range(C.n)), "a shortened code of an all-ones LCD code is not LCD"
    else:
        assert short and punct, "missing shortening or puncturing witness"
    return short, punct


def even_punctured_all_lcd(C: LinearCode) -> bool:
    """Check that every punctured code of an even-like LCD code is LCD."""
    _require_lcd(C)
    even, _ = parity_flags(C)
    if not even:
        raise PreconditionError("code is odd-like")
    return all(is_lcd(puncture(C, i)) for i in range(C.n))


def _pad_by_pairs(C: LinearCode, n: int) -> LinearCode:
    # each step appends a repeated column, which keeps LCD-ness, the parity
    # class and (for d_perp > 1) a dual distance of 2
    v = [1] + [0] * (C.k - 1)
    while C.n < n:
        C = duplicate_column(C, v)
    return C


def even_like_code(n: int, k: int) -> LinearCode:
    """An even-like LCD ``[n, k]`` code with dual distance ``>= 2``.

    Exists for even ``k >= 4`` and every ``n > k``, and for ``k = 2`` exactly
    when ``n`` is odd.
    """
    if k < 2 or k % 2 or n <= k:
        raise PreconditionError(f"needs even k >= 2 and n > k, got [{n},{k}]")
    if (n - k) % 2:
        base = dual(LinearCode.repetition(k + 1))
    elif k >= 4:
        m = k + 2
        base = dual(LinearCode.from_rows([0b111 << (m - 3), (1 << m) - 1], m))
    else:
        raise PreconditionError("even-like LCD [n,2] codes with d_perp >= 2 need odd n")
    return _pad_by_pairs(base, n)


def odd_like_code(n: int, k: int) -> LinearCode:
    """An odd-like LCD ``[n, k]`` code with dual distance ``>= 2``.

    Built as the dual of an LCD code of dimension 2 or 3 and minimum distance
    ``>= 2`` that misses the all-ones vector.  For ``k = 2`` and odd ``n`` no
    such code exists: an LCD ``[n, 2]`` code without zero coordinates has an
    odd number of columns of each nonzero type, so it is even-like.
    """
    if k < 2 or n < k + 2:
        raise PreconditionError(f"needs k >= 2 and n >= k + 2, got [{n},{k}]")
    if k == 2 and n % 2:
        raise PreconditionError("odd-like LCD [n,2] codes with d_perp >= 2 need even n")
    if (n - k) % 2 == 0:
        m = k + 2
        rows = [0b1110 << (m - 4), 0b0111 << (m - 4)]
    else:
        m = k + 3
        rows = [0b010001 << (m - 6), 0b001001 << (m - 6), 0b000111 << (m - 6)]
    return _pad_by_pairs(dual(LinearCode.from_rows(rows, m)), n)
