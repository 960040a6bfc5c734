"""Randomised property suites for the LCD results implemented in this package.

Every suite draws its codes from a seeded :class:`random.Random`, so a run is
reproducible from ``(suite, trials, seed)``.  A trial is one code; failures
record a short description of the offending input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from collections.abc import Callable

from .codes import (
    LinearCode,
    dual,
    dual_distance,
    hull_dim,
    min_weight,
    parity_flags,
    puncture,
    shorten,
)
from .gf2 import BinaryMatrix, is_nonsingular, mat_mul, rank
from .lcd import (
    PreconditionError,
    duplicate_column,
    even_punctured_all_lcd,
    extend_parity,
    is_lcd,
    odd_like_witnesses,
    split_witness,
    structured_basis,
)

__all__ = ["SUITES", "SuiteResult", "random_code", "run_suite"]


@dataclass
class SuiteResult:
    suite: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        return f"suite={self.suite} trials={self.trials} failures={len(self.failures)}"


def random_code(rng: random.Random, n: int, k: int, even: bool = False) -> LinearCode:
    """Uniform-ish random full-rank ``[n, k]`` code (even-weight rows if ``even``)."""
    while True:
        rows = []
        for _ in range(k):
            r = rng.getrandbits(n)
            if even and r.bit_count() % 2:
                r ^= 1
            rows.append(r)
        C = LinearCode.span(BinaryMatrix(rows, n))
        if C.k == k:
            return C


def _sample(rng: random.Random, accept: Callable[[LinearCode], bool], nmin=4, nmax=14, even=False, kmax=7, keven=False):
    while True:
        n = rng.randint(nmin, nmax)
        k = rng.randint(1, min(kmax, n - 1))
        if keven:
            k = max(2, k - k % 2)
        if even and k > n - 1:
            continue
        C = random_code(rng, n, k, even)
        if accept(C):
            return C


def _lcd(C: LinearCode) -> bool:
    return C.k > 0 and is_lcd(C)


def _describe(C: LinearCode) -> str:
    return f"[{C.n},{C.k}] {' '.join(C.G.to_strings())}"


# suites -----------------------------------------------------------------------


def _massey(rng, fail):
    n = rng.randint(2, 16)
    k = rng.randint(1, n - 1)
    C = random_code(rng, n, k)
    H = dual(C).G
    facts = (
        hull_dim(C) == 0,
        hull_dim(dual(C)) == 0,
        is_nonsingular(mat_mul(C.G, C.G.T)),
        is_nonsingular(mat_mul(H, H.T)),
        is_lcd(C),
    )
    if len(set(facts)) != 1:
        fail(f"{_describe(C)}: {facts}")


def _direct_sum(rng, fail):
    n = rng.randint(2, 16)
    k = rng.randint(1, n - 1)
    C = random_code(rng, n, k)
    full = rank(C.G.vstack(dual(C).G)) == n
    if full != is_lcd(C):
        fail(_describe(C))


def _split(rng, fail):
    def ok(C):
        return _lcd(C) and min_weight(C) >= 2 and (dual_distance(C) or 99) >= 2

    C = _sample(rng, ok, nmin=3)
    for i in range(C.n):
        w = split_witness(C, i)
        if w.shortened_is_lcd == w.punctured_is_lcd:
            fail(f"{_describe(C)} coordinate {i}")


def _punctured(rng, fail):
    C = _sample(rng, _lcd, nmin=3, even=True, keven=True)
    if not parity_flags(C)[0]:
        fail(f"{_describe(C)} not even-like")
    elif not even_punctured_all_lcd(C):
        fail(_describe(C))


def _with_all_ones(rng: random.Random) -> LinearCode:
    while True:
        n = rng.randint(3, 14)
        k = rng.randint(1, min(7, n - 1))
        ones = (1 << n) - 1
        C = LinearCode.span(BinaryMatrix([rng.getrandbits(n) for _ in range(k - 1)] + [ones], n))
        if _lcd(C) and not parity_flags(C)[0]:
            return C


def _oddlike(rng, fail):
    if rng.random() < 0.3:
        # codes through the all-ones vector exercise the first claim
        C = _with_all_ones(rng)
    else:
        C = _sample(rng, lambda C: _lcd(C) and not parity_flags(C)[0], nmin=3)
    _, all_ones = parity_flags(C)
    try:
        short, punct = odd_like_witnesses(C)
    except AssertionError as exc:
        fail(f"{_describe(C)}: {exc}")
        return
    if all_ones and short != list(range(C.n)):
        fail(f"{_describe(C)}: shortenings {short}")
    if not all_ones and not (short and punct):
        fail(f"{_describe(C)}: witnesses {short} {punct}")


def _prop2(rng, fail):
    n = rng.randint(2, 14)
    k = rng.randint(1, n)
    C = random_code(rng, n, k)
    v = [rng.randint(0, 1) for _ in range(k)]
    D = duplicate_column(C, v)
    # Gram of the generator (v^T v^T G) itself, before any row reduction
    top = 1 << C.n
    G2 = BinaryMatrix([r | (top * 3 if b else 0) for r, b in zip(C.rows, v)], C.n + 2)
    if mat_mul(G2, G2.T) != mat_mul(C.G, C.G.T):
        fail(f"{_describe(C)} v={v}: Gram changed")
    if is_lcd(D) != is_lcd(C):
        fail(f"{_describe(C)} v={v}: LCD status changed")
    dd = dual_distance(C)
    if dd is not None and dd > 1 and any(v) and dual_distance(D) != 2:
        fail(f"{_describe(C)} v={v}: dual distance {dual_distance(D)}")


def _parity_flip(rng, fail):
    C = _sample(rng, _lcd, nmin=2, keven=True)
    E = extend_parity(C)
    d, e = min_weight(C), min_weight(E)
    even_c, even_e = parity_flags(C)[0], parity_flags(E)[0]
    if not is_lcd(E):
        fail(f"{_describe(C)}: extension not LCD")
    if even_c == even_e:
        fail(f"{_describe(C)}: parity class unchanged")
    if not (d <= e <= d + 1) or (even_e and e % 2):
        fail(f"{_describe(C)}: d={d} -> {e}")


def _shorten_hull(rng, fail):
    n = rng.randint(2, 14)
    k = rng.randint(1, n)
    C = random_code(rng, n, k)
    h = hull_dim(C)
    for i in range(n):
        if hull_dim(shorten(C, i)) > h + 1:
            fail(f"{_describe(C)} coordinate {i}")


def _punct_short_duality(rng, fail):
    n = rng.randint(2, 14)
    k = rng.randint(0, n)
    C = random_code(rng, n, k) if k else LinearCode.zero(n)
    for i in range(n):
        if dual(puncture(C, i)) != shorten(dual(C), i) or dual(shorten(C, i)) != puncture(dual(C), i):
            fail(f"{_describe(C)} coordinate {i}")


_BASIS_POOL: list[LinearCode] = []


def _basis_pool() -> list[LinearCode]:
    """LCD codes from classifier runs (k <= 10) for the structured-basis suite."""
    if not _BASIS_POOL:
        from .classify import SearchSpec, classify

        for n, k, d in [(10, 4, 3), (11, 5, 3), (12, 4, 4), (10, 6, 2), (11, 7, 2), (13, 10, 2)]:
            _BASIS_POOL.extend(r.code for r in classify(SearchSpec(n, k, d, 1)))
    return _BASIS_POOL


def _bases(rng, fail, trial):
    pool = _basis_pool()
    base = pool[trial % len(pool)]
    # a random coordinate order gives a different generator after row reduction
    perm = list(range(base.n))
    rng.shuffle(perm)
    C = LinearCode(base.G.permute_columns(perm))
    try:
        structured_basis(C).check(C)
    except (AssertionError, PreconditionError) as exc:
        fail(f"{_describe(C)}: {exc}")


SUITES: dict[str, Callable] = {
    "massey": _massey,
    "direct-sum": _direct_sum,
    "split": _split,
    "punctured": _punctured,
    "oddlike": _oddlike,
    "prop2": _prop2,
    "parity-extension": _parity_flip,
    "shorten-hull": _shorten_hull,
    "shorten-puncture-duality": _punct_short_duality,
    "structured-basis": _bases,
}


def run_suite(name: str, trials: int = 1000, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rng = random.Random(f"{name}:{seed}")
    result = SuiteResult(name, trials)
    body = SUITES[name]
    for t in range(trials):
        if body is _bases:
            body(rng, result.failures.append, t)
        else:
            body(rng, result.failures.append)
    return result
