"""Bounds on ``d_LCD(n, k)``, the largest minimum distance of a binary LCD ``[n, k]`` code.

A :class:`BoundsTable` holds an interval per cell.  Lower endpoints are always
backed by a code that exists (a formula, a seed, a construction rule applied
to another achieved lower endpoint), so construction rules may fire from
them.  Upper endpoints come from the Griesmer bound or an optional ceiling
file and move only through rules that are valid for the true values.

Rule ids:

``monotone-length``
    ``d(n-1,k) <= d(n,k)`` (append a zero coordinate).
``monotone-dim``
    ``d(n,k) <= d(n,k-1)``.
``odd-dim-shorten``
    ``k`` odd: ``d(n,k) <= d(n-1,k-1)`` (some shortened code is LCD).
``odd-codim-puncture``
    ``n-k`` odd: ``d(n,k) <= d(n-1,k) + 1`` (some punctured code is LCD).
``double-column``
    ``d(n,k)`` odd: ``d(n+2,k) >= d(n,k) + 1`` (parity column added twice).
``parity-extend``
    ``k`` even, ``d(n,k)`` odd: ``d(n+1,k) >= d(n,k) + 1``.
``even-optimum``
    ``k`` even, ``d(n,k) > d(n-1,k-1)``: every optimal code is even-like, so
    ``d(n,k)`` is even and ``d(n-1,k) >= d(n,k) - 1``.
``distance-two-chain``
    ``d(n,k) = 2``, ``n >= 4``, ``k <= n-2``: ``d(n+1,k+1) = 2``.
"""

from __future__ import annotations

import copy
from collections import deque
from dataclasses import dataclass, field
from collections.abc import Iterable, Iterator
from importlib import resources

__all__ = [
    "BoundsCell",
    "BoundsContradiction",
    "BoundsTable",
    "Provenance",
    "ReferenceEntry",
    "build_table",
    "formula_dlcd",
    "griesmer_upper",
    "load_reference",
    "propagate",
]

N_MAX_LIMIT = 64

Cell = tuple[int, int]


class BoundsContradiction(ValueError):
    """A cell ended up with ``lower > upper``."""

    def __init__(self, cell: Cell, lower: int, upper: int, chain: list[str]):
        self.cell = cell
        self.chain = chain
        msg = f"cell {cell}: lower {lower} > upper {upper}"
        if chain:
            msg += "\n  " + "\n  ".join(chain)
        super().__init__(msg)


@dataclass(frozen=True)
class Provenance:
    rule: str
    endpoint: str  # "lower" or "upper"
    value: int
    antecedents: tuple[Cell, ...] = ()

    def __str__(self) -> str:
        src = ";".join(f"{n},{k}" for n, k in self.antecedents)
        return f"{self.endpoint}={self.value} by {self.rule}" + (f" from ({src})" if src else "")


@dataclass
class BoundsCell:
    n: int
    k: int
    lower: int
    upper: int
    provenance: list[Provenance] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def status(self) -> str:
        return "exact" if self.exact else "interval"

    def last(self, endpoint: str) -> Provenance | None:
        for p in reversed(self.provenance):
            if p.endpoint == endpoint:
                return p
        return None

    def summary(self) -> str:
        parts = []
        for end in ("lower", "upper"):
            p = self.last(end)
            if p is not None:
                parts.append(str(p))
        return "; ".join(parts)


@dataclass
class BoundsTable:
    n_max: int
    cells: dict[Cell, BoundsCell]

    def __getitem__(self, cell: Cell) -> BoundsCell:
        return self.cells[cell]

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def __iter__(self) -> Iterator[BoundsCell]:
        return (self.cells[c] for c in sorted(self.cells))

    def intervals(self) -> dict[Cell, tuple[int, int]]:
        return {c: (x.lower, x.upper) for c, x in self.cells.items()}

    def tighten(self, cell: Cell, endpoint: str, value: int, rule: str, ante: Iterable[Cell] = ()) -> bool:
        """Move one endpoint inward; returns whether anything changed."""
        x = self.cells[cell]
        if endpoint == "lower":
            if value <= x.lower:
                return False
            x.lower = value
        else:
            if value >= x.upper:
                return False
            x.upper = value
        x.provenance.append(Provenance(rule, endpoint, value, tuple(ante)))
        if x.lower > x.upper:
            raise BoundsContradiction(cell, x.lower, x.upper, self.chain(cell))
        return True

    def chain(self, cell: Cell, depth: int = 8) -> list[str]:
        """Provenance of both endpoints of ``cell``, followed through antecedents."""
        out: list[str] = []
        seen: set[tuple[Cell, str]] = set()
        todo = [(cell, "lower", 0), (cell, "upper", 0)]
        while todo:
            c, end, lvl = todo.pop(0)
            if (c, end) in seen or c not in self.cells:
                continue
            seen.add((c, end))
            p = self.cells[c].last(end)
            if p is None:
                continue
            out.append("  " * lvl + f"({c[0]},{c[1]}) {p}")
            if lvl < depth:
                todo.extend((a, end, lvl + 1) for a in p.antecedents)
        return out


# formulas -------------------------------------------------------------------


def griesmer_upper(n: int, k: int) -> int:
    """Largest ``d`` with ``sum_{i<k} ceil(d / 2^i) <= n``."""
    d = 0
    while sum(-(-(d + 1) // (1 << i)) for i in range(k)) <= n:
        d += 1
    return d


def formula_dlcd(n: int, k: int) -> int | None:
    """Exact ``d_LCD(n, k)`` where a closed formula is known, else ``None``."""
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got ({n}, {k})")
    if k == n:
        return 1
    if k == n - 1:
        return 2 if n % 2 else 1
    if k == 1:
        return n if n % 2 else n - 1
    if k == 2:
        return 2 * n // 3 - (0 if n % 6 in (1, 2, 3, 4) else 1)
    if k == 3:
        return 4 * n // 7 - (0 if n % 7 in (3, 5) else 1)
    if k == 4:
        r = n % 15
        return 8 * n // 15 - (0 if r in (5, 9, 13) else 2 if r == 0 else 1)
    if k == 5:
        r = n % 31
        if r in (3, 5, 7, 11, 19, 20, 22, 26):
            return 16 * n // 31 - 1
        if r == 4:
            return 16 * n // 31 - 2
    i = n - k
    if i >= 2 and n >= 1 << i:
        return 2
    return None


# propagation ----------------------------------------------------------------


def _even_floor(x: int) -> int:
    return x - (x & 1)


def _pull(T: BoundsTable, t: Cell) -> list[tuple[str, int, str, tuple[Cell, ...]]]:
    """Every bound the rules give for cell ``t`` from the current table."""
    n, k = t
    C = T.cells
    out: list[tuple[str, int, str, tuple[Cell, ...]]] = []

    def U(c):
        return C[c].upper

    def L(c):
        return C[c].lower

    up1, up2 = (n + 1, k), (n + 2, k)
    dn1 = (n - 1, k)
    # upper endpoints
    if up1 in C:
        out.append(("upper", U(up1), "monotone-length", (up1,)))
        if k % 2 == 0 and U(up1) % 2:
            out.append(("upper", U(up1) - 1, "parity-extend", (up1,)))
    if up2 in C and U(up2) % 2:
        out.append(("upper", U(up2) - 1, "double-column", (up2,)))
    if k >= 2:
        out.append(("upper", U((n, k - 1)), "monotone-dim", ((n, k - 1),)))
        if dn1 in C:
            diag = (n - 1, k - 1)
            if k % 2:
                out.append(("upper", U(diag), "odd-dim-shorten", (diag,)))
            else:
                bound = max(U(diag), _even_floor(min(U(t), U(dn1) + 1)))
                out.append(("upper", bound, "even-optimum", (diag, dn1)))
            if n - 1 >= 4 and k - 1 <= n - 3 and U(diag) <= 2:
                out.append(("upper", 2, "distance-two-chain", (diag,)))
    if (n - k) % 2 and dn1 in C:
        out.append(("upper", U(dn1) + 1, "odd-codim-puncture", (dn1,)))
    # lower endpoints
    if dn1 in C:
        out.append(("lower", L(dn1), "monotone-length", (dn1,)))
        if k % 2 == 0 and L(dn1) % 2:
            out.append(("lower", L(dn1) + 1, "parity-extend", (dn1,)))
    dn2 = (n - 2, k)
    if dn2 in C and L(dn2) % 2:
        out.append(("lower", L(dn2) + 1, "double-column", (dn2,)))
    if (n, k + 1) in C:
        out.append(("lower", L((n, k + 1)), "monotone-dim", ((n, k + 1),)))
    if (n + 1, k + 1) in C and (k + 1) % 2:
        out.append(("lower", L((n + 1, k + 1)), "odd-dim-shorten", ((n + 1, k + 1),)))
    if up1 in C and (n + 1 - k) % 2:
        out.append(("lower", L(up1) - 1, "odd-codim-puncture", (up1,)))
    if k % 2 == 0 and k >= 2:
        if up1 in C and L(up1) > U((n, k - 1)):
            out.append(("lower", L(up1) - 1, "even-optimum", (up1, (n, k - 1))))
        diag = (n - 1, k - 1)
        if diag in C and L(t) > U(diag) and L(t) % 2:
            out.append(("lower", L(t) + 1, "even-optimum", (diag,)))
    return out


def _dependents(cells: Iterable[Cell]) -> dict[Cell, list[Cell]]:
    deps: dict[Cell, list[Cell]] = {c: [] for c in cells}
    for n, k in deps:
        for dn in (-2, -1, 0, 1, 2):
            for dk in (-1, 0, 1):
                c = (n + dn, k + dk)
                if c in deps and c != (n, k):
                    deps[(n, k)].append(c)
    return deps


def propagate(table: BoundsTable) -> BoundsTable:
    """Least fixpoint of all rules; returns a new table.

    Raises :class:`BoundsContradiction` with the provenance chain when a cell
    becomes empty.
    """
    T = copy.deepcopy(table)
    deps = _dependents(T.cells)
    work = deque(sorted(T.cells))
    queued = set(work)
    while work:
        t = work.popleft()
        queued.discard(t)
        changed = False
        for endpoint, value, rule, ante in _pull(T, t):
            changed |= T.tighten(t, endpoint, value, rule, ante)
        if changed:
            for c in [t, *deps[t]]:
                if c not in queued:
                    queued.add(c)
                    work.append(c)
    return T


def build_table(
    n_max: int,
    seeds: Iterable[tuple[int, int, int]] = (),
    ceilings: Iterable[tuple[int, int, int]] = (),
) -> BoundsTable:
    """Interval table for all ``1 <= k <= n <= n_max``.

    ``seeds`` are exact values ``(n, k, d_LCD)``; ``ceilings`` are external
    upper bounds ``(n, k, d)`` on linear codes.  Entries outside the table
    are ignored.
    """
    if not (1 <= n_max <= N_MAX_LIMIT):
        raise ValueError(f"n_max must be in 1..{N_MAX_LIMIT}, got {n_max}")
    cells: dict[Cell, BoundsCell] = {}
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            g = griesmer_upper(n, k)
            cells[(n, k)] = BoundsCell(n, k, 1, g, [Provenance("griesmer", "upper", g)])
    T = BoundsTable(n_max, cells)
    for (n, k), x in cells.items():
        if k <= n - 2:
            T.tighten((n, k), "lower", 2, "existence")
    for n, k, v in ceilings:
        if (n, k) in cells:
            T.tighten((n, k), "upper", v, "ceiling")
    for (n, k) in sorted(cells):
        v = formula_dlcd(n, k)
        if v is not None:
            T.tighten((n, k), "lower", v, "formula")
            T.tighten((n, k), "upper", v, "formula")
    for n, k, v in seeds:
        if (n, k) in cells:
            T.tighten((n, k), "lower", v, "seed")
            T.tighten((n, k), "upper", v, "seed")
    return propagate(T)


# reference data ---------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceEntry:
    n: int
    k: int
    lower: int
    upper: int
    annotated: bool  # the tables' '*' marker, kept without interpretation

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def load_reference() -> list[ReferenceEntry]:
    """Published interval tables for ``16 <= n <= 40``, shipped with the package."""
    text = resources.files("lcdcodes").joinpath("data/reference_tables.tsv").read_text()
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        n, k, lo, hi, star = line.split("\t")
        out.append(ReferenceEntry(int(n), int(k), int(lo), int(hi), star == "*"))
    return out
