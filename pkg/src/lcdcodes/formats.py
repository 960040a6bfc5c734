"""Text formats: code files, classification databases, seed files and bound tables.

Code file::

    # comment
    n k
    <k rows of n characters from {0,1}>

A database is a header comment block followed by code records separated by a
line ``---``; each record starts with ``# d=<d> ddual=<d_perp> hull=<h>``.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from collections.abc import Iterable
from typing import IO

from .bounds import BoundsTable
from .codes import LinearCode, RankDeficientError, metrics
from .gf2 import BinaryMatrix

__all__ = [
    "CodeFileError",
    "CodeFileRecord",
    "format_code",
    "parse_code_file",
    "parse_code_records",
    "parse_triples",
    "read_code_db",
    "write_bounds_tsv",
    "write_code_db",
]

DB_MAGIC = "# lcdcodes database v1"


class CodeFileError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass
class CodeFileRecord:
    n: int
    k: int
    rows: list[str]
    comments: list[str] = field(default_factory=list)
    header_line: int = 0

    def code(self) -> LinearCode:
        if self.k == 0:
            return LinearCode.zero(self.n)
        try:
            return LinearCode(BinaryMatrix.from_strings(self.rows, self.n))
        except RankDeficientError as exc:
            raise CodeFileError(self.header_line, f"rank deficient generator: {exc}") from None

    def meta(self) -> dict[str, str]:
        """``key=value`` pairs found in the record's comment lines."""
        out = {}
        for c in self.comments:
            for tok in c.split():
                if "=" in tok:
                    key, val = tok.split("=", 1)
                    out[key] = val
        return out


def _text(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CodeFileError(0, f"not UTF-8 text ({exc.reason})") from None
    return data


def parse_code_records(data: bytes | str) -> list[CodeFileRecord]:
    """Split a code file or database into records, checking shapes only."""
    records: list[CodeFileRecord] = []
    cur: CodeFileRecord | None = None
    comments: list[str] = []

    def finish(lineno: int) -> None:
        nonlocal cur, comments
        if cur is not None and len(cur.rows) != cur.k:
            raise CodeFileError(lineno, f"expected {cur.k} rows, found {len(cur.rows)}")
        if cur is not None:
            records.append(cur)
        cur, comments = None, []

    lines = _text(data).splitlines()
    for lineno, raw in enumerate(lines, 1):
        body, _, comment = raw.partition("#")
        body = body.strip()
        if raw.strip() == "---":
            finish(lineno)
            continue
        if not body:
            if comment.strip():
                (cur.comments if cur is not None else comments).append(comment.strip())
            continue
        if cur is None:
            parts = body.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise CodeFileError(lineno, f"bad header {body!r}, expected 'n k'")
            n, k = int(parts[0]), int(parts[1])
            if n < 1 or k > n:
                raise CodeFileError(lineno, f"bad parameters n={n}, k={k}")
            cur = CodeFileRecord(n, k, [], comments, lineno)
            comments = []
            continue
        if len(cur.rows) == cur.k:
            raise CodeFileError(lineno, f"more than k={cur.k} rows")
        bad = set(body) - {"0", "1"}
        if bad:
            raise CodeFileError(lineno, f"illegal characters {''.join(sorted(bad))!r}")
        if len(body) != cur.n:
            raise CodeFileError(lineno, f"row has length {len(body)}, expected n={cur.n}")
        cur.rows.append(body)
    finish(len(lines) + 1)
    return records


def parse_code_file(data: bytes | str) -> list[LinearCode]:
    """Parse and rank-check every code in ``data``."""
    return [rec.code() for rec in parse_code_records(data)]


def format_code(code: LinearCode, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{code.n} {code.k}")
    out.extend(code.G.to_strings())
    return "\n".join(out) + "\n"


def write_code_db(records, sink: IO[str], reproducible: bool = True, note: str | None = None) -> None:
    """Write classification records (already sorted by certificate)."""
    sink.write(DB_MAGIC + "\n")
    if note:
        sink.write(f"# {note}\n")
    sink.write(f"# count={len(records)}\n")
    if not reproducible:
        stamp = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
        sink.write(f"# generated {stamp}\n")
    for i, rec in enumerate(records):
        if i:
            sink.write("---\n")
        met = rec.metrics
        dd = "-" if met.d_dual is None else met.d_dual
        sink.write(format_code(LinearCode(rec.canonical.matrix), [f"d={met.d} ddual={dd} hull={met.hull_dim}"]))


def read_code_db(data: bytes | str) -> list[tuple[LinearCode, dict[str, str]]]:
    return [(rec.code(), rec.meta()) for rec in parse_code_records(data)]


def parse_triples(data: bytes | str, what: str = "value") -> list[tuple[int, int, int]]:
    """Rows ``n k value`` (tab or space separated) with ``#`` comments."""
    out = []
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise CodeFileError(lineno, f"expected 'n k {what}', got {body!r}")
        n, k, v = map(int, parts)
        if not (1 <= k <= n) or v < 1:
            raise CodeFileError(lineno, f"invalid entry n={n} k={k} {what}={v}")
        out.append((n, k, v))
    return out


def write_bounds_tsv(table: BoundsTable, sink: IO[str]) -> None:
    sink.write("n\tk\tlower\tupper\tstatus\tprovenance\n")
    for cell in table:
        sink.write(f"{cell.n}\t{cell.k}\t{cell.lower}\t{cell.upper}\t{cell.status}\t{cell.summary()}\n")


def check_record(code: LinearCode, meta: dict[str, str]) -> bool:
    """Do the stored ``d``/``ddual``/``hull`` comments match the code?"""
    met = metrics(code)
    dd = "-" if met.d_dual is None else str(met.d_dual)
    return meta.get("d") == str(met.d) and meta.get("ddual") == dd and meta.get("hull") == str(met.hull_dim)
