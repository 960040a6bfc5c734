"""``lcdcodes`` command line.

Every failure writes a line ``ERROR <kind>: <message>`` to stderr.  Exit
codes: 0 success, 1 verification failure or contradiction, 2 usage or input
error, 3 refused by the scale guard.  ``-`` names stdin or stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import IO

from .bounds import BoundsContradiction, build_table, load_reference
from .classify import ScaleGuardError, SearchSpec, classify, d_lcd_exact
from .codes import LinearCode, metrics, puncture, shorten
from .formats import (
    CodeFileError,
    format_code,
    parse_code_file,
    parse_triples,
    write_bounds_tsv,
    write_code_db,
)
from .lcd import PreconditionError, duplicate_column, extend_parity
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would print usage and exit; we want our own error line
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


class _Sink:
    """Context manager yielding a text stream for ``path`` (``-`` is stdout)."""

    def __init__(self, path: str, stdout: IO[str]):
        self.path, self.stdout, self.fh = path, stdout, None

    def __enter__(self) -> IO[str]:
        if self.path == "-":
            return self.stdout
        try:
            self.fh = open(self.path, "w", encoding="utf-8", newline="\n")
        except OSError as exc:
            raise UsageError(f"cannot write {self.path}: {exc.strerror}") from None
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()


def _single_code(path: str) -> LinearCode:
    codes = parse_code_file(_read(path))
    if len(codes) != 1:
        raise CodeFileError(0, f"expected exactly one code, found {len(codes)}")
    return codes[0]


# subcommands --------------------------------------------------------------------


def _analyze(args, out: IO[str], err: IO[str]) -> int:
    codes = parse_code_file(_read(args.codefile))
    for i, C in enumerate(codes):
        if i:
            out.write("---\n")
        m = metrics(C)
        d = "-" if m.d is None else m.d
        dd = "-" if m.d_dual is None else m.d_dual
        out.write(
            f"n={m.n} k={m.k} d={d} lcd={str(m.is_lcd).lower()} ddual={dd} hull={m.hull_dim} "
            f"even_like={str(m.is_even_like).lower()} all_ones={str(m.has_all_ones).lower()}\n"
        )
        out.write("weights=" + " ".join(map(str, m.weight_enumerator)) + "\n")
    return EXIT_OK


def _threads(text: str) -> int:
    if text == "max":
        return os.cpu_count() or 1
    try:
        t = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'max', got {text!r}") from None
    if t < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1")
    return t


def _classify(args, out: IO[str], err: IO[str]) -> int:
    try:
        spec = SearchSpec(args.n, args.k, args.dmin, args.dual_dmin)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    recs = classify(spec, threads=args.threads, override=args.override)
    if args.out:
        note = f"n={args.n} k={args.k} dmin={args.dmin} dual_dmin={args.dual_dmin}"
        with _Sink(args.out, out) as sink:
            write_code_db(recs, sink, reproducible=args.reproducible, note=note)
    # keep stdout a clean database when it is the sink
    (err if args.out == "-" else out).write(f"count={len(recs)}\n")
    return EXIT_OK


def _dlcd(args, out: IO[str], err: IO[str]) -> int:
    if not (1 <= args.k <= args.n):
        raise UsageError(f"need 1 <= k <= n, got n={args.n} k={args.k}")
    out.write(f"{d_lcd_exact(args.n, args.k, override=args.override)}\n")
    return EXIT_OK


def _table(args, out: IO[str], err: IO[str]) -> int:
    seeds = parse_triples(_read(args.seeds), "d") if args.seeds else []
    if args.seed_reference:
        seeds += [(e.n, e.k, e.lower) for e in load_reference() if e.exact]
    ceilings = parse_triples(_read(args.ceilings), "d") if args.ceilings else []
    try:
        table = build_table(args.nmax, seeds, ceilings)
    except ValueError as exc:
        if isinstance(exc, BoundsContradiction):
            raise
        raise UsageError(str(exc)) from None
    with _Sink(args.out, out) as sink:
        write_bounds_tsv(table, sink)
    return EXIT_OK


def _construct(args, out: IO[str], err: IO[str]) -> int:
    C = _single_code(args.input)
    op = args.op
    if op in ("puncture", "shorten"):
        if args.coord is None:
            raise UsageError(f"--op {op} needs --coord")
        if not (0 <= args.coord < C.n):
            raise UsageError(f"--coord must be in 0..{C.n - 1}")
        D = puncture(C, args.coord) if op == "puncture" else shorten(C, args.coord)
    elif op == "duplicate-column":
        if args.vector is None:
            raise UsageError("--op duplicate-column needs --vector")
        if set(args.vector) - {"0", "1"} or len(args.vector) != C.k:
            raise UsageError(f"--vector must be {C.k} characters from {{0,1}}")
        D = duplicate_column(C, [int(c) for c in args.vector])
    else:
        D = extend_parity(C)
    with _Sink(args.out, out) as sink:
        sink.write(format_code(D, [f"{op} of [{C.n},{C.k}]"]))
    return EXIT_OK


def _verify(args, out: IO[str], err: IO[str]) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    ok = True
    for name in names:
        res = run_suite(name, args.trials, args.seed)
        out.write(f"{res}\n")
        for f in res.failures[:10]:
            out.write(f"  failure: {f}\n")
        ok &= res.ok
    if not ok:
        err.write("ERROR verify: property suite failures\n")
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lcdcodes", description="Binary LCD codes: analysis, classification and bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="metrics of every code in a code file")
    a.add_argument("codefile")
    a.set_defaults(func=_analyze)

    c = sub.add_parser("classify", help="inequivalent LCD [n,k,>=d] codes")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--dmin", type=int, required=True)
    c.add_argument("--dual-dmin", type=int, default=1)
    c.add_argument("--threads", type=_threads, default=1)
    c.add_argument("--out", help="database file ('-' for stdout)")
    c.add_argument("--override", action="store_true", help="lift the desk-scale guard")
    c.add_argument(
        "--reproducible",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="omit the timestamp comment (default on)",
    )
    c.set_defaults(func=_classify)

    d = sub.add_parser("dlcd", help="exact d_LCD(n,k) by search")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--override", action="store_true")
    d.set_defaults(func=_dlcd)

    t = sub.add_parser("table", help="interval table of d_LCD(n,k)")
    t.add_argument("--nmax", type=int, required=True)
    t.add_argument("--seeds", help="exact values, 'n k d' per line")
    t.add_argument("--ceilings", help="upper bounds on linear codes, 'n k d' per line")
    t.add_argument("--seed-reference", action="store_true", help="also seed the shipped exact table entries")
    t.add_argument("--out", default="-")
    t.set_defaults(func=_table)

    s = sub.add_parser("construct", help="apply a construction to a code file")
    s.add_argument("--op", required=True, choices=["extend-parity", "duplicate-column", "puncture", "shorten"])
    s.add_argument("--in", dest="input", default="-")
    s.add_argument("--coord", type=int, help="0-based coordinate for puncture/shorten")
    s.add_argument("--vector", help="k-bit column for duplicate-column")
    s.add_argument("--out", default="-")
    s.set_defaults(func=_construct)

    v = sub.add_parser("verify", help="randomised property suites")
    v.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=_verify)
    return p


def run_command(argv: list[str], stdout: IO[str] | None = None, stderr: IO[str] | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"ERROR usage: {exc}\n")
        return EXIT_USAGE
    except CodeFileError as exc:
        err.write(f"ERROR input: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        err.write(f"ERROR precondition: {exc}\n")
        return EXIT_USAGE
    except ScaleGuardError as exc:
        err.write(f"ERROR scale-guard: {exc}\n")
        return EXIT_GUARD
    except BoundsContradiction as exc:
        err.write(f"ERROR contradiction: {str(exc).splitlines()[0]}\n")
        for line in exc.chain:
            err.write(f"  {line}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
