import io
import subprocess
import sys

import pytest

from lcdcodes.bounds import build_table
from lcdcodes.classify import SearchSpec, classify
from lcdcodes.cli import run_command
from lcdcodes.codes import LinearCode
from lcdcodes.formats import (
    CodeFileError,
    check_record,
    parse_code_file,
    parse_code_records,
    parse_triples,
    read_code_db,
    write_bounds_tsv,
    write_code_db,
)
from lcdcodes.canonical import canonical_form


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = run_command(list(argv), out, err)
    return rc, out.getvalue(), err.getvalue()


# code files -----------------------------------------------------------------


def test_parse_examples():
    assert parse_code_file(b"2 1\n11\n") == [LinearCode.repetition(2)]
    [C] = parse_code_file(b"# comment\n6 2\n111000\n111111\n")
    assert C == LinearCode.from_strings(["111000", "111111"])


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("3 2\n110\n110\n", 1, "rank deficient"),
        ("3\n110\n", 1, "bad header"),
        ("3 2\n110\n01\n", 3, "length"),
        ("3 2\n110\n01x\n", 3, "illegal"),
        ("3 1\n110\n011\n", 3, "more than"),
        ("3 2\n110\n", 3, "expected 2 rows"),
        ("2 3\n", 1, "bad parameters"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(CodeFileError) as info:
        parse_code_file(text.encode())
    assert info.value.line == line and fragment in str(info.value)


def test_non_utf8():
    with pytest.raises(CodeFileError):
        parse_code_file(b"\xff\xfe")


def test_multiple_records_and_comments():
    recs = parse_code_records("# a\n2 1\n11\n---\n# b x=1\n3 1\n111\n")
    assert [r.n for r in recs] == [2, 3]
    assert recs[1].meta() == {"x": "1"}


# databases ------------------------------------------------------------------


def db_text(recs, **kw):
    buf = io.StringIO()
    write_code_db(recs, buf, **kw)
    return buf.getvalue()


def test_empty_db_is_header_only():
    text = db_text([])
    assert all(line.startswith("#") for line in text.splitlines())
    assert read_code_db(text) == []


@pytest.mark.parametrize("spec, count", [(SearchSpec(8, 4, 3, 2), 1), (SearchSpec(17, 4, 8, 2), 2)])
def test_db_roundtrip(spec, count):
    recs = classify(spec)
    text = db_text(recs)
    back = read_code_db(text)
    assert len(back) == count
    assert [canonical_form(C).certificate for C, _ in back] == [r.canonical.certificate for r in recs]
    assert all(check_record(C, meta) for C, meta in back)
    assert db_text(recs) == text


def test_timestamp_only_when_not_reproducible():
    recs = classify(SearchSpec(8, 4, 3, 2))
    assert "generated" not in db_text(recs)
    assert "generated" in db_text(recs, reproducible=False)


def test_triples():
    assert parse_triples("# x\n23 7 9\n24\t14 5  # note\n") == [(23, 7, 9), (24, 14, 5)]
    with pytest.raises(CodeFileError):
        parse_triples("23 7\n")


def test_bounds_tsv():
    buf = io.StringIO()
    write_bounds_tsv(build_table(6), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n\tk\tlower\tupper\tstatus\tprovenance"
    assert len(lines) == 1 + 21
    assert lines[1].split("\t")[:5] == ["1", "1", "1", "1", "exact"]


# command line ---------------------------------------------------------------


def test_cli_classify_count(tmp_path):
    db = tmp_path / "db.txt"
    rc, out, _ = run("classify", "--n", "17", "--k", "4", "--dmin", "8", "--dual-dmin", "2", "--out", str(db))
    assert rc == 0 and out.strip() == "count=2"
    assert len(read_code_db(db.read_bytes())) == 2


def test_cli_analyze(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("6 2\n111000\n111111\n")
    rc, out, _ = run("analyze", str(f))
    assert rc == 0 and "d=3 lcd=true" in out
    assert "weights=1 0 0 2 0 0 1" in out


def test_cli_dlcd():
    rc, out, _ = run("dlcd", "--n", "8", "--k", "4")
    assert (rc, out) == (0, "3\n")


def test_cli_usage_error():
    rc, _, err = run("classify", "--n", "5")
    assert rc == 2 and err.startswith("ERROR usage:")


def test_cli_input_error(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3 2\n110\n110\n")
    rc, _, err = run("analyze", str(f))
    assert rc == 2 and err.startswith("ERROR input: line 1")


def test_cli_scale_guard():
    rc, _, err = run("classify", "--n", "40", "--k", "20", "--dmin", "2")
    assert rc == 3 and err.startswith("ERROR scale-guard:")


def test_cli_contradiction(tmp_path):
    seeds = tmp_path / "s.tsv"
    seeds.write_text("10 2 3\n")
    rc, _, err = run("table", "--nmax", "12", "--seeds", str(seeds), "--out", str(tmp_path / "t.tsv"))
    assert rc == 1 and err.startswith("ERROR contradiction:")


def test_cli_table_derivation(tmp_path):
    seeds, ceil, out = tmp_path / "s", tmp_path / "c", tmp_path / "t.tsv"
    seeds.write_text("23 7 9\n")
    ceil.write_text("25 7 10\n")
    rc, _, _ = run("table", "--nmax", "25", "--seeds", str(seeds), "--ceilings", str(ceil), "--out", str(out))
    assert rc == 0
    row = next(r for r in out.read_text().splitlines() if r.startswith("25\t7\t"))
    assert row.split("\t")[2:5] == ["10", "10", "exact"] and "double-column" in row


def test_cli_construct(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("6 2\n111000\n111111\n")
    rc, out, _ = run("construct", "--op", "shorten", "--coord", "0", "--in", str(f))
    assert rc == 0 and parse_code_file(out) == [LinearCode.from_strings(["00111"])]
    rc, out, _ = run("construct", "--op", "duplicate-column", "--vector", "11", "--in", str(f))
    assert rc == 0 and parse_code_file(out)[0].n == 8
    rc, out, _ = run("construct", "--op", "extend-parity", "--in", str(f))
    assert rc == 0 and parse_code_file(out)[0].n == 7
    rc, _, err = run("construct", "--op", "puncture", "--in", str(f))
    assert rc == 2


def test_cli_construct_precondition(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("3 1\n111\n")
    rc, _, err = run("construct", "--op", "extend-parity", "--in", str(f))
    assert rc == 2 and err.startswith("ERROR precondition:")


def test_cli_verify():
    rc, out, _ = run("verify", "--suite", "massey", "--trials", "50", "--seed", "3")
    assert rc == 0 and out.startswith("suite=massey trials=50 failures=0")


def test_entry_point_stdin_stdout():
    proc = subprocess.run(
        [sys.executable, "-m", "lcdcodes.cli", "analyze", "-"],
        input=b"6 2\n111000\n111111\n",
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0 and b"lcd=true" in proc.stdout
