import csv
import io

from charlab.reporting import (
    PaleyRecord,
    ScanRecord,
    WeilRecord,
    csv_digest,
    emit_csv,
    sort_records,
)


def scan_record(p=7, seed=0, lhs=1.0, flag="", ms=3.25):
    return ScanRecord(
        "demo", "binary", p, seed, "legendre", "interval(a=0,n=3)", "residues()", "",
        3, 3, 0, 1.5, 2.0, 0.1, lhs, None, None, False, flag, ms,
    )


def test_emit_header_only_for_empty_list(tmp_path):
    out = tmp_path / "empty.csv"
    emit_csv([], out, PaleyRecord)
    rows = list(csv.reader(open(out, newline="")))
    assert rows == [["p", "omega", "runtime_ms"]]


def test_emit_and_read_back(tmp_path):
    out = tmp_path / "scan.csv"
    emit_csv([scan_record()], out)
    rows = list(csv.DictReader(open(out, newline="")))
    assert len(rows) == 1
    row = rows[0]
    assert row["experiment"] == "demo"
    assert row["rhs"] == "" and row["ratio"] == ""  # None renders empty
    assert row["p_large_enough"] == "false"
    assert row["lhs"] == "1"


def test_real_formatting_17_digits():
    buf = io.StringIO()
    emit_csv([PaleyRecord(13, 3, 1.0 / 3.0)], buf)
    assert "0.33333333333333331" in buf.getvalue()


def test_rows_sorted_by_identity_key():
    records = [scan_record(p=11, seed=1), scan_record(p=7, seed=2), scan_record(p=11, seed=0)]
    got = [(r.p, r.seed) for r in sort_records(records)]
    assert got == [(7, 2), (11, 0), (11, 1)]


def test_digest_ignores_runtime_column(tmp_path):
    a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    emit_csv([scan_record(ms=1.0)], a)
    emit_csv([scan_record(ms=99.0)], b)
    emit_csv([scan_record(ms=1.0, lhs=2.0)], c)
    assert csv_digest(a) == csv_digest(b)
    assert csv_digest(a) != csv_digest(c)


def test_weil_record_none_holds(tmp_path):
    out = tmp_path / "w.csv"
    emit_csv([WeilRecord(7, 2, 0, 1, "(x+1)^2", 5.0, 2.6, False, None, 0.1)], out)
    row = next(csv.DictReader(open(out, newline="")))
    assert row["holds"] == "" and row["applicable"] == "false"
