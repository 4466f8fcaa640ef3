import csv

import pytest

from charlab.cli import main
from charlab.reporting import csv_digest

BINARY_CFG = """
experiment = smoke
p_list = 7, 13
chi = legendre
set_a = interval(a=0,n=3), residues
set_b = residues(negate=1)
seed_list = 0, 1
"""

TERNARY_CFG = """
experiment = tsmoke
p_list = 11
chi = legendre
set_a = interval(a=1,n=4)
set_b = random(n=3)
set_c = interval(a=0,n=1)
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_binary_scan_runs(tmp_path, capsys):
    cfg = write(tmp_path, "b.cfg", BINARY_CFG)
    out = tmp_path / "b.csv"
    assert main(["binary-scan", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out, newline="")))
    assert len(rows) == 2 * 2 * 2 * 1  # p x set_a x seeds x chi
    assert {r["kind"] for r in rows} == {"binary"}
    assert all(float(r["lhs"]) <= int(r["size_a"]) * int(r["size_b"]) + 1e-9 for r in rows)
    assert "wrote" in capsys.readouterr().out


def test_ternary_scan_with_figures(tmp_path):
    cfg = write(tmp_path, "t.cfg", TERNARY_CFG)
    out = tmp_path / "t.csv"
    assert main(["ternary-scan", "--config", cfg, "--out", str(out), "--figures"]) == 0
    assert out.exists()
    assert (tmp_path / "t.png").exists()  # figure lands beside the CSV


def test_scan_determinism_and_workers(tmp_path):
    cfg = write(tmp_path, "b.cfg", BINARY_CFG)
    outs = [tmp_path / f"run{i}.csv" for i in range(3)]
    main(["binary-scan", "--config", cfg, "--out", str(outs[0])])
    main(["binary-scan", "--config", cfg, "--out", str(outs[1])])
    main(["binary-scan", "--config", cfg, "--out", str(outs[2]), "--workers", "3"])
    digests = {csv_digest(o) for o in outs}
    assert len(digests) == 1


def test_config_errors_exit_code(tmp_path, capsys):
    bad = write(tmp_path, "bad.cfg", "p_list = 8")
    assert main(["binary-scan", "--config", bad, "--out", str(tmp_path / "x.csv")]) == 1
    unknown = write(tmp_path, "unknown.cfg", "p_lists = 7")
    assert main(["binary-scan", "--config", unknown, "--out", str(tmp_path / "y.csv")]) == 1
    missing = str(tmp_path / "nope.cfg")
    assert main(["binary-scan", "--config", missing, "--out", str(tmp_path / "z.csv")]) == 1
    capsys.readouterr()


def test_empty_grid_header_only(tmp_path):
    cfg = write(tmp_path, "e.cfg", "experiment = empty\nchi = legendre")
    out = tmp_path / "e.csv"
    assert main(["binary-scan", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.reader(open(out, newline="")))
    assert len(rows) == 1 and rows[0][0] == "experiment"


def test_weil_check_cli(tmp_path):
    cfg = write(tmp_path, "w.cfg", "p_list = 7, 11\npolys_per_case = 4")
    out = tmp_path / "w.csv"
    assert main(["weil-check", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out, newline="")))
    assert all(r["holds"] in ("true", "") for r in rows)
    assert len(rows) == 4 * (3 + 3)  # orders {2,3,6} for p=7, {2,5,10} for p=11


def test_davenport_cli(tmp_path):
    cfg = write(tmp_path, "d.cfg", "p_list = 11\nchi = legendre, higher\ni_sizes = 1, 2\nr_list = 1, 2")
    out = tmp_path / "d.csv"
    assert main(["davenport", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out, newline="")))
    assert len(rows) == 8
    assert all(r["holds"] == "true" and r["agree"] == "true" for r in rows)


def test_croot_sisask_cli(tmp_path):
    cfg = write(
        tmp_path, "cs.cfg",
        "experiment = cs\np_list = 31\nset_a = interval(a=0,n=6)\nepsilon_list = 0.5, 1.0",
    )
    out = tmp_path / "cs.csv"
    assert main(["croot-sisask", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out, newline="")))
    assert len(rows) == 2
    assert all(r["verified"] == "true" and r["chain_holds"] == "true" for r in rows)


def test_counts_cli(tmp_path):
    cfg = write(tmp_path, "c.cfg", "instances = 2")
    out = tmp_path / "c.csv"
    assert main(["counts", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out, newline="")))
    assert len(rows) == 2 * 5  # five suites
    assert all(r["match"] == "true" for r in rows)


def test_paley_cli(tmp_path, capsys):
    assert main(["paley-clique", "--p", "13"]) == 0
    assert "p=13 omega=3" in capsys.readouterr().out
    out = tmp_path / "p.csv"
    assert main(["paley-clique", "--p-max", "30", "--out", str(out), "--figures"]) == 0
    rows = list(csv.DictReader(open(out, newline="")))
    assert [int(r["p"]) for r in rows] == [5, 13, 17, 29]
    assert (tmp_path / "p.png").exists()
    capsys.readouterr()


def test_paley_cli_needs_argument(capsys):
    assert main(["paley-clique"]) == 1
    capsys.readouterr()


def test_paley_residue_class_error(capsys):
    assert main(["paley-clique", "--p", "7"]) == 1
    capsys.readouterr()


def test_cap_exit_code(capsys):
    assert main(["paley-clique", "--p", "509", "--cap", "100"]) == 2
    capsys.readouterr()
