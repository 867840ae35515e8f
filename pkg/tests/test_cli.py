"""End-to-end CLI smoke tests through subprocess."""
from __future__ import annotations

import json
import subprocess
import sys

from projcubes.cube import parse_cube_file, verify_cube
from projcubes.equivalence import canonical_rows
from projcubes.refdata import CUBE_731_A, CUBE_731_B, CUBE_731_C
from projcubes.cube import format_cube_file


def run_cli(*args: str, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "projcubes", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def test_bounds_text_and_json():
    out = run_cli("bounds", "--v", "7", "--k", "3")
    assert out.returncode == 0
    assert out.stdout.splitlines() == ["bound23 28", "bound27 10"]
    jout = run_cli("--format", "json", "bounds", "--v", "7", "--k", "3")
    assert json.loads(jout.stdout) == {"bound23": 28, "bound27": 10}


def test_timing_goes_to_stderr_not_stdout():
    out = run_cli("bounds", "--v", "7", "--k", "3")
    assert "elapsed" in out.stderr
    assert "elapsed" not in out.stdout


def test_construct_develop_verify_project_round_trip(tmp_path):
    nds = tmp_path / "d.nds"
    out = run_cli("construct", "paley", "--q", "7", "--alpha", "3", "--out", str(nds))
    assert out.returncode == 0
    assert nds.exists()
    text = nds.read_text(encoding="utf-8")
    assert text.startswith("ndiffset v=7 k=3 lambda=1 n=7")

    assert run_cli("verify", str(nds)).returncode == 0

    oa = tmp_path / "c.oa"
    out = run_cli("develop", str(nds), "--out", str(oa))
    assert out.returncode == 0
    C = parse_cube_file(oa.read_text(encoding="utf-8"))
    assert verify_cube(C.rows, 7, 3, 1).ok

    out = run_cli("project", str(oa), "--x", "1", "--y", "2")
    assert out.returncode == 0
    lines = [ln.split() for ln in out.stdout.splitlines() if ln]
    assert len(lines) == 7
    assert all(len(row) == 7 and set(row) <= {"0", "1"} for row in lines)
    assert sum(x == "1" for row in lines for x in row) == 21


def test_construct_inadmissible_exits_2():
    out = run_cli("construct", "paley", "--q", "5")
    assert out.returncode == 2
    assert "error:" in out.stderr


def test_verify_malformed_file_exits_2(tmp_path):
    bad = tmp_path / "bad.oa"
    bad.write_text("pcube v=7 k=3\n1 2 3\n", encoding="utf-8")
    out = run_cli("verify", str(bad))
    assert out.returncode == 2
    assert "error:" in out.stderr


def test_verify_invalid_cube_exits_1(tmp_path):
    lines = format_cube_file(CUBE_731_A).splitlines()
    assert lines[1] == "1 2 3"
    lines[1] = "1 2 5"  # parses fine, breaks a projection
    path = tmp_path / "broken.oa"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    out = run_cli("verify", str(path))
    assert out.returncode == 1
    assert out.stdout.startswith("fail")
    assert "pair=" in out.stdout


def test_equiv_paratopic_and_isotopic(tmp_path):
    a = tmp_path / "a.oa"
    b = tmp_path / "b.oa"
    c = tmp_path / "c.oa"
    a.write_text(format_cube_file(CUBE_731_A), encoding="utf-8")
    b.write_text(format_cube_file(CUBE_731_B), encoding="utf-8")
    c.write_text(format_cube_file(CUBE_731_C), encoding="utf-8")

    out = run_cli("equiv", str(a), str(b))
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0] == "paratopic"
    assert lines[1].startswith("conj ")
    assert any(ln.startswith("alpha 1 ") for ln in lines)

    out = run_cli("equiv", str(a), str(b), "--isotopy")
    assert out.returncode == 1
    assert out.stdout.strip() == "not isotopic"

    out = run_cli("equiv", str(a), str(c))
    assert out.returncode == 1
    assert out.stdout.strip() == "not paratopic"


def test_canon_is_class_invariant(tmp_path):
    a = tmp_path / "a.oa"
    b = tmp_path / "b.oa"
    a.write_text(format_cube_file(CUBE_731_A), encoding="utf-8")
    b.write_text(format_cube_file(CUBE_731_B), encoding="utf-8")
    out_a = run_cli("canon", str(a))
    out_b = run_cli("canon", str(b))
    assert out_a.returncode == out_b.returncode == 0
    assert out_a.stdout == out_b.stdout
    assert "aparOrder 63" in out_a.stdout


def test_aut_orders(tmp_path):
    a = tmp_path / "a.oa"
    a.write_text(format_cube_file(CUBE_731_A), encoding="utf-8")
    out = run_cli("aut", str(a))
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert "atopOrder 21" in lines
    assert "aparOrder 63" in lines
    assert any(ln.startswith("gen ") for ln in lines)


def test_classify_text_stream_and_json():
    out = run_cli("classify", "--group", "Z3", "--k", "2", "--lambda", "1")
    assert out.returncode == 0
    assert out.stdout.splitlines() == ["n=2 classes=1", "n=3 classes=1", "mu=3"]

    jout = run_cli("--format", "json", "classify", "--group", "Z3", "--k", "2", "--lambda", "1")
    data = json.loads(jout.stdout)
    assert data["mu"] == 3
    assert data["muExact"] is True
    assert data["classes"] == {"2": 1, "3": 1}


def test_classify_emit_writes_representatives(tmp_path):
    emit = tmp_path / "reps"
    out = run_cli(
        "classify", "--group", "Z3", "--k", "2", "--lambda", "1", "--emit", str(emit)
    )
    assert out.returncode == 0
    nds_files = sorted(p.name for p in emit.glob("*.nds"))
    oa_files = sorted(p.name for p in emit.glob("*.oa"))
    assert nds_files and oa_files
    for oa in emit.glob("*.oa"):
        C = parse_cube_file(oa.read_text(encoding="utf-8"))
        assert verify_cube(C.rows, 3, 2, 1).ok


def test_km_search_trivial_action(tmp_path):
    act = tmp_path / "trivial.act"
    act.write_text("action v=3 n=3\ngenerators=0\n", encoding="utf-8")
    out = run_cli("km-search", str(act), "--k", "2", "--lambda", "1")
    assert out.returncode == 0
    assert out.stdout.splitlines()[-1] == "classes=2"


def test_km_search_diagonal_action_file(tmp_path):
    act = tmp_path / "z7diag.act"
    shift = " ".join(str((x + 1) % 7 + 1) for x in range(7))  # x -> x+1, 1-based images
    act.write_text(
        "action v=7 n=3\ngenerators=1\ng\n" + "\n".join([shift] * 3) + "\n",
        encoding="utf-8",
    )
    out = run_cli("km-search", str(act), "--k", "3", "--lambda", "1")
    assert out.returncode == 0
    assert out.stdout.splitlines()[-1] == "classes=2"


def test_km_search_bad_action_file_exits_2(tmp_path):
    act = tmp_path / "bad.act"
    act.write_text("action v=7 n=3\ngenerators=1\ng\n1 1 3 4 5 6 7\n", encoding="utf-8")
    out = run_cli("km-search", str(act), "--k", "3", "--lambda", "1")
    assert out.returncode == 2
    assert "error:" in out.stderr


def test_report_tables_1_expected():
    out = run_cli("report-tables", "1")
    assert out.returncode == 0
    assert out.stdout.strip() == "1 2 1 1 0"
    out = run_cli("report-tables", "1", "--expected")
    assert out.returncode == 0


def test_stdout_is_deterministic_and_thread_flag_inert():
    first = run_cli("report-tables", "1")
    second = run_cli("report-tables", "1")
    threaded = run_cli("--threads", "4", "report-tables", "1")
    assert first.stdout == second.stdout == threaded.stdout


def test_unknown_subcommand_exits_2():
    out = run_cli("frobnicate")
    assert out.returncode == 2
