from __future__ import annotations

import subprocess
import sys

import pytest

from halfint.cli import main
from halfint.formats import dump

from conftest import SFVS_TRIANGLE, STAR


@pytest.fixture
def star_file(tmp_path):
    p = tmp_path / "star.mwc"
    p.write_text(dump(STAR))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_solve_yes_with_witness(capsys, star_file):
    code, out, _ = run(capsys, "solve", star_file, "-k", "1", "--witness")
    assert code == 0
    assert out[0] == "answer yes" and "witness: 4" in out
    assert any(line.startswith("stats nodes=") for line in out)


def test_solve_no_prints_lower_bound(capsys, star_file):
    code, out, _ = run(capsys, "solve", star_file, "-k", "0", "--certificate")
    assert code == 1
    assert out[0] == "answer no"
    assert "cover 4 2/2" in out and "lb 2/2" in out
    assert "path 1' 4 2'" in out


def test_find_min(capsys, tmp_path):
    p = tmp_path / "tri.sfvs"
    p.write_text(dump(SFVS_TRIANGLE))
    code, out, _ = run(capsys, "solve", str(p), "--find-min")
    assert code == 0 and "min 1" in out


def test_certify(capsys, star_file, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("witness: 4\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n")
    assert run(capsys, "certify", star_file, str(good))[:2] == (0, ["valid size=1"])
    code, out, _ = run(capsys, "certify", star_file, str(bad))
    assert code == 2 and out[0].startswith("invalid: deletes terminals")
    junk = tmp_path / "junk.txt"
    junk.write_text("x\n")
    assert run(capsys, "certify", star_file, str(junk))[0] == 2


def test_parse_error_exit_code(capsys, tmp_path):
    p = tmp_path / "broken.mwc"
    p.write_text("p mwc 2 1\ne 1 9\n")
    code, _, err = run(capsys, "solve", str(p), "-k", "1")
    assert code == 2 and ":2:5:" in err


def test_solve_needs_budget(capsys, star_file):
    assert run(capsys, "solve", star_file)[0] == 2


def test_bench_and_fuzz(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--family", "chain", "--sizes", "10,20", "-k", "2")
    assert code == 0 and len(out) == 2 and all("answer=yes" in line for line in out)
    code, out, _ = run(capsys, "fuzz", "--family", "sfvs", "--seeds", "5",
                       "--corpus", str(tmp_path / "corpus"))
    assert code == 0 and out[-1].endswith("mismatches=0")
    assert len(list((tmp_path / "corpus" / "sfvs").iterdir())) == 5


def test_module_entry_point(star_file):
    res = subprocess.run([sys.executable, "-m", "halfint", "solve", star_file, "-k", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("answer yes")
