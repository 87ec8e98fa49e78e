import random
import subprocess
import sys
from pathlib import Path

import pytest

from ghwmpc.cli import main, parse_range
from ghwmpc.codes import code_from_generator
from ghwmpc.formats import (
    FormatError, digest, fixture_code, format_code, parse_code, parse_matrix, read_code, write_code,
)
from ghwmpc.gfield import GF
from ghwmpc.sampling import random_matrix

DATA = Path(__file__).resolve().parents[1] / "src" / "ghwmpc" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def values(out):
    return [int(line.split("value=")[1].split()[0]) for line in out.splitlines() if "value=" in line]


def test_parse_range():
    assert parse_range("3", 5) == [3]
    assert parse_range("1..3", 5) == [1, 2, 3]
    assert parse_range("1,4", 5) == [1, 4]
    assert parse_range(None, 3) == [1, 2, 3]
    with pytest.raises(ValueError):
        parse_range("a", 3)


@pytest.mark.parametrize("seed", range(20))
def test_round_trip(seed, tmp_path):
    rng = random.Random(seed)
    F = GF(rng.choice([2, 3, 4, 8, 9, 16]))
    n = rng.randint(1, 8)
    C = code_from_generator(F, random_matrix(F, rng.randint(1, n), n, rng), n)
    path = tmp_path / "c.code"
    write_code(C, path)
    assert read_code(path) == C
    assert parse_code(format_code(C)) == C


def test_negative_literals_and_comments():
    text = "# G\nq 3^1\nrows 1 cols 3  # shape\n-1 0 1\n"
    assert parse_code(text).gen.rows == ((1, 0, 2),)


@pytest.mark.parametrize("text", [
    "", "rows 1 cols 2\n1 1\n", "q 3^1\nrows 2 cols 2\n1 1\n", "q 3^1\nrows 1 cols 2\n1\n",
    "q 4^1\nrows 1 cols 1\n1\n", "q 2^2\nrows 1 cols 1\n-1\n", "q 3^1\nrows 1 cols 2\n1 x\n",
])
def test_format_errors(text):
    with pytest.raises(FormatError):
        parse_matrix(text)


def test_ghw_examples(capsys):
    code, out, _ = run(capsys, "ghw", "--code", str(DATA / "c1.code"), "--all", "--format", "kv")
    assert code == 0 and values(out) == [3, 6, 8]
    code, out, _ = run(capsys, "ghw", "--family", "rs:q=2^2,n=4,k=2", "--r", "1", "--format", "kv")
    assert code == 0 and values(out) == [3]


def test_ghw_zero_code(capsys, tmp_path):
    p = tmp_path / "zero.code"
    p.write_text("q 2^1\nrows 1 cols 3\n0 0 0\n")
    code, _, err = run(capsys, "ghw", "--code", str(p))
    assert code == 2 and "no GHWs" in err


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.code"
    bad.write_text("q 3^1\nrows 2 cols 2\n1 1\n")
    assert run(capsys, "ghw", "--code", str(bad))[0] == 2
    assert run(capsys, "ghw", "--code", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "ghw", "--family", "rs:q=4,n=4,k=2", "--r", "9")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bound", "--method", "nope"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_scale_guard_exit(capsys, monkeypatch):
    monkeypatch.setenv("GHWMPC_SCALE_GUARD", "10")
    code, _, err = run(capsys, "ghw", "--family", "rs:q=5,n=5,k=3", "--method", "subspaces", "--r", "1")
    assert code == 3 and "guard" in err


def test_precondition_exit_reports_witness(capsys, tmp_path):
    sing = tmp_path / "sing.mat"
    sing.write_text("q 3^1\nrows 2 cols 2\n1 1\n1 1\n")
    code, _, err = run(capsys, "bound", "--method", "h2-nested", "--c1", "rs:q=3,n=3,k=2",
                       "--c2", "rs:q=3,n=3,k=1", "--matrix", str(sing), "--r", "1")
    assert code == 4 and "nsc-witness: 2,0,1" in err
    code, _, _ = run(capsys, "bound", "--method", "h2-nested", "--c1", "rs:q=3,n=3,k=1",
                     "--c2", "rs:q=3,n=3,k=2", "--matrix", str(DATA / "a2.mat"))
    assert code == 4


def test_bound_examples(capsys):
    c1, c2 = str(DATA / "c1.code"), str(DATA / "c2.code")
    code, out, _ = run(capsys, "bound", "--method", "2x2-z", "--c1", c1, "--c2", c2,
                       "--matrix", str(DATA / "a1.mat"), "--r", "1..5", "--format", "kv")
    assert code == 0 and values(out) == [5, 8, 11, 14, 16]
    e1, e2, ea = (str(DATA / f) for f in ("ex_h3s2_c1.code", "ex_h3s2_c2.code", "ex_h3s2_a.mat"))
    code, out, _ = run(capsys, "bound", "--method", "h3-s2", "--c1", e1, "--c2", e2, "--matrix", ea,
                       "--r", "2", "--format", "kv")
    assert code == 0 and values(out) == [9] and "witness=0,0,0,0" in out
    code, out, _ = run(capsys, "bound", "--method", "upper", "--c1", e1, "--c2", e2, "--matrix", ea,
                       "--r", "2", "--format", "kv")
    assert code == 0 and values(out) == [9]
    code, out, _ = run(capsys, "bound", "--method", "eq2", "--c1", c1, "--c2", c2,
                       "--matrix", str(DATA / "a1.mat"), "--format", "kv")
    assert values(out) == [5]
    code, out, _ = run(capsys, "bound", "--method", "rs-formula", "--n", "4", "--k1", "3", "--k2", "1",
                       "--format", "kv")
    assert values(out) == [4, 6, 7, 8]


def test_bound_shape_mismatch(capsys):
    code, _, _ = run(capsys, "bound", "--method", "h3-nested", "--c1", "rs:q=3,n=3,k=2",
                     "--c2", "rs:q=3,n=3,k=1", "--matrix", str(DATA / "a2.mat"))
    assert code == 2


def test_general_exhaustive_and_h3(capsys, tmp_path):
    grm = tmp_path / "grm3.mat"
    grm.write_text("q 3^1\nrows 3 cols 3\n1 1 1\n0 1 2\n0 0 1\n")
    code, out, _ = run(capsys, "bound", "--method", "h3-nested", "--c1", "rm:q=3,nu=1,m=1",
                       "--c2", "rm:q=3,nu=0,m=1", "--c3", "rm:q=3,nu=-1,m=1", "--matrix", str(grm), "--format", "kv")
    assert code == 0 and values(out) == [6, 8, 9]


def test_deterministic_output(capsys):
    argv = ["ghw", "--family", "rs:q=5,n=5,k=3", "--all", "--method", "subspaces"]
    first = run(capsys, *argv, "--workers", "1")[1]
    second = run(capsys, *argv, "--workers", "3")[1]
    assert first == second
    assert "wall-time" not in first
    assert "wall-time" in run(capsys, *argv, "--timing")[1]


def test_kv_records_one_per_r(capsys):
    _, out, _ = run(capsys, "ghw", "--family", "rm:q=2,nu=1,m=3", "--all", "--format", "kv")
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert all(line.startswith("method=ghw inputs=") for line in lines)
    assert [int(l.split("r=")[1].split()[0]) for l in lines] == [1, 2, 3, 4]


def test_mpc_build(capsys, tmp_path):
    out = tmp_path / "d1.code"
    code, _, _ = run(capsys, "mpc-build", "--c1", str(DATA / "c1.code"), "--c2", str(DATA / "c2.code"),
                     "--matrix", str(DATA / "a1.mat"), "--out", str(out))
    assert code == 0
    D1 = read_code(out)
    assert (D1.n, D1.k) == (16, 5)
    _, printed, _ = run(capsys, "ghw", "--code", str(out), "--all", "--format", "kv")
    assert values(printed) == [5, 8, 11, 14, 16]


def test_nsc_check(capsys, tmp_path):
    code, out, _ = run(capsys, "nsc-check", "--matrix", str(DATA / "a2.mat"), "--format", "kv")
    assert code == 0 and "nsc=true" in out and "deltas=2,1" in out
    m = tmp_path / "m.mat"
    m.write_text("q 3^1\nrows 2 cols 3\n1 0 1\n0 1 1\n")
    code, out, _ = run(capsys, "nsc-check", "--matrix", str(m), "--format", "kv")
    assert code == 0 and "nsc=false" in out and "witness=1,1" in out


@pytest.mark.parametrize("example", ["table1", "table2", "table3", "ex-h3s2"])
def test_reproduce(capsys, example):
    code, out, _ = run(capsys, "reproduce", example)
    assert code == 0 and "FAIL" not in out and "PASS" in out


def test_reproduce_table3_values(capsys):
    _, out, _ = run(capsys, "reproduce", "table3", "--format", "kv")
    assert "computed=5,8,11,14,16" in out and "computed=6,10,12,15,16" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ghwmpc", "ghw", "--family", "rs:q=4,n=4,k=2", "--r", "1",
                          "--format", "kv"], capture_output=True, text=True)
    assert res.returncode == 0 and "value=3" in res.stdout


def test_fixtures_and_digest():
    C1 = fixture_code("c1.code")
    assert digest(C1) == digest(parse_code(format_code(C1)))
    assert digest(C1) != digest(fixture_code("c2.code"))
