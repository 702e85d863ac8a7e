import json
from math import comb

import pytest

from polarwef.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    f = tmp_path / "F.json"
    f.write_text("[0, 1, 2, 3, 4, 6]")
    p = tmp_path / "P.txt"
    p.write_text("0\n2\n4\n6\n")
    rm = tmp_path / "RM.txt"
    rm.write_text("0\n1\n2\n4\n")
    return f, p, rm


def test_spectrum_json(capsys, files):
    f, p, _ = files
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--frozen", str(f), "--mode", "punctured",
                       "--pattern", str(p), "--w-end", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["spectrum"] == [[0, "1"], [2, "2"], [4, "1"]]
    assert rep["params"]["w_end"] == 4
    assert set(rep["stats"]) >= {"n_c", "C", "ms"}


def test_report_deterministic_minus_timing(capsys):
    argv = ["spectrum", "--n", "6", "--nr-k", "24", "--mode", "shortened", "--random-pattern", "10",
            "--seed", "3", "--pac", "1011011", "--w-end", "10"]
    reps = []
    for _ in range(2):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        rep = json.loads(out)
        del rep["stats"]["ms"]
        reps.append(json.dumps(rep, sort_keys=True))
    assert reps[0] == reps[1]


def test_counts_roundtrip(capsys):
    code, out, _ = run(capsys, "coset", "--n", "8", "--nr-k", "256", "--prefix", "0")
    assert code == 0
    # fixing u_0 = 0 leaves the even-weight code of length 256
    rep = json.loads(out)
    assert {w: int(a) for w, a in rep["spectrum"]} == {w: comb(256, w) for w in range(0, 257, 2)}


def test_mindist(capsys, files):
    _, _, rm = files
    code, out, _ = run(capsys, "mindist", "--n", "3", "--frozen", str(rm))
    assert code == 0
    assert json.loads(out)["min_distance"] == [4, "14"]


def test_coset_csv(capsys, tmp_path):
    f = tmp_path / "F.txt"
    f.write_text("0\n1\n2\n")
    code, out, _ = run(capsys, "coset", "--n", "3", "--frozen", str(f), "--mode", "punctured",
                       "--bit-reversal", "4", "--prefix", "0001", "--w-end", "2", "--format", "csv")
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines == ["w,A_w", "2,4"]


def test_oracle_check(capsys):
    code, out, err = run(capsys, "oracle-check", "--n", "4", "--nr-k", "6", "--mode", "punctured",
                         "--bit-reversal", "3", "--pac", "1011011")
    assert code == 0
    assert "MATCH" in err
    assert json.loads(out)["status"] == "MATCH"


def test_output_file(capsys, tmp_path, files):
    _, _, rm = files
    dest = tmp_path / "out.csv"
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--frozen", str(rm), "--w-end", "8",
                       "--format", "csv", "-o", str(dest))
    assert code == 0 and out == ""
    assert dest.read_text().rstrip().endswith("4,14\n8,1")


def test_matrix_file(capsys, tmp_path):
    m = tmp_path / "T.txt"
    m.write_text("1 1 0 0\n0 1 0 1\n0 0 1 1\n0 0 0 1\n")
    code, out, _ = run(capsys, "oracle-check", "--n", "2", "--nr-k", "2", "--matrix", str(m))
    assert code == 0 and json.loads(out)["status"] == "MATCH"


@pytest.mark.parametrize("argv", [
    ["spectrum", "--n", "3", "--frozen", "/nonexistent/F.txt", "--w-end", "4"],
    ["spectrum", "--n", "3", "--nr-k", "4", "--mode", "punctured", "--w-end", "4"],
    ["spectrum", "--n", "3", "--nr-k", "4", "--bit-reversal", "2", "--w-end", "4"],
    ["spectrum", "--n", "3", "--nr-k", "4", "--pac", "0101", "--w-end", "4"],
    ["spectrum", "--n", "5", "--nr-k", "16", "--w-end", "32", "--no-prune", "--max-list", "4"],
    ["coset", "--n", "3", "--nr-k", "4", "--prefix", "01x"],
    ["spectrum", "--n", "3", "--nr-k", "4", "--w-end", "4", "--threads", "0"],
])
def test_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code != 0
    assert "error" in err
    assert out == ""


def test_malformed_index_file(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1\ntwo\n")
    code, _, err = run(capsys, "spectrum", "--n", "3", "--frozen", str(f), "--w-end", "4")
    assert code == 2 and "not an integer" in err
