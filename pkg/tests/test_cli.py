import os
import subprocess
import sys
from pathlib import Path

import pytest

from smaxkit.cli import main, parse_cutoffs, parse_sizes

GOLDEN = Path(__file__).parent / "golden"

# (name, argv without --output, golden file)
GOLDEN_RUNS = [
    ("build", ["build", "--input", str(GOLDEN / "star.deg")], "build_star.csv"),
    ("score", ["score", "--input", str(GOLDEN / "star_edges.csv")], "score_star.csv"),
    ("simulate", ["simulate", "--n", "64", "--gamma", "1.5", "--seed", "42"], "simulate_n64.csv"),
    ("sweep", ["sweep", "--sizes", "2^3..2^5", "--gamma", "0,1,2", "--samples", "3", "--seed", "7"],
     "sweep_small.csv"),
    ("pa", ["pa", "--trends", "{tmp}/trends.csv"], "pa_series.csv"),
]


def run(argv, tmp_path, threads="1"):
    env = dict(os.environ, SMAXKIT_THREADS=threads)
    out = tmp_path / f"out_{threads}.csv"
    argv = [a.replace("{tmp}", str(tmp_path)) for a in argv]
    proc = subprocess.run([sys.executable, "-m", "smaxkit", *argv, "--output", str(out)],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return out.read_bytes()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("name, argv, golden", GOLDEN_RUNS, ids=[r[0] for r in GOLDEN_RUNS])
def test_golden_and_determinism(name, argv, golden, tmp_path):
    want = (GOLDEN / golden).read_bytes()
    first = run(argv, tmp_path, "1")
    assert first == want
    assert run(argv, tmp_path, "1") == want
    assert run(argv, tmp_path, "2") == want
    if name == "pa":
        assert (tmp_path / "trends.csv").read_bytes() == (GOLDEN / "pa_trends.csv").read_bytes()


def test_check_graphical(tmp_path, capsys):
    assert main(["check", "--input", write(tmp_path, "d", "2 2 2\n")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "graphical"
    assert "phi: graphical" in out


def test_check_odd_sum(tmp_path, capsys):
    assert main(["check", "--input", write(tmp_path, "d", "3 1 1\n")]) == 1
    assert "not graphical (odd sum)" in capsys.readouterr().out


def test_check_reports_failing_k(tmp_path, capsys):
    assert main(["check", "--input", write(tmp_path, "d", "3 3 1 1")]) == 1
    out = capsys.readouterr().out
    assert "Erdos-Gallai fails at k=2" in out
    assert "tripathi_vijay: not graphical" in out


@pytest.mark.parametrize("test", ["erdos_gallai", "tripathi_vijay", "phi"])
def test_check_single_test(test, tmp_path, capsys):
    assert main(["check", "--test", test, "--input", write(tmp_path, "d", "4 3 3 2 2")]) == 0
    assert capsys.readouterr().out.splitlines() == [f"{test}: graphical", "graphical"]


def test_check_parse_error(tmp_path):
    assert main(["check", "--input", write(tmp_path, "d", "2 x 2")]) == 2
    assert main(["check", "--input", str(tmp_path / "missing")]) == 2


def test_build_outputs(tmp_path, capsys):
    assert main(["build", "--input", write(tmp_path, "d", "3 1 1 1")]) == 0
    cap = capsys.readouterr()
    assert cap.out == "1,2\n1,3\n1,4\n"
    assert "4,3,9,4.0" in cap.err
    assert main(["build", "--input", write(tmp_path, "e", "1 1")]) == 0
    assert capsys.readouterr().out == "1,2\n"
    assert main(["build", "--input", write(tmp_path, "f", "3 3 1 1")]) == 1


def test_build_exact(tmp_path, capsys):
    assert main(["build", "--exact", "--connected-only", "--input", write(tmp_path, "d", "2 2 2 1 1")]) == 0
    assert capsys.readouterr().out.count("\n") == 4


def test_score_triangle(tmp_path, capsys):
    assert main(["score", "--input", write(tmp_path, "g", "1,2\n2,3\n1,3\n")]) == 0
    row = dict(zip(*[line.split(",") for line in capsys.readouterr().out.splitlines()]))
    assert row["s"] == "12" and row["cv"] == "0.0" and row["r"] == "nan"


def test_score_star_flags_degenerate(tmp_path, capsys):
    assert main(["score", "--input", str(GOLDEN / "star_edges.csv")]) == 0
    row = dict(zip(*[line.split(",") for line in capsys.readouterr().out.splitlines()]))
    assert row["S_ratio"] == "1.0" and row["degenerate"] == "1"


def test_score_input_errors(tmp_path, caplog):
    assert main(["score", "--input", write(tmp_path, "g", "")]) == 2
    assert main(["score", "--input", write(tmp_path, "h", "1,2\n3\n")]) == 2
    assert "line 2" in caplog.text
    assert main(["score", "--input", write(tmp_path, "i", "1,1\n")]) == 2


def test_simulate_two_nodes(capsys):
    assert main(["simulate", "--n", "2", "--gamma", "3", "--seed", "0"]) == 0
    assert capsys.readouterr().out == "1,2\n"


def test_seed_required():
    with pytest.raises(SystemExit) as e:
        main(["simulate", "--n", "5"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["sweep"])


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as e:
        main(["check", "--bogus"])
    assert e.value.code == 2


def test_sweep_row_count(capsys):
    assert main(["sweep", "--sizes", "2^3..2^10", "--gamma", "1", "--samples", "2", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 8 * 1 * 2


def test_pa_fixture_windows(capsys):
    assert main(["pa"]) == 0
    cap = capsys.readouterr()
    lines = cap.out.splitlines()
    assert len({line.split(",")[0] for line in lines[1:]}) == 20
    assert cap.err.count("\nexternal,") + cap.err.count("\ninternal,") == 6


def test_pa_bad_input(tmp_path):
    assert main(["pa", "--input", write(tmp_path, "x", "a,b\n1,2\n")]) == 2


def test_config_logged(tmp_path, caplog):
    caplog.set_level("INFO", logger="smaxkit")
    main(["simulate", "--n", "3", "--seed", "5", "--output", str(tmp_path / "o")])
    assert '"seed": 5' in caplog.text and '"command": "simulate"' in caplog.text


def test_parsers():
    assert parse_sizes("2^3..2^5,100") == [8, 16, 32, 100]
    assert parse_cutoffs("none,64/none,512") == ([None, 64], [None, 512])
