import re
import subprocess
import sys

import numpy as np
import pytest

from exchangeable import formats
from exchangeable.cli import main
from exchangeable.graphons import StepGraphon


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def value(text, key):
    return float(re.search(rf"^{key} (\S+)", text, re.M).group(1))


def test_sample_is_deterministic_and_headed(capsys):
    a = run(capsys, "sample", "graph", "--graphon", "min", "--n", "30", "--seed", "9")
    b = run(capsys, "sample", "graph", "--graphon", "min", "--n", "30", "--seed", "9")
    c = run(capsys, "sample", "graph", "--graphon", "min", "--n", "30", "--seed", "10")
    assert a == b and a[0] == 0 and a[1] != c[1]
    lines = a[1].splitlines()
    assert lines[0].startswith("# config: {") and '"seed":9' in lines[0]
    g = formats.parse_edgelist(a[1])
    assert g.n == 30


@pytest.mark.parametrize("target,extra", [
    ("array2", ["--mode", "separate", "--m", "4"]),
    ("darray", ["--shape", "3,3,3", "--mode", "pi", "--pi", "0,1|2"]),
    ("partition", ["--model", "paintbox", "--theta", "0.5,0.3"]),
    ("features", ["--model", "ibp", "--gamma", "2"]),
    ("irm", []), ("lfrm", []), ("eigen", []), ("mondrian", ["--budget", "2"]),
])
def test_sample_targets_write_files(tmp_path, capsys, target, extra):
    code, out, _ = run(capsys, "sample", target, "--n", "6", "--seed", "1", "--trials", "2",
                       "--out", str(tmp_path), *extra)
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files and all(f.startswith(f"{target}-") for f in files)
    assert {f.split(".")[0] for f in files} == {f"{target}-0", f"{target}-1"}
    for p in tmp_path.iterdir():
        assert p.read_text().startswith("# config: ")


def test_bjr_complete_graphon_mean_edges(tmp_path, capsys):
    n, trials = 1000, 100
    code, out, _ = run(capsys, "sample", "bjr", "--graphon", "const:1", "--n", str(n),
                       "--trials", str(trials), "--seed", "2", "--out", str(tmp_path))
    assert code == 0
    pairs = n * (n - 1) / 2
    sd = np.sqrt(pairs * (1 / n) * (1 - 1 / n) / trials)
    assert abs(value(out, "mean_edges") - (n - 1) / 2) <= 3 * sd


def test_asymmetric_grid_is_rejected(tmp_path, capsys):
    path = tmp_path / "asym.txt"
    path.write_text("graphon-grid 2 0\n0 1\n0 0\n")
    code, out, err = run(capsys, "sample", "graph", "--graphon", f"file:{path}", "--n", "5")
    assert code == 2 and "symmetric" in err and out == ""


def test_distance_constants(capsys):
    code, out, _ = run(capsys, "distance", "const:0.2", "const:0.5")
    assert code == 0
    assert value(out, "d_cut") == pytest.approx(0.3, abs=1e-15)
    assert "exact" in re.search(r"^d_cut .*$", out, re.M).group(0)
    assert value(out, "K3") == pytest.approx(0.008)


def test_distance_permuted_blocks(tmp_path, capsys):
    r = np.random.default_rng(3)
    A = r.random((10, 10))
    w = StepGraphon((A + A.T) / 2)
    perm = r.permutation(10)
    f1, f2 = tmp_path / "w.txt", tmp_path / "wp.txt"
    f1.write_text(formats.format_graphon_grid(w))
    f2.write_text(formats.format_graphon_grid(w.permute(perm)))
    code, out, _ = run(capsys, "distance", f"file:{f1}", f"file:{f2}")
    assert code == 0
    assert value(out, "delta_cut_upper") == 0.0
    assert value(out, "d_cut") > 0
    assert "local-search" in out


def test_converge_and_frames(tmp_path, capsys):
    code, out, _ = run(capsys, "converge", "--graphon", "const:0.3", "--sizes", "10,20",
                       "--trials", "5", "--frames", "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["converge.csv", "frame-10.pgm", "frame-20.pgm"]
    csv_lines = (tmp_path / "converge.csv").read_text().splitlines()
    assert csv_lines[1] == "n,motif,mean_estimate,target,mean_abs_error,std_error,trials"
    pgm = (tmp_path / "frame-20.pgm").read_text().splitlines()
    assert pgm[0] == "P2" and "20 20" in pgm


def test_regularity_command(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("graph 4 3\n0 1\n1 2\n2 3\n")
    code, out, _ = run(capsys, "regularity", str(g), "--k", "2", "--out", str(tmp_path))
    assert code == 0
    assert "within_bound" in out and value(out, "bound") == pytest.approx(2 / np.sqrt(np.log(2)))
    assert formats.read_partition(tmp_path / "partition.txt").n == 4
    assert formats.read_array_csv(tmp_path / "quotient.csv").shape == (2, 2)


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "sample", "graph", "--n", "0")[0] == 2
    assert run(capsys, "regularity", str(tmp_path / "missing.txt"), "--k", "2")[0] == 4
    big = tmp_path / "big.txt"
    big.write_text(formats.format_graphon_grid(StepGraphon(np.zeros((7, 7)))))
    other = tmp_path / "other.txt"
    other.write_text(formats.format_graphon_grid(StepGraphon(np.zeros((11, 11)))))
    code, _, err = run(capsys, "distance", f"file:{big}", f"file:{other}", "--limit", "50")
    assert code == 3 and "--limit" in err
    with pytest.raises(SystemExit) as e:
        main(["sample", "nonsense"])
    assert e.value.code == 2
    assert capsys.readouterr().err.startswith("error: usage:")


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "exchangeable.cli", "distance", "const:0", "const:1"],
                         capture_output=True, text=True, check=True)
    assert "d_cut 1 exact" in res.stdout
