import json
import subprocess
import sys

import numpy as np
import pytest

from percolab import build_graph, complete_graph, gen_random_regular, hypercube, percolate
from percolab.cli import main
from percolab.errors import FormatError, OutputUnwritableError
from percolab.formats import read_classes, read_edgelist, read_mask, write_edgelist, write_mask


def test_edgelist_roundtrip(tmp_path):
    for g in (hypercube(3), complete_graph(5), build_graph(4, []), gen_random_regular(30, 3, 1)):
        path = tmp_path / "g.elist"
        write_edgelist(g, path)
        text = path.read_text()
        assert text.splitlines()[0] == f"{g.n} {g.m}" and text.endswith("\n")
        h = read_edgelist(path)
        assert h.n == g.n and np.array_equal(h.edges, g.edges)


@pytest.mark.parametrize("body, needle", [
    ("3 2\n0 1\n0 1\n", ":3:"),
    ("3 2\n0 2\n0 1\n", ":3:"),
    ("3 1\n1 0\n", "not canonical"),
    ("3 1\n0 3\n", "out of range"),
    ("3 2\n0 1\n", "declares 2"),
    ("3\n", ":1:"),
    ("3 1\n0 x\n", "two integers"),
])
def test_edgelist_rejects(tmp_path, body, needle):
    path = tmp_path / "bad.elist"
    path.write_text(body)
    with pytest.raises(FormatError, match=needle):
        read_edgelist(path)


def test_mask_roundtrip_and_layout(tmp_path):
    keep = np.array([1, 0, 0, 0, 0, 0, 0, 0, 1, 1], dtype=bool)
    path = tmp_path / "m.bin"
    write_mask(keep, path)
    raw = path.read_bytes()
    assert raw[:8] == (10).to_bytes(8, "little")
    assert raw[8:] == bytes([0b00000001, 0b00000011])
    assert np.array_equal(read_mask(path), keep)
    with pytest.raises(FormatError):
        read_mask(path, expected_m=11)
    path.write_bytes(raw[:-1])
    with pytest.raises(FormatError):
        read_mask(path)


def test_unwritable(tmp_path):
    with pytest.raises(OutputUnwritableError):
        write_mask(np.ones(3, dtype=bool), tmp_path / "missing" / "m.bin")


def test_cli_pipeline(tmp_path, capsys):
    g, m, cls = tmp_path / "g.elist", tmp_path / "m.bin", tmp_path / "cls.txt"
    assert main(["gen", "--model", "gadget-B", "--params", "C=1,d=12,n=100", "--seed", "3",
                 "--out", str(g), "--emit-classes", str(cls)]) == 0
    graph = read_edgelist(g)
    assert graph.regular_degree() == 12
    classes = read_classes(cls)
    assert len(classes) == 10 and classes[1].tolist() == list(range(10, 20))

    assert main(["perc", "--in", str(g), "--p", "0.1", "--seed", "7", "--out", str(m)]) == 0
    keep = read_mask(m, graph.m)
    assert np.array_equal(keep, percolate(graph, 0.1, 7).keep)

    capsys.readouterr()
    assert main(["census", "--in", str(g), "--mask", str(m), "--delta", "0.3",
                 "--band", "2..5", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"L1", "L2", "n_components", "vs", "vl", "wl", "band_mass"}
    assert len(out["band_mass"]) == 1


def test_cli_gen_classes_only_for_gadget_b(tmp_path, capsys):
    rc = main(["gen", "--model", "hypercube", "--params", "d=3", "--out", str(tmp_path / "q.elist"),
               "--emit-classes", str(tmp_path / "c.txt")])
    assert rc == 1 and "gadget-B" in capsys.readouterr().err


def test_cli_survival(capsys):
    assert main(["survival", "--eps", "0.2"]) == 0
    out = capsys.readouterr().out.split()
    assert out[0] == "value" and out[1].startswith("0.31369")
    assert len(out[1].split(".")[1]) == 15
    assert main(["survival", "--binomial", "d=50,p=0.024"]) == 0
    assert capsys.readouterr().out.split()[1].startswith("0.319307")
    assert main(["survival", "--series", "c=1.2"]) == 0
    assert capsys.readouterr().out.split()[1].startswith("0.6863")
    assert main(["survival", "--series", "c=0.5"]) == 1


def test_cli_iso(tmp_path, capsys):
    g = tmp_path / "q.elist"
    write_edgelist(hypercube(3), g)
    for method in ("exact", "spectral", "sampled"):
        assert main(["iso", "--in", str(g), "--method", method]) == 0
        out = json.loads(capsys.readouterr().out)
        if method == "sampled":
            assert out["value"] >= 1.0
        else:
            assert out["value"] == pytest.approx(1.0)
        assert (out["witness"] is None) == (method == "spectral")
    assert main(["iso", "--in", str(g), "--method", "exact", "--range", "1..1"]) == 0
    assert json.loads(capsys.readouterr().out)["fraction"] == "3"


def _write_config(path, predicates):
    cfg = {"generator": {"model": "complete", "params": {"n": 30}, "seed": 0},
           "p": 0.1, "trials": 3, "base_seed": 5, "predicates": predicates}
    path.write_text(json.dumps(cfg))


def test_cli_experiment_exit_codes(tmp_path, capsys):
    cfg, out = tmp_path / "exp.json", tmp_path / "r.jsonl"
    _write_config(cfg, [{"kind": "all-small", "bound": 30}])
    assert main(["experiment", "--config", str(cfg), "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 4
    _write_config(cfg, [{"kind": "giant-at-least", "bound": 31}])
    assert main(["experiment", "--config", str(cfg), "--out", str(out)]) == 2
    assert "FAIL" in capsys.readouterr().out
    _write_config(cfg, [{"kind": "nonsense"}])
    assert main(["experiment", "--config", str(cfg), "--out", str(out)]) == 1
    assert main(["experiment", "--config", str(tmp_path / "nope.json"), "--out", str(out)]) == 1


def test_cli_experiment_threads_identical(tmp_path):
    cfg = tmp_path / "exp.json"
    _write_config(cfg, [{"kind": "all-small", "bound": 30}])
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(["experiment", "--config", str(cfg), "--out", str(a), "--threads", "1"])
    main(["experiment", "--config", str(cfg), "--out", str(b), "--threads", "8"])
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "percolab", "survival", "--eps", "1.0"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("value 0.79681")
