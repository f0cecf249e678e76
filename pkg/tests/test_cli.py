import json

import pytest

from tncodes.cli import main


@pytest.fixture()
def fig1b_file(tmp_path):
    from tncodes.builders import fig1b_network
    from tncodes.network import save_network
    path = tmp_path / "net.json"
    save_network(fig1b_network(), path)
    return str(path)


def test_build_and_code_out(tmp_path, capsys, fig1b_file):
    out = tmp_path / "code.json"
    rc = main(["build", "--network", fig1b_file, "--out", str(out)])
    assert rc == 0
    info = json.loads(capsys.readouterr().out)
    assert (info["n"], info["k"]) == (13, 1)
    saved = json.loads(out.read_text())
    assert saved["n"] == 13

def test_builtin_name(capsys):
    rc = main(["build", "--network", "holo_r2"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["n"] == 25


def test_distance_command(capsys, fig1b_file):
    rc = main(["distance", "--network", fig1b_file])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "5"


def test_histogram_command(tmp_path, capsys, fig1b_file):
    out = tmp_path / "h.csv"
    rc = main(["histogram", "--network", fig1b_file, "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "class,weight,count"
    assert "I,0,1" in lines


def test_decode_command(capsys, fig1b_file):
    rc = main(["decode", "--network", fig1b_file, "--syndrome", "000000000001",
               "--p", "0.05"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert "chosen_class" in payload and "correction" in payload
    assert len(payload["correction"].lstrip("-")) == 13


def test_simulate_deterministic(tmp_path, fig1b_file):
    args = ["simulate", "--network", fig1b_file, "--p", "0.1", "--trials", "20",
            "--seed", "3"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_error_exit_code(capsys):
    rc = main(["build", "--network", "/does/not/exist.json"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
