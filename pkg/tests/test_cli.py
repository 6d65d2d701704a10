import json

import pytest

from qwalk.cli import main

ONE_STEP = {
    "version": 1,
    "walk": {"n": 2, "steps": 1, "scattering": "hadamard-like", "shift": "qft", "initial": "010"},
    "shots": 1024,
    "seed": 9,
    "outputs": ["distribution_csv", "counts_csv", "qasm", "cost_table", "histogram_text"],
}


@pytest.fixture
def config_file(tmp_path):
    def write(data, name="cfg.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)
    return write


def test_costs(capsys):
    assert main(["costs", "--n-min", "2", "--n-max", "8"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 + 7
    assert lines[1].split(",")[3] == "13"


def test_run_stdout(config_file, capsys):
    assert main(["run", config_file(ONE_STEP)]) == 0
    out = capsys.readouterr().out
    report = json.loads(out[: out.index("}\n", out.index('"shots"')) + 1])
    assert report["circuit_size"] == 13
    assert set(report["ideal_distribution"]) == {"011", "101"}
    assert "011  0.5000" in out


def test_run_out_dir_is_byte_identical(config_file, tmp_path):
    cfg = config_file(ONE_STEP)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", cfg, "--out", str(a)]) == 0
    assert main(["run", cfg, "--out", str(b)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == ["circuit.qasm", "costs.csv", "counts.csv", "distribution.csv",
                     "histogram.txt", "report.json"]
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert (a / "distribution.csv").read_text().startswith("bitstring,probability\n011,")


def test_qasm(config_file, capsys, tmp_path):
    assert main(["qasm", config_file(ONE_STEP)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("OPENQASM 2.0;")
    assert "x q[1];" in out  # prepares |010>
    target = tmp_path / "w.qasm"
    assert main(["qasm", config_file(ONE_STEP), "-o", str(target)]) == 0
    assert target.read_text() == out


def test_qasm_wide_mcx_is_an_error(config_file, capsys):
    cfg = json.loads(json.dumps(ONE_STEP))
    cfg["walk"].update(n=4, shift="mcx", initial="00000")
    assert main(["qasm", config_file(cfg)]) == 2
    assert "ccx" in capsys.readouterr().err


def test_compare(config_file, capsys):
    cfg = json.loads(json.dumps(ONE_STEP))
    cfg["walk"].update(n=3, initial="0010")
    assert main(["compare", config_file(cfg)]) == 0
    out = capsys.readouterr().out
    worst = float(out.strip().splitlines()[-1].split()[2])
    assert worst <= 1e-9


def test_compare_convolution(config_file, capsys):
    cfg = {
        "version": 1, "seed": 3,
        "convolution": {
            "n": 2, "steps": 2, "alpha": 0.5, "theta": 0.1,
            "kernelC": {"kind": "phases", "values": [0.3, 0.2, -1.0, 2.0]},
            "kernelC2": {"kind": "phases", "values": [1.3, 0.0, 0.7, -2.2]},
        },
    }
    assert main(["compare", config_file(cfg)]) == 0
    assert "circulant_sigma_vs_oracle" in capsys.readouterr().out


def test_compare_failure_exit_code(config_file, capsys):
    assert main(["compare", config_file(ONE_STEP), "--tol", "-1"]) == 3


def test_config_errors(config_file, tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    bad = dict(ONE_STEP, bogus=True)
    assert main(["run", config_file(bad)]) == 2
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert main(["run", str(p)]) == 2
    assert "error" in capsys.readouterr().err
