import json
import subprocess
import sys

import pytest

from cutlab.cli import main

RUN = [sys.executable, "-m", "cutlab.cli"]


def invoke(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_and_maxcut(tmp_path, capsys):
    path = tmp_path / "k4.json"
    code, _, _ = invoke(capsys, ["gen", "--family", "complete", "--n", "4", "-o", str(path)])
    assert code == 0
    code, out, _ = invoke(capsys, ["maxcut", str(path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == 4
    assert payload["degenerate_count"] == 3


def test_gen_families(tmp_path, capsys):
    for args in (
        ["gen", "--family", "erdos-renyi", "--n", "6", "--q", "0.5", "--seed", "3"],
        ["gen", "--family", "binary-tree", "--height", "2"],
        ["gen", "--family", "rary-tree", "--n", "6"],
        ["gen", "--family", "regular", "--n", "6", "--d", "3", "--seed", "1"],
    ):
        code, out, _ = invoke(capsys, args)
        assert code == 0
        assert "edges" in json.loads(out)


def test_pipe_composition(tmp_path):
    k4 = subprocess.run(
        RUN + ["gen", "--family", "complete", "--n", "4"],
        capture_output=True, text=True, check=True,
    ).stdout
    pert = subprocess.run(
        RUN + ["perturb", "-", "--kind", "shadow:2"],
        input=k4, capture_output=True, text=True, check=True,
    ).stdout
    aut = subprocess.run(
        RUN + ["aut", "-"], input=pert, capture_output=True, text=True, check=True
    ).stdout
    assert json.loads(aut)["order"] == 48

    # piped result equals file-based invocation byte for byte
    path = tmp_path / "p.json"
    path.write_text(pert)
    from_file = subprocess.run(
        RUN + ["aut", str(path)], capture_output=True, text=True, check=True
    ).stdout
    assert from_file == aut


def test_spectrum_checks(tmp_path, capsys):
    k4 = tmp_path / "k4.json"
    invoke(capsys, ["gen", "--family", "complete", "--n", "4", "-o", str(k4)])
    for rule in ("prop1", "prop2", "prop3", "prop4", "cor2"):
        code, out, _ = invoke(capsys, ["spectrum", str(k4), "--check", rule])
        assert code == 0, (rule, out)
        assert json.loads(out)["verification"]["passed"] is True

    tree = tmp_path / "t.json"
    invoke(capsys, ["gen", "--family", "binary-tree", "--height", "2", "-o", str(tree)])
    code, out, _ = invoke(capsys, ["spectrum", str(tree), "--check", "cor1"])
    assert code == 0

    reg = tmp_path / "r.json"
    invoke(capsys, ["gen", "--family", "regular", "--n", "6", "--seed", "1", "-o", str(reg)])
    code, out, _ = invoke(capsys, ["spectrum", str(reg), "--check", "prop5"])
    assert code == 0


def test_spectrum_payload(tmp_path, capsys):
    k4 = tmp_path / "k4.json"
    invoke(capsys, ["gen", "--family", "complete", "--n", "4", "-o", str(k4)])
    code, out, _ = invoke(capsys, ["spectrum", str(k4)])
    payload = json.loads(out)
    assert payload["charpoly"] == [-3, -8, -6, 0, 1]
    assert payload["radius"] == pytest.approx(3.0)
    assert payload["bounds"]["literal_violated"] is True


def test_spectrum_check_domain_error(tmp_path, capsys):
    tree = tmp_path / "t.json"
    invoke(capsys, ["gen", "--family", "binary-tree", "--height", "1", "-o", str(tree)])
    code, _, err = invoke(capsys, ["spectrum", str(tree), "--check", "cor2"])
    assert code == 1
    assert json.loads(err)["error"] == "ValueError"


def test_aut_predictions(tmp_path, capsys):
    k4 = tmp_path / "k4.json"
    shadow = tmp_path / "shadow.json"
    invoke(capsys, ["gen", "--family", "complete", "--n", "4", "-o", str(k4)])
    invoke(capsys, ["perturb", str(k4), "--kind", "shadow:2", "-o", str(shadow)])
    code, out, _ = invoke(capsys, ["aut", str(shadow), "--predict", "prop7"])
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 48 and payload["predicted"] == 48 and payload["match"]

    pend = tmp_path / "pend.json"
    invoke(capsys, ["perturb", str(k4), "--kind", "pendant:0", "-o", str(pend)])
    code, out, _ = invoke(capsys, ["aut", str(pend), "--predict", "prop12"])
    assert code == 0 and json.loads(out)["predicted"] == 6

    dele = tmp_path / "dele.json"
    invoke(capsys, ["perturb", str(k4), "--kind", "delete:0-1", "-o", str(dele)])
    code, out, _ = invoke(capsys, ["aut", str(dele), "--predict", "prop11"])
    assert code == 0 and json.loads(out)["predicted"] == 4

    tree = tmp_path / "t.json"
    invoke(capsys, ["gen", "--family", "binary-tree", "--height", "2", "-o", str(tree)])
    code, out, _ = invoke(capsys, ["aut", str(tree), "--predict", "prop8"])
    assert code == 0 and json.loads(out)["order"] == 8

    # not applicable: prop8 on a complete graph; exit stays 0
    code, out, _ = invoke(capsys, ["aut", str(k4), "--predict", "prop8"])
    assert code == 0 and json.loads(out)["applicable"] is False


def test_qaoa_subcommand(tmp_path, capsys):
    k2 = tmp_path / "k2.json"
    invoke(capsys, ["gen", "--family", "complete", "--n", "2", "-o", str(k2)])
    code, out, _ = invoke(
        capsys, ["qaoa", str(k2), "--p", "1", "--seed", "1", "--restarts", "5"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["f_star"] == pytest.approx(1.0, abs=1e-6)
    assert payload["circuit"] == {"qubits": 2, "hadamards": 2, "rx": 2, "zz": 1}

    run_file = tmp_path / "run.json"
    (run_file).write_text(out)
    code, out2, _ = invoke(
        capsys,
        ["qaoa", str(k2), "--p", "2", "--seed", "1", "--restarts", "2",
         "--warm-start", str(run_file), "--transfer-to", str(k2)],
    )
    assert code == 0
    payload2 = json.loads(out2)
    assert payload2["f_star"] >= payload["f_star"] - 1e-9
    assert payload2["transfer"]["ar"] == pytest.approx(payload2["ar"], abs=1e-12)


def test_experiment_and_report(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text(
        "families = complete\nsizes = 4\np_min = 1\np_max = 2\n"
        "seeds_per_cell = 1\nrestarts = 1\nmaxiter = 60\nworkers = 1\n"
    )
    outdir = tmp_path / "out"
    code, out, _ = invoke(capsys, ["experiment", "--config", str(cfg), "-o", str(outdir)])
    assert code == 0
    summary = json.loads(out)
    assert summary["error_rows"] == 0 and summary["rows"] == 10
    assert (outdir / "results.csv").exists()
    assert len(list(outdir.glob("*.svg"))) == 4

    plots = tmp_path / "plots"
    code, out, _ = invoke(capsys, ["report", str(outdir / "results.csv"), "--plots", str(plots)])
    assert code == 0
    assert len(list(plots.glob("*.svg"))) == 4


def test_domain_error_exit_code(tmp_path, capsys):
    edgeless = tmp_path / "e.json"
    invoke(capsys, ["gen", "--family", "erdos-renyi", "--n", "3", "--q", "0", "-o", str(edgeless)])
    code, _, err = invoke(capsys, ["perturb", str(edgeless), "--kind", "delete"])
    assert code == 1
    assert json.loads(err)["error"] == "EmptyEdgeSet"


def test_usage_error_exit_code():
    proc = subprocess.run(RUN + ["gen", "--bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run(RUN + ["maxcut"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_pretty_output(tmp_path, capsys):
    k4 = tmp_path / "k4.json"
    invoke(capsys, ["gen", "--family", "complete", "--n", "4", "-o", str(k4)])
    code, out, _ = invoke(capsys, ["maxcut", str(k4), "--pretty"])
    assert code == 0 and "value" in out and "{" not in out.split("\n")[0]
