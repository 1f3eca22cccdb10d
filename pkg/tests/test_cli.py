"""Command-line surface: subcommands, exit codes, artifacts."""

import json
import subprocess
import sys

import pytest

from alcm.cli import main

from conftest import HYDRO_TEXT


@pytest.fixture()
def hydro_file(tmp_path):
    p = tmp_path / "hydro.alcm"
    p.write_text(HYDRO_TEXT)
    return str(p)


@pytest.fixture()
def circular_file(tmp_path):
    p = tmp_path / "hydro_circular.alcm"
    p.write_text(HYDRO_TEXT + "tbox { HydrographicObject subclassof River; }")
    return str(p)


class TestCheck:
    def test_consistent(self, hydro_file, capsys):
        assert main(["check", hydro_file]) == 0
        assert capsys.readouterr().out.strip() == "consistent"

    def test_inconsistent_prints_witness_chain(self, circular_file, capsys):
        assert main(["check", circular_file]) == 1
        out = capsys.readouterr().out
        assert "inconsistent" in out
        assert "circularity: river -> river" in out

    def test_missing_file(self, capsys):
        assert main(["check", "nosuch.alcm"]) == 2

    def test_parse_error(self, tmp_path, capsys):
        p = tmp_path / "bad.alcm"
        p.write_text("abox { A(a) }")
        assert main(["check", str(p)]) == 2

    def test_budget_exhaustion(self, hydro_file):
        assert main(["check", hydro_file, "--budget", "5"]) == 3

    def test_oracle_flag(self, hydro_file, circular_file, capsys):
        assert main(["check", hydro_file, "--oracle"]) == 0
        assert main(["check", circular_file, "--oracle"]) == 1

    def test_oracle_refuses_graph_artifacts(self, hydro_file, tmp_path):
        out = str(tmp_path / "t.txt")
        assert main(["check", hydro_file, "--oracle", "--trace", out]) == 2

    def test_model_and_trace_outputs(self, hydro_file, tmp_path, capsys):
        model = tmp_path / "model.json"
        trace = tmp_path / "trace.txt"
        assert main(["check", hydro_file, "--model", str(model),
                     "--trace", str(trace), "--stats"]) == 0
        doc = json.loads(model.read_text())
        assert set(doc) == {"domain", "concepts", "roles", "individuals"}
        river = doc["domain"][doc["individuals"]["river"]]
        assert sorted(doc["domain"][i] for i in river) == ["queguay", "santaLucia"]
        lines = trace.read_text().splitlines()
        assert lines[-1] == "verdict consistent"
        assert "nodes:" in capsys.readouterr().out

    def test_usage_error(self):
        assert main([]) == 2
        assert main(["frobnicate"]) == 2


class TestQueries:
    def test_entails(self, hydro_file, capsys):
        assert main(["entails", hydro_file, "River sub not Lake"]) == 0
        assert capsys.readouterr().out.strip() == "entailed"
        assert main(["entails", hydro_file, "Lake(queguay)"]) == 1
        assert main(["entails", hydro_file, "river != lake"]) == 0
        assert main(["entails", hydro_file, "river = lake"]) == 1
        assert main(["entails", hydro_file, "river =m River"]) == 0

    def test_role_query_rejected(self, hydro_file):
        assert main(["entails", hydro_file, "R(a, b)"]) == 2

    def test_unknown_individual(self, hydro_file):
        assert main(["entails", hydro_file, "River(atlantis)"]) == 2

    def test_meta(self, hydro_file):
        assert main(["meta", hydro_file, "river", "River"]) == 0
        assert main(["meta", hydro_file, "queguay", "River"]) == 1

    def test_query_budget_exhaustion(self, hydro_file):
        assert main(["entails", hydro_file, "River sub not Lake",
                     "--budget", "5"]) == 3

    def test_metaconcept(self, hydro_file):
        assert main(["metaconcept", hydro_file, "HydrographicObject"]) == 0
        assert main(["metaconcept", hydro_file, "River"]) == 1


def test_traces_are_identical_across_interpreter_runs(hydro_file, tmp_path):
    outs = []
    for seed in ("0", "31337"):
        trace = tmp_path / f"trace{seed}.txt"
        subprocess.run(
            [sys.executable, "-m", "alcm.cli", "check", hydro_file,
             "--trace", str(trace)],
            check=True, capture_output=True,
            env={"PYTHONHASHSEED": seed, "PATH": "/usr/bin:/bin"},
        )
        outs.append(trace.read_bytes())
    assert outs[0] == outs[1]
