import json

import pytest

from cubicell.catalog import dump_catalog, load_catalog
from cubicell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestCatalogVerify:
    def test_passes(self, capsys):
        code, payload = run_json(capsys, "catalog", "verify")
        assert code == 0
        assert payload["schema"] == 1
        assert payload["passed"] is True
        assert payload["totals"]["line_checks_G"] == 75

    def test_fails_on_broken_catalog(self, capsys, tmp_path):
        payload = json.loads(dump_catalog(load_catalog()))
        for entry in payload["surfaces"]:
            if entry["id"] == "G1":
                entry["lines"].append(["y", "t"])
        target = tmp_path / "broken.json"
        target.write_text(json.dumps(payload), encoding="utf-8")
        code, report = run_json(capsys, "--catalog", str(target), "catalog", "verify")
        assert code == 1
        assert report["passed"] is False
        failing = [s for s in report["surfaces"] if not s["passed"]]
        assert [s["id"] for s in failing] == ["G1"]


class TestCurves:
    def test_single_degree(self, capsys):
        code, payload = run_json(
            capsys, "curves", "enumerate", "--surface", "G1", "--degree", "1"
        )
        assert code == 0
        assert payload["classes"] == [[0, 0, 0, 0, 0, 0, 1]]
        assert payload["search_bounds"]["a_range"] == [0, 2]

    def test_scan(self, capsys):
        code, payload = run_json(capsys, "curves", "enumerate", "--surface", "G2")
        assert code == 0
        assert len(payload["classes"]) == 5

    def test_unknown_surface_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["curves", "enumerate", "--surface", "G3"])


class TestTuples:
    def test_smooth(self, capsys):
        code, payload = run_json(capsys, "tuples", "--n", "1")
        assert code == 0
        assert [t[1] for t in payload["tuples"]] == [0, 1, 2]

    def test_cuspidal_label(self, capsys):
        code, payload = run_json(capsys, "tuples", "--n", "3", "--cuspidal")
        assert code == 0
        assert payload["variant"] == "cuspidal"
        assert len(payload["tuples"]) == 5


class TestCoker:
    def test_theta(self, capsys):
        code, payload = run_json(
            capsys, "coker", "theta", "--surface", "G1",
            "--components", "1,0,0,0,0,0,0",
        )
        assert code == 0
        assert payload["cokernel"]["display"] == "Z/3"
        assert payload["admissible"] is False

    def test_theta_with_multiplicity(self, capsys):
        code, payload = run_json(
            capsys, "coker", "theta", "--surface", "G1",
            "--components", "0,0,0,0,0,0,1*3",
        )
        assert code == 0
        assert payload["admissible"] is True

    def test_xi(self, capsys):
        code, payload = run_json(
            capsys, "coker", "xi", "--decomposition", "1,0;0,1*2"
        )
        assert code == 0
        assert payload["cokernel"]["display"] == "Z ⊕ Z/2"
        assert payload["injective"] is True
        assert payload["admissible"] is False

    def test_xi_bad_decomposition(self, capsys):
        code, _ = run(capsys, "coker", "xi", "--decomposition", "1,0")
        assert code == 2


class TestClassify:
    def _write(self, tmp_path, payload):
        target = tmp_path / "triple.json"
        target.write_text(json.dumps(payload), encoding="utf-8")
        return str(target)

    def test_case_d(self, capsys, tmp_path):
        path = self._write(tmp_path, {
            "schema": 1,
            "curve": {"genus": 0, "degree": 1},
            "surface": "G1",
            "hyperplane": {"form": "y", "f_type": "L1"},
            "incidence": [1, 1, 1],
            "b2_f": 1,
        })
        code, payload = run_json(capsys, "classify", "--input", path)
        assert code == 0
        assert payload["case"] == "d"
        assert payload["iso_class"] == "A3"

    def test_example_triple(self, capsys, tmp_path):
        path = self._write(tmp_path, {
            "schema": 1,
            "curve": {"genus": 0, "degree": 1},
            "surface": "R1",
            "hyperplane": {"form": "z", "f_type": "L1"},
            "incidence": [1, 1, 1],
            "b2_f": 1,
        })
        code, payload = run_json(capsys, "classify", "--input", path)
        assert code == 0
        assert payload["case"] == "f"
        assert payload["iso_class"] == "A1xW32"

    def test_reject_with_citation(self, capsys, tmp_path):
        path = self._write(tmp_path, {
            "schema": 1,
            "curve": {"genus": 0, "degree": 1},
            "surface": "G2",
            "hyperplane": {"form": "y", "f_type": "L2"},
            "incidence": [2, 1, 1],
            "b2_f": 2,
            "delta_iso": False,
        })
        code, payload = run_json(capsys, "classify", "--input", path)
        assert code == 0
        assert payload["case"] == "REJECT"
        failed = [r["rule"] for r in payload["reasons"] if not r["passed"]]
        assert failed == ["case-e-delta"]


class TestLemmas:
    def test_run_all_exits_zero(self, capsys):
        code, payload = run_json(capsys, "lemmas", "run-all")
        assert code == 0
        assert payload["passed"] is True
        assert payload["entries"] >= 25
        assert payload["failures"] == 0

    def test_markdown(self, capsys):
        code, out = run(capsys, "lemmas", "run-all", "--markdown")
        assert code == 0
        assert "| check | status |" in out
        assert "FAIL" not in out.replace("failures", "")

    def test_exit_code_counts_failures(self, capsys, tmp_path):
        payload = json.loads(dump_catalog(load_catalog()))
        for entry in payload["surfaces"]:
            if entry["id"] == "G1":
                # Corrupt the last recorded (-2)-class into E5 + E6, which
                # wrongly excludes the exceptional curve from the search.
                entry["lattice"]["neg2_classes"][5] = [0, 0, 0, 0, 0, 1, 1]
                entry["lattice"]["chains"][0]["classes"][5] = [0, 0, 0, 0, 0, 1, 1]
        target = tmp_path / "broken.json"
        target.write_text(json.dumps(payload), encoding="utf-8")
        code, report = run_json(
            capsys, "--catalog", str(target), "lemmas", "run-all"
        )
        assert code > 0
        failing = {r["id"] for r in report["results"] if not r["passed"]}
        assert "curve-classes-G1" in failing
        assert code == len(failing)

    def test_env_variable_override(self, capsys, tmp_path, monkeypatch):
        target = tmp_path / "catalog.json"
        target.write_text(dump_catalog(load_catalog()), encoding="utf-8")
        monkeypatch.setenv("CLV_CATALOG", str(target))
        code, payload = run_json(capsys, "catalog", "verify")
        assert code == 0 and payload["passed"] is True


def test_deterministic_output(capsys):
    _, first = run(capsys, "lemmas", "run-all")
    _, second = run(capsys, "lemmas", "run-all")
    assert first == second
