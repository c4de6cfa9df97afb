"""End-to-end CLI runs: artifacts, schemas, exit codes, determinism."""

import json

import numpy as np
import pytest

from reactest.cli import main

FOLLOW_UP_CSV = """id,events_t,n_t,events_c,n_c
F1,200,400,200,400
F2,208,400,200,400
F3,192,400,200,400
F4,204,400,200,400
F5,196,400,200,400
"""

PHARMA_CSV = """id,events_t,n_t,events_c,n_c
P1,1300,2000,800,2000
P2,29,60,30,60
P3,32,60,30,60
"""


def write(path, text):
    path.write_text(text)
    return str(path)


def values_csv(path, values):
    return write(path, "value\n" + "\n".join(str(v) for v in values) + "\n")


def group_csv(path, groups):
    lines = ["group,value"]
    for name, values in groups.items():
        lines.extend(f"{name},{v}" for v in values)
    return write(path, "\n".join(lines) + "\n")


class TestTestCommand:
    def test_straddling_data_is_agnostic(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        a = values_csv(tmp_path / "a.csv", rng.normal(0.5, 1.0, 12))
        b = values_csv(tmp_path / "b.csv", rng.normal(0.0, 1.0, 12))
        assert main(["test", a, b, "--delta", "0.5", "--alpha", "0.05"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["decision"] == "agnostic"
        assert payload["level"] == 0.95
        assert payload["extent"][0] < payload["extent"][1]

    def test_hypothesis_json_override(self, tmp_path, capsys):
        a = values_csv(tmp_path / "a.csv", [0.0, 0.1, -0.1, 0.05])
        b = values_csv(tmp_path / "b.csv", [0.02, 0.08, -0.04, 0.01])
        hyp = write(tmp_path / "h.json", json.dumps(
            {"variant": "interval", "lo": -1.0, "hi": 0.5}))
        assert main(["test", a, b, "--hypothesis", hyp]) == 0
        assert json.loads(capsys.readouterr().out)["decision"] == "accept"

    def test_missing_delta_and_nnt_is_config_error(self, tmp_path):
        a = values_csv(tmp_path / "a.csv", [0.0, 1.0, 2.0])
        b = values_csv(tmp_path / "b.csv", [0.0, 1.0, 2.0])
        assert main(["test", a, b]) == 2

    def test_bad_csv_is_parse_error(self, tmp_path):
        bad = write(tmp_path / "bad.csv", "value\nnot_a_number\n")
        b = values_csv(tmp_path / "b.csv", [0.0, 1.0])
        assert main(["test", bad, b, "--delta", "0.5"]) == 2

    def test_insufficient_data_is_computation_error(self, tmp_path):
        a = values_csv(tmp_path / "a.csv", [1.0])
        b = values_csv(tmp_path / "b.csv", [0.0, 1.0])
        assert main(["test", a, b, "--delta", "0.5"]) == 3


class TestFamilyCommand:
    def test_three_groups_emit_four_results(self, tmp_path, capsys):
        rng = np.random.default_rng(1)
        data = group_csv(tmp_path / "d.csv", {
            "east": rng.normal(0.0, 1.0, 60),
            "north": rng.normal(0.1, 1.0, 60),
            "west": rng.normal(3.0, 1.0, 60),
        })
        assert main(["family", data, "--delta", "0.8", "--alpha", "0.05"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["results"]) == 4
        assert payload["coherence_violations"] == 0
        decisions = {r["hypothesis"]: r["decision"] for r in payload["results"]}
        assert decisions["max pairwise gap <= 0.8"] == "reject"

    def test_family_svg(self, tmp_path):
        rng = np.random.default_rng(2)
        data = group_csv(tmp_path / "d.csv", {
            "a": rng.normal(0.0, 1.0, 40), "b": rng.normal(0.2, 1.0, 40)})
        out = tmp_path / "fig.svg"
        assert main(["family", data, "--delta", "0.5", "--format", "svg",
                     "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")


class TestMetaCommand:
    def test_nnt_six_region_and_patterns(self, tmp_path, capsys):
        studies = write(tmp_path / "fu.csv", FOLLOW_UP_CSV)
        assert main(["meta", studies, "--nnt", "6"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["region"] == [-1.0, pytest.approx(1.0 / 6.0)]
        by_kind = {r["kind"]: r["decision"] for r in payload["rows"]}
        assert by_kind["pooled-fixed"] == "accept"
        assert by_kind["pooled-random"] == "accept"

    def test_pharma_split_decision(self, tmp_path, capsys):
        studies = write(tmp_path / "ph.csv", PHARMA_CSV)
        assert main(["meta", studies, "--nnt", "6"]) == 0
        payload = json.loads(capsys.readouterr().out)
        by_kind = {r["kind"]: r["decision"] for r in payload["rows"]}
        assert by_kind["pooled-fixed"] == "reject"
        assert by_kind["pooled-random"] == "agnostic"

    def test_svg_deterministic_and_contains_boundary(self, tmp_path):
        studies = write(tmp_path / "fu.csv", FOLLOW_UP_CSV)
        out1, out2 = tmp_path / "f1.svg", tmp_path / "f2.svg"
        assert main(["meta", studies, "--nnt", "6", "--format", "svg", "--out", str(out1)]) == 0
        assert main(["meta", studies, "--nnt", "6", "--format", "svg", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert "0.167" in out1.read_text()  # region boundary at 1/6 labeled

    def test_csv_output(self, tmp_path, capsys):
        studies = write(tmp_path / "fu.csv", FOLLOW_UP_CSV)
        assert main(["meta", studies, "--nnt", "6", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "id,effect,lower,upper,variance,decision,kind"
        assert len(lines) == 1 + 5 + 2

    def test_bad_header_is_parse_error(self, tmp_path):
        bad = write(tmp_path / "bad.csv", "id,events\nx,1\n")
        assert main(["meta", bad, "--nnt", "6"]) == 2


class TestSimulateCommand:
    def scenario_file(self, tmp_path):
        return write(tmp_path / "scn.json", json.dumps({
            "group_means": [0.5, 0.0], "group_sds": [1.0, 1.0],
            "group_ns": [40, 40], "delta": 0.5, "alpha": 0.05,
        }))

    def test_report_roundtrip_and_determinism(self, tmp_path):
        scn = self.scenario_file(tmp_path)
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        for out in (out1, out2):
            assert main(["simulate", scn, "--reps", "2000", "--seed", "7",
                         "--out", str(out)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        report = json.loads(out1.read_text())
        assert report["reps"] == 2000 and report["seed"] == 7
        assert 0.0 <= report["type_i"] <= 1.0

    def test_env_seed_fallback(self, tmp_path, monkeypatch, capsys):
        scn = self.scenario_file(tmp_path)
        monkeypatch.setenv("REACT_SEED", "99")
        assert main(["simulate", scn, "--reps", "1000"]) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 99

    def test_three_group_scenario_routes_to_fwer(self, tmp_path, capsys):
        scn = write(tmp_path / "s3.json", json.dumps({
            "group_means": [0.0, 0.0, 0.0], "group_sds": [1.0, 1.0, 1.0],
            "group_ns": [20, 20, 20], "delta": 0.5, "alpha": 0.05,
        }))
        assert main(["simulate", scn, "--reps", "1000", "--seed", "1"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["fwer_any"] >= max(report["fwer_i"], report["fwer_ii"])

    def test_curve_csv(self, tmp_path, capsys):
        scn = self.scenario_file(tmp_path)
        assert main(["simulate", scn, "--reps", "1000", "--seed", "3",
                     "--curve", "10,50", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n,accept_rate,reject_rate,agnostic_rate"
        assert len(lines) == 3


class TestBayesCommand:
    def test_nig_groups(self, tmp_path, capsys):
        rng = np.random.default_rng(5)
        data = group_csv(tmp_path / "g.csv", {
            "a": rng.normal(80.0, 5.0, 400),
            "b": rng.normal(80.5, 5.0, 400),
            "c": rng.normal(95.0, 5.0, 400),
        })
        prior = write(tmp_path / "prior.json", json.dumps(
            {"family": "nig", "m": 80, "k": 1, "a": 3, "b": 3}))
        assert main(["bayes", data, "--prior", prior, "--delta", "3.0",
                     "--draws", "20000", "--seed", "11"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["results"]) == 3
        decisions = {r["hypothesis"]: r["decision"] for r in payload["results"]}
        assert decisions["|a - b| <= 3"] == "accept"
        assert decisions["|a - c| <= 3"] == "reject"

    def test_beta_jeffreys_studies(self, tmp_path, capsys):
        studies = write(tmp_path / "st.csv", FOLLOW_UP_CSV)
        assert main(["bayes", studies, "--nnt", "6", "--draws", "20000",
                     "--seed", "13"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["results"]) == 5
        assert all(r["decision"] == "accept" for r in payload["results"])
        assert all(r["posterior_probability"] > 0.95 for r in payload["results"])

    def test_deterministic_given_seed(self, tmp_path):
        studies = write(tmp_path / "st.csv", PHARMA_CSV)
        out1, out2 = tmp_path / "b1.json", tmp_path / "b2.json"
        for out in (out1, out2):
            assert main(["bayes", studies, "--nnt", "6", "--draws", "20000",
                         "--seed", "13", "--out", str(out)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_unknown_prior_family(self, tmp_path):
        studies = write(tmp_path / "st.csv", FOLLOW_UP_CSV)
        prior = write(tmp_path / "prior.json", json.dumps({"family": "cauchy"}))
        assert main(["bayes", studies, "--prior", prior, "--nnt", "6"]) == 2


class TestFormatGuards:
    def test_unsupported_formats_are_config_errors(self, tmp_path):
        a = values_csv(tmp_path / "a.csv", [0.0, 1.0, 2.0])
        b = values_csv(tmp_path / "b.csv", [0.0, 1.0, 2.0])
        assert main(["test", a, b, "--delta", "0.5", "--format", "csv"]) == 2
        studies = write(tmp_path / "st.csv", FOLLOW_UP_CSV)
        assert main(["bayes", studies, "--nnt", "6", "--format", "svg"]) == 2
        scn = write(tmp_path / "s.json", json.dumps({
            "group_means": [0.0, 0.0], "group_sds": [1.0, 1.0],
            "group_ns": [10, 10], "delta": 0.5, "alpha": 0.05}))
        assert main(["simulate", scn, "--reps", "1000", "--format", "svg"]) == 2
