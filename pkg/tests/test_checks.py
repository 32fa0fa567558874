import json
import subprocess
import sys

import pytest

from pd3.checks import (CHECK_IDS, MUTATIONS, Workspace, checks_reading,
                        mutation_audit, run_check, run_suite, select_checks,
                        validate_report_json)
from pd3.corpus import default_catalog
from pd3.errors import UnknownCheck
from pd3 import cli


@pytest.fixture(scope="module")
def quick_report():
    # small ball keeps the whole-suite fixture fast; Y5/Y6 stay PARTIAL
    return run_suite(max_length=2)


class TestSuite:
    def test_catalog_has_22_checks(self):
        assert len(CHECK_IDS) == 22
        assert CHECK_IDS[0] == "X1" and CHECK_IDS[-1] == "H1"

    def test_everything_passes(self, quick_report):
        counts = quick_report.counts
        assert counts["FAIL"] == 0
        assert counts["PARTIAL"] == 2
        assert counts["PASS"] == 20
        assert quick_report.exit_code == 0

    def test_partial_is_exactly_the_ball_truncated_checks(self, quick_report):
        partial = [r.id for r in quick_report.results if r.status == "PARTIAL"]
        assert partial == ["Y5", "Y6"]
        for r in quick_report.results:
            if r.id in ("Y5", "Y6"):
                assert r.status_text == "PARTIAL(2)"

    def test_filter_semantics(self):
        assert select_checks(["X*"]) == [f"X{i}" for i in range(1, 9)]
        assert select_checks(["Y1?"]) == ["Y10", "Y11"]
        assert select_checks(None) == CHECK_IDS
        assert select_checks(["Q*"]) == []

    def test_unknown_check_id(self):
        with pytest.raises(UnknownCheck):
            select_checks(["X99"])
        with pytest.raises(UnknownCheck):
            run_check("X99")

    def test_empty_filter_match_gives_empty_passing_report(self):
        report = run_suite(["Q*"])
        assert report.results == [] and report.exit_code == 0

    def test_single_check_runs_in_isolation(self):
        res = run_check("X6")
        assert res.status == "PASS"
        assert res.claim

    def test_tampered_corpus_fails_with_residual(self):
        bad = default_catalog().mutated("cycles:psi:1", lambda s: s + " + 1")
        res = run_check("X2", Workspace(bad))
        assert res.status == "FAIL"
        assert any("boundary" in d for d in res.details)

    def test_jobs_option_gives_same_results(self, quick_report):
        parallel = run_suite(max_length=2, jobs=4)
        assert [(r.id, r.status) for r in parallel.results] == \
            [(r.id, r.status) for r in quick_report.results]


class TestReports:
    def test_json_validates_against_schema(self, quick_report):
        validate_report_json(quick_report.to_json())

    def test_json_deterministic_without_timing(self, quick_report):
        again = run_suite(max_length=2)
        assert quick_report.to_json(include_timing=False) == \
            again.to_json(include_timing=False)
        assert quick_report.to_text(include_timing=False) == \
            again.to_text(include_timing=False)

    def test_text_lists_partial_radius(self, quick_report):
        assert "PARTIAL(2)" in quick_report.to_text()

    def test_json_carries_corpus_hash_and_version(self, quick_report):
        data = json.loads(quick_report.to_json())
        assert data["corpus_hash"] == default_catalog().content_hash()
        assert data["config"]["max_length"] == 2
        assert data["summary"]["PASS"] == 20

    def test_schema_rejects_malformed(self, quick_report):
        data = json.loads(quick_report.to_json())
        del data["results"][0]["status"]
        with pytest.raises(ValueError):
            validate_report_json(json.dumps(data))


class TestMutationAudit:
    def test_twenty_mutations_all_detected(self):
        outcomes = mutation_audit()
        assert len(outcomes) == 20
        for o in outcomes:
            assert o.checks_run, f"mutation {o.path} runs no checks"
            assert o.detected, f"mutation {o.path} not detected"

    def test_every_mutated_payload_is_read_by_a_cheap_check(self):
        for path in MUTATIONS:
            ids = checks_reading(path)
            assert ids and not set(ids) & {"Y5", "Y6"}


class TestCli:
    def test_verify_exit_zero(self, tmp_path):
        out = tmp_path / "report.json"
        code = cli.main(["verify", "--check", "X2", "--check", "X6",
                         "--format", "json", "--out", str(out), "--no-timing"])
        assert code == 0
        validate_report_json(out.read_text())

    def test_verify_unknown_check_exits_2(self, capsys):
        assert cli.main(["verify", "--check", "NOPE"]) == 2

    def test_normalize(self, capsys):
        assert cli.main(["normalize", "--group", "pi", "c*b*a"]) == 0
        assert capsys.readouterr().out.strip() == "a*c^2*b^2"

    def test_homology_command(self, capsys):
        assert cli.main(["homology", "--complex", "x-universal"]) == 0
        out = capsys.readouterr().out
        assert "H_0 = Z" in out and "H_3 = Z" in out

    def test_snf_command(self, tmp_path, capsys):
        f = tmp_path / "m.json"
        f.write_text(json.dumps({"rows": [[2, 4], [6, 8]]}))
        dec = tmp_path / "dec.json"
        assert cli.main(["snf", str(f), "--out", str(dec)]) == 0
        assert "diagonal: [2, 4]" in capsys.readouterr().out
        data = json.loads(dec.read_text())
        assert set(data) == {"D", "U", "V"}

    def test_snf_bad_input_exits_2(self, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text(json.dumps({"rows": [["x"]]}))
        assert cli.main(["snf", str(f)]) == 2
        assert cli.main(["snf", str(tmp_path / "missing.json")]) == 2

    def test_bar_command(self, capsys):
        assert cli.main(["bar", "--group", "z2", "--degree", "3"]) == 0
        assert "Z/2" in capsys.readouterr().out

    def test_fox_requires_shipped_presentation(self, tmp_path, capsys):
        good = tmp_path / "s3.json"
        good.write_text(json.dumps(
            {"generators": ["a", "b"], "relators": ["a^2", "a*b*a*b^-2"]}))
        assert cli.main(["fox", "--presentation", str(good)]) == 0
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"generators": ["a"], "relators": ["a^5"]}))
        assert cli.main(["fox", "--presentation", str(bad)]) == 2

    def test_console_script_runs(self):
        proc = subprocess.run([sys.executable, "-m", "pd3.cli", "--version"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "pd3" in proc.stdout
