import json

import pytest

from arcmult.cli import main
from arcmult.corpus import corpus_names, load_problem, run_corpus, summarize
from arcmult.errors import ParseError
from arcmult.problems import parse_problem, run

CUSP_PROBLEM = """\
name: cusp_demo
field: 0
variables: x y
poly: y^2 - x^3
fiber: y
arc phi: t^2, t^3
parametrization: t^2, t^3
analyses: nash contact ord_d verify
expect ord_d: 3/2
expect nash phi: 2,2,2,1
expect rho phi: 3
expect r_bar phi: 3/2
expect verify: PASS
"""


class TestProblemFormat:
    def test_parse_and_run_cusp(self):
        problem = parse_problem(CUSP_PROBLEM)
        report = run(problem)
        assert report.verdict == "PASS"
        payload = report.to_json()
        assert payload["analyses"]["ord_d"]["ord_d"] == "3/2"
        assert payload["analyses"]["nash"]["phi"]["sequence"] == [2, 2, 2, 1]
        assert payload["analyses"]["contact"]["phi"]["r_bar"] == "3/2"
        assert payload["analyses"]["verify"]["verdict"] == "PASS"
        assert all(e["match"] for e in payload["expectations"])

    def test_round_trip_through_render(self):
        problem = parse_problem(CUSP_PROBLEM)
        again = parse_problem(problem.render())
        assert again == problem

    def test_bundled_problems_round_trip(self):
        for name in corpus_names():
            problem = load_problem(name)
            assert parse_problem(problem.render(), name_hint=name) == problem

    def test_malformed_poly_reports_line(self):
        bad = CUSP_PROBLEM.replace("y^2 - x^3", "y^^2")
        with pytest.raises(ParseError) as err:
            parse_problem(bad)
        assert err.value.line == 4

    def test_unknown_key_rejected(self):
        with pytest.raises(ParseError):
            parse_problem(CUSP_PROBLEM + "mystery: 1\n")

    def test_wrong_arity_arc_rejected(self):
        with pytest.raises(ParseError):
            parse_problem(CUSP_PROBLEM.replace("arc phi: t^2, t^3", "arc phi: t^2"))

    def test_rationals_serialized_in_lowest_terms(self):
        problem = parse_problem(CUSP_PROBLEM)
        problem.analyses = ("contact",)
        payload = run(problem).to_json()
        phi = payload["analyses"]["contact"]["phi"]
        assert phi["r"] == "3" and phi["r_bar"] == "3/2"


class TestCorpus:
    def test_names_cover_both_characteristics(self):
        names = corpus_names()
        assert "cusp_char0" in names and "cusp_char2" in names
        assert len(names) >= 8

    def test_bundled_cusp_char0_report_values(self):
        report = run(load_problem("cusp_char0"))
        payload = report.to_json()
        assert payload["analyses"]["ord_d"]["ord_d"] == "3/2"
        assert payload["analyses"]["nash"]["phi"]["rho"] == 3
        assert payload["analyses"]["nash"]["phi"]["sequence"] == [2, 2, 2, 1]
        assert payload["verdict"] == "PASS"

    def test_bundled_cusp_char2_report_values(self):
        report = run(load_problem("cusp_char2"))
        payload = report.to_json()
        assert payload["analyses"]["ord_d"]["ord_d"] == "2"
        assert payload["analyses"]["nash"]["phi"]["rho"] == 4
        assert payload["analyses"]["nash"]["phi"]["sequence"] == [2, 2, 2, 2, 1]
        assert payload["verdict"] == "PASS"

    def test_cusp_subset_passes(self):
        results = run_corpus("cusp*")
        summary = summarize(results)
        assert summary["problems"] == 3
        assert summary["passed"] == 3

    def test_no_match_is_empty(self):
        assert run_corpus("nomatch") == []


class TestCli:
    def write(self, tmp_path, text, name="problem.problem"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_nash_command(self, tmp_path, capsys):
        path = self.write(tmp_path, CUSP_PROBLEM)
        assert main(["nash", path]) == 0
        out = capsys.readouterr().out
        assert "[2,2,2,1]" in out and "rho=3" in out

    def test_ord_d_command_json(self, tmp_path, capsys):
        path = self.write(tmp_path, CUSP_PROBLEM)
        assert main(["ord-d", path, "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["analyses"]["ord_d"]["ord_d"] == "3/2"

    def test_verify_command(self, tmp_path, capsys):
        path = self.write(tmp_path, CUSP_PROBLEM)
        assert main(["verify", path, "--budget", "20"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_contact_trace_determinism(self, tmp_path, capsys):
        path = self.write(tmp_path, CUSP_PROBLEM)
        outputs = []
        for _ in range(2):
            assert main(["verify", path, "--json", "--seed", "5", "--budget", "25"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = self.write(tmp_path, CUSP_PROBLEM.replace("y^2 - x^3", "y^^2"))
        assert main(["nash", path]) == 2
        assert "input error" in capsys.readouterr().err

    def test_missing_file_exit_code(self, capsys):
        assert main(["nash", "/no/such/file.problem"]) == 2

    def test_missing_fiber_exit_code(self, tmp_path, capsys):
        text = "\n".join(
            line for line in CUSP_PROBLEM.splitlines() if not line.startswith("fiber")
        )
        path = self.write(tmp_path, text)
        assert main(["ord-d", path]) == 2

    def test_arc_off_variety_exit_code(self, tmp_path, capsys):
        text = CUSP_PROBLEM.replace("arc phi: t^2, t^3", "arc phi: t^3, t^2")
        path = self.write(tmp_path, text)
        assert main(["nash", path]) == 2

    def test_expect_mismatch_exit_code(self, tmp_path, capsys):
        text = CUSP_PROBLEM.replace("expect ord_d: 3/2", "expect ord_d: 2")
        path = self.write(tmp_path, text)
        assert main(["ord-d", path]) == 1
        assert "MISMATCH" in capsys.readouterr().out

    def test_engine_error_exit_code(self, tmp_path, capsys):
        # over F_2 the initial form (u+v)^2 vanishes at the only unit tuple,
        # so the minimizing-arc search fails with a rational-witness error
        text = """\
name: no_unit
field: 2
variables: u v y
poly: y^2 + u^3 + 3*u^2*v + 3*u*v^2 + v^3
fiber: y
arc gamma: t^2, t^2, 0
analyses: verify
"""
        path = self.write(tmp_path, text)
        assert main(["verify", path]) == 3
        assert "engine error" in capsys.readouterr().err

    def test_corpus_command(self, capsys):
        assert main(["corpus", "cusp_char0"]) == 0
        out = capsys.readouterr().out
        assert "cusp_char0" in out and "1/1 problems PASS" in out

    def test_corpus_no_match_warns(self, capsys):
        assert main(["corpus", "nomatch"]) == 0
        assert "warning" in capsys.readouterr().out

    def test_trace_flag_prints_steps(self, tmp_path, capsys):
        path = self.write(tmp_path, CUSP_PROBLEM)
        assert main(["nash", path, "--trace"]) == 0
        out = capsys.readouterr().out
        assert "chart" in out and "transform" in out
