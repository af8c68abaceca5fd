import argparse
import json

import pytest

from hhkit import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, make_graph, parse_instances
from models import CheckResult, FamilyParams, HHKitError, Report


class TestParsing:
    """Test argument helpers"""

    def test_parse_instances(self):
        """Test parsing an instance list"""
        assert parse_instances("5:2, 7:3") == [FamilyParams(n=5, r=2), FamilyParams(n=7, r=3)]

    @pytest.mark.parametrize("text", ["52", "5:x", "0:2"])
    def test_parse_instances_rejects(self, text):
        """Test malformed instance lists"""
        with pytest.raises(argparse.ArgumentTypeError):
            parse_instances(text)

    def test_make_graph(self):
        """Test building graphs by family name"""
        assert make_graph("kneser", 5, 2).edge_count == 15
        assert make_graph("complete", 4, None).edge_count == 6
        assert make_graph("shift", 5, None).vertex_count == 10
        with pytest.raises(HHKitError):
            make_graph("hh", 5, None)


class TestGen:
    """Test the gen command"""

    def test_hh_edges(self, tmp_path, capsys):
        """Test writing H(5:2) as an edge file"""
        out = tmp_path / "h52.edges"
        assert main(["gen", "hh", "5", "2", "--out", str(out)]) == EXIT_OK
        assert "p 30 60" in capsys.readouterr().out
        assert out.read_text().splitlines()[0] == "p 30 60"
        assert (tmp_path / "h52.labels.csv").exists()

    def test_kneser_edges(self, tmp_path, capsys):
        """Test writing K(5:2)"""
        assert main(["gen", "kneser", "5", "2", "--out", str(tmp_path / "k.edges")]) == EXIT_OK
        assert "p 10 15" in capsys.readouterr().out

    def test_json(self, tmp_path):
        """Test node-link JSON output"""
        out = tmp_path / "h42.json"
        assert main(["gen", "hh", "4", "2", "--out", str(out), "--format", "json"]) == EXIT_OK
        assert len(json.loads(out.read_text())["nodes"]) == 12

    def test_missing_r(self, tmp_path):
        """Test gen without r"""
        assert main(["gen", "hh", "5", "--out", str(tmp_path / "x.edges")]) == EXIT_USAGE

    def test_invalid_parameters(self, tmp_path):
        """Test gen with parameters out of range"""
        assert main(["gen", "hh", "2", "2", "--out", str(tmp_path / "x.edges")]) == EXIT_USAGE
        assert main(["gen", "kneser", "0", "2", "--out", str(tmp_path / "x.edges")]) == EXIT_USAGE

    def test_unknown_family(self, tmp_path):
        """Test gen with an unknown family"""
        with pytest.raises(SystemExit) as excinfo:
            main(["gen", "petersen", "5", "--out", str(tmp_path / "x.edges")])
        assert excinfo.value.code == 2


class TestParams:
    """Test the params command"""

    def test_params(self, tmp_path, capsys, test_config):
        """Test params on H(7:3)"""
        out = tmp_path / "params.json"
        assert main(["params", "7", "3", "--out", str(out)]) == EXIT_OK
        printed = capsys.readouterr().out
        assert "PASS" in printed
        assert "odd girth" in printed
        report = json.loads(out.read_text())
        assert report["command"] == "params"
        assert report["witnesses"]["H(7:3)"]["edge_count"] == 630

    def test_params_n_equals_2r(self, tmp_path, capsys, test_config):
        """Test params on the disconnected graph H(6:3)"""
        out = tmp_path / "h63.json"
        assert main(["params", "6", "3", "--out", str(out)]) == EXIT_OK
        assert "PASS" in capsys.readouterr().out
        report = json.loads(out.read_text())
        values = {result["name"]: result for result in report["results"]}
        assert values["components"]["value"] == values["components"]["expected"] == 10
        assert values["diameter"]["value"] == values["diameter"]["expected"] == "INFINITE"
        assert report["witnesses"]["H(6:3)"]["component_count"] == 10

    @pytest.mark.parametrize("n,r", [("5", "1"), ("3", "2")])
    def test_params_domain(self, n, r, test_config):
        """Test params outside its range"""
        assert main(["params", n, r]) == EXIT_USAGE


class TestVerifyAndTable:
    """Test the verify and table commands"""

    def test_verify_quotient(self, tmp_path, capsys, test_config):
        """Test verify with explicit instances"""
        out = tmp_path / "quotient.json"
        code = main(["verify", "quotient", "--instances", "5:2,7:3", "--out", str(out)])
        assert code == EXIT_OK
        assert "PASS" in capsys.readouterr().out
        assert json.loads(out.read_text())["params"]["instances"] == ["5:2", "7:3"]

    def test_verify_n_max(self, capsys, test_config):
        """Test verify with an n bound"""
        assert main(["verify", "hhog", "--n-max", "5"]) == EXIT_OK
        assert "odd girth H(5:2)" in capsys.readouterr().out

    def test_verify_unknown_theorem(self):
        """Test verify with an unknown suite"""
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", "riemann"])
        assert excinfo.value.code == 2

    def test_verify_bad_instances(self):
        """Test verify with malformed instances"""
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", "quotient", "--instances", "52"])
        assert excinfo.value.code == 2

    def test_failed_report_exits_one(self, mocker, capsys, test_config):
        """Test exit status of a failed table"""
        failing = Report(
            command="table 2",
            results=[CheckResult(name="chi H(7:2)", value=5, expected=4, match=False)],
        )
        mocker.patch("hhkit.get_table_suite").return_value.run.return_value = failing
        assert main(["table", "2"]) == EXIT_FAILED
        assert "MISMATCH" in capsys.readouterr().out

    def test_inexact_report_exits_one(self, mocker, test_config):
        """Test exit status of an inexact table"""
        inexact = Report(
            command="table 1",
            results=[CheckResult(name="alpha H(8:3)", value=105, expected=105, match=True, exact=False)],
        )
        mocker.patch("hhkit.get_table_suite").return_value.run.return_value = inexact
        assert main(["table", "1"]) == EXIT_FAILED

    def test_table_rejects_unknown_table(self):
        """Test an unknown table number"""
        with pytest.raises(SystemExit):
            main(["table", "4"])

    def test_unwritable_report(self, tmp_path, mocker, test_config):
        """Test a report that cannot be written"""
        mocker.patch("hhkit.ReportStore.save_report", side_effect=OSError("disk full"))
        code = main(["verify", "quotient", "--instances", "5:2", "--out", str(tmp_path / "r.json")])
        assert code == EXIT_FAILED
