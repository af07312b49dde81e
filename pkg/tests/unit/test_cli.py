"""Unit tests for whitefact/cli.py (commands, output formats and exit codes)."""
import json

import pytest
from click.testing import CliRunner

import whitefact.cli as cli_module
from conftest import S3_LABELS, s3_table
from whitefact.cli import cli, cli_main
from whitefact.selftest import CheckResult

CONJUGATED_G3 = '{"parts":[{"g":[]},{"g":[]},{"g":[[2,1],[1,1]]}]}'


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps({"factors": [{"kind": "cyclic", "order": 2}] * 3}))
    return str(path)


def test_normalize(k3_file, capsys):
    assert cli_main(["--system", k3_file, "normalize", "[[1,1],[1,1],[2,1]]"]) == 0
    assert capsys.readouterr().out.strip() == "[[2,1]]"


def test_system_option_after_the_command(k3_file, capsys):
    assert cli_main(["volume", '{"alpha":[[],[],[[2,1],[1,1]]]}', "--system", k3_file]) == 0
    assert capsys.readouterr().out.strip() == "7"


def test_distance_and_geodesic(k3_file):
    runner = CliRunner()
    result = runner.invoke(cli, ["--system", k3_file, "distance", "U:[]", "C3:[[2,1],[1,1]]"])
    assert result.exit_code == 0
    assert result.output.strip() == "5"
    result = runner.invoke(cli, ["--system", k3_file, "--format", "text", "geodesic", "U:[]", "U:[[1,1],[2,1]]"])
    assert result.output.split() == ["U:[]", "C2:[]", "U:[[2,1]]", "C1:[[2,1]]", "U:[[1,1],[2,1]]"]


def test_reduce(k3_file, capsys):
    assert cli_main(["--system", k3_file, "reduce", '{"alpha":[[],[],[[2,1],[1,1]]]}']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["final"] == {"alpha": [[], [], []]}
    assert [(m["i"], m["j"], m["vol_before"], m["vol_after"]) for m in data["moves"]] == [(1, 3, 7, 5), (2, 3, 5, 3)]


def test_factorize_then_verify(k3_file, tmp_path, capsys):
    auto_file = tmp_path / "auto.json"
    auto_file.write_text(CONJUGATED_G3)
    assert cli_main(["--system", k3_file, "factorize", str(auto_file)]) == 0
    factorization = capsys.readouterr().out.strip()
    assert len(json.loads(factorization)["whitehead"]) == 2
    assert cli_main(["--system", k3_file, "verify", str(auto_file), factorization]) == 0
    assert capsys.readouterr().out.strip() == "OK"


def test_verify_rejects_a_wrong_factorization(k3_file, capsys):
    wrong = '{"whitehead":[{"Y":[3],"operating":1,"x":[1,1]}],"factor":[null,null,null],"inner":[]}'
    assert cli_main(["--system", k3_file, "verify", CONJUGATED_G3, wrong]) == 1
    assert "does not agree" in capsys.readouterr().err


def test_non_splitting_input_is_a_domain_error(k3_file, capsys):
    assert cli_main(["--system", k3_file, "factorize", '{"parts":[{"g":[[3,1]]},{"g":[[1,1]]},{"g":[[2,1]]}]}']) == 1
    assert "non-splitting input" in capsys.readouterr().err


def test_parse_errors_exit_with_two(k3_file, tmp_path, capsys):
    assert cli_main(["--system", k3_file, "normalize", "[[1"]) == 2
    assert cli_main(["normalize", "[]"]) == 2
    assert "--system is required" in capsys.readouterr().err
    assert cli_main(["--system", str(tmp_path / "missing.json"), "normalize", "[]"]) == 2
    assert cli_main(["--system", k3_file, "transmogrify"]) == 2
    assert cli_main(["--system", k3_file, "--format", "svg", "normalize", "[]"]) == 2


def test_malformed_table_input_exits_with_two(tmp_path, capsys):
    s3 = {"kind": "table", "elements": list(S3_LABELS), "table": [list(row) for row in s3_table()]}
    s3_file = tmp_path / "s3.json"
    s3_file.write_text(json.dumps({"factors": [s3, {"kind": "cyclic", "order": 2}]}))
    bad_map = '{"parts":[{"phi":{"kind":"perm","map":[0,"x",2,3,4,5]}},{}]}'
    assert cli_main(["--system", str(s3_file), "factorize", bad_map]) == 2
    assert "list of table indices" in capsys.readouterr().err
    broken_file = tmp_path / "broken.json"
    broken_file.write_text(json.dumps({"factors": [{"kind": "table", "elements": ["e", "x"], "table": [[0, "1"], [1, 0]]},
                                                   {"kind": "cyclic", "order": 2}]}))
    assert cli_main(["--system", str(broken_file), "normalize", "[]"]) == 2
    assert "integer table entries" in capsys.readouterr().err


def test_run_config_records_the_invocation(k3_file, monkeypatch, capsys):
    configs = []

    class RecordingContext(cli_module.Context):
        def __init__(self, config):
            super().__init__(config)
            configs.append(config)

    monkeypatch.setattr(cli_module, "Context", RecordingContext)
    alpha = '{"alpha":[[],[],[[2,1],[1,1]]]}'
    assert cli_main(["--system", k3_file, "--seed", "7", "volume", alpha]) == 0
    assert capsys.readouterr().out.strip() == "7"
    config = configs[0]
    assert (config.command, config.arguments, config.seed, config.output_format) == ("volume", [alpha], 7, "json")


def test_missing_system_file_is_rejected_before_running(tmp_path, capsys):
    missing = str(tmp_path / "missing.json")
    assert cli_main(["--system", missing, "selftest"]) == 2
    assert f"{missing} does not exist" in capsys.readouterr().err


def test_explore(k3_file, capsys):
    assert cli_main(["--system", k3_file, "--format", "text", "explore", "--max-volume", "3"]) == 0
    assert capsys.readouterr().out.startswith("1 alpha-classes, 3 A-classes, 3 edges")
    assert cli_main(["--system", k3_file, "--format", "dot", "explore", "--max-volume", "3"]) == 0
    assert capsys.readouterr().out.startswith("graph sn {")


def test_explore_rejects_a_low_bound(k3_file, capsys):
    assert cli_main(["--system", k3_file, "explore", "--max-volume", "2"]) == 1
    assert "bound 2 is below n = 3" in capsys.readouterr().err


def test_explore_rejects_a_bad_thread_count(k3_file, monkeypatch):
    monkeypatch.setenv("WHITEFACT_THREADS", "lots")
    assert cli_main(["--system", k3_file, "explore", "--max-volume", "3"]) == 1


def test_failed_selftest_exits_with_one(monkeypatch, capsys):
    monkeypatch.setattr(cli_module, "run_selftest", lambda seed: [CheckResult("halfway point", False, "broken")])
    assert cli_main(["selftest"]) == 1
    assert "FAIL halfway point: broken" in capsys.readouterr().out


def test_factorize_the_identity(k3_file, capsys):
    assert cli_main(["--system", k3_file, "factorize", '{"parts":[{},{},{}]}']) == 0
    assert json.loads(capsys.readouterr().out) == {"whitehead": [], "factor": [{"kind": "mult", "value": 1}] * 3,
                                                   "inner": []}
