import json
import re
from pathlib import Path

import jsonschema
import pytest

from fanocheck import cli

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_beta_glob(capsys):
    code, out, _ = run(capsys, "verify", "3-17", "--check", "beta-*")
    assert code == 0
    assert [l.split()[0] for l in out.splitlines()] == ["beta-E", "beta-R", "beta-Rprime"]


def test_json_single_record(capsys):
    code, out, _ = run(capsys, "verify", "2-16", "--check", "discriminant-1", "--report", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert code == 0 and len(data) == 1 and data[0]["status"] == "pass"


def test_full_json_validates_and_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "verify", "3-17", "--report", "json")
        assert code == 0
        outs.append(re.sub(r'"durationMs": \d+', '"durationMs": 0', out))
    data = json.loads(outs[0])
    jsonschema.validate(data, SCHEMA)
    assert outs[0] == outs[1]
    ids = [r["checkId"] for r in data]
    assert ids == sorted(ids)


def test_markdown_lists_anchors(capsys):
    code, out, _ = run(capsys, "verify", "3-17", "--check", "vol-*", "--report", "md")
    assert code == 0
    assert out.count("\n| vol-E-") == 3 and "volume on [2, 3]" in out


@pytest.mark.parametrize("argv", [
    ["verify", "3-17", "--check", "nosuch"],
    ["verify", "9-99"],
    ["verify", "3-17", "--depth", "0"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_list(capsys):
    code, out, _ = run(capsys, "verify", "3-17", "--list", "--check", "chain-*")
    assert code == 0 and "chain-base" in out


def test_failure_exit_code(capsys, monkeypatch, tmp_path):
    from fanocheck.assets import load_asset

    data = load_asset("3-17")
    data["certificates"]["R"]["S"] = "1/2"
    (tmp_path / "3-17.json").write_text(json.dumps(data))
    monkeypatch.setenv("FANOCHECK_ASSETS", str(tmp_path))
    code, out, _ = run(capsys, "verify", "3-17", "--check", "S-R")
    assert code == 1 and "fail" in out


def test_internal_error_exit_code(capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("invariant broken")

    monkeypatch.setattr(cli, "run_scenario", boom)
    code, _, err = run(capsys, "verify", "3-17")
    assert code == 3 and "invariant broken" in err


def test_depth_and_grid_flags(capsys):
    code, out, _ = run(capsys, "verify", "3-17", "--check", "chain-depth-*", "--depth", "5", "--grid", "4")
    assert code == 0 and out.startswith("chain-depth-5")
