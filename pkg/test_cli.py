import json
import logging

import pytest
from click.testing import CliRunner

from cli import cli, run
from conftest import Z_SHAPE, rectangle
from spikes import gen_spike


@pytest.fixture
def runner():
    return CliRunner()


def polygon_json(poly):
    return json.dumps({"vertices": poly.to_pairs()})


def test_gen_spike(runner):
    result = runner.invoke(cli, ["gen", "spike", "--m", "2"])
    assert result.exit_code == 0
    assert len(json.loads(result.output)["vertices"]) == 8


def test_gen_spike_rejects_zero(runner):
    result = runner.invoke(cli, ["gen", "spike", "--m", "0"])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_validate(runner):
    ok = runner.invoke(cli, ["validate"], input=polygon_json(rectangle(2, 1)))
    assert ok.exit_code == 0
    assert json.loads(ok.output)["convex"] == 4
    bad = runner.invoke(cli, ["validate"], input=polygon_json(Z_SHAPE))
    assert bad.exit_code == 1
    assert json.loads(bad.output)["violations"][0]["kind"] == "general-position"


def test_malformed_polygon_json(runner):
    result = runner.invoke(cli, ["validate"], input='{"vertices": [["1.5", 0]]}')
    assert result.exit_code == 2
    assert "vertices" in result.output


def test_info_commands(runner):
    blocks = runner.invoke(cli, ["info", "blocks", "--m", "3", "--k", "4"])
    assert "d_3(4) = 1" in blocks.output
    assert "B = [1, 7]" in blocks.output
    profile = runner.invoke(cli, ["info", "profile", "--m", "3", "--stretched"])
    assert "row heights: 1 7 56" in profile.output
    cells = runner.invoke(cli, ["info", "cells"], input=polygon_json(gen_spike(2)))
    assert json.loads(cells.output)["classes"] == 5


def test_seq(runner):
    result = runner.invoke(cli, ["seq", "--m", "3"])
    assert result.output.strip() == "1 2 1 3 1 2 1"


def test_partition_and_decompose(runner):
    tree = json.loads(runner.invoke(cli, ["partition"], input=polygon_json(gen_spike(2))).output)
    assert tree["root_edge"] == 6
    assert len(tree["nodes"]) == 1
    forest = json.loads(runner.invoke(cli, ["decompose"], input=polygon_json(gen_spike(3))).output)
    assert forest["trees"][0]["height"] == 3
    assert len(forest["trees"][0]["pyramids"]) == 7


def test_color_then_verify(runner, tmp_path):
    poly = tmp_path / "s3.json"
    poly.write_text(polygon_json(gen_spike(3)))
    colored = runner.invoke(cli, ["color", "--mode", "strong", str(poly)])
    assert colored.exit_code == 0
    guards = tmp_path / "guards.json"
    guards.write_text(colored.output)
    verdict = runner.invoke(cli, ["verify", "--mode", "strong", str(poly), str(guards)])
    assert verdict.exit_code == 0
    assert json.loads(verdict.output)["ok"] is True


def test_verify_reports_failures(runner, tmp_path):
    poly = tmp_path / "s2.json"
    poly.write_text(polygon_json(gen_spike(2)))
    guards = tmp_path / "guards.json"
    guards.write_text(json.dumps({"guards": [{"x": "3", "y": "-1/2", "color": 1}]}))
    result = runner.invoke(cli, ["verify", str(poly), str(guards)])
    assert result.exit_code == 1
    out = json.loads(result.output)
    assert out["reason"] == "uncovered"
    assert out["cell"] == [0, 0]


def test_search_min_colors(runner):
    result = runner.invoke(cli, ["search", "min-colors", "--budget", "300"], input=polygon_json(gen_spike(2)))
    assert result.exit_code == 0
    out = json.loads(result.output)
    assert (out["status"], out["t"]) == ("yes", 2)


def test_tableau_check_and_reduce(runner, all_ones_path):
    check = runner.invoke(cli, ["tableau", "check", str(all_ones_path)])
    assert check.exit_code == 1
    assert json.loads(check.output)["violation"]["k"] == 4
    reduce = runner.invoke(cli, ["tableau", "reduce", "--t", "1", str(all_ones_path)])
    out = json.loads(reduce.output)
    assert out["outcome"] == "violation"
    assert out["replay_ok"] is True
    lr = json.loads(runner.invoke(cli, ["tableau", "reduce", "--t", "1", "--vis", "r", str(all_ones_path)]).output)
    assert (lr["outcome"], lr["model"]) == ("violation", "r")
    assert lr["violation"]["rule"] == "left-right"


def test_tableau_operations(runner, all_ones_path):
    restricted = json.loads(runner.invoke(cli, ["tableau", "restrict", "--k", "6", str(all_ones_path)]).output)
    assert restricted["mprime"] == 2
    selected = runner.invoke(cli, ["tableau", "select", "--m-star", "2", "--choice", "1=4", str(all_ones_path)])
    assert selected.exit_code == 2
    dropped = runner.invoke(cli, ["tableau", "droprows", "--m-new", "2", str(all_ones_path)])
    assert dropped.exit_code == 2


def test_tableau_extract(runner):
    guarding = {
        "model": "l",
        "guards": [
            {"x": "3", "y": "-1/2", "color": 1},
            {"x": "1", "y": "-5/2", "color": 2},
            {"x": "5", "y": "-5/2", "color": 2},
        ],
    }
    result = runner.invoke(cli, ["tableau", "extract", "--vis", "l", "--m", "2"], input=json.dumps(guarding))
    assert result.exit_code == 0
    assert json.loads(result.output)["columns"][1] == [{"1": 1}]


def test_render(runner, tmp_path, caplog):
    caplog.set_level(logging.INFO, logger="cli")
    poly = tmp_path / "s2.json"
    poly.write_text(polygon_json(gen_spike(2)))
    out = tmp_path / "s2.svg"
    result = runner.invoke(cli, ["render", str(poly), "-o", str(out), "--cells"])
    assert result.exit_code == 0
    assert out.read_text().startswith("<svg")
    (record,) = [r for r in caplog.records if r.name == "cli"]
    assert record.msg == "saving to %s"
    assert record.getMessage() == f"saving to {out}"


def test_run_returns_exit_codes():
    assert run(["seq", "--m", "2"]) == 0
    assert run(["gen", "spike", "--m", "0"]) == 2
