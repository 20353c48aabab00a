import json

import pytest

from taquin.cli import main
from taquin.families import delta
from taquin.poset import Poset


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, P in (("d33", delta(3, 3)), ("d32", delta(3, 2)), ("diamond", delta(1, 1))):
        p = tmp_path / f"{name}.json"
        p.write_text(P.to_json())
        paths[name] = str(p)
    return paths


def test_gen_shape_has_row_major_labels(capsys):
    assert main(["gen", "--shape", "3,3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 6
    assert data["labels"][:3] == ["(1,1)", "(1,2)", "(1,3)"]
    assert Poset.from_dict(data).n == 6


@pytest.mark.parametrize("args,n", [(["--shifted", "4,2,1"], 7), (["--tree", "2,2,-1"], 3),
                                    (["--delta", "3,2"], 7), (["--minuscule", "e6_1"], 16)])
def test_gen_families(args, n, capsys):
    assert main(["gen"] + args) == 0
    assert json.loads(capsys.readouterr().out)["n"] == n


def test_gen_to_file(tmp_path):
    out = tmp_path / "p.json"
    assert main(["gen", "--delta", "1,1", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == delta(1, 1).to_dict() | {"labels": ["a1", "x0", "y0", "t1"]}


def test_check_jdt_verdicts(files, capsys):
    assert main(["check", "--jdt", "--tier", "crucial", files["d33"]]) == 0
    assert "jdt[crucial]=True" in capsys.readouterr().out
    assert main(["check", "--jdt", files["d32"]]) == 1
    out = capsys.readouterr().out
    assert "failing crucial challenge" in out and '"pair": [3, 4]' in out


@pytest.mark.parametrize("tier", ["def", "challenge", "crucial"])
def test_check_tiers(files, tier):
    assert main(["check", "--jdt", "--tier", tier, files["d32"]]) == 1
    assert main(["check", "--jdt", "--tier", tier, files["diamond"]]) == 0


def test_check_dcomplete_and_simultaneous(files, capsys):
    assert main(["check", "--dcomplete", files["d32"]]) == 1
    out = capsys.readouterr().out
    assert "D1: FAIL" in out and "k=5" in out
    assert main(["check", "--simultaneous", "--strong", "--trace", files["diamond"]]) == 0
    out = capsys.readouterr().out
    assert "strongly_simultaneous=True" in out and "collision 1" in out


def test_check_json_format(files, capsys):
    assert main(["check", "--jdt", "--format", "json", "--seed", "5", files["d33"]]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["jdt"] is True
    assert data["seed"] == 5 and data["tool"] == "taquin" and "version" in data
    assert data["config"]["tier"] == "crucial"


def test_empty_trace(files, tmp_path, capsys):
    bn = tmp_path / "bn.json"
    bn.write_text(json.dumps({"green": {"3": 1}, "red": {"0": 1, "1": 2, "2": 3}}))
    assert main(["empty", files["diamond"], str(bn)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "swap bubble=1 from=3 to=2 label=3"
    assert lines[2] == "swap bubble=1 from=2 to=0 label=1"
    assert json.loads(lines[3]) == {"red": {"1": 2, "2": 1, "3": 3}}


def test_empty_test_orders(files, tmp_path, capsys):
    bn = tmp_path / "t.json"
    bn.write_text(json.dumps({"green": {"1": "A", "2": "B"}, "red": {"0": 1}}))
    main(["empty", files["diamond"], str(bn), "--order", "BA", "--format", "json"])
    ba = json.loads(capsys.readouterr().out)["red"]
    main(["empty", files["diamond"], str(bn), "--order", "AB", "--format", "json"])
    ab = json.loads(capsys.readouterr().out)["red"]
    assert ba == {"1": 1} and ab == {"2": 1}


def test_fairchart(files, tmp_path, capsys):
    ext = tmp_path / "ext.json"
    ext.write_text(json.dumps({"0": 1, "1": 2, "2": 3, "3": 4}))
    assert main(["fairchart", files["diamond"], "--ext", str(ext), "--filter", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["after"] == {"1": 2, "2": 1, "3": 3}
    assert data["before"]["3"] == 4


def test_enumerate_writes_index(tmp_path, capsys):
    assert main(["enumerate", "--n", "4", "--out", str(tmp_path / "out")]) == 0
    assert "count=10" in capsys.readouterr().out
    assert len(json.load(open(tmp_path / "out" / "index.json"))) == 10


def test_survey_reports_are_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    sa, sb = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["survey", "--n", "5", "--report", str(a), "--summary", str(sa)]) == 0
    first = capsys.readouterr().out
    assert main(["survey", "--n", "5", "--report", str(b), "--summary", str(sb), "--threads", "2"]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert "jdt=" in first and "total=44" in first
    assert json.loads(sa.read_text())["summary"]["total"] == 44


def test_conjecture(capsys):
    assert main(["conjecture", "--n", "5"]) == 0
    assert "outliers=0" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["check"], ["gen"], ["gen", "--shape", "1,x"],
                                  ["check", "--jdt", "/nonexistent.json"], ["survey", "--n", "3", "--threads", "0"]])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_invalid_partition_is_usage_error(capsys):
    assert main(["gen", "--shape", "1,2"]) == 2
