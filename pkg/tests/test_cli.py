import io
import json
import sys

import pytest

from meroflat import cli
from meroflat.fixtures import fixture_batch


def run(argv, stdin=None, capsys=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin)))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def runner(capsys, monkeypatch):
    return lambda argv, stdin=None: run(argv, stdin, capsys, monkeypatch)


def job(command, payload, id_=None):
    d = {"command": command, "payload": payload}
    if id_:
        d["id"] = id_
    return d


def test_good_check(runner):
    code, out, _ = runner(["run", "-"], job("good-check", {"divisors": ["z1", "z2"], "values": ["z1^-1*z2^-1", "z1^-1", "0"]}))
    assert code == 0
    assert json.loads(out)["results"][0]["result"]["good"] is True


def test_puiseux(runner):
    code, out, _ = runner(["run", "-"], job("puiseux", {"coefficients": ["0", "-z^-3"]}))
    (branch,) = json.loads(out)["results"][0]["result"]["branches"]
    assert (branch["series"], branch["ramification"]) == ("z^(-3/2)", 2)


def test_precision_flag(runner):
    _, out, _ = runner(["run", "-", "--precision", "9"], job("puiseux", {"coefficients": ["0", "-1 - z"]}))
    assert json.loads(out)["results"][0]["result"]["target"] == "9"


def test_slope(runner):
    payload = {"M2": "3", "N": 1, "deg_omega_H": "2", "rank": 2, "mu": "0"}
    _, out, _ = runner(["run", "-"], job("slope", payload))
    assert json.loads(out)["results"][0]["result"]["gap_bound"] == "10"


def test_empty_batch(runner):
    code, out, _ = runner(["run", "-"], [])
    assert (code, json.loads(out)) == (0, {"results": []})


def test_mixed_results_exit_zero(runner):
    jobs = [
        job("chain", {"slopes": ["2", "1", "0"], "edges": [[0, 1]]}, "refused"),
        job("hilbert", {"n": 2, "polynomial": ["0", "1", "1"]}, "ok"),
    ]
    code, out, _ = runner(["run", "-"], jobs)
    res = json.loads(out)["results"]
    assert code == 0
    assert [(r["id"], r["status"]) for r in res] == [("refused", "domain-error"), ("ok", "ok")]
    assert "not irreducible" in res[0]["error"]


def test_parse_error_location(runner):
    code, out, err = runner(["run", "-"], [job("hilbert", {"n": 1, "polynomial": ["1"]}),
                                           job("good-check", {"divisors": ["z"], "values": ["z^-1", "z^^2"]})])
    assert code == 2 and out == ""
    assert "jobs[1].payload" in err and "values[1]" in err and "offset 2" in err


def test_schema_error_location(runner):
    code, _, err = runner(["run", "-"], [job("slope", {"M2": "3", "N": 0, "deg_omega_H": "2", "rank": 2, "mu": "0"})])
    assert code == 2 and "jobs[0].payload.N" in err
    code, _, err = runner(["run", "-"], [{"command": "nope", "payload": {}}])
    assert code == 2 and "jobs[0].command" in err


def test_invalid_json(runner, tmp_path):
    bad = tmp_path / "jobs.json"
    bad.write_text("[{")
    code, _, err = runner(["run", str(bad)])
    assert code == 2 and "line 1" in err


def test_table_format(runner):
    model = {"blocks": [{"a": "0", "residues": [["1/3", 2], ["0", 1]]}]}
    _, out, _ = runner(["run", "-", "--format", "table"], job("dm", {"model": model}, "t"))
    lines = out.splitlines()
    assert lines[0] == "[t] dm: ok"
    grid = [l for l in lines if l.lstrip().startswith("|")]
    assert grid == [
        "  | level | rank | eigenvalues |",
        "  |     0 |    1 |           0 |",
        "  |  -1/3 |    2 |    1/3 (x2) |",
    ]


def test_fixture_batch_covers_every_command():
    assert {j["command"] for j in fixture_batch(0)} == set(cli.COMMANDS)


def test_fixtures_command_is_loadable(runner):
    code, out, _ = runner(["fixtures", "--seed", "3"])
    assert code == 0
    assert cli.load_jobs(json.loads(out)) == cli.load_jobs(fixture_batch(3))


def test_parallel_output_is_identical(tmp_path, runner):
    path = tmp_path / "batch.json"
    path.write_text(json.dumps(fixture_batch(1)))
    outputs = {runner(["run", str(path), "--jobs", str(n)])[1] for n in (1, 3)}
    assert len(outputs) == 1
