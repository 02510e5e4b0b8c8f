import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest
from hypothesis import given, settings

from conftest import graphs
from widthlab.cli import main, run
from widthlab.errors import ParseError
from widthlab.formats import parse_dimacs, parse_instance, parse_json_instance, to_dimacs, to_json_instance
from widthlab.generators import complete
from widthlab.graphs import PrecoloredGraph

SCHEMA = json.loads(resources.files("widthlab").joinpath("schema/report.schema.json").read_text())


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith("WIDTHLAB_"):
            monkeypatch.delenv(key)


def _run(*argv):
    code, report, _ = run(list(argv))
    jsonschema.validate(report, SCHEMA)
    return code, report


def _strip(report):
    return {k: v for k, v in report.items() if k != "elapsed_ms"}


# ------------------------------------------------------------ formats

def test_parse_dimacs_examples():
    g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g == complete(3)
    with pytest.raises(ParseError) as exc:
        parse_dimacs("p edge 3 1\ne 1 2\ne 1 x\n")
    assert (exc.value.line, exc.value.column) == (3, 5)
    with pytest.raises(ParseError) as exc:
        parse_dimacs("p edge 3 1\ne  2 9\n")
    assert (exc.value.line, exc.value.column) == (2, 6)
    with pytest.raises(ParseError):
        parse_dimacs("e 1 2\n")
    with pytest.raises(ParseError):
        parse_dimacs("p edge 2 1\ne 1 3\n")


def test_parse_json_instance():
    p = parse_json_instance('{"n": 3, "edges": [[0, 1], [1, 2]], "colors": {"0": 0, "2": 0}}')
    assert p.colors == {0: 0, 2: 0} and p.graph.m == 2
    with pytest.raises(ParseError):
        parse_json_instance('{"n": 2, "edges": [[0, 5]]}')
    with pytest.raises(ParseError):
        parse_json_instance('{"n": 2, "edges": [[0, 1]], "colors": {"0": 7}}')
    with pytest.raises(ParseError):
        parse_json_instance('{"n": 2, "edges": [[0, 1]], "precoloring": {"0": 1}}')
    with pytest.raises(ParseError) as exc:
        parse_json_instance('{"n": 2,\n "edges": [[0, 1]')
    assert exc.value.line == 2


@settings(max_examples=50)
@given(graphs(max_n=9))
def test_round_trips(g):
    assert parse_dimacs(to_dimacs(g)) == g
    p = PrecoloredGraph(g, {v: v % 3 for v in range(0, g.n, 2)})
    assert parse_json_instance(to_json_instance(p)) == p
    assert parse_instance(to_json_instance(p)) == p


# ------------------------------------------------------------ commands

def test_width_k4():
    code, rep = _run("width", "complete:4")
    assert code == 0
    assert rep["result"]["width"] == 4 and rep["result"]["rounds"] == 4
    assert rep["certificate"]["k"] == 4 and rep["certificate"]["moves"]


def test_width_colorable_exits_3():
    code, rep = _run("width", "cycle:5")
    assert code == 3
    hom = {int(v): c for v, c in rep["result"]["homomorphism"].items()}
    assert all(hom[u] != hom[v] for u, v in [(i, (i + 1) % 5) for i in range(5)])


def test_parse_error_exits_2(tmp_path):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 3 1\ne 1 2\ne 1 x\n")
    code, rep = _run("width", str(bad))
    assert code == 2
    assert (rep["result"]["line"], rep["result"]["column"]) == (3, 5)
    code, _ = _run("width", "nosuchfile")
    assert code == 2


def test_resource_cap_exits_4():
    code, rep = _run("width", "grotzsch", "--budget-nodes", "50")
    assert code == 4 and rep["result"]["error"] == "ResourceCap"


def test_precondition_exits_3():
    code, _ = _run("verify", "cycle:5")
    assert code == 3
    code, _ = _run("survey", "--n", "3")
    assert code == 3


ALL_COMMANDS = [
    ("width", "complete:4"),
    ("consistency", "complete:4", "--k", "4"),
    ("consistency", "cycle:5", "--k", "3", "--target", "k2"),
    ("game", "complete:4", "--k", "4"),
    ("game", "complete:4", "--k", "4", "--rounds", "3", "--erasure", "any"),
    ("enumerate", "--k", "4", "--r", "1", "--n-max", "4", "--orbits"),
    ("enumerate", "--k", "5", "--r", "2", "--n-max", "6", "--trees"),
    ("generate", "petersen"),
    ("generate", "gadget"),
    ("generate", "random-regular", "10", "3", "--seed", "4"),
    ("generate", "triple-cover", "complete:4"),
    ("generate", "mycielski", "cycle", "5"),
    ("planarize", "complete:4"),
    ("verify", "wheel:5"),
    ("survey", "--n", "5"),
    ("obstruction", "complete:4", "--max-vertices", "4"),
    ("play", "complete:4", "--k", "4", "--self-play"),
]


@pytest.mark.parametrize("argv", ALL_COMMANDS, ids=lambda a: " ".join(a))
def test_every_command_schema_valid_and_deterministic(argv):
    code, first = _run(*argv, "--cache-dir", "")
    assert code == 0, first["result"]
    code, second = _run(*argv, "--cache-dir", "", "--workers", "3")
    assert _strip(first)["result"] == _strip(second)["result"]
    assert first.get("certificate") == second.get("certificate")


def test_specific_results():
    assert _run("game", "complete:4", "--k", "3")[1]["result"]["min_rounds"] == "NoWin"
    enum = _run("enumerate", "--k", "4", "--r", "1", "--n-max", "4", "--orbits")[1]["result"]
    assert enum["count"] == 4 and sorted(map(len, enum["orbits"])) == [1, 3]
    gad = _run("generate", "gadget")[1]["result"]
    assert sum(gad["pattern_extensions"].values()) == 12
    pl = _run("planarize", "complete:4")[1]["result"]
    assert pl["n"] == 15 and not pl["three_colorable_after"] and pl["crossing_free"]
    sv = _run("survey", "--n", "4")[1]["result"]
    assert sv["W"] == 4 and sv["examined"] == 1


def test_cache_hit_reproduces_payload(tmp_path):
    cache = str(tmp_path / "c")
    argv = ("width", "grotzsch", "--cache-dir", cache)
    _, first = _run(*argv)
    assert os.listdir(cache)
    _, second = _run(*argv)
    assert second["elapsed_ms"] <= first["elapsed_ms"]
    for key in ("result", "certificate"):
        assert json.dumps(first[key], sort_keys=True) == json.dumps(second[key], sort_keys=True)


def test_cache_key_depends_on_labels(tmp_path):
    cache = str(tmp_path / "c")
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text('{"n": 3, "edges": [[0, 1], [1, 2]], "colors": {"0": 0, "2": 0}}')
    b.write_text('{"n": 3, "edges": [[0, 2], [2, 1]], "colors": {"0": 0, "1": 0}}')
    ra = _run("game", str(a), "--k", "3", "--cache-dir", cache)[1]
    rb = _run("game", str(b), "--k", "3", "--cache-dir", cache)[1]
    assert ra["instance_digest"] == rb["instance_digest"]
    assert ra["result"] == rb["result"]
    from pathlib import Path
    assert len(list(Path(cache).rglob("*.json"))) == 2


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("WIDTHLAB_SEED", "9")
    monkeypatch.setenv("WIDTHLAB_CACHE_DIR", "")
    _, rep = _run("generate", "random-regular", "8", "3")
    assert rep["config"]["seed"] == 9
    assert rep["result"] == _run("generate", "random-regular", "8", "3", "--seed", "9")[1]["result"]


def test_out_and_dimacs(tmp_path):
    dest = tmp_path / "p.col"
    assert main(["generate", "petersen", "--format", "dimacs", "--out", str(dest)]) == 0
    assert parse_dimacs(dest.read_text()).m == 15
    dest = tmp_path / "r.json"
    assert main(["width", "complete:4", "--out", str(dest), "--cache-dir", ""]) == 0
    jsonschema.validate(json.loads(dest.read_text()), SCHEMA)


# ------------------------------------------------------------ play

def _play(stdin, *argv):
    proc = subprocess.run([sys.executable, "-m", "widthlab.cli", "play", *argv, "--cache-dir", ""],
                          input=stdin, capture_output=True, text=True, timeout=120)
    return proc.returncode, json.loads(proc.stdout), proc.stderr


def test_play_human_duplicator_loses():
    code, rep, err = _play("r\nb\ng\nr\nb\ng\nr\nb\n", "complete:4", "--k", "4")
    assert code == 0
    body = rep["result"]
    assert body["outcome"] == "violation" and len(body["transcript"]) <= 4
    assert "Spoiler names vertex" in err


def test_play_eof_aborts():
    code, rep, _ = _play("", "complete:4", "--k", "4")
    assert code == 0 and rep["result"]["aborted"]


def test_play_bad_answers_are_reprompted():
    code, rep, err = _play("x\nr\nr\nr\nr\n", "complete:4", "--k", "4")
    assert code == 0 and "Please answer" in err
    assert rep["result"]["outcome"] == "violation"


def test_play_spoiler_against_bot():
    code, rep, _ = _play("0\n1\n2\n0 3\n", "complete:4", "--k", "3", "--swap", "--max-rounds", "4")
    body = rep["result"]
    assert code == 0 and not body["spoiler_wins"]
    assert body["outcome"] == "duplicator_survived" and len(body["transcript"]) == 4
