"""End-to-end CLI behaviour: output matches goldens, determinism, exit codes."""

import json
import re
from pathlib import Path

import jsonschema
import pytest

from a1fib.cli import main
from a1fib.schemas import CENSUS_SCHEMA, GRAPH_SCHEMA, RESOLVE_SCHEMA

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- census ----------------------------------------------------------------------

def test_census_text_matches_golden(capsys):
    code, out, _ = run(capsys, "census", "--dmax", "6")
    assert code == 0
    assert out == (GOLDEN / "census_dmax6.txt").read_text()


def test_census_json_matches_golden_and_schema(capsys):
    code, out, _ = run(capsys, "census", "--dmax", "6", "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "census_dmax6.json").read_text()
    obj = json.loads(out)
    jsonschema.validate(obj, CENSUS_SCHEMA)
    totals = [row["total"] for row in obj["rows"]]
    assert totals == [1, 2, 3, 5, 7]


def test_census_row_for_degree_seven(capsys):
    code, out, _ = run(capsys, "census", "--dmax", "7", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][-1]
    assert row["d"] == 7
    assert row["entries"]["2"] == {"kind": "infinite", "moduli_dim": 1}
    assert row["total"] == "infinite"


def test_census_recorded_provenance_flags(capsys):
    _, out, _ = run(capsys, "census", "--dmax", "6", "--format", "json")
    recorded = [
        (row["d"], m)
        for row in json.loads(out)["rows"]
        for m, e in row["entries"].items()
        if e.get("provenance") == "recorded"
    ]
    assert sorted(recorded) == [(5, "3"), (6, "3"), (6, "4")]


def test_census_rejects_small_dmax(capsys):
    code, _, err = run(capsys, "census", "--dmax", "1")
    assert code == 1
    assert "error" in err


def test_census_is_deterministic(capsys):
    _, first, _ = run(capsys, "census", "--dmax", "8", "--format", "json")
    _, second, _ = run(capsys, "census", "--dmax", "8", "--format", "json")
    assert first == second


# -- resolve ---------------------------------------------------------------------

def test_resolve_conic_dot_matches_golden(capsys):
    code, out, _ = run(capsys, "resolve", "--scenario", "conic", "--format", "dot")
    assert code == 0
    assert out == (GOLDEN / "conic.dot").read_text()


def test_resolve_dot_is_parseable(capsys):
    _, out, _ = run(capsys, "resolve", "--scenario", "reduced", "--d", "4",
                    "--format", "dot")
    body = [line for line in out.splitlines() if not line.startswith("//")]
    assert body[0] == "graph snc {"
    assert body[-1] == "}"
    node = re.compile(r'^  "[A-Za-z0-9]+" \[label="[^"]*"\];$')
    edge = re.compile(r'^  "[A-Za-z0-9]+" -- "[A-Za-z0-9]+";$')
    for line in body[1:-1]:
        assert (node.match(line) or edge.match(line)
                or line == "  node [shape=circle];"), line


def test_resolve_mult2_json(capsys):
    code, out, _ = run(capsys, "resolve", "--scenario", "mult2", "--d", "5",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, RESOLVE_SCHEMA)
    jsonschema.validate(obj["graph"], GRAPH_SCHEMA)
    mults = obj["multiplicities"]
    assert [mults[k] for k in ("E1", "E2", "E3", "E4", "C", "Fq")] == [2, 2, 2, 1, 1, 2]
    assert obj["fiber_self_intersection"] == 0


def test_resolve_sls_vertex_count(capsys):
    code, out, _ = run(capsys, "resolve", "--scenario", "sls", "--l", "4",
                       "--format", "json")
    assert code == 0
    assert len(json.loads(out)["graph"]["vertices"]) == 9


def test_resolve_complete_requires_both_parameters(capsys):
    code, _, err = run(capsys, "resolve", "--scenario", "complete", "--d", "3")
    assert code == 1
    assert "--m" in err


def test_resolve_rejects_domain_errors(capsys):
    code, _, err = run(capsys, "resolve", "--scenario", "reduced", "--d", "1")
    assert code == 1
    assert "error" in err


# -- classify ---------------------------------------------------------------------

def test_classify_equivalent(capsys):
    code, out, _ = run(capsys, "classify", "--l", "3", "--s", "1,0,1", "--t", "1,0,5")
    assert code == 0
    assert out == "Equivalent: mu = 1/5\n"


def test_classify_identity(capsys):
    code, out, _ = run(capsys, "classify", "--l", "3", "--s", "1,0,1", "--t", "1,0,1")
    assert code == 0
    assert out == "Equivalent: mu = 1\n"


def test_classify_not_equivalent_consistency(capsys):
    code, out, _ = run(capsys, "classify", "--l", "5", "--s", "1,0,1,0,1",
                       "--t", "1,0,1,0,2")
    assert code == 0
    assert out.startswith("NotEquivalent(consistency)")


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--l", "3", "--s", "1,0,1",
                       "--t", "1,0,5", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"equivalent": True, "mu": "1/5", "mu_power": "1/5",
                   "root_index": 1}


def test_classify_rejects_invalid_normal_form(capsys):
    code, _, err = run(capsys, "classify", "--l", "3", "--s", "1,1", "--t", "1,0,1")
    assert code == 1
    assert "even" in err


# -- normalize / bvs / hirzebruch ---------------------------------------------------

def test_normalize_example(capsys):
    code, out, _ = run(capsys, "normalize", "--f=-3:2,-1:2", "--epsilon", "+1")
    assert code == 0
    assert out == "pole_order = 3\nunit = 1 + x^2\nscale = 1\nremainder = 0\n"


def test_normalize_parity_error(capsys):
    code, _, err = run(capsys, "normalize", "--f=-3:2", "--epsilon", "-1")
    assert code == 1
    assert "parity" in err


def test_bvs_contact_order(capsys):
    code, out, _ = run(capsys, "bvs", "--m", "5", "--p", "1,2,0,0,0,1")
    assert code == 0
    assert out.endswith("contact_order = 7\n")


def test_hirzebruch_self_intersection(capsys):
    code, out, _ = run(capsys, "hirzebruch", "--n", "2", "--a", "1", "--b", "4",
                       "--self")
    assert code == 0
    assert out == "6\n"


def test_hirzebruch_models(capsys):
    code, out, _ = run(capsys, "hirzebruch", "--models", "6", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert [m["n"] for m in obj["models"]] == [4, 2, 0]


def test_hirzebruch_needs_an_operation(capsys):
    code, _, err = run(capsys, "hirzebruch", "--n", "1", "--a", "1", "--b", "1")
    assert code == 1
    assert "no hirzebruch operation" in err


# -- harness behaviour ---------------------------------------------------------------

def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["resolve", "--scenario", "bogus"])
    assert exc.value.code == 2


def test_missing_subcommand_exits_two(capsys):
    assert main([]) == 2


def test_output_file_option(tmp_path, capsys, monkeypatch):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "census", "--dmax", "3", "--format", "json",
                       "--output", str(target))
    assert code == 0
    assert out == ""
    json.loads(target.read_text())
    # relative paths resolve against the environment directory
    monkeypatch.setenv("A1FIB_OUTPUT_DIR", str(tmp_path))
    code, _, _ = run(capsys, "census", "--dmax", "3", "--output", "rel.txt")
    assert code == 0
    assert (tmp_path / "rel.txt").exists()
