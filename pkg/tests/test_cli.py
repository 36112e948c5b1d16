from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bigembed.cli import INVALID, MISMATCH, OK, PARSE, main
from bigembed.core import Signature
from bigembed.jsonio import bigraph_to_dict, dumps, loads_bigraph
from bigembed.rewrite import ReactionRule, rule_to_dict
from helpers import leaf_host

K = {"ctrl": "K", "arity": 0, "active": True}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def single(ctrl="K", sites=0):
    doc = {"signature": [K, {"ctrl": "L", "arity": 0}],
           "nodes": [{"id": "v", "ctrl": ctrl, "parent": "r0"}], "outer": {"width": 1}}
    if sites:
        doc["inner"] = {"width": 1}
        doc["sites"] = [{"index": 0, "parent": "v"}]
    return doc


def test_validate(tmp_path, capsys):
    assert run(capsys, "validate", write(tmp_path, "ok.json", single())) == (OK, "", "")
    cyclic = {"signature": [K], "outer": {"width": 1},
              "nodes": [{"id": "a", "ctrl": "K", "parent": "b"},
                        {"id": "b", "ctrl": "K", "parent": "a"}]}
    code, _, err = run(capsys, "validate", write(tmp_path, "cyc.json", cyclic))
    assert code == INVALID
    assert "forest" in {json.loads(line)["invariant"] for line in err.splitlines()}
    code, _, err = run(capsys, "validate", write(tmp_path, "bad.json", "{\n  oops"))
    assert code == PARSE and "line 2" in err
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == PARSE


def test_embed_counts(tmp_path, capsys):
    g = write(tmp_path, "g.json", single())
    code, out, _ = run(capsys, "embed", "--guest", g, "--host", g)
    assert code == OK and json.loads(out)["count"] == 1
    host = write(tmp_path, "h.json", bigraph_to_dict(leaf_host(Signature.of(("K", 0)), "K", 3)))
    guest = write(tmp_path, "k.json", single(sites=1))
    code, out, _ = run(capsys, "embed", "--guest", guest, "--host", host, "--count")
    assert (code, json.loads(out)) == (OK, {"count": 3})
    code, out, _ = run(capsys, "embed", "--guest", guest, "--host", host, "--first")
    assert json.loads(out)["count"] == 1
    other = write(tmp_path, "l.json", single("L"))
    code, out, _ = run(capsys, "embed", "--guest", other, "--host", g)
    assert (code, json.loads(out)) == (OK, {"count": 0, "embeddings": []})


def test_embed_ignore_activity(tmp_path, capsys):
    sig = [K, {"ctrl": "P", "arity": 0, "active": False}]
    host = write(tmp_path, "h.json", {"signature": sig, "nodes": [
        {"id": "p", "ctrl": "P", "parent": "r0"}, {"id": "k", "ctrl": "K", "parent": "p"}],
        "outer": {"width": 1}})
    guest = write(tmp_path, "g.json", {"signature": sig, "outer": {"width": 1},
                                       "nodes": [{"id": "g", "ctrl": "K", "parent": "r0"}]})
    assert json.loads(run(capsys, "embed", "--guest", guest, "--host", host)[1])["count"] == 0
    out = run(capsys, "embed", "--guest", guest, "--host", host, "--ignore-activity")[1]
    assert json.loads(out)["count"] == 1


def test_embed_signature_mismatch(tmp_path, capsys):
    g = write(tmp_path, "g.json", single())
    clash = {"signature": [{"ctrl": "K", "arity": 1}], "outer": {"width": 1, "names": ["y"]},
             "nodes": [{"id": "v", "ctrl": "K", "parent": "r0"}], "links": {"v:0": "y"}}
    h = write(tmp_path, "h.json", clash)
    assert run(capsys, "embed", "--guest", g, "--host", h)[0] == MISMATCH


def ambient_files(tmp_path, ambient):
    _, redex, reactum, agent, _ = ambient
    rules = write(tmp_path, "rules.json", [rule_to_dict(ReactionRule(redex, reactum, {0: 0, 1: 1}, "open"))])
    return write(tmp_path, "agent.json", bigraph_to_dict(agent)), rules


def test_rewrite_ambient(tmp_path, capsys, ambient):
    from bigembed.core import is_isomorphic
    from bigembed.jsonio import bigraph_from_dict
    agent, rules = ambient_files(tmp_path, ambient)
    code, out, _ = run(capsys, "rewrite", "--agent", agent, "--rules", rules)
    doc = json.loads(out)
    assert code == OK and doc["count"] == 1 and doc["successors"][0]["rule"] == "open"
    assert is_isomorphic(bigraph_from_dict(doc["successors"][0]["agent"]), ambient[4])
    code, out, _ = run(capsys, "rewrite", "--agent", agent, "--rules", rules, "--max-steps", "3")
    assert [s["depth"] for s in json.loads(out)["states"]] == [0, 1]


def test_rewrite_errors_and_empty(tmp_path, capsys, ambient):
    agent, rules = ambient_files(tmp_path, ambient)
    leaf = write(tmp_path, "leaf.json", bigraph_to_dict(leaf_host(ambient[0], "P", 0)))
    code, out, _ = run(capsys, "rewrite", "--agent", leaf, "--rules", rules)
    assert (code, json.loads(out)["successors"]) == (OK, [])
    bad = write(tmp_path, "bad.json", {"redex": json.loads(open(agent).read())})
    assert run(capsys, "rewrite", "--agent", agent, "--rules", bad)[0] == INVALID
    open_agent = write(tmp_path, "open.json", single(sites=1))
    assert run(capsys, "rewrite", "--agent", open_agent, "--rules", rules)[0] == MISMATCH


EXAMPLE_CNF = "p cnf 3 2\n-1 2 -3 0\n1 2 3 0\n"


@pytest.mark.parametrize("text, sat", [
    (EXAMPLE_CNF, True),
    ("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n", False),
    ("p cnf 1 1\n1 -1 1 0\n", True),
])
def test_sat(tmp_path, capsys, text, sat):
    code, out, _ = run(capsys, "sat", write(tmp_path, "f.cnf", text))
    doc = json.loads(out)
    assert code == OK and doc["satisfiable"] is sat
    if sat:
        assert doc["verified"] is True


def test_sat_example_witness(tmp_path, capsys):
    doc = json.loads(run(capsys, "sat", write(tmp_path, "f.cnf", EXAMPLE_CNF))[1])
    assert doc["antichain"] == ["c1_3", "c2_2", "nx1", "nx3", "x2"]
    assert doc["assignment"] == {"1": False, "2": True, "3": False}


def test_sat_parse_error(tmp_path, capsys):
    code, _, err = run(capsys, "sat", write(tmp_path, "f.cnf", "p cnf 2 1\n1 2 0\n"))
    assert code == PARSE and "line 2" in err


def test_gen(tmp_path, capsys):
    code, out, _ = run(capsys, "gen")
    assert code == OK and loads_bigraph(out).nodes == {}
    argv = ["gen", "--nodes", "6", "--edges", "2", "--sites", "1", "--inner", "1",
            "--outer", "1", "--roots", "2", "--seed", "9"]
    first, second = run(capsys, *argv)[1], run(capsys, *argv)[1]
    assert first == second
    b = loads_bigraph(first)
    assert len(b.nodes) == 6 and b.roots == 2
    assert run(capsys, "gen", "--nodes", "1", "--roots", "0")[0] == MISMATCH


def test_gen_custom_signature(tmp_path, capsys):
    sig = write(tmp_path, "sig.json", [{"ctrl": "Q", "arity": 0}])
    out = run(capsys, "gen", "--nodes", "3", "--signature", sig)[1]
    assert set(loads_bigraph(out).nodes.values()) == {"Q"}


def test_outputs_are_byte_identical(tmp_path, capsys, ambient):
    host = write(tmp_path, "h.json", bigraph_to_dict(leaf_host(Signature.of(("K", 0)), "K", 3)))
    guest = write(tmp_path, "k.json", single(sites=1))
    agent, rules = ambient_files(tmp_path, ambient)
    for argv in (["embed", "--guest", guest, "--host", host],
                 ["rewrite", "--agent", agent, "--rules", rules]):
        outs = {run(capsys, *argv)[1] for _ in range(3)}
        assert len(outs) == 1
    target = tmp_path / "out.json"
    run(capsys, "embed", "--guest", guest, "--host", host, "--out", str(target))
    assert target.read_text() == run(capsys, "embed", "--guest", guest, "--host", host)[1]


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "bigembed.cli", "gen", "--nodes", "2", "--outer", "1"],
                          capture_output=True, text=True, check=True)
    assert dumps(bigraph_to_dict(loads_bigraph(proc.stdout))) == proc.stdout
