from __future__ import annotations

import pytest

from bigembed.core import Root, Site, validate
from bigembed.encode import count_embeddings, enumerate_embeddings
from bigembed.reduce import (CnfFormula, ColouredTree, DimacsError, ReductionError,
                             antichain_to_assignment, canonical_formulas, decode_antichain,
                             SatResult, parse_dimacs, rainbow_to_instance, sat_to_rainbow, solve_sat,
                             truth_table_satisfiable, verify_rainbow_antichain)

EXAMPLE_CNF = "p cnf 3 2\n-1 2 -3 0\n1 2 3 0\n"


def dimacs(*lines):
    return "\n".join(lines) + "\n"


def test_parse_examples():
    assert parse_dimacs(dimacs("p cnf 1 1", "1 -1 1 0")) == CnfFormula(1, ((1, -1, 1),))
    f = parse_dimacs(EXAMPLE_CNF)
    assert f == CnfFormula(3, ((-1, 2, -3), (1, 2, 3)))
    assert parse_dimacs(f.to_dimacs()) == f


def test_comments_and_clauses_across_lines():
    text = dimacs("c hello", "p cnf 2 1", "1", "-2 2 0")
    assert parse_dimacs(text).clauses == ((1, -2, 2),)
    satlib = dimacs("p cnf 3 1", "1 -2 3 0", "%", "0", "")
    assert parse_dimacs(satlib).clauses == ((1, -2, 3),)


@pytest.mark.parametrize("text, line", [
    (dimacs("p cnf 2 1", "1 2 0"), 2),
    (dimacs("p cnf 2 1", "1 2 x 0"), 2),
    (dimacs("1 2 3 0"), 1),
    (dimacs("p cnf 2 1", "1 2 3 0"), 2),
    (dimacs("p cnf 2 1", "p cnf 2 1"), 2),
    (dimacs("p dnf 2 1"), 1),
    (dimacs("p cnf 2 1", "1 2 -1"), 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(DimacsError) as info:
        parse_dimacs(text)
    assert info.value.line == line


def test_clause_count_and_missing_header():
    with pytest.raises(DimacsError):
        parse_dimacs(dimacs("p cnf 1 2", "1 1 1 0"))
    with pytest.raises(DimacsError):
        parse_dimacs("")


def test_example_formula_tree():
    t = sat_to_rainbow(parse_dimacs(EXAMPLE_CNF))
    assert len(t.nodes) == 1 + 6 + 6
    assert len(t.palette) == 5
    assert t.parent["c1_1"] == "x1"
    assert t.parent["c2_1"] == "nx1"
    assert t.parent["c1_2"] == t.parent["c2_2"] == "nx2"
    assert t.colour["x2"] == t.colour["nx2"] == "cx2"
    assert t.root not in t.colour


def test_small_trees():
    t = sat_to_rainbow(CnfFormula(1))
    assert t.nodes == ["r", "nx1", "x1"] and t.palette == ("cx1",)
    t = sat_to_rainbow(CnfFormula(1, ((1, 1, 1),)))
    assert [t.parent[f"c1_{k}"] for k in (1, 2, 3)] == ["nx1"] * 3


def test_instance_shape():
    f = parse_dimacs(EXAMPLE_CNF)
    guest, host = rainbow_to_instance(sat_to_rainbow(f))
    assert (guest.roots, len(guest.nodes), guest.sites) == (5, 5, 5)
    assert len(host.nodes) == 13 and host.is_ground
    assert not guest.link and not host.link
    assert validate(guest) == [] and validate(host) == []
    for f2 in canonical_formulas(2, 2)[:40]:
        _, h = rainbow_to_instance(sat_to_rainbow(f2))
        assert len(h.nodes) == 1 + 2 * f2.variables + 3 * len(f2.clauses)


def test_single_colour_instances():
    guest, _ = rainbow_to_instance(ColouredTree("r", {}, {}, ("c0",)))
    assert guest.nodes == {"g0": "c0"} and guest.prnt == {"g0": Root(0), Site(0): "g0"}
    t = ColouredTree("r", {}, {"r": "c0"}, ("c0",))
    guest, host = rainbow_to_instance(t)
    assert count_embeddings(guest, host) == 1
    (phi,) = enumerate_embeddings(guest, host)
    assert decode_antichain(phi, t) == {"r"}


def test_reserved_colour_is_rejected():
    with pytest.raises(ReductionError):
        rainbow_to_instance(ColouredTree("r", {}, {"r": "*"}, ("*",)))


def test_verify_examples():
    t = sat_to_rainbow(CnfFormula(1))
    assert verify_rainbow_antichain(t, {"x1"})
    t = sat_to_rainbow(parse_dimacs(EXAMPLE_CNF))
    assert not verify_rainbow_antichain(t, {"x1", "c1_1"})
    assert not verify_rainbow_antichain(t, {"nx1", "x2", "nx3", "c1_3"})
    assert verify_rainbow_antichain(t, {"nx1", "x2", "nx3", "c1_3", "c2_2"})
    assert not verify_rainbow_antichain(t, {"nx1", "x2", "nx3", "c1_3", "c2_2", "zz"})


def test_assignment_from_example_antichain():
    f = parse_dimacs(EXAMPLE_CNF)
    t = sat_to_rainbow(f)
    R = {"nx1", "x2", "nx3", "c1_3", "c2_2"}
    assert antichain_to_assignment(t, R, f) == {1: False, 2: True, 3: False}
    with pytest.raises(ReductionError):
        antichain_to_assignment(t, {"x1"}, f)


def test_tautology_any_antichain_satisfies():
    f = parse_dimacs(dimacs("p cnf 1 1", "1 -1 1 0"))
    t = sat_to_rainbow(f)
    guest, host = rainbow_to_instance(t)
    embs = list(enumerate_embeddings(guest, host))
    assert embs
    for phi in embs:
        R = decode_antichain(phi, t)
        assert verify_rainbow_antichain(t, R)
        assert f.evaluate(antichain_to_assignment(t, R, f))


def test_solve_sat_examples():
    res = solve_sat(parse_dimacs(EXAMPLE_CNF))
    assert res.satisfiable and res.antichain == ("c1_3", "c2_2", "nx1", "nx3", "x2")
    assert res.to_dict()["assignment"] == {"1": False, "2": True, "3": False}
    unsat = parse_dimacs(dimacs("p cnf 1 2", "1 1 1 0", "-1 -1 -1 0"))
    assert not truth_table_satisfiable(unsat)
    assert solve_sat(unsat) == SatResult(False)


def test_pipeline_on_small_formulas():
    for f in canonical_formulas(2, 2):
        res = solve_sat(f)
        assert res.satisfiable == truth_table_satisfiable(f)
        if res.satisfiable:
            assert f.evaluate(res.assignment)


def test_canonical_corpus_sizes():
    assert len(canonical_formulas(1, 1)) == 4
    assert len(canonical_formulas(3, 3)) >= 500
