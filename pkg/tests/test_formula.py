import pytest
from hypothesis import given
from hypothesis import strategies as st

from wallqueens.acceptance import WORKED_INSTANCE_CLAUSES
from wallqueens.reduce.formula import (
    Formula, FormulaError, brute_force_sat, clause_node, incidence_graph, parse_dimacs, to_dimacs, var_node,
)

WORKED_INSTANCE = Formula(4, WORKED_INSTANCE_CLAUSES)


def test_parse_single_negative_unit():
    f = parse_dimacs("p cnf 1 1\n-1 0\n")
    assert f.clauses == ((-1,),)


def test_parse_handles_comments_and_multiline_clauses():
    f = parse_dimacs("c hello\np cnf 3 2\n1 -2\n3 0 -1 0\n")
    assert f.clauses == ((1, -2, 3), (-1,))


def test_empty_clause_list_is_trivially_satisfiable():
    f = parse_dimacs("p cnf 0 0\n")
    assert f.clauses == () and brute_force_sat(f) == {}


@pytest.mark.parametrize("text,needle", [
    ("p cnf 4 1\n1 2 3 4 0\n", "at most 3"),
    ("p cnf 2 1\n1 -1 0\n", "both"),
    ("p cnf 2 2\n1 0\n", "declares 2"),
    ("1 2 0\n", "header"),
    ("p cnf x 1\n1 0\n", "header"),
    ("p cnf 1 1\n2 0\n", "exceeds"),
    ("p cnf 1 1\nq 0\n", "bad literal"),
    ("p cnf 1 2\n1 0\n0\n", "empty"),
])
def test_parse_errors_point_at_the_problem(text, needle):
    with pytest.raises(FormulaError, match=needle):
        parse_dimacs(text)


def test_duplicate_literals_are_merged():
    assert parse_dimacs("p cnf 2 1\n1 1 2 0\n").clauses == ((1, 2),)


clauses = st.lists(
    st.lists(st.integers(1, 4), min_size=1, max_size=3, unique=True).flatmap(
        lambda vs: st.tuples(*[st.sampled_from([v, -v]) for v in vs])),
    max_size=5,
)


@given(clauses)
def test_dimacs_round_trip(cl):
    f = Formula(4, tuple(cl))
    assert parse_dimacs(to_dimacs(f)) == f


@given(clauses)
def test_brute_force_model_satisfies(cl):
    f = Formula(4, tuple(cl))
    m = brute_force_sat(f)
    if m is not None:
        assert f.evaluate(m)


def test_unsat_pair():
    assert brute_force_sat(Formula(1, ((1,), (-1,)))) is None


def test_incidence_graph_of_the_worked_instance():
    ig = incidence_graph(WORKED_INSTANCE)
    assert ig.degree(var_node(1)) == 5
    assert len(ig.edges) == 12
    g = ig.to_networkx()
    assert g.edges[var_node(2), clause_node(1)]["polarity"] == -1


def test_incidence_graph_small_cases():
    assert len(incidence_graph(Formula(2, ((1, 2),))).edges) == 2
    ig = incidence_graph(Formula(1, ((1,), (-1,))))
    assert sorted(p for _, _, p in ig.edges) == [-1, 1]
