import pytest

from wallqueens import KING, QUEEN, PieceRules, decide
from wallqueens.acceptance import CORPUS, corpus_formulas, end_to_end
from wallqueens.reduce import Formula, brute_force_sat, decode, reduce

from test_formula import WORKED_INSTANCE

REQUIRED = [((1,),), ((-1,),), ((1,), (-1,)), ((1, 2), (-1, -2)), ((1, -2), (1, 2, 3))]


def test_corpus_has_the_required_members():
    assert len(CORPUS) >= 20
    for cl in REQUIRED:
        assert cl in CORPUS


@pytest.mark.parametrize("f", corpus_formulas(), ids=lambda f: str(f.clauses))
def test_reduction_agrees_with_sat_oracle(f):
    r = end_to_end(f)
    assert r["agree"], r
    if r["found"]:
        assert f.evaluate(r["model"])


def test_xor_pair_decodes_to_different_values():
    r = end_to_end(Formula(2, ((1, 2), (-1, -2))))
    assert r["found"] and r["model"][1] != r["model"][2]


# a few formulas past the corpus bound: splitting, three-literal clauses, unsat with two variables
LARGER = [
    WORKED_INSTANCE,
    Formula(2, ((1,), (-1, 2), (-2,))),
    Formula(3, ((1, 2, 3), (-1,), (-2,), (-3,))),
    Formula(2, ((1, 2), (1, -2), (-1, 2), (-1, -2))),
    Formula(3, ((1, -2, 3), (-1, 2), (2, -3), (-1, -3))),
]


@pytest.mark.parametrize("f", LARGER, ids=lambda f: str(f.clauses))
def test_larger_instances(f):
    r = end_to_end(f)
    assert r["agree"], r
    assert r["sat"] == (brute_force_sat(f) is not None)


@pytest.mark.parametrize("rules", [KING, PieceRules(2)], ids=["range1", "range2"])
@pytest.mark.parametrize("f", [Formula(2, ((1, 2), (-1, -2))), Formula(1, ((1,), (-1,))), Formula(2, ((1, -2), (-1,)))],
                         ids=lambda f: str(f.clauses))
def test_other_ranges_end_to_end(rules, f):
    r = end_to_end(f, rules)
    assert r["agree"], r


@pytest.mark.parametrize("cl", [((1,),), ((1,), (-1,)), ((-1,),)])
def test_plain_solver_agrees_on_tiny_boards(cl):
    # without the tile-aware shortcut: the whole-board search settles these small boards directly
    f = Formula(1, cl)
    out = reduce(f)
    p = decide(out.board, QUEEN, out.tariff)
    assert (p is not None) == (brute_force_sat(f) is not None)
    if p is not None:
        decode(p, out)
        assert decide(out.board, QUEEN, out.tariff + 1) is None  # the tariff is the exact maximum
