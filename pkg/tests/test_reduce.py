import pytest

from wallqueens import KING, QUEEN, PieceRules, emit_board, max_placement
from wallqueens.acceptance import REFERENCE_TILE_COUNTS
from wallqueens.gadgets.library import load_roster
from wallqueens.reduce import (
    AssemblyError, DecodeError, Formula, SidecarError, Slot, TilePlan, assemble, check_plan, decode,
    load_sidecar, output_from_sidecar, reduce, save_sidecar, tariff, tariff_from_counts,
)
from wallqueens.solver import decide_tiled

from test_formula import WORKED_INSTANCE

ROSTER = load_roster(QUEEN)


def test_reference_tariff_table():
    assert tariff_from_counts(REFERENCE_TILE_COUNTS) == 1037


def test_blank_plan_has_zero_tariff():
    assert tariff(TilePlan(3, 2), ROSTER) == 0


def test_single_clause_plan_tariff():
    assert tariff(TilePlan(1, 1, {(0, 0): Slot("Clause")}), ROSTER) == 21


def test_unit_clause_plan():
    out = reduce(Formula(1, ((1,),)))
    counts = out.plan.counts()
    assert counts.get("Variable") == 1 and counts.get("ClauseW") == 1
    assert counts.get("JoinMM", 0) + counts.get("JoinSwitchMM", 0) >= 1
    assert "JoinSwitchMM" not in counts


def test_negative_unit_clause_uses_a_switch_next_to_the_variable():
    out = reduce(Formula(1, ((-1,),)))
    counts = out.plan.counts()
    assert counts.get("JoinSwitchMM") == 1
    assert check_plan(out.plan, ROSTER) == []


def test_empty_formula_gives_an_all_blank_plan():
    out = reduce(Formula(0, ()))
    assert set(out.plan.counts()) == {"Blank"} and out.tariff == 0
    assert not out.board.white


def test_worked_instance_plan_uses_all_six_tile_kinds():
    out = reduce(WORKED_INSTANCE)
    kinds = {"Clause", "Variable", "Turn", "JoinFM", "JoinMM", "JoinSwitchMM"}
    assert kinds <= set(out.plan.counts())
    assert check_plan(out.plan, ROSTER) == []
    assert (out.board.width, out.board.height) == (out.plan.width * 16, out.plan.height * 16)
    assert out.tariff == tariff(out.plan, ROSTER) <= out.board.width * out.board.height
    # the degree-five variable is read from three subvariable tiles
    assert len(out.decoder[1]) == 3


def test_switches_only_next_to_variables():
    out = reduce(WORKED_INSTANCE)
    for (x, y), s in out.plan.items():
        if s.name == "JoinSwitchMM":
            nbrs = [out.plan.at(x + dx, y + dy).name for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                    if 0 <= x + dx < out.plan.width and 0 <= y + dy < out.plan.height]
            assert "Variable" in nbrs


def test_all_blank_two_by_two():
    out = assemble(TilePlan(2, 2), ROSTER)
    assert (out.board.width, out.board.height) == (32, 32) and not out.board.white


def test_single_tile_framed_by_blanks_holds_its_tariff():
    for name in ("Turn", "Variable"):
        plan = TilePlan(3, 3, {(1, 1): Slot(name, 0, "var:1")})
        out = assemble(plan, ROSTER)
        assert max_placement(out.board, QUEEN).max_count == ROSTER.tariff(name)


def test_assemble_rejects_an_unmated_male_port():
    plan = TilePlan(3, 1, {(1, 0): Slot("JoinMM")})
    with pytest.raises(AssemblyError):
        assemble(plan, ROSTER)
    assert check_plan(plan, ROSTER)


def test_assemble_rejects_female_female_seams():
    # Turn (W,N female) turned so a female port meets the Variable's female port
    plan = TilePlan(2, 1, {(0, 0): Slot("Variable", 0, "var:1"), (1, 0): Slot("Turn", 0)})
    problems = check_plan(plan, ROSTER)
    assert any("F-F" in p for p in problems)


def test_sidecar_round_trip():
    out = reduce(Formula(2, ((1, 2), (-1, -2))))
    text = save_sidecar(out)
    side = load_sidecar(text)
    assert side.tariff == out.tariff and side.plan.slots == out.plan.slots
    assert side.decoder == out.decoder and side.owners == out.owners
    assert side.regions(out.board) == out.regions()
    again = output_from_sidecar(out.board, side)
    assert save_sidecar(again) == text
    assert assemble(side.plan, ROSTER).board == out.board


@pytest.mark.parametrize("bad", ["tile_size 16\n", "tile_size 16\nplan 1 1\ntariff x\n", "wat 1\n",
                                 "tile_size 16\nplan 1 1\ntariff 1\ndecoder 1 2\n"])
def test_sidecar_errors(bad):
    with pytest.raises(SidecarError):
        load_sidecar(bad)


def test_reduction_is_deterministic():
    a, b = reduce(WORKED_INSTANCE), reduce(WORKED_INSTANCE)
    assert emit_board(a.board) == emit_board(b.board)
    assert save_sidecar(a) == save_sidecar(b)


def test_regions_cover_every_white_cell_and_match_tile_tariffs():
    out = reduce(Formula(2, ((1, -2),)))
    res = decide_tiled(out.board, QUEEN, out.tariff, out.regions())
    for slot_xy, m in res.region_max.items():
        assert m == ROSTER.tariff(out.plan.at(*slot_xy).name)


def test_decode_positive_and_negative_units():
    for lit, want in ((1, True), (-1, False)):
        out = reduce(Formula(1, ((lit,),)))
        res = decide_tiled(out.board, QUEEN, out.tariff, out.regions())
        assert decode(res.placement, out) == {1: want}


def test_decode_rejects_short_placements():
    out = reduce(Formula(1, ((1,),)))
    res = decide_tiled(out.board, QUEEN, out.tariff, out.regions())
    with pytest.raises(DecodeError):
        decode(list(res.placement)[1:], out)


def test_decode_detects_disagreeing_subvariables():
    from dataclasses import replace
    out = reduce(Formula(1, ((1,),)))
    res = decide_tiled(out.board, QUEEN, out.tariff, out.regions())
    on = out.decoder[1][0]
    off = next(c for c in out.board.white if c not in res.placement)
    tampered = replace(out, decoder={1: (on, off)} if on in res.placement else {1: (off, on)}, formula=None)
    with pytest.raises(DecodeError, match="disagree"):
        decode(res.placement, tampered)


def test_king_roster_swaps_the_clause():
    out = reduce(Formula(1, ((1,),)), KING)
    assert "KingClauseW" in out.plan.counts()
    assert out.rules == KING


def test_range_two_uses_the_queen_roster():
    out = reduce(Formula(1, ((1,),)), PieceRules(2))
    assert "ClauseW" in out.plan.counts()
