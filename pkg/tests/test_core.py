import pytest
from hypothesis import given
from hypothesis import strategies as st

from wallqueens import KING, QUEEN, BoardError, BoardGrid, PieceRules, PlacementError, attacks, emit_board, is_legitimate, parse_board
from wallqueens.core import ConflictGraph, Direction, segments


def board(text):
    return parse_board(text).board


def test_parse_emit_round_trip_with_queens_and_header():
    text = "range: 2\n.#.\nQ..\n##.\n"
    p = parse_board(text)
    assert p.rules == PieceRules(2)
    assert p.placement == {(0, 1)}
    assert emit_board(p.board, p.placement, p.rules) == text


@pytest.mark.parametrize("text", ["", "..\n.\n", "..x\n"])
def test_parse_rejects_malformed(text):
    with pytest.raises(BoardError):
        parse_board(text)


def test_piece_rules_parse_and_label():
    assert PieceRules.parse("inf") == QUEEN
    assert PieceRules.parse("king") == KING
    assert PieceRules.parse("3").label() == "3"
    with pytest.raises(ValueError):
        PieceRules.parse("0")
    with pytest.raises(ValueError):
        PieceRules.parse("far")


def test_wall_blocks_the_ray():
    b = board("...\n.#.\n...\n")
    assert attacks(b, QUEEN, (0, 1), (0, 0))
    assert not attacks(b, QUEEN, (0, 1), (2, 1))  # the wall sits between them
    assert not attacks(b, QUEEN, (0, 0), (2, 2))  # diagonal through the wall


def test_diagonal_slips_between_corner_touching_walls():
    # the two black cells meet only at a corner; the diagonal move passes between them
    b = board(".#\n#.\n")
    assert attacks(b, QUEEN, (0, 0), (1, 1))
    assert not is_legitimate(b, QUEEN, [(0, 0), (1, 1)])


def test_range_limits_reach():
    b = BoardGrid.empty(5, 1)
    assert attacks(b, QUEEN, (0, 0), (4, 0))
    assert not attacks(b, PieceRules(2), (0, 0), (3, 0))
    assert attacks(b, PieceRules(2), (0, 0), (2, 0))
    assert not attacks(b, KING, (0, 0), (2, 0))
    assert is_legitimate(b, KING, [(0, 0), (2, 0), (4, 0)])


def test_misplaced_pieces_raise():
    b = board(".#\n..\n")
    with pytest.raises(PlacementError):
        is_legitimate(b, QUEEN, [(1, 0)])
    with pytest.raises(PlacementError):
        is_legitimate(b, QUEEN, [(5, 5)])
    with pytest.raises(PlacementError):
        attacks(b, QUEEN, (0, 0), (0, 0))


def test_segments_are_maximal_white_runs():
    b = board("..#..\n")
    rows = segments(b, Direction.ROW)
    assert [s.cells for s in rows] == [((0, 0), (1, 0)), ((3, 0), (4, 0))]
    assert len(segments(b, Direction.COL)) == 4


def ray_attack(b, rules, a, c):
    """Independent oracle: walk each of the eight rays from ``a``."""
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if not (dx or dy):
                continue
            x, y = a
            steps = 0
            while True:
                x, y = x + dx, y + dy
                steps += 1
                if not b.in_bounds((x, y)) or not b.is_white((x, y)):
                    break
                if rules.range is not None and steps > rules.range:
                    break
                if (x, y) == c:
                    return True
    return False


@st.composite
def boards(draw):
    w = draw(st.integers(1, 6))
    h = draw(st.integers(1, 6))
    bits = draw(st.lists(st.booleans(), min_size=w * h, max_size=w * h))
    return BoardGrid.from_white(w, h, [(i % w, i // w) for i, b in enumerate(bits) if b])


@given(boards(), st.sampled_from([QUEEN, KING, PieceRules(2), PieceRules(3)]))
def test_attacks_match_ray_walk(b, rules):
    cells = b.white
    for a in cells:
        for c in cells:
            if a != c:
                assert attacks(b, rules, a, c) == ray_attack(b, rules, a, c)


@given(boards(), st.sampled_from([QUEEN, KING, PieceRules(2)]))
def test_conflict_graph_matches_attacks(b, rules):
    g = ConflictGraph(b, rules)
    for i, a in enumerate(g.cells):
        for j, c in enumerate(g.cells):
            if i != j:
                assert bool(g.nbr[i] >> j & 1) == attacks(b, rules, a, c)


@given(boards())
def test_emit_parse_round_trip(b):
    assert parse_board(emit_board(b)).board == b
