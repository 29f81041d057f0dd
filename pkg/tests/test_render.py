from wallqueens import BoardGrid
from wallqueens.reduce import Formula, reduce
from wallqueens.render import render_ascii, render_svg


def test_one_white_cell():
    svg = render_svg(BoardGrid.empty(1, 1))
    assert svg.count("<rect") == 1 and "<circle" not in svg


def test_two_by_two_with_a_queen():
    svg = render_svg(BoardGrid.empty(2, 2), [(1, 0)])
    assert svg.count("<rect") == 4 and svg.count("<circle") == 1


def test_svg_is_deterministic_and_sized_by_cells():
    out = reduce(Formula(1, ((1,),)))
    a = render_svg(out.board, cell=4)
    assert a == render_svg(out.board, cell=4)
    assert f'width="{out.board.width * 4}" height="{out.board.height * 4}"' in a
    assert a.count("<rect") == out.board.width * out.board.height


def test_ascii_uses_board_characters():
    text = render_ascii(BoardGrid.from_white(2, 1, [(0, 0)]), [(0, 0)])
    assert text == "Q#\n"
