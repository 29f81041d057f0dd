"""Static pictures of boards: SVG with one rectangle per cell, or the plain text grid."""
from __future__ import annotations

from typing import Iterable

from .core import BoardGrid, emit_board

CELL = 12
WHITE_FILL = "#f4f1e8"
BLACK_FILL = "#202020"
PIECE_FILL = "#b3261e"


def render_svg(board: BoardGrid, placement: Iterable = (), cell: int = CELL) -> str:
    """Deterministic SVG: a rect per cell in scanline order, then a circle per piece."""
    pieces = sorted(set(placement), key=lambda c: (c[1], c[0]))
    w, h = board.width * cell, board.height * cell
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    for y in range(board.height):
        for x in range(board.width):
            fill = WHITE_FILL if board.is_white((x, y)) else BLACK_FILL
            out.append(f'<rect x="{x * cell}" y="{y * cell}" width="{cell}" height="{cell}" fill="{fill}"/>')
    r = cell * 0.35
    for x, y in pieces:
        if not board.is_white((x, y)):
            raise ValueError(f"piece on black cell {(x, y)}")
        cx, cy = x * cell + cell / 2, y * cell + cell / 2
        out.append(f'<circle class="piece" cx="{cx:g}" cy="{cy:g}" r="{r:g}" fill="{PIECE_FILL}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(board: BoardGrid, placement: Iterable = ()) -> str:
    return emit_board(board, placement)
