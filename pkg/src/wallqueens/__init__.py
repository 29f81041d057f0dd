"""Placing range-limited queens on boards with walls, and the NP-hardness reduction."""
from .core import (
    KING,
    QUEEN,
    BoardError,
    BoardGrid,
    Cell,
    Direction,
    PieceRules,
    PlacementError,
    attacks,
    emit_board,
    is_legitimate,
    parse_board,
    segments,
)
from .solver import BudgetExhausted, brute_force_max, decide, enumerate_max, max_placement

__all__ = [
    "KING", "QUEEN", "BoardError", "BoardGrid", "Cell", "Direction", "PieceRules",
    "PlacementError", "attacks", "emit_board", "is_legitimate", "parse_board", "segments",
    "BudgetExhausted", "brute_force_max", "decide", "enumerate_max", "max_placement",
]
