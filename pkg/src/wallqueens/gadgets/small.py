"""The small stand-alone gadgets: the bare clause and the join cycles with their marriages.

These are fixed boards, not tiles.  Each one is checked by exhaustive
enumeration in the test suite; the layouts came from the same thin-route
search that builds the tiles.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..core import QUEEN, BoardGrid, PieceRules, parse_board
from ..solver import DEFAULT_BUDGET, enumerate_max
from .verify import FAIL, PASS, Verdict, check_clause_table, clause_table


@dataclass(frozen=True)
class SmallClause:
    """A clause core with one two-cell input per literal.

    Each input holds exactly one piece: on its T cell when the literal is
    true, on its F cell otherwise.  An occupied F cell attacks its core
    terminal, so the core loses a piece exactly when every input is false.
    """

    board: BoardGrid
    inputs: tuple  # ((F cell, T cell), ...)
    claimed_max: int = 5

    def clamps(self, pattern: str):
        forced = [t if v == "T" else f for (f, t), v in zip(self.inputs, pattern)]
        return forced, ()


SMALL_CLAUSE_TEXT = """\
#########
###.#####
###.#####
#.##.#.##
#.#.##.##
##.#..###
#########
"""

SMALL_CLAUSE = SmallClause(
    parse_board(SMALL_CLAUSE_TEXT).board,
    (((1, 4), (1, 3)), ((3, 2), (3, 1)), ((6, 4), (6, 3))),
)


def verify_small_clause(g: SmallClause = SMALL_CLAUSE, rules: PieceRules = QUEEN,
                        budget: int = DEFAULT_BUDGET) -> Verdict:
    table = clause_table(g.board, rules, g.clamps, len(g.inputs), budget)
    problems = check_clause_table(table, g.claimed_max)
    return Verdict.of(problems, {"table": {p: m for p, (m, _) in table.items()}})


# thin chordless cycles: every range attacks only touching cells on them
SIMPLE_JOIN = """\
######
##..##
#.##.#
##..##
######
"""

TWISTED_JOIN = """\
######
##..##
#.##.#
#.##.#
##..##
######
"""

MIXED_JOIN = """\
#######
###..##
##.##.#
##.#.##
#.##.##
##..###
#######
"""

# (i) a mixed join and a simple join sharing one edge
MARRIAGE_I = """\
#########
###..####
##.##..##
###..##.#
#####.#.#
#####.##.
######..#
#########
"""

# (ii) a twisted join glued to a simple join; kept as a rejected combination
MARRIAGE_II = """\
########
###..###
##.##.##
###..###
##.##.##
##.##.##
###..###
########
"""

# (iii) two twisted joins interlocked across a seam by a chordless four-cycle
MARRIAGE_III = """\
###########
######..###
#####.##.##
#####.##.##
###..#..###
##.##.#####
##.##.#####
###..######
###########
"""


@dataclass(frozen=True)
class SmallGadget:
    name: str
    text: str
    claimed_max: int
    claimed_count: int  # 0 means not asserted

    @property
    def board(self) -> BoardGrid:
        return parse_board(self.text).board


SMALL_GADGETS = (
    SmallGadget("simple-join", SIMPLE_JOIN, 3, 2),
    SmallGadget("twisted-join", TWISTED_JOIN, 4, 2),
    SmallGadget("mixed-join", MIXED_JOIN, 5, 2),
    SmallGadget("marriage-i", MARRIAGE_I, 7, 2),
    SmallGadget("marriage-iii", MARRIAGE_III, 8, 2),
    SmallGadget("marriage-ii", MARRIAGE_II, 0, 0),
)


def small_gadget(name: str) -> SmallGadget:
    for g in SMALL_GADGETS:
        if g.name == name:
            return g
    raise KeyError(name)


def verify_small(g: SmallGadget, rules: PieceRules = QUEEN, budget: int = DEFAULT_BUDGET) -> Verdict:
    en = enumerate_max(g.board, rules, cap=16, budget=budget)
    details = {"max": en.max_count, "count": len(en.placements)}
    if not g.claimed_count:
        return Verdict(PASS, [], details)
    problems = []
    if en.max_count != g.claimed_max:
        problems.append(f"{g.name}: maximum {en.max_count}, expected {g.claimed_max}")
    if len(en.placements) != g.claimed_count:
        problems.append(f"{g.name}: {len(en.placements)} maximum placements, expected {g.claimed_count}")
    return Verdict(FAIL if problems else PASS, problems, details)
