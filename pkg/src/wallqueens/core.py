"""Boards with walls, range-limited queen moves, and line segments.

Coordinates are ``(x, y)`` with ``x`` growing to the right and ``y`` growing
downwards; the origin is the top-left cell.  A queen moving diagonally is
stopped only by a black cell lying on her path, so she slips between two
black cells that touch at a corner.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

Coord = tuple[int, int]
Placement = frozenset  # frozenset[Coord]


class BoardError(ValueError):
    """Malformed board text or an impossible board operation."""


class PlacementError(ValueError):
    """A piece sits off the board or on a black cell."""


class Cell(enum.Enum):
    BLACK = "#"
    WHITE = "."


class Direction(enum.Enum):
    ROW = (1, 0)
    COL = (0, 1)
    DIAG = (1, 1)
    ANTIDIAG = (-1, 1)

    @property
    def step(self) -> Coord:
        return self.value


DIRECTIONS = tuple(Direction)


@dataclass(frozen=True)
class PieceRules:
    """Move range of the piece; ``None`` means unbounded (a queen)."""

    range: Optional[int] = None

    def __post_init__(self):
        if self.range is not None and self.range < 1:
            raise ValueError("range must be a positive integer or None")

    @property
    def unbounded(self) -> bool:
        return self.range is None

    def label(self) -> str:
        return "inf" if self.range is None else str(self.range)

    @classmethod
    def parse(cls, text: str) -> "PieceRules":
        text = text.strip().lower()
        if text in ("inf", "unbounded", "queen"):
            return cls(None)
        if text == "king":
            return cls(1)
        try:
            return cls(int(text))
        except ValueError:
            raise BoardError(f"bad range {text!r}") from None


QUEEN = PieceRules(None)
KING = PieceRules(1)


@dataclass(frozen=True)
class Segment:
    direction: Direction
    cells: tuple[Coord, ...]

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class BoardGrid:
    width: int
    height: int
    cells: tuple[Cell, ...] = field(repr=False)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise BoardError("board dimensions must be positive")
        if len(self.cells) != self.width * self.height:
            raise BoardError("cell count does not match width*height")

    @classmethod
    def from_white(cls, width: int, height: int, white: Iterable[Coord]) -> "BoardGrid":
        cells = [Cell.BLACK] * (width * height)
        for x, y in white:
            if not (0 <= x < width and 0 <= y < height):
                raise BoardError(f"cell {(x, y)} outside {width}x{height} board")
            cells[y * width + x] = Cell.WHITE
        return cls(width, height, tuple(cells))

    @classmethod
    def empty(cls, width: int, height: int) -> "BoardGrid":
        return cls(width, height, (Cell.WHITE,) * (width * height))

    @classmethod
    def blank(cls, width: int, height: int) -> "BoardGrid":
        return cls(width, height, (Cell.BLACK,) * (width * height))

    def in_bounds(self, c: Coord) -> bool:
        return 0 <= c[0] < self.width and 0 <= c[1] < self.height

    def cell(self, c: Coord) -> Cell:
        return self.cells[c[1] * self.width + c[0]]

    def is_white(self, c: Coord) -> bool:
        return self.in_bounds(c) and self.cells[c[1] * self.width + c[0]] is Cell.WHITE

    @cached_property
    def white(self) -> tuple[Coord, ...]:
        """White cells in scanline order."""
        w = self.width
        return tuple((i % w, i // w) for i, c in enumerate(self.cells) if c is Cell.WHITE)

    @cached_property
    def segment_table(self) -> "SegmentTable":
        return SegmentTable.build(self)

    def with_white(self, extra: Iterable[Coord]) -> "BoardGrid":
        return BoardGrid.from_white(self.width, self.height, set(self.white) | set(extra))

    def with_black(self, cells: Iterable[Coord]) -> "BoardGrid":
        return BoardGrid.from_white(self.width, self.height, set(self.white) - set(cells))


class SegmentTable:
    """Maximal white runs per direction, with each cell's (segment, position)."""

    def __init__(self, segments: dict[Direction, list[Segment]], where: dict):
        self.segments = segments
        self.where = where  # (direction, cell) -> (segment index, position)

    @classmethod
    def build(cls, board: BoardGrid) -> "SegmentTable":
        segments: dict[Direction, list[Segment]] = {}
        where = {}
        white = set(board.white)
        for d in DIRECTIONS:
            dx, dy = d.step
            segs = []
            for c in board.white:
                prev = (c[0] - dx, c[1] - dy)
                if prev in white:
                    continue
                run = [c]
                nxt = (c[0] + dx, c[1] + dy)
                while nxt in white:
                    run.append(nxt)
                    nxt = (nxt[0] + dx, nxt[1] + dy)
                for pos, cc in enumerate(run):
                    where[d, cc] = (len(segs), pos)
                segs.append(Segment(d, tuple(run)))
            segments[d] = segs
        return cls(segments, where)


def segments(board: BoardGrid, direction: Direction) -> list[Segment]:
    """Maximal white runs along ``direction`` in scanline order of their first cell."""
    return list(board.segment_table.segments[direction])


def _check_white(board: BoardGrid, c: Coord) -> None:
    if not board.in_bounds(c):
        raise PlacementError(f"{c} is off the {board.width}x{board.height} board")
    if not board.is_white(c):
        raise PlacementError(f"{c} is a black cell")


def attacks(board: BoardGrid, rules: PieceRules, a: Coord, b: Coord) -> bool:
    """True iff a piece on ``a`` reaches ``b`` through white cells within range."""
    _check_white(board, a)
    _check_white(board, b)
    if a == b:
        raise PlacementError("a piece does not attack its own square")
    where = board.segment_table.where
    for d in DIRECTIONS:
        sa, pa = where[d, a]
        sb, pb = where[d, b]
        if sa == sb and (rules.range is None or abs(pa - pb) <= rules.range):
            return True
    return False


def is_legitimate(board: BoardGrid, rules: PieceRules, placement: Iterable[Coord]) -> bool:
    """True iff every piece is on a white cell and no two pieces attack.

    Raises ``PlacementError`` for pieces on black or off-board cells, which is
    a malformed placement rather than an illegitimate one.
    """
    squares = list(placement)
    for c in squares:
        _check_white(board, c)
    if len(set(squares)) != len(squares):
        raise PlacementError("duplicate square in placement")
    where = board.segment_table.where
    for d in DIRECTIONS:
        lines: dict[int, list[int]] = {}
        for c in squares:
            s, p = where[d, c]
            lines.setdefault(s, []).append(p)
        for ps in lines.values():
            if len(ps) < 2:
                continue
            if rules.range is None:
                return False
            ps.sort()
            if any(q - p <= rules.range for p, q in zip(ps, ps[1:])):
                return False
    return True


class ConflictGraph:
    """Bitmask view of the attack relation over a board's white cells.

    ``cliques`` are maximal sets of mutually attacking cells that lie on one
    segment: whole segments for queens, windows of ``range + 1`` cells for
    range-limited pieces.
    """

    def __init__(self, board: BoardGrid, rules: PieceRules, cells: Optional[Iterable[Coord]] = None):
        self.board = board
        self.rules = rules
        self.cells: tuple[Coord, ...] = tuple(board.white if cells is None else cells)
        self.index = {c: i for i, c in enumerate(self.cells)}
        n = len(self.cells)
        self.nbr = [0] * n
        self.cliques: list[int] = []
        table = board.segment_table
        r = rules.range
        for d in DIRECTIONS:
            for seg in table.segments[d]:
                idx = [self.index[c] for c in seg.cells if c in self.index]
                if not idx:
                    continue
                # positions along the full segment, so range is measured through excluded cells too
                pos = [table.where[d, c][1] for c in seg.cells if c in self.index]
                if r is None:
                    windows = [idx]
                else:
                    windows = []
                    j = 0
                    for i in range(len(idx)):
                        while pos[i] - pos[j] > r:
                            j += 1
                        windows.append(idx[j:i + 1])
                for win in windows:
                    mask = 0
                    for i in win:
                        mask |= 1 << i
                    for i in win:
                        self.nbr[i] |= mask & ~(1 << i)
                    if len(win) > 1:
                        self.cliques.append(mask)
        self.clique_of = [[] for _ in range(n)]
        for m in self.cliques:
            mm = m
            while mm:
                low = mm & -mm
                self.clique_of[low.bit_length() - 1].append(m)
                mm ^= low
        # every cell is covered by at least its singleton
        for i in range(n):
            if not self.clique_of[i]:
                self.clique_of[i].append(1 << i)

    def __len__(self) -> int:
        return len(self.cells)

    def mask_of(self, squares: Iterable[Coord]) -> int:
        m = 0
        for c in squares:
            m |= 1 << self.index[c]
        return m

    def squares(self, mask: int) -> frozenset:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.cells[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)


class ParsedBoard(NamedTuple):
    board: BoardGrid
    placement: Optional[frozenset]
    rules: Optional[PieceRules]


def parse_board(text: str) -> ParsedBoard:
    """Read the ``#``/``.``/``Q`` text format with an optional ``range:`` header."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln.rstrip("\r") for ln in lines]
    rules = None
    if lines and lines[0].startswith("range:"):
        rules = PieceRules.parse(lines[0][len("range:"):])
        lines = lines[1:]
    if not lines:
        raise BoardError("board has no rows")
    width = len(lines[0])
    if width == 0:
        raise BoardError("board rows are empty")
    cells = []
    queens = []
    for y, row in enumerate(lines):
        if len(row) != width:
            raise BoardError(f"ragged rows: row {y} has {len(row)} cells, expected {width}")
        for x, ch in enumerate(row):
            if ch == "#":
                cells.append(Cell.BLACK)
            elif ch == ".":
                cells.append(Cell.WHITE)
            elif ch == "Q":
                cells.append(Cell.WHITE)
                queens.append((x, y))
            else:
                raise BoardError(f"illegal character {ch!r} at {(x, y)}")
    board = BoardGrid(width, len(lines), tuple(cells))
    return ParsedBoard(board, frozenset(queens) if queens else None, rules)


def emit_board(board: BoardGrid, placement: Iterable[Coord] = (), rules: Optional[PieceRules] = None) -> str:
    queens = set(placement)
    out = []
    if rules is not None:
        out.append(f"range: {rules.label()}")
    for y in range(board.height):
        row = []
        for x in range(board.width):
            if (x, y) in queens:
                if not board.is_white((x, y)):
                    raise PlacementError(f"queen on black cell {(x, y)}")
                row.append("Q")
            else:
                row.append(board.cells[y * board.width + x].value)
        out.append("".join(row))
    return "\n".join(out) + "\n"
