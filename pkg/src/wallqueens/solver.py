"""Exact maximum and decision search for non-attacking placements.

The search branches on the first row clique that still has a free cell:
place a piece on one of its free cells, or on none of them.  The bound is a
greedy cover of the free cells by segment cliques, each of which can hold at
most one piece.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .core import (
    BoardGrid,
    ConflictGraph,
    Coord,
    Direction,
    PieceRules,
    is_legitimate,
)

DEFAULT_BUDGET = 5_000_000


class BudgetExhausted(RuntimeError):
    """The node budget ran out; the answer is unknown, not "no"."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SolveResult:
    max_count: int
    witness: frozenset
    node_count: int = 0


@dataclass
class MaxEnumeration:
    max_count: int
    placements: list = field(default_factory=list)
    overflow: bool = False
    node_count: int = 0


def canonical_key(placement: Iterable[Coord]) -> tuple:
    return tuple(sorted(placement))


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Search:
    def __init__(self, graph: ConflictGraph, budget: int):
        self.g = graph
        self.budget = budget
        self.nodes = 0
        # for each cell, the row clique running rightwards from it: the rest of
        # its row segment, or the next ``range`` steps for a limited piece
        table = graph.board.segment_table
        r = graph.rules.range
        self.row_clique = []
        for c in graph.cells:
            s, p = table.where[Direction.ROW, c]
            seg = table.segments[Direction.ROW][s].cells
            stop = len(seg) if r is None else min(len(seg), p + r + 1)
            self.row_clique.append(graph.mask_of(cc for cc in seg[p:stop] if cc in graph.index))

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes)

    def bound(self, avail: int) -> int:
        clique_of = self.g.clique_of
        count = 0
        rem = avail
        while rem:
            v = (rem & -rem).bit_length() - 1
            best = 1 << v
            bc = 1
            for m in clique_of[v]:
                k = _popcount(m & rem)
                if k > bc:
                    bc, best = k, m
            rem &= ~best
            rem &= ~(1 << v)
            count += 1
        return count

    def branch_set(self, avail: int) -> int:
        v = (avail & -avail).bit_length() - 1
        return (self.row_clique[v] & avail) | (1 << v)


def _graph(board: BoardGrid, rules: PieceRules, cells=None) -> ConflictGraph:
    return ConflictGraph(board, rules, cells)


def max_placement(board: BoardGrid, rules: PieceRules, budget: int = DEFAULT_BUDGET,
                  cells: Optional[Iterable[Coord]] = None) -> SolveResult:
    """Largest legitimate placement; the first one found is the witness.

    ``cells`` restricts the pieces to a subset of the white cells (the rest
    stay white, so they still carry attacks).
    """
    g = _graph(board, rules, cells)
    s = _Search(g, budget)
    nbr = g.nbr
    best = [0, 0]

    def rec(avail: int, placed: int, chosen: int):
        s.tick()
        if avail == 0:
            if placed > best[0]:
                best[0], best[1] = placed, chosen
            return
        if placed + s.bound(avail) <= best[0]:
            return
        bs = s.branch_set(avail)
        m = bs
        while m:
            low = m & -m
            i = low.bit_length() - 1
            rec(avail & ~nbr[i] & ~low & ~bs, placed + 1, chosen | low)
            m ^= low
        rec(avail & ~bs, placed, chosen)

    full = (1 << len(g)) - 1
    rec(full, 0, 0)
    witness = g.squares(best[1])
    return SolveResult(best[0], witness, s.nodes)


def decide(board: BoardGrid, rules: PieceRules, m: int, budget: int = DEFAULT_BUDGET,
           cells: Optional[Iterable[Coord]] = None) -> Optional[frozenset]:
    """A legitimate placement of exactly ``m`` pieces, or ``None`` if none exists."""
    if m < 0:
        raise ValueError("tariff must be non-negative")
    if m == 0:
        return frozenset()
    g = _graph(board, rules, cells)
    s = _Search(g, budget)
    nbr = g.nbr

    def rec(avail: int, placed: int, chosen: int):
        s.tick()
        if placed == m:
            return chosen
        if avail == 0 or placed + s.bound(avail) < m:
            return None
        bs = s.branch_set(avail)
        mm = bs
        while mm:
            low = mm & -mm
            i = low.bit_length() - 1
            got = rec(avail & ~nbr[i] & ~low & ~bs, placed + 1, chosen | low)
            if got is not None:
                return got
            mm ^= low
        return rec(avail & ~bs, placed, chosen)

    found = rec((1 << len(g)) - 1, 0, 0)
    return None if found is None else g.squares(found)


def enumerate_max(board: BoardGrid, rules: PieceRules, cap: int = 64, budget: int = DEFAULT_BUDGET,
                  cells: Optional[Iterable[Coord]] = None,
                  forced: Iterable[Coord] = ()) -> MaxEnumeration:
    """All distinct maximum placements, up to ``cap`` of them.

    ``forced`` cells must carry a piece.  The maximum itself is exact even
    when the list overflows.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    g = _graph(board, rules, cells)
    s = _Search(g, budget)
    nbr = g.nbr
    best = [-1]
    found: list[int] = []
    overflow = [False]

    def rec(avail: int, placed: int, chosen: int):
        s.tick()
        if avail == 0:
            if placed > best[0]:
                best[0] = placed
                found.clear()
                overflow[0] = False
            if placed == best[0]:
                if len(found) < cap:
                    found.append(chosen)
                else:
                    overflow[0] = True
            return
        if placed + s.bound(avail) < best[0]:
            return
        bs = s.branch_set(avail)
        m = bs
        while m:
            low = m & -m
            i = low.bit_length() - 1
            rec(avail & ~nbr[i] & ~low & ~bs, placed + 1, chosen | low)
            m ^= low
        rec(avail & ~bs, placed, chosen)

    start = (1 << len(g)) - 1
    chosen = 0
    forced = list(forced)
    for c in forced:
        i = g.index[c]
        if not (start >> i) & 1:
            return MaxEnumeration(-1, [], False, s.nodes)
        start &= ~nbr[i] & ~(1 << i)
        chosen |= 1 << i
    rec(start, len(forced), chosen)
    placements = sorted((g.squares(x) for x in found), key=canonical_key)
    return MaxEnumeration(best[0], placements, overflow[0], s.nodes)


def _ray_attack_pairs(board: BoardGrid, rules: PieceRules) -> dict:
    """Attack relation by walking rays cell by cell (no segment tables)."""
    white = board.white
    reach = {c: set() for c in white}
    steps = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if dx or dy]
    for c in white:
        for dx, dy in steps:
            x, y = c
            k = 0
            while True:
                x, y = x + dx, y + dy
                k += 1
                if rules.range is not None and k > rules.range:
                    break
                if not board.is_white((x, y)):
                    break
                reach[c].add((x, y))
    return reach


BRUTE_FORCE_LIMIT = 30


def brute_force_max(board: BoardGrid, rules: PieceRules) -> SolveResult:
    """Exhaustive scan of every legitimate placement; a test oracle.

    Walks subsets in order of the white cells and extends only legitimate
    ones, so each legitimate placement is visited exactly once.
    """
    white = board.white
    if len(white) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} white cells, got {len(white)}")
    reach = _ray_attack_pairs(board, rules)
    best: list = [()]
    count = [0]

    def rec(start: int, chosen: list):
        count[0] += 1
        if len(chosen) > len(best[0]):
            best[0] = tuple(chosen)
        for i in range(start, len(white)):
            c = white[i]
            if any(c in reach[q] for q in chosen):
                continue
            chosen.append(c)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return SolveResult(len(best[0]), frozenset(best[0]), count[0])


def brute_force_all_max(board: BoardGrid, rules: PieceRules) -> list:
    """Every maximum placement by exhaustive scan, canonically ordered."""
    white = board.white
    if len(white) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} white cells, got {len(white)}")
    reach = _ray_attack_pairs(board, rules)
    out: list = []
    best = [0]

    def rec(start: int, chosen: list):
        if len(chosen) > best[0]:
            best[0] = len(chosen)
            out.clear()
        if len(chosen) == best[0]:
            out.append(frozenset(chosen))
        for i in range(start, len(white)):
            c = white[i]
            if any(c in reach[q] for q in chosen):
                continue
            chosen.append(c)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return sorted(out, key=canonical_key)


# ---------------------------------------------------------------------------
# tile-aware decision for boards assembled from independent regions


@dataclass
class TiledResult:
    placement: Optional[frozenset]
    upper_bound: int
    region_max: dict
    exhausted: bool = True


def decide_tiled(board: BoardGrid, rules: PieceRules, m: int, regions: Mapping[Coord, object],
                 cap: int = 4096, budget: int = DEFAULT_BUDGET) -> TiledResult:
    """Decide ``m`` pieces on a board partitioned into regions.

    Each region is solved alone (with every other cell black, so a region
    never sees more attacks than it does on the full board); the sum of
    region maxima bounds the board maximum.  When ``m`` equals that bound
    the board admits ``m`` pieces iff some choice of one maximum placement
    per region is jointly legitimate, which a backtracking search settles.
    Raises ``ValueError`` for ``m`` below the bound, where the reduction
    argument does not apply.
    """
    by_region: dict = {}
    for c in board.white:
        if c not in regions:
            raise ValueError(f"white cell {c} has no region")
        by_region.setdefault(regions[c], []).append(c)
    order = sorted(by_region, key=lambda r: min((y, x) for x, y in by_region[r]))
    region_max = {}
    options = {}
    for r in order:
        sub = BoardGrid.from_white(board.width, board.height, by_region[r])
        en = enumerate_max(sub, rules, cap=cap, budget=budget)
        if en.overflow:
            raise BudgetExhausted(en.node_count)
        region_max[r] = en.max_count
        options[r] = en.placements
    bound = sum(region_max.values())
    if m > bound:
        return TiledResult(None, bound, region_max)
    if m < bound:
        raise ValueError("tile-aware decision needs m equal to the sum of region maxima")
    g = ConflictGraph(board, rules)
    masks = {r: [g.mask_of(p) for p in options[r]] for r in order}
    attack_of = {r: [] for r in order}
    for r in order:
        for pm in masks[r]:
            a = 0
            mm = pm
            while mm:
                low = mm & -mm
                a |= g.nbr[low.bit_length() - 1]
                mm ^= low
            attack_of[r].append(a)
    # neighbouring regions: those whose cells some region cell attacks
    region_bits = {r: g.mask_of(by_region[r]) for r in order}
    neighbours = {}
    for r in order:
        reach = 0
        for i in range(len(g)):
            if (region_bits[r] >> i) & 1:
                reach |= g.nbr[i]
        neighbours[r] = [q for q in order if q != r and reach & region_bits[q]]
    # most constrained order: BFS from the first region over the neighbour relation
    seen = []
    for r in order:
        if r in seen:
            continue
        queue = [r]
        seen.append(r)
        while queue:
            q = queue.pop(0)
            for nb in neighbours[q]:
                if nb not in seen:
                    seen.append(nb)
                    queue.append(nb)
    nodes = [0]

    def rec(k: int, occupied: int, attacked: int):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExhausted(nodes[0])
        if k == len(seen):
            return occupied
        r = seen[k]
        for pm, am in zip(masks[r], attack_of[r]):
            if pm & attacked or am & occupied:
                continue
            got = rec(k + 1, occupied | pm, attacked | am)
            if got is not None:
                return got
        return None

    found = rec(0, 0, 0)
    placement = None if found is None else g.squares(found)
    if placement is not None:
        assert len(placement) == m and is_legitimate(board, rules, placement)
    return TiledResult(placement, bound, region_max)
