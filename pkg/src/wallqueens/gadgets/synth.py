"""Search-based gadget synthesis.

Every gadget is built from port bumps joined by thin routes: chains of white
cells in which no three are consecutive along a line and each cell touches
(king-wise) only its two chain neighbours.  On such cells every piece range
attacks exactly the touching cells, so a closed route is a chordless cycle
whose even length gives exactly two maximum placements.  A route of odd
length between two ports keeps their signals in step; an even one flips them.

Clause gadgets run one open chain from each port into a small core found by
search; the verifier, not the construction, decides whether a layout ships.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from ..core import QUEEN, BoardGrid, Coord, PieceRules
from ..solver import DEFAULT_BUDGET, enumerate_max
from .manifest import (
    EDGES,
    FEMALE_BUMP,
    MALE_BUMP,
    ContractSpec,
    GadgetManifest,
    Gender,
    Kind,
    ManifestError,
    PortSpec,
    blank_manifest,
    frame_xy,
    port_offset,
)
from .verify import clause_clamps, clause_table, patterns, verify_clause, verify_isolation, verify_two_state

LINE_DIRS = ((1, 0), (0, 1), (1, 1), (1, -1))
KING_STEPS = tuple((dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if dx or dy)


class SynthesisError(RuntimeError):
    """No layout found within the budget."""


def cheb(a: Coord, b: Coord) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def run_length(c: Coord, white: set, d: tuple) -> int:
    n = 1
    for sgn in (1, -1):
        x, y = c[0] + sgn * d[0], c[1] + sgn * d[1]
        while (x, y) in white:
            n += 1
            x, y = x + sgn * d[0], y + sgn * d[1]
    return n


def partner_cells(p: PortSpec, size: int) -> list:
    """Cells a mated partner puts next to this port, in this tile's coordinates."""
    other = Gender.FEMALE if p.gender is Gender.MALE else Gender.MALE
    bump = MALE_BUMP if other is Gender.MALE else FEMALE_BUMP
    off = port_offset(other, size)
    # the partner's depth d, offset t is this tile's depth -1-d, offset S-1-t
    return [frame_xy(p.edge, -1 - d, size - 1 - (off + dt), size) for _, d, dt in bump]


@dataclass
class Router:
    """Depth-first search for thin routes inside the tile interior."""

    size: int
    node_budget: int = 200_000

    def __post_init__(self):
        self.nodes = 0

    def inside(self, c: Coord) -> bool:
        return 1 <= c[0] <= self.size - 2 and 1 <= c[1] <= self.size - 2

    def routes(self, start: Coord, goal: Coord, length: int, taken: set,
               goal_partners: tuple = (), avoid: frozenset = frozenset()) -> Iterator[list]:
        """Routes of exactly ``length`` new cells from a neighbour of ``start`` to a neighbour of ``goal``.

        ``taken`` holds every white (or virtual) cell already laid down; the
        new cells may touch only their chain neighbours, and the last one
        touches ``goal``.  ``goal_partners`` are extra cells the last route cell
        may touch (cells already adjacent to the goal by design).  ``avoid``
        cells stay black.
        """
        path: list = []
        on_path: set = set()
        white = taken

        def ok(c: Coord, prev: Coord, last: bool) -> bool:
            if c in white or c in on_path or c in avoid or not self.inside(c):
                return False
            for dx, dy in KING_STEPS:
                n = (c[0] + dx, c[1] + dy)
                if n == prev:
                    continue
                if n in white or n in on_path:
                    if last and (n == goal or n in goal_partners):
                        continue
                    return False
            if last and cheb(c, goal) != 1:
                return False
            both = white | on_path
            both.add(c)
            return all(run_length(c, both, d) <= 2 for d in LINE_DIRS)

        def rec(prev: Coord):
            self.nodes += 1
            if self.nodes > self.node_budget:
                return
            j = len(path)
            if j == length:
                yield list(path)
                return
            last = j == length - 1
            remaining = length - 1 - j
            cands = []
            for dx, dy in KING_STEPS:
                c = (prev[0] + dx, prev[1] + dy)
                dist = cheb(c, goal) - 1
                if dist > remaining or (not last and dist == 0):
                    continue
                if ok(c, prev, last):
                    # use slack early: prefer cells whose distance matches the remaining budget
                    cands.append((abs(remaining - dist) if remaining > 4 else dist, c))
            cands.sort()
            for _, c in cands:
                path.append(c)
                on_path.add(c)
                yield from rec(c)
                path.pop()
                on_path.discard(c)

        yield from rec(start)


def _parity_lengths(lo: int, parity: int, span: int) -> list:
    k = max(lo, 1)
    if k % 2 != parity:
        k += 1
    return list(range(k, k + span + 1, 2))


@dataclass
class SynthOptions:
    """Knobs for the layout search."""

    alternatives: int = 6  # routes tried per leg before backtracking further
    keep_out: tuple = (6, 4, 2, 0)  # side of the central square that cycle routes avoid, tried in turn
    span: int = 14  # extra length explored beyond the shortest candidate
    node_budget: int = 400_000
    verify_budget: int = DEFAULT_BUDGET


def _base_taken(ports: list, size: int) -> set:
    taken = set()
    for p in ports:
        taken.update(p.cycle_cells(size))
        taken.update(partner_cells(p, size))
    return taken


def _manifest_from_white(name: str, kind: Kind, size: int, ports: list, white: set,
                         ranges: tuple, notes: str = "") -> GadgetManifest:
    body_white = [c for c in white if 0 <= c[0] < size and 0 <= c[1] < size]
    body = BoardGrid.from_white(size, size, body_white)
    return GadgetManifest(name, kind, body, tuple(ports), 0, (), (), ranges, notes)


def _with_states(g: GadgetManifest, rules: PieceRules, budget: int) -> Optional[GadgetManifest]:
    """Fill tariff, states and port roles from an exhaustive enumeration."""
    from dataclasses import replace
    en = enumerate_max(g.framed(), rules, cap=3, budget=budget)
    if len(en.placements) != 2:
        return None
    p0 = g.ports[0]
    sig0 = g.framed_coord(p0.signal(g.size))
    states = sorted(en.placements, key=lambda st: sig0 not in st)
    ports = []
    for p in g.ports:
        sig = g.framed_coord(p.signal(g.size))
        ports.append(replace(p, roles=tuple("T" if sig in st else "F" for st in states)))
    return replace(g, ports=tuple(ports), tariff=en.max_count, states=tuple(states), labels=("0", "1"))


def synthesize_two_state(name: str, size: int, ports: list, straight: list,
                         tariff: Optional[int] = None, options: Optional[SynthOptions] = None,
                         ranges: tuple = ("inf", "2", "1")) -> GadgetManifest:
    """A single thin cycle through every port, clockwise.

    ``straight[i]`` says whether port ``i`` and the next port clockwise share
    their truth role.  With ``tariff`` set, the cycle length is pinned to
    twice that value (protuberance cells are part of the cycle).
    """
    opts = options or SynthOptions()
    order = sorted(range(len(ports)), key=lambda i: EDGES.index(ports[i].edge))
    cw = [ports[i] for i in order]
    legs_straight = []
    for j in range(len(cw)):
        a, b = order[j], order[(j + 1) % len(cw)]
        # parity of the leg from cw[j] to cw[j+1]: both ports relative to port 0's role
        legs_straight.append(straight[a] == straight[b] if len(cw) > 1 else True)
    router = Router(size, opts.node_budget)
    base = _base_taken(cw, size)
    body_cells = set()
    for p in cw:
        body_cells.update(p.cycle_cells(size))
    total_bumps = 5 * len(cw)

    def legs(j: int, taken: set, used: int) -> Iterator[list]:
        if j == len(cw):
            yield []
            return
        a, b = cw[j], cw[(j + 1) % len(cw)]
        start = a.cycle_cells(size)[-1]
        goal = b.cycle_cells(size)[0]
        parity = 1 if legs_straight[j] else 0
        lo = cheb(start, goal) - 1
        if tariff is not None and j == len(cw) - 1:
            need = 2 * tariff - total_bumps - used
            lengths = [need] if need >= lo and need % 2 == parity else []
        else:
            lengths = _parity_lengths(lo, parity, opts.span)
        for k in lengths:
            tried = 0
            for r in router.routes(start, goal, k, taken, avoid=avoid):
                tried += 1
                for rest in legs(j + 1, taken | set(r), used + k):
                    yield [r] + rest
                if tried >= opts.alternatives or router.nodes > router.node_budget:
                    break

    def candidates() -> Iterator[list]:
        nonlocal avoid
        for side in opts.keep_out:
            lo = (size - side) // 2
            avoid = frozenset((x, y) for x in range(lo, lo + side) for y in range(lo, lo + side))
            yield from legs(0, base, 0)

    avoid: frozenset = frozenset()
    for routes in candidates():
        white = set(body_cells)
        for r in routes:
            white.update(r)
        g = _manifest_from_white(name, Kind.TWO_STATE, size, ports, white, ranges)
        if not verify_isolation(g):
            continue
        full = _with_states(g, QUEEN, opts.verify_budget)
        if full is None or (tariff is not None and full.tariff != tariff):
            continue
        if all(_roles_ok(full, straight)) and all(verify_two_state(full, PieceRules.parse(r), opts.verify_budget)
                                                  for r in ranges):
            return full
        if router.nodes > router.node_budget:
            break
    raise SynthesisError(f"no {name} layout at size {size} (nodes {router.nodes})")


def _roles_ok(g: GadgetManifest, straight: list) -> list:
    r0 = g.ports[0].roles
    return [(p.roles == r0) == s for p, s in zip(g.ports, straight)]


# ---------------------------------------------------------------------------
# clause gadgets


@dataclass(frozen=True)
class ClauseCore:
    """Core cells relative to an origin; ``terminals`` face W, N, E in that order."""

    name: str
    terminals: tuple
    extras: tuple
    ranges: tuple

    def cells(self, origin: Coord, keep: tuple) -> tuple:
        ox, oy = origin
        ts = [(ox + x, oy + y) if k else None for (x, y), k in zip(self.terminals, keep)]
        ex = [(ox + x, oy + y) for x, y in self.extras]
        return ts, ex


# t1, a, t2 share an anti-diagonal, so for unbounded and range-2 pieces they
# are one clique; b hangs off a and t3.
QUEEN_CORE = ClauseCore("queen", ((0, 2), (2, 0), (3, 2)), ((1, 1), (2, 2)), ("inf", "2"))
# kings see only touching cells, so the clique is replaced by a short odd cycle
KING_CORE = ClauseCore("king", ((0, 2), (2, 0), (3, 2)), ((0, 1), (1, 0), (1, 2), (2, 2)), ("1",))

CORE_EDGES = ("W", "N", "E")


def synthesize_clause(name: str, size: int, edges: tuple, core: ClauseCore = QUEEN_CORE,
                      tariff: Optional[int] = None, options: Optional[SynthOptions] = None) -> GadgetManifest:
    """Female ports on ``edges`` (a subset of W, N, E) chained into a clause core."""
    opts = options or SynthOptions()
    for e in edges:
        if e not in CORE_EDGES:
            raise ManifestError(f"clause ports must lie on W, N or E, got {e}")
    edges = tuple(e for e in CORE_EDGES if e in edges)
    ports = [PortSpec(e, port_offset(Gender.FEMALE, size), Gender.FEMALE) for e in edges]
    keep = tuple(e in edges for e in CORE_EDGES)
    c = size // 2
    origins = [(c - 2 + dx, c - 2 + dy) for dy in (0, 1, -1) for dx in (0, -1, 1)]
    router = Router(size, opts.node_budget)
    rules = [PieceRules.parse(r) for r in core.ranges]
    for origin in origins:
        ts, ex = core.cells(origin, keep)
        terms = [t for t in ts if t is not None]
        taken = _base_taken(ports, size) | set(terms) | set(ex)
        if any(not router.inside(x) for x in terms + ex):
            continue
        fixed = set(terms) | set(ex)
        for p in ports:
            fixed.update(p.cycle_cells(size))

        def legs(j: int, taken: set, used: int) -> Iterator[list]:
            if j == len(ports):
                yield []
                return
            start = ports[j].cycle_cells(size)[-1]
            goal = terms[j]
            lo = cheb(start, goal) - 1
            lengths = _parity_lengths(lo, 1, opts.span)
            if tariff is not None and j == len(ports) - 1:
                need = last_length(used)
                lengths = [need] if need >= lo and need % 2 == 1 else []
            for k in lengths:
                tried = 0
                for r in router.routes(start, goal, k, taken):
                    tried += 1
                    for rest in legs(j + 1, taken | set(r), used + k):
                        yield [r] + rest
                    if tried >= opts.alternatives or router.nodes > router.node_budget:
                        break

        def last_length(used: int) -> int:
            # a chain with k route cells holds (5 + k) / 2 pieces; the core adds its own value
            core_val = 3 if core is KING_CORE else 2
            return 2 * (tariff - core_val) - 5 * len(ports) - used

        for routes in legs(0, taken, 0):
            white = set(fixed)
            for r in routes:
                white.update(r)
            g = _manifest_from_white(name, Kind.CLAUSE, size, ports, white, core.ranges)
            if not verify_isolation(g):
                continue
            full = _clause_states(g, rules[0], opts.verify_budget)
            if full is None or (tariff is not None and full.tariff != tariff):
                continue
            if all(verify_clause(full, r, opts.verify_budget) for r in rules):
                return full
            if router.nodes > router.node_budget:
                break
    raise SynthesisError(f"no {name} layout at size {size} (nodes {router.nodes})")


def _clause_states(g: GadgetManifest, rules: PieceRules, budget: int) -> Optional[GadgetManifest]:
    from dataclasses import replace
    k = len(g.ports)
    board = g.framed()
    table = clause_table(board, rules, lambda pat: clause_clamps(g, pat), k, budget)
    top = max(m for m, _ in table.values())
    pats = [p for p in patterns(k) if "T" in p]
    if any(table[p][0] != top for p in pats):
        return None
    states = tuple(table[p][1] for p in pats)
    ports = tuple(replace(p, roles=("-", "-")) for p in g.ports)
    return replace(g, ports=ports, tariff=top, states=states, labels=tuple(pats))


def synthesize_gadget(contract: ContractSpec, size: int, ports: list, budget: int = 400_000,
                      name: Optional[str] = None, straight: Optional[list] = None,
                      options: Optional[SynthOptions] = None) -> GadgetManifest:
    """Dispatch on the contract kind; ``straight`` gives TwoState role agreement with port 0."""
    if size < 6:
        raise ValueError("tile size must be at least 6")
    if len({p.edge for p in ports}) != len(ports):
        raise ValueError("ports must lie on distinct edges")
    opts = options or SynthOptions(node_budget=budget)
    if contract.kind is Kind.BLANK:
        return blank_manifest(size)
    if contract.kind is Kind.TWO_STATE:
        straight = straight if straight is not None else [True] * len(ports)
        return synthesize_two_state(name or "TwoState", size, list(ports), straight,
                                    contract.claimed_max, opts)
    edges = tuple(p.edge for p in ports)
    return synthesize_clause(name or "Clause", size, edges, QUEEN_CORE, contract.claimed_max, opts)
