"""Exhaustive verifiers for gadget contracts.

Every verdict comes from the exact solver, so a pass means the enumeration
of all maximum placements matched the manifest.  Budget exhaustion yields an
inconclusive verdict, which is never a pass.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..core import QUEEN, BoardGrid, ConflictGraph, Coord, PieceRules, is_legitimate
from ..solver import DEFAULT_BUDGET, BudgetExhausted, enumerate_max, max_placement
from .manifest import GadgetManifest, Gender, Kind, PortSpec

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Verdict:
    status: str
    problems: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == PASS

    @classmethod
    def of(cls, problems: list, details: Optional[dict] = None) -> "Verdict":
        return cls(FAIL if problems else PASS, problems, details or {})


def verify_isolation(g: GadgetManifest) -> Verdict:
    """Black border except port corridors, black corners, no stray rays."""
    s = g.size
    body = g.body
    corridor = set()
    for p in g.ports:
        corridor.update(p.corridor(s))
    problems = []
    for c in ((0, 0), (s - 1, 0), (0, s - 1), (s - 1, s - 1)):
        if body.is_white(c):
            problems.append(f"corner {c} is white")
    for c in body.white:
        x, y = c
        if (x in (0, s - 1) or y in (0, s - 1)) and c not in corridor:
            problems.append(f"border cell {c} is white outside any port corridor")
    for p in g.ports:
        for c in p.landing(s):
            if body.is_white(c):
                problems.append(f"landing cell {c} of port {p.edge} is white")
        for c in p.cycle_cells(s):
            if body.in_bounds(c) and not body.is_white(c):
                problems.append(f"port {p.edge} cell {c} is black")
    steps = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if dx or dy]
    for c in body.white:
        for dx, dy in steps:
            cur = c
            while body.is_white((cur[0] + dx, cur[1] + dy)):
                cur = (cur[0] + dx, cur[1] + dy)
            nxt = (cur[0] + dx, cur[1] + dy)
            if not body.in_bounds(nxt) and cur not in corridor:
                problems.append(f"ray from {c} leaves the body at {cur}")
    return Verdict.of(sorted(set(problems)))


def _signal_framed(g: GadgetManifest, p: PortSpec) -> Coord:
    return g.framed_coord(p.signal(g.size))


def verify_two_state(g: GadgetManifest, rules: PieceRules = QUEEN, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Exactly two maximum placements, equal to the declared states, with consistent port roles."""
    if g.kind is not Kind.TWO_STATE:
        return Verdict(FAIL, [f"{g.name} is a {g.kind.value} gadget, not TwoState"])
    board = g.framed()
    try:
        en = enumerate_max(board, rules, cap=3, budget=budget)
    except BudgetExhausted as e:
        return Verdict(INCONCLUSIVE, [str(e)])
    problems = []
    details = {"max": en.max_count, "count": len(en.placements), "nodes": en.node_count}
    if en.max_count != g.tariff:
        problems.append(f"maximum is {en.max_count}, tariff says {g.tariff}")
    if len(en.placements) != 2:
        problems.append(f"{len(en.placements)}{'+' if en.overflow else ''} maximum placements, expected 2")
    elif set(en.placements) != set(g.states):
        problems.append("enumerated maximum placements differ from the declared states")
    if len(g.states) == 2:
        for p in g.ports:
            sig = _signal_framed(g, p)
            seen = tuple("T" if sig in st else "F" for st in g.states)
            if seen != tuple(p.roles):
                problems.append(f"port {p.edge} roles {'/'.join(p.roles)} but signal reads {'/'.join(seen)}")
            if seen[0] == seen[1]:
                problems.append(f"port {p.edge} signal does not flip between states")
    return Verdict.of(problems, details)


def constrained_max(board: BoardGrid, rules: PieceRules, forced: Iterable[Coord] = (),
                    forbidden: Iterable[Coord] = (), budget: int = DEFAULT_BUDGET):
    """Maximum placement containing ``forced`` and avoiding ``forbidden``; -1 if ``forced`` clashes."""
    forced = set(forced)
    forbidden = set(forbidden)
    if forced & forbidden or not is_legitimate(board, rules, forced):
        return -1, frozenset()
    g = ConflictGraph(board, rules)
    blocked = set(forbidden) | forced
    for c in forced:
        blocked |= g.squares(g.nbr[g.index[c]])
    cells = [c for c in board.white if c not in blocked]
    res = max_placement(board, rules, budget=budget, cells=cells)
    return res.max_count + len(forced), res.witness | frozenset(forced)


def patterns(k: int) -> list:
    """Truth patterns over ``k`` ports, all-T first, all-F last."""
    return ["".join(bits) for bits in itertools.product("TF", repeat=k)]


def clause_clamps(g: GadgetManifest, pattern: str) -> tuple:
    """Cells forced and forbidden on the framed clause board by a mated male partner.

    A partner reading T has its protuberance cell occupied, which rules out
    the female's inner cell ``B``; reading F it occupies its border cell,
    which rules out the opening cell ``W1``.
    """
    forbidden = []
    for p, v in zip(g.ports, pattern):
        cells = p.cells(g.size)
        forbidden.append(g.framed_coord(cells["B"] if v == "T" else cells["W1"]))
    return (), forbidden


def clause_table(board: BoardGrid, rules: PieceRules, clamps, k: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Pattern -> (max, witness) where ``clamps(pattern)`` gives (forced, forbidden)."""
    out = {}
    for pat in patterns(k):
        forced, forbidden = clamps(pat)
        out[pat] = constrained_max(board, rules, forced, forbidden, budget)
    return out


def check_clause_table(table: dict, claimed: int) -> list:
    problems = []
    for pat, (m, _) in table.items():
        want = claimed if "T" in pat else claimed - 1
        if m != want:
            problems.append(f"pattern {pat}: maximum {m}, expected {want}")
    return problems


def verify_clause(g: GadgetManifest, rules: PieceRules = QUEEN, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Tariff reachable for every port pattern except all-F, which reaches exactly tariff - 1."""
    if g.kind is not Kind.CLAUSE:
        return Verdict(FAIL, [f"{g.name} is a {g.kind.value} gadget, not Clause"])
    if not g.ports or any(p.gender is not Gender.FEMALE for p in g.ports):
        return Verdict(FAIL, ["clause ports must all be female"])
    board = g.framed()
    k = len(g.ports)
    try:
        table = clause_table(board, rules, lambda pat: clause_clamps(g, pat), k, budget)
    except BudgetExhausted as e:
        return Verdict(INCONCLUSIVE, [str(e)])
    problems = check_clause_table(table, g.tariff)
    witnesses = dict(zip(g.labels, g.states))
    for pat in patterns(k):
        if "T" not in pat:
            continue
        w = witnesses.get(pat)
        if w is None:
            problems.append(f"no declared witness for pattern {pat}")
            continue
        _, forbidden = clause_clamps(g, pat)
        if set(forbidden) & w or not is_legitimate(board, rules, w) or len(w) != g.tariff:
            problems.append(f"declared witness for {pat} is not a valid clamped maximum")
    details = {"table": {pat: m for pat, (m, _) in table.items()}}
    return Verdict.of(problems, details)


def verify_gadget(g: GadgetManifest, rules: Optional[PieceRules] = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Isolation plus the kind-appropriate verifier, for every range the gadget claims."""
    iso = verify_isolation(g)
    if not iso:
        return iso
    if g.kind is Kind.BLANK:
        return Verdict.of([] if g.tariff == 0 and not g.body.white else ["blank gadget has white cells"])
    ranges = [rules] if rules is not None else [PieceRules.parse(r) for r in g.ranges]
    check = verify_two_state if g.kind is Kind.TWO_STATE else verify_clause
    details = {}
    for r in ranges:
        v = check(g, r, budget)
        details[r.label()] = v.details
        if not v:
            v.problems = [f"range {r.label()}: {p}" for p in v.problems]
            return v
    return Verdict(PASS, [], details)


# ---------------------------------------------------------------------------
# mating two tiles across a seam


def pair_board(left: GadgetManifest, right: GadgetManifest) -> tuple:
    """``left`` and ``right`` side by side in one black frame; returns (board, left cells, right cells).

    Male protuberances are written into the neighbouring body, which must
    keep those landing cells black.
    """
    s = left.size
    lw = {(x + 1, y + 1) for x, y in left.body.white}
    rw = {(x + s + 1, y + 1) for x, y in right.body.white}
    for p in left.ports:
        lw |= {(x + 1, y + 1) for x, y in p.protuberance(s)}
    for p in right.ports:
        rw |= {(x + s + 1, y + 1) for x, y in p.protuberance(s)}
    if lw & rw:
        raise ValueError("seam conflict between the two tiles")
    board = BoardGrid.from_white(2 * s + 2, s + 2, lw | rw)
    return board, lw, rw


def verify_pair(left: GadgetManifest, right: GadgetManifest, rules: PieceRules = QUEEN,
                budget: int = DEFAULT_BUDGET) -> Verdict:
    """Two mated TwoState tiles hold exactly the sum of their tariffs, in exactly two ways."""
    pe, pw = left.port_on("E"), right.port_on("W")
    if pe is None or pw is None or pe.gender == pw.gender:
        return Verdict(FAIL, ["the tiles do not present a male and a female port across the seam"])
    board, _, _ = pair_board(left, right)
    try:
        en = enumerate_max(board, rules, cap=3, budget=budget)
    except BudgetExhausted as e:
        return Verdict(INCONCLUSIVE, [str(e)])
    problems = []
    want = left.tariff + right.tariff
    if en.max_count != want:
        problems.append(f"pair maximum {en.max_count}, expected {want}")
    if len(en.placements) != 2:
        problems.append(f"{len(en.placements)} maximum placements, expected 2")
    else:
        s = left.size
        a = (pe.signal(s)[0] + 1, pe.signal(s)[1] + 1)
        b = (pw.signal(s)[0] + s + 1, pw.signal(s)[1] + 1)
        for st in en.placements:
            if (a in st) != (b in st):
                problems.append("seam signals disagree in a maximum placement")
    return Verdict.of(problems, {"max": en.max_count, "count": len(en.placements)})
