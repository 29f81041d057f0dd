"""Stitching a tile plan into one board, the provenance sidecar, and decoding witnesses.

The sidecar is a line-oriented text file written next to the board:

    tile_size 16
    plan 5 3
    tariff 71
    rules inf
    slot 0 0 Variable 1 var:1
    owner 128 40 8 2
    decoder 1 135 39

``slot`` lines list the non-blank slots (x, y, tile name, quarter turns,
provenance); ``owner`` lines give the slot that owns each male protuberance
cell, which lies inside the neighbouring square; ``decoder`` lines give the
signal cells of each variable, one per subvariable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..core import QUEEN, BoardGrid, Direction, PieceRules, is_legitimate, segments
from ..gadgets.library import DEFAULT_SIZE, Roster, load_roster
from ..gadgets.manifest import EDGE_STEP, OPPOSITE, Gender
from .embed import planar_embed, split_high_degree
from .formula import Formula, incidence_graph
from .ortho import double_coords, ortho_layout
from .plan import Slot, TilePlan, plan_tiles, slot_ports, tariff


class AssemblyError(RuntimeError):
    """Two tiles write the same cell or a seam does not mate (a roster or planner bug)."""


class DecodeError(ValueError):
    """A placement that cannot be read back as a truth assignment."""


class SidecarError(ValueError):
    """Malformed provenance sidecar."""


@dataclass
class ReductionOutput:
    board: BoardGrid
    tariff: int
    plan: TilePlan
    decoder: dict  # variable -> tuple of signal cells, one per subvariable
    size: int = DEFAULT_SIZE
    rules: PieceRules = QUEEN
    owners: dict = field(default_factory=dict)  # protuberance cell -> owning slot
    formula: Optional[Formula] = None

    def regions(self) -> dict:
        return regions_for(self.board, self.size, self.owners)


def regions_for(board: BoardGrid, size: int, owners: dict) -> dict:
    """White cell -> owning slot: its square, unless a neighbour's protuberance claims it."""
    out = {}
    for x, y in board.white:
        out[(x, y)] = owners.get((x, y), (x // size, y // size))
    return out


def assemble(plan: TilePlan, roster: Roster, formula: Optional[Formula] = None) -> ReductionOutput:
    """Board from a plan: rotated tile bodies, protuberances written across seams."""
    s = roster.size
    white = set()
    owners = {}
    decoder: dict = {}
    for (x, y), slot in plan.items():
        if slot.name == "Blank":
            continue
        g = roster[slot.name].rotated(slot.rotation)
        ox, oy = x * s, y * s
        for cx, cy in g.body.white:
            white.add((cx + ox, cy + oy))
        if slot.name == "Variable":
            var, sub = _var_of(slot.provenance)
            cx, cy = g.ports[0].signal(s)
            decoder.setdefault(var, {})[sub] = (cx + ox, cy + oy)
    for (x, y), slot in plan.items():
        if slot.name == "Blank":
            continue
        ox, oy = x * s, y * s
        for edge, p in slot_ports(slot, roster).items():
            dx, dy = EDGE_STEP[edge]
            nx_, ny_ = x + dx, y + dy
            nb = plan.at(nx_, ny_) if 0 <= nx_ < plan.width and 0 <= ny_ < plan.height else None
            q = slot_ports(nb, roster).get(OPPOSITE[edge]) if nb is not None and nb.name != "Blank" else None
            if p.gender is Gender.FEMALE:
                if q is not None and q.gender is not Gender.MALE:
                    raise AssemblyError(f"slot {(x, y)}: female port on {edge} faces a {q.gender.value} port")
                continue
            if q is None or q.gender is not Gender.FEMALE:
                raise AssemblyError(f"slot {(x, y)}: male port on {edge} has no female partner")
            prot = [(cx + ox, cy + oy) for cx, cy in p.protuberance(s)]
            land = [(cx + nx_ * s, cy + ny_ * s) for cx, cy in q.landing(s)]
            if sorted(prot) != sorted(land):
                raise AssemblyError(f"slot {(x, y)}: protuberance on {edge} misses the partner's landing cells")
            for c in prot:
                if c in white:
                    raise AssemblyError(f"seam conflict at {c}")
                white.add(c)
                owners[c] = (x, y)
    board = BoardGrid.from_white(plan.width * s, plan.height * s, white)
    m = tariff(plan, roster)
    if m > board.width * board.height:
        raise AssemblyError("tariff exceeds the board area")
    dec = {v: tuple(cells[k] for k in sorted(cells)) for v, cells in sorted(decoder.items())}
    if formula is not None:
        for v in formula.used_variables():
            if v not in dec:
                raise AssemblyError(f"variable {v} has no Variable tile")
    out = ReductionOutput(board, m, plan, dec, s, roster.rules, owners, formula)
    problems = check_isolation(out, roster)
    if problems:
        raise AssemblyError("; ".join(problems[:5]))
    return out


def _var_of(provenance: str) -> tuple:
    if not provenance.startswith("var:"):
        raise AssemblyError(f"Variable tile with provenance {provenance!r}")
    body = provenance[4:]
    var, _, sub = body.partition(".")
    return int(var), int(sub or 0)


def port_zone(out: ReductionOutput, roster: Roster) -> set:
    """Board cells of every mated port bump, protuberances included."""
    s = out.size
    zone = set()
    for (x, y), slot in out.plan.items():
        if slot.name == "Blank":
            continue
        for p in slot_ports(slot, roster).values():
            zone.update((cx + x * s, cy + y * s) for cx, cy in p.cycle_cells(s))
    return zone


def check_isolation(out: ReductionOutput, roster: Roster) -> list:
    """No line of white cells spans two regions except through port bumps."""
    regions = out.regions()
    zone = port_zone(out, roster)
    problems = []
    for d in Direction:
        for seg in segments(out.board, d):
            owners = {regions[c] for c in seg.cells}
            if len(owners) > 1:
                stray = [c for c in seg.cells if c not in zone]
                if stray:
                    problems.append(f"{d.name} line through {stray[0]} crosses a seam outside a port")
    return problems


def reduce(f: Formula, rules: PieceRules = QUEEN, size: int = DEFAULT_SIZE,
           roster: Optional[Roster] = None) -> ReductionOutput:
    """Board and tariff that admit the tariff iff ``f`` is satisfiable."""
    roster = roster or load_roster(rules, size)
    if not f.clauses:
        plan = TilePlan(1, 1, {})
        return assemble(plan, roster, f)
    emb = split_high_degree(planar_embed(incidence_graph(f)))
    layout = double_coords(ortho_layout(emb))
    plan = plan_tiles(layout, emb.graph, roster)
    return assemble(plan, roster, f)


def decode(placement: Iterable, out: ReductionOutput) -> dict:
    """Truth assignment read from the variable signal cells of a full placement."""
    p = frozenset(placement)
    if len(p) < out.tariff:
        raise DecodeError(f"placement holds {len(p)} pieces, the tariff is {out.tariff}")
    if not is_legitimate(out.board, out.rules, p):
        raise DecodeError("placement is not legitimate")
    model = {}
    for var, cells in out.decoder.items():
        vals = {c in p for c in cells}
        if len(vals) != 1:
            raise DecodeError(f"subvariables of variable {var} disagree")
        model[var] = vals.pop()
    if out.formula is not None:
        for v in range(1, out.formula.variable_count + 1):
            model.setdefault(v, False)
        if not out.formula.evaluate(model):
            raise AssertionError("decoded assignment does not satisfy the formula")
    return dict(sorted(model.items()))


# ---------------------------------------------------------------------------
# sidecar


def save_sidecar(out: ReductionOutput) -> str:
    lines = [
        f"tile_size {out.size}",
        f"plan {out.plan.width} {out.plan.height}",
        f"tariff {out.tariff}",
        f"rules {out.rules.label()}",
    ]
    for (x, y), slot in out.plan.items():
        if slot.name != "Blank":
            lines.append(f"slot {x} {y} {slot.name} {slot.rotation} {slot.provenance}")
    for (cx, cy), (sx, sy) in sorted(out.owners.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"owner {cx} {cy} {sx} {sy}")
    for var, cells in out.decoder.items():
        lines.append(f"decoder {var} " + " ".join(f"{x} {y}" for x, y in cells))
    return "\n".join(lines) + "\n"


@dataclass
class Sidecar:
    size: int
    plan: TilePlan
    tariff: int
    rules: PieceRules
    owners: dict
    decoder: dict

    def regions(self, board: BoardGrid) -> dict:
        return regions_for(board, self.size, self.owners)


def load_sidecar(text: str) -> Sidecar:
    size = width = height = m = None
    rules = QUEEN
    slots, owners, decoder = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        key, args = parts[0], parts[1:]
        try:
            if key == "tile_size":
                size = int(args[0])
            elif key == "plan":
                width, height = int(args[0]), int(args[1])
            elif key == "tariff":
                m = int(args[0])
            elif key == "rules":
                rules = PieceRules.parse(args[0])
            elif key == "slot":
                slots[(int(args[0]), int(args[1]))] = Slot(args[2], int(args[3]), args[4] if len(args) > 4 else "-")
            elif key == "owner":
                owners[(int(args[0]), int(args[1]))] = (int(args[2]), int(args[3]))
            elif key == "decoder":
                nums = [int(a) for a in args[1:]]
                if len(nums) % 2:
                    raise ValueError("odd coordinate list")
                decoder[int(args[0])] = tuple(zip(nums[::2], nums[1::2]))
            else:
                raise ValueError(f"unknown key {key!r}")
        except (IndexError, ValueError) as e:
            raise SidecarError(f"line {lineno}: {e}") from None
    if size is None or width is None or m is None:
        raise SidecarError("sidecar needs tile_size, plan and tariff lines")
    return Sidecar(size, TilePlan(width, height, slots), m, rules, owners, decoder)


def output_from_sidecar(board: BoardGrid, side: Sidecar, formula: Optional[Formula] = None) -> ReductionOutput:
    return ReductionOutput(board, side.tariff, side.plan, side.decoder, side.size, side.rules, side.owners, formula)
