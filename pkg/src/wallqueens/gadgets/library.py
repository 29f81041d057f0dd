"""The shipped tile rosters and the recipe that rebuilds them.

Two rosters share the two-state tiles: the queen roster (unbounded and
range-2 pieces) and the king roster, which swaps in clause tiles built on a
king-specific core.  Clause tiles come in variants with one, two or three
ports, because an unconnected clause port would read as true.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..core import PieceRules
from .manifest import GadgetManifest, Gender, Kind, PortSpec, blank_manifest, load_manifest, port_offset, save_manifest

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_SIZE = 16

F, M = Gender.FEMALE, Gender.MALE


@dataclass(frozen=True)
class TileSpec:
    name: str
    kind: Kind
    ports: tuple  # ((edge, gender), ...) with port 0 first
    straight: tuple = ()  # TwoState: port i shares port 0's role
    core: str = ""  # Clause: "queen" or "king"
    target: Optional[int] = None  # tariff to aim for before falling back to a free search


TWO_STATE_SPECS = (
    TileSpec("Variable", Kind.TWO_STATE, (("W", F), ("N", F), ("E", F)), (True, True, True), target=20),
    TileSpec("Turn", Kind.TWO_STATE, (("W", F), ("N", F)), (True, True), target=12),
    TileSpec("JoinFM", Kind.TWO_STATE, (("W", F), ("E", M)), (True, True), target=17),
    TileSpec("JoinMM", Kind.TWO_STATE, (("W", M), ("E", M)), (True, True), target=19),
    TileSpec("JoinSwitchMM", Kind.TWO_STATE, (("W", M), ("E", M)), (True, False), target=18),
)


def _clause_specs(prefix: str, core: str, target: int) -> tuple:
    out = []
    for edges in (("W", "N", "E"), ("W", "N"), ("W", "E"), ("W",)):
        suffix = "" if len(edges) == 3 else "".join(edges)
        out.append(TileSpec(prefix + suffix, Kind.CLAUSE, tuple((e, F) for e in edges), core=core,
                            target=target if len(edges) == 3 else None))
    return tuple(out)


QUEEN_CLAUSE_SPECS = _clause_specs("Clause", "queen", 21)
KING_CLAUSE_SPECS = _clause_specs("KingClause", "king", 25)
ALL_SPECS = TWO_STATE_SPECS + QUEEN_CLAUSE_SPECS + KING_CLAUSE_SPECS


@dataclass
class Roster:
    """Tiles available to the planner for one piece range."""

    size: int
    rules: PieceRules
    tiles: dict = field(default_factory=dict)
    clause_prefix: str = "Clause"

    def __getitem__(self, name: str) -> GadgetManifest:
        return self.tiles[name]

    def tariff(self, name: str) -> int:
        return self.tiles[name].tariff

    def clause_name(self, edges: frozenset) -> tuple:
        """Clause variant and quarter turns whose ports sit exactly on ``edges``."""
        from .manifest import EDGES
        for suffix in ("", "WN", "WE", "W"):
            g = self.tiles[self.clause_prefix + suffix]
            base = [p.edge for p in g.ports]
            for q in range(4):
                got = {EDGES[(EDGES.index(e) + q) % 4] for e in base}
                if got == set(edges):
                    return self.clause_prefix + suffix, q
        raise KeyError(f"no clause variant for edges {sorted(edges)}")


def roster_dir(size: int) -> Path:
    return DATA_DIR / f"s{size}"


def available_sizes() -> list:
    return sorted(int(p.name[1:]) for p in DATA_DIR.glob("s*") if p.is_dir() and any(p.glob("*.gadget")))


def load_tile(name: str, size: int = DEFAULT_SIZE) -> GadgetManifest:
    if name == "Blank":
        return blank_manifest(size)
    path = roster_dir(size) / f"{name}.gadget"
    if not path.exists():
        raise FileNotFoundError(f"no shipped gadget {name} at size {size}")
    return load_manifest(path.read_text())


def shipped_manifests(size: Optional[int] = None) -> list:
    sizes = [size] if size is not None else available_sizes()
    out = []
    for s in sizes:
        for path in sorted(roster_dir(s).glob("*.gadget")):
            out.append(load_manifest(path.read_text()))
    return out


def load_roster(rules: PieceRules, size: int = DEFAULT_SIZE) -> Roster:
    king = rules.range == 1
    prefix = "KingClause" if king else "Clause"
    specs = TWO_STATE_SPECS + (KING_CLAUSE_SPECS if king else QUEEN_CLAUSE_SPECS)
    tiles = {"Blank": blank_manifest(size)}
    for spec in specs:
        g = load_tile(spec.name, size)
        if not g.supports(rules):
            raise ValueError(f"{spec.name} is not verified for range {rules.label()}")
        tiles[spec.name] = g
    return Roster(size, rules, tiles, prefix)


def build_tile(spec: TileSpec, size: int, options=None, use_target: bool = True) -> GadgetManifest:
    """Synthesize one tile, aiming at its target tariff first."""
    from .synth import KING_CORE, QUEEN_CORE, SynthesisError, synthesize_clause, synthesize_two_state
    targets = [spec.target, None] if use_target and spec.target is not None else [None]
    last = None
    for target in targets:
        try:
            if spec.kind is Kind.TWO_STATE:
                ports = [PortSpec(e, port_offset(g, size), g) for e, g in spec.ports]
                return synthesize_two_state(spec.name, size, ports, list(spec.straight), target, options)
            core = KING_CORE if spec.core == "king" else QUEEN_CORE
            return synthesize_clause(spec.name, size, tuple(e for e, _ in spec.ports), core, target, options)
        except SynthesisError as e:
            last = e
    raise last


def write_roster(size: int, options=None, use_target: bool = True) -> list:
    out_dir = roster_dir(size)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for spec in ALL_SPECS:
        g = build_tile(spec, size, options, use_target)
        path = out_dir / f"{spec.name}.gadget"
        path.write_text(save_manifest(g))
        written.append(path)
    return written
