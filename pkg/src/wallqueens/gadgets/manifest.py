"""Gadget manifests: tile bodies, edge ports, declared maximal states, and text I/O.

Port geometry uses a tile-local frame per edge: depth ``d`` counts cells
inward from the edge (``d = -1`` is the cell just across the seam) and the
offset ``t`` runs clockwise around the tile.  With that convention a port at
offset ``t`` on one tile faces offset ``S-1-t`` on its neighbour, and
rotating a tile by a quarter turn keeps every offset unchanged.

A male port is a five-cell bump whose middle pair sticks one cell out of the
body (the protuberance); a female port is a five-cell bump with a two-cell
opening on the border.  Across a seam the pair interlocks so that the male
protuberance cell ``P1`` and the female opening cell ``W1`` are occupied
together or empty together: they are the ports' signal cells.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

from ..core import BoardError, BoardGrid, Coord, PieceRules, emit_board, parse_board

EDGES = ("N", "E", "S", "W")
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}
EDGE_STEP = {"N": (0, -1), "E": (1, 0), "S": (0, 1), "W": (-1, 0)}


class ManifestError(ValueError):
    """Malformed manifest text or an inconsistent manifest."""


class Kind(enum.Enum):
    TWO_STATE = "TwoState"
    CLAUSE = "Clause"
    BLANK = "Blank"


class Gender(enum.Enum):
    MALE = "M"
    FEMALE = "F"


def frame_xy(edge: str, d: int, t: int, size: int) -> Coord:
    """Body coordinates of depth ``d``, clockwise offset ``t`` on ``edge``."""
    s1 = size - 1
    if edge == "N":
        return (t, d)
    if edge == "E":
        return (s1 - d, t)
    if edge == "S":
        return (s1 - t, s1 - d)
    if edge == "W":
        return (d, s1 - t)
    raise ManifestError(f"bad edge {edge!r}")


def male_offset(size: int) -> int:
    return size // 2


def female_offset(size: int) -> int:
    return size - 1 - size // 2


def port_offset(gender: Gender, size: int) -> int:
    return male_offset(size) if gender is Gender.MALE else female_offset(size)


# (depth, offset delta) of bump cells in cycle order, entry end first
MALE_BUMP = (("stub", 1, 0), ("A", 0, 0), ("P1", -1, 1), ("P2", -1, 2), ("Q", 0, 3))
FEMALE_BUMP = (("stub", 2, 0), ("B", 1, 0), ("W1", 0, 1), ("W2", 0, 2), ("R", 1, 3))


@dataclass(frozen=True)
class PortSpec:
    edge: str
    offset: int
    gender: Gender
    roles: tuple = ("-", "-")  # truth role of the signal cell in state 0 and state 1

    def __post_init__(self):
        if self.edge not in EDGES:
            raise ManifestError(f"bad edge {self.edge!r}")
        if len(self.roles) != 2 or any(r not in ("T", "F", "-") for r in self.roles):
            raise ManifestError(f"bad roles {self.roles!r}")

    def cells(self, size: int) -> dict:
        """Named bump cells in body coordinates (protuberances lie outside the body)."""
        bump = MALE_BUMP if self.gender is Gender.MALE else FEMALE_BUMP
        return {name: frame_xy(self.edge, d, self.offset + dt, size) for name, d, dt in bump}

    def cycle_cells(self, size: int) -> list:
        bump = MALE_BUMP if self.gender is Gender.MALE else FEMALE_BUMP
        return [frame_xy(self.edge, d, self.offset + dt, size) for _, d, dt in bump]

    def signal(self, size: int) -> Coord:
        return self.cells(size)["P1" if self.gender is Gender.MALE else "W1"]

    def protuberance(self, size: int) -> list:
        if self.gender is Gender.FEMALE:
            return []
        c = self.cells(size)
        return [c["P1"], c["P2"]]

    def corridor(self, size: int) -> list:
        """Border cells of the body that the port leaves white."""
        c = self.cells(size)
        return [c["A"], c["Q"]] if self.gender is Gender.MALE else [c["W1"], c["W2"]]

    def landing(self, size: int) -> list:
        """Border cells that a mated male partner's protuberance occupies (female only)."""
        if self.gender is Gender.MALE:
            return []
        return [frame_xy(self.edge, 0, self.offset - 1, size), frame_xy(self.edge, 0, self.offset - 2, size)]

    def rotated(self, quarter_turns: int) -> "PortSpec":
        i = EDGES.index(self.edge)
        return replace(self, edge=EDGES[(i + quarter_turns) % 4])


def rotate_coord(c: Coord, size: int, quarter_turns: int) -> Coord:
    """Clockwise rotation of a coordinate in a ``size`` square (works for frame cells too)."""
    x, y = c
    for _ in range(quarter_turns % 4):
        x, y = size - 1 - y, x
    return (x, y)


@dataclass(frozen=True)
class GadgetManifest:
    name: str
    kind: Kind
    body: BoardGrid
    ports: tuple = ()
    tariff: int = 0
    states: tuple = ()  # placements on the framed board, coordinates shifted by +1
    labels: tuple = ()  # one label per state
    ranges: tuple = ("inf",)  # piece ranges the gadget is verified for
    notes: str = ""

    @property
    def size(self) -> int:
        return self.body.width

    def __post_init__(self):
        if self.body.width != self.body.height:
            raise ManifestError("gadget body must be square")
        if self.labels and len(self.labels) != len(self.states):
            raise ManifestError("one label per state required")
        for st in self.states:
            if len(st) != self.tariff:
                raise ManifestError(f"state of size {len(st)} does not match tariff {self.tariff}")
        if self.kind is Kind.BLANK and (self.tariff or self.body.white or self.ports):
            raise ManifestError("a Blank gadget has no white cells, ports or tariff")

    def port_on(self, edge: str) -> Optional[PortSpec]:
        for p in self.ports:
            if p.edge == edge:
                return p
        return None

    def framed(self) -> BoardGrid:
        """Body inside a one-cell black frame, with male protuberances whitened."""
        s = self.size
        white = [(x + 1, y + 1) for x, y in self.body.white]
        for p in self.ports:
            white += [(x + 1, y + 1) for x, y in p.protuberance(s)]
        return BoardGrid.from_white(s + 2, s + 2, white)

    def framed_coord(self, c: Coord) -> Coord:
        return (c[0] + 1, c[1] + 1)

    def supports(self, rules: PieceRules) -> bool:
        return rules.label() in self.ranges

    def rotated(self, quarter_turns: int) -> "GadgetManifest":
        q = quarter_turns % 4
        if q == 0:
            return self
        s = self.size
        body = BoardGrid.from_white(s, s, (rotate_coord(c, s, q) for c in self.body.white))
        states = tuple(frozenset(rotate_coord(c, s + 2, q) for c in st) for st in self.states)
        return replace(self, body=body, ports=tuple(p.rotated(q) for p in self.ports), states=states)


@dataclass(frozen=True)
class ContractSpec:
    """What a gadget must do; ``claimed_max`` of ``None`` leaves the tariff free."""

    kind: Kind
    claimed_max: Optional[int] = None
    claimed_state_count: int = 2
    clause_table: dict = field(default_factory=dict)

    @staticmethod
    def clause_truth_table(k: int) -> dict:
        """Pattern -> whether the full tariff is achievable: all but all-F."""
        out = {}
        for bits in range(2 ** k):
            pat = "".join("T" if (bits >> (k - 1 - i)) & 1 else "F" for i in range(k))
            out[pat] = "T" in pat
        return out


# ---------------------------------------------------------------------------
# text format


def save_manifest(g: GadgetManifest) -> str:
    lines = [
        f"name: {g.name}",
        f"kind: {g.kind.value}",
        f"size: {g.size}",
        f"tariff: {g.tariff}",
        f"ranges: {' '.join(g.ranges)}",
    ]
    if g.notes:
        lines.append(f"notes: {g.notes}")
    for p in g.ports:
        lines.append(f"port {p.edge} {p.offset} {p.gender.value} {p.roles[0]}/{p.roles[1]}")
    lines.append("body:")
    lines.append(emit_board(g.body).rstrip("\n"))
    framed = g.framed()
    for label, st in zip(g.labels or [str(i) for i in range(len(g.states))], g.states):
        lines.append(f"state {label}:")
        lines.append(emit_board(framed, st).rstrip("\n"))
    return "\n".join(lines) + "\n"


def load_manifest(text: str) -> GadgetManifest:
    lines = text.rstrip("\n").split("\n")
    header: dict = {}
    ports = []
    i = 0
    while i < len(lines) and lines[i] != "body:":
        ln = lines[i]
        if ln.startswith("port "):
            parts = ln.split()
            if len(parts) != 5 or "/" not in parts[4]:
                raise ManifestError(f"bad port line {ln!r}")
            try:
                gender = Gender(parts[3])
                offset = int(parts[2])
            except ValueError:
                raise ManifestError(f"bad port line {ln!r}") from None
            ports.append(PortSpec(parts[1], offset, gender, tuple(parts[4].split("/"))))
        elif ": " in ln or ln.endswith(":"):
            key, _, val = ln.partition(":")
            header[key.strip()] = val.strip()
        else:
            raise ManifestError(f"unexpected line {ln!r}")
        i += 1
    for key in ("name", "kind", "size", "tariff"):
        if key not in header:
            raise ManifestError(f"missing header field {key!r}")
    try:
        size = int(header["size"])
        tariff = int(header["tariff"])
        kind = Kind(header["kind"])
    except ValueError as e:
        raise ManifestError(f"bad header: {e}") from None
    if i >= len(lines):
        raise ManifestError("missing body")
    i += 1
    try:
        body = parse_board("\n".join(lines[i:i + size])).board
    except BoardError as e:
        raise ManifestError(f"bad body: {e}") from None
    if body.width != size or body.height != size:
        raise ManifestError("body does not match declared size")
    i += size
    states, labels, grids = [], [], []
    while i < len(lines):
        ln = lines[i]
        if not (ln.startswith("state ") and ln.endswith(":")):
            raise ManifestError(f"expected a state header, got {ln!r}")
        labels.append(ln[len("state "):-1])
        grid = lines[i + 1:i + 1 + size + 2]
        try:
            parsed = parse_board("\n".join(grid))
        except BoardError as e:
            raise ManifestError(f"bad state grid: {e}") from None
        states.append(parsed.placement or frozenset())
        grids.append(parsed.board)
        i += 1 + size + 2
    g = GadgetManifest(
        name=header["name"], kind=kind, body=body, ports=tuple(ports), tariff=tariff,
        states=tuple(states), labels=tuple(labels),
        ranges=tuple(header.get("ranges", "inf").split()), notes=header.get("notes", ""),
    )
    # the state grids must show exactly the framed board
    framed = g.framed()
    for lbl, board in zip(labels, grids):
        if board != framed:
            raise ManifestError(f"state {lbl} grid does not match the framed body")
    return g


def blank_manifest(size: int) -> GadgetManifest:
    return GadgetManifest("Blank", Kind.BLANK, BoardGrid.blank(size, size), ranges=("inf", "2", "1"))
