"""Tile plans: which gadget, at which rotation, sits on each point of the doubled grid.

Vertices become Variable or Clause tiles, bends become Turn tiles and the
straight points between them become joins.  Variable, Clause and Turn tiles
carry only female ports, so every run of joins between two of them starts
with a male-male tile and continues with female-male tiles whose female side
faces back toward the run's start.  A negative occurrence replaces the first
male-male tile next to the variable by the switching one.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from ..gadgets.manifest import EDGES, OPPOSITE
from .ortho import OrthoLayout


class PlanError(RuntimeError):
    """The planner met a layout it cannot tile (a bug upstream, not bad input)."""


@dataclass(frozen=True)
class Slot:
    name: str
    rotation: int = 0
    provenance: str = "-"


BLANK = Slot("Blank")


@dataclass
class TilePlan:
    width: int
    height: int
    slots: dict = field(default_factory=dict)  # (x, y) -> Slot; missing means Blank

    def at(self, x: int, y: int) -> Slot:
        return self.slots.get((x, y), BLANK)

    def items(self):
        for y in range(self.height):
            for x in range(self.width):
                yield (x, y), self.at(x, y)

    def counts(self) -> dict:
        out: dict = {}
        for _, s in self.items():
            out[s.name] = out.get(s.name, 0) + 1
        return out


def tariff(plan: TilePlan, roster) -> int:
    """Sum of the slot tariffs."""
    return sum(roster.tariff(s.name) for _, s in plan.items())


def tariff_from_counts(counts: dict) -> int:
    """Tariff of a plan given only ``{name: (count, tile tariff)}``."""
    return sum(n * t for n, t in counts.values())


def _direction(a: tuple, b: tuple) -> str:
    dx, dy = b[0] - a[0], b[1] - a[1]
    return {(1, 0): "E", (-1, 0): "W", (0, 1): "S", (0, -1): "N"}[(dx, dy)]


def _rotate_edge(e: str, q: int) -> str:
    return EDGES[(EDGES.index(e) + q) % 4]


def rotation_covering(manifest, edges: set, exact: bool = False) -> int:
    """Smallest quarter turn that puts ports on all of ``edges`` (on exactly them if ``exact``)."""
    base = [p.edge for p in manifest.ports]
    for q in range(4):
        got = {_rotate_edge(e, q) for e in base}
        if (got == edges) if exact else edges <= got:
            return q
    raise PlanError(f"{manifest.name} cannot cover edges {sorted(edges)}")


def rotation_with(manifest, port_index: int, edge: str) -> int:
    """Quarter turn that moves port ``port_index`` onto ``edge``."""
    base = manifest.ports[port_index].edge
    return (EDGES.index(edge) - EDGES.index(base)) % 4


def _label(v) -> str:
    if v[0] == "c":
        return f"clause:{v[1] + 1}"
    return f"var:{v[1]}" if v[2] == 0 else f"var:{v[1]}.{v[2]}"


def plan_tiles(layout: OrthoLayout, graph: nx.Graph, roster) -> TilePlan:
    """Tile a doubled layout of the (split) incidence graph.

    ``graph`` supplies the edge attributes ``kind`` ("occurrence" or "link")
    and ``polarity`` (+1 or -1).
    """
    if not layout.points:
        return TilePlan(1, 1, {})
    xs = [x for x, _ in layout.points.values()] + [x for p in layout.paths.values() for x, _ in p]
    ys = [y for _, y in layout.points.values()] + [y for p in layout.paths.values() for _, y in p]
    plan = TilePlan(max(xs) + 1, max(ys) + 1, {})

    def put(pt, slot):
        if pt in plan.slots:
            raise PlanError(f"two tiles claim grid point {pt}")
        plan.slots[pt] = slot

    # vertices
    for v in sorted(layout.points):
        p = layout.points[v]
        used = set()
        for key, pts in layout.paths.items():
            if v in key:
                q = pts[1] if pts[0] == p else pts[-2]
                used.add(_direction(p, q))
        if v[0] == "c":
            name, rot = roster.clause_name(frozenset(used))
        else:
            name, rot = "Variable", rotation_covering(roster["Variable"], used)
        put(p, Slot(name, rot, _label(v)))

    # paths
    for key in sorted(layout.paths):
        u, w = key
        pts = layout.paths[key]
        data = graph.edges[u, w]
        kind = data.get("kind", "occurrence")
        if kind == "occurrence":
            source = u if u[0] == "v" else w
            pol = data.get("polarity", 1)
        else:
            source, pol = u, 1
        if pts[0] != layout.points[source]:
            pts = pts[::-1]
        target = w if source == u else u
        prov = f"{'occ' if kind == 'occurrence' else 'link'}:{_label(source)}-{_label(target)}"
        run_index = 0
        run_len = 0
        for i in range(1, len(pts) - 1):
            back = _direction(pts[i], pts[i - 1])
            ahead = _direction(pts[i], pts[i + 1])
            if back != OPPOSITE[ahead]:
                if run_len == 0:
                    raise PlanError(f"no join tile before the bend at {pts[i]} on {prov}")
                put(pts[i], Slot("Turn", rotation_covering(roster["Turn"], {back, ahead}, exact=True), prov))
                run_index += 1
                run_len = 0
                continue
            if run_len == 0:
                name = "JoinSwitchMM" if (run_index == 0 and pol < 0) else "JoinMM"
                rot = rotation_with(roster[name], 0, back)
            else:
                name = "JoinFM"
                rot = rotation_with(roster[name], 0, back)
            put(pts[i], Slot(name, rot, prov))
            run_len += 1
        if run_len == 0:
            raise PlanError(f"no join tile before the end of {prov}")
    problems = check_plan(plan, roster)
    if problems:
        raise PlanError("; ".join(problems))
    return plan


def slot_ports(slot: Slot, roster) -> dict:
    """Edge -> rotated PortSpec for a non-blank slot."""
    g = roster[slot.name].rotated(slot.rotation)
    return {p.edge: p for p in g.ports}


def check_plan(plan: TilePlan, roster) -> list:
    """Seam and placement invariants; returns a list of problems."""
    problems = []
    step = {"N": (0, -1), "E": (1, 0), "S": (0, 1), "W": (-1, 0)}
    for (x, y), s in plan.items():
        if s.name == "Blank":
            continue
        ports = slot_ports(s, roster)
        for e in EDGES:
            dx, dy = step[e]
            nb = plan.at(x + dx, y + dy) if 0 <= x + dx < plan.width and 0 <= y + dy < plan.height else BLANK
            p = ports.get(e)
            if p is None:
                if nb.name != "Blank":
                    problems.append(f"slot {(x, y)} {s.name}: unused side {e} faces {nb.name}, not Blank")
                continue
            if nb.name == "Blank":
                if s.name == "Variable":
                    continue  # a spare variable port is simply closed off
                problems.append(f"slot {(x, y)} {s.name}: port on {e} faces a Blank tile")
                continue
            q = slot_ports(nb, roster).get(OPPOSITE[e])
            if q is None:
                problems.append(f"slot {(x, y)} {s.name}: port on {e} faces a closed side")
            elif q.gender == p.gender:
                problems.append(f"slot {(x, y)} {s.name}: {p.gender.value}-{q.gender.value} seam on {e}")
        if s.name == "JoinSwitchMM":
            if not any(
                plan.at(x + dx, y + dy).name == "Variable"
                for dx, dy in step.values()
                if 0 <= x + dx < plan.width and 0 <= y + dy < plan.height
            ):
                problems.append(f"slot {(x, y)}: JoinSwitchMM not adjacent to a Variable tile")
    return problems

