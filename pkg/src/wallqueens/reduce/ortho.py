"""Orthogonal grid drawing of a planar graph of maximum degree 3.

The drawer builds a visibility representation: each vertex is a horizontal
bar at the height of its st-number, each edge a vertical bar at the column
given by the longest path to its left face in the dual graph.  Every bar is
then shrunk to a point and edges gain at most two bends by running along the
bar's row.  Components are laid out side by side.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .embed import PlanarEmbedding


class LayoutError(RuntimeError):
    """The drawing violated one of its own invariants (a bug, not bad input)."""


@dataclass
class OrthoLayout:
    points: dict  # vertex -> (x, y)
    paths: dict  # (u, v) with u < v -> list of grid points from u to v, unit steps
    width: int
    height: int

    def bends(self, edge) -> list:
        path = self.paths[edge]
        out = []
        for a, b, c in zip(path, path[1:], path[2:]):
            if (b[0] - a[0], b[1] - a[1]) != (c[0] - b[0], c[1] - b[1]):
                out.append(b)
        return out


def _edge_key(u, v) -> tuple:
    return (u, v) if u <= v else (v, u)


# ---------------------------------------------------------------------------
# st-numbering


def st_numbering(g: nx.Graph, s, t) -> dict:
    """st-numbering of a biconnected graph with edge (s, t), by the sign-list method.

    A depth-first search from ``s`` whose first edge is ``(s, t)`` yields
    preorder numbers and low points; vertices are then inserted before or
    after their parent in a list that starts as ``[s, t]``.
    """
    if not g.has_edge(s, t):
        raise ValueError("s and t must be adjacent")
    pre = {s: 0, t: 1}
    parent = {s: None, t: s}
    order = [s, t]
    # iterative DFS starting with the tree edge s-t
    stack = [(t, iter(sorted(g.neighbors(t))))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in pre:
                pre[w] = len(order)
                parent[w] = v
                order.append(w)
                stack.append((w, iter(sorted(g.neighbors(w)))))
                advanced = True
                break
        if not advanced:
            stack.pop()
    if len(order) != g.number_of_nodes():
        raise ValueError("graph is not connected")
    low = {v: v for v in order}
    for v in reversed(order):
        best = v
        for w in g.neighbors(v):
            if parent.get(w) == v:
                cand = low[w]
            elif w != parent[v]:
                cand = w
            else:
                continue
            if pre[cand] < pre[best]:
                best = cand
        low[v] = best
    # doubly linked list
    nxt = {s: t, t: None}
    prv = {s: None, t: s}
    sign = {s: -1}
    for v in order[2:]:
        p = parent[v]
        if sign[low[v]] == -1:
            # insert before p
            a = prv[p]
            prv[v], nxt[v] = a, p
            prv[p] = v
            if a is not None:
                nxt[a] = v
            sign[p] = 1
        else:
            b = nxt[p]
            prv[v], nxt[v] = p, b
            nxt[p] = v
            if b is not None:
                prv[b] = v
            sign[p] = -1
    num = {}
    cur = s
    while prv.get(cur) is not None:
        cur = prv[cur]
    i = 1
    while cur is not None:
        num[cur] = i
        i += 1
        cur = nxt[cur]
    _check_st(g, num, s, t)
    return num


def _check_st(g: nx.Graph, num: dict, s, t) -> None:
    n = g.number_of_nodes()
    if num[s] != 1 or num[t] != n or sorted(num.values()) != list(range(1, n + 1)):
        raise LayoutError("bad st-numbering endpoints")
    for v in g.nodes:
        if v in (s, t):
            continue
        ns = [num[w] for w in g.neighbors(v)]
        if not (min(ns) < num[v] < max(ns)):
            raise LayoutError(f"vertex {v} lacks a lower or higher neighbour")


# ---------------------------------------------------------------------------
# biconnected augmentation


def biconnect(g: nx.Graph) -> tuple:
    """Add edges until the connected planar graph is biconnected; returns (graph, embedding, added).

    Around a cut vertex, two rotation-consecutive neighbours reached through
    different blocks share a face, so joining them keeps the graph planar
    and merges the two blocks.
    """
    h = nx.Graph(g)
    added = []
    while h.number_of_nodes() > 2 and not nx.is_biconnected(h):
        ok, emb = nx.check_planarity(h)
        if not ok:
            raise LayoutError("augmentation lost planarity")
        block = {}
        blocks = sorted(sorted(tuple(sorted(e)) for e in c) for c in nx.biconnected_component_edges(h))
        for i, edges in enumerate(blocks):
            for e in edges:
                block[e] = i
        done = False
        for c in sorted(nx.articulation_points(h)):
            nbrs = list(emb.neighbors_cw_order(c))
            for i in range(len(nbrs)):
                u, w = nbrs[i], nbrs[(i + 1) % len(nbrs)]
                if block[_edge_key(c, u)] != block[_edge_key(c, w)] and not h.has_edge(u, w):
                    h.add_edge(u, w)
                    added.append(_edge_key(u, w))
                    done = True
                    break
            if done:
                break
        if not done:
            raise LayoutError("could not biconnect the graph")
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise LayoutError("augmentation lost planarity")
    return h, emb, added


# ---------------------------------------------------------------------------
# visibility drawing


def _component_layout(g: nx.Graph) -> tuple:
    """Points and paths for one connected component, origin at (0, 0)."""
    nodes = sorted(g.nodes)
    if len(nodes) == 1:
        return {nodes[0]: (0, 0)}, {}, 1, 1
    if len(nodes) == 2:
        u, v = nodes
        return {u: (0, 0), v: (0, 1)}, {_edge_key(u, v): [(0, 0), (0, 1)]}, 1, 2
    h, emb, _ = biconnect(g)
    s, t = min(tuple(sorted(e)) for e in h.edges)
    num = st_numbering(h, s, t)
    # faces: the face right of half-edge (a, b) is traverse_face(a, b)
    face_id = {}
    faces = []
    for a, b in sorted(emb.edges()):
        if (a, b) in face_id:
            continue
        marked = set()
        emb.traverse_face(a, b, mark_half_edges=marked)
        fid = len(faces)
        faces.append(marked)
        for he in marked:
            face_id[he] = fid
    outer = face_id[(s, t)]
    S_STAR, T_STAR = "s*", "t*"
    dual = nx.DiGraph()
    dual.add_nodes_from([S_STAR, T_STAR] + list(range(len(faces))))
    col_face = {}
    for a, b in h.edges:
        lo, hi = (a, b) if num[a] < num[b] else (b, a)
        right = face_id[(lo, hi)]
        left = face_id[(hi, lo)]
        if {lo, hi} == {s, t}:
            right = T_STAR if right == outer else right
            left = S_STAR if left == outer else left
        else:
            right = S_STAR if right == outer else right
            left = S_STAR if left == outer else left
        if left == right:
            raise LayoutError("edge with the same face on both sides")
        dual.add_edge(left, right)
        col_face[_edge_key(a, b)] = left
    if not nx.is_directed_acyclic_graph(dual):
        raise LayoutError("dual graph has a cycle")
    dist = {S_STAR: 0}
    for f in nx.topological_sort(dual):
        if f not in dist:
            dist[f] = 0
        for w in dual.successors(f):
            dist[w] = max(dist.get(w, 0), dist[f] + 1)
    col = {e: dist[f] for e, f in col_face.items()}
    # collapse vertex bars to points; only real edges matter now
    y = {v: num[v] - 1 for v in h.nodes}
    points = {}
    for v in g.nodes:
        es = [_edge_key(v, w) for w in g.neighbors(v)]
        cols = sorted(col[e] for e in es)
        ins = {col[_edge_key(v, w)] for w in g.neighbors(v) if num[w] < num[v]}
        outs = {col[_edge_key(v, w)] for w in g.neighbors(v) if num[w] > num[v]}
        shared = sorted(ins & outs)
        x = shared[0] if shared else cols[(len(cols) - 1) // 2]
        points[v] = (x, y[v])
    paths = {}
    for a, b in g.edges:
        lo, hi = (a, b) if num[a] < num[b] else (b, a)
        c = col[_edge_key(a, b)]
        pts = _line(points[lo], (c, y[lo])) + _line((c, y[lo]), (c, y[hi]))[1:] + _line((c, y[hi]), points[hi])[1:]
        key = _edge_key(a, b)
        paths[key] = pts if key[0] == lo else pts[::-1]
    width = max(max(x for x, _ in points.values()), max(col.values())) + 1
    return points, paths, width, h.number_of_nodes()


def _line(a: tuple, b: tuple) -> list:
    (x0, y0), (x1, y1) = a, b
    if x0 != x1 and y0 != y1:
        raise LayoutError("diagonal segment")
    n = max(abs(x1 - x0), abs(y1 - y0))
    dx = (x1 > x0) - (x1 < x0)
    dy = (y1 > y0) - (y1 < y0)
    return [(x0 + i * dx, y0 + i * dy) for i in range(n + 1)]


def ortho_layout(e: PlanarEmbedding) -> OrthoLayout:
    """Deterministic orthogonal drawing; components placed left to right."""
    g = e.graph
    if any(g.degree(v) > 3 for v in g.nodes):
        raise ValueError("orthogonal layout needs maximum degree 3")
    points, paths = {}, {}
    x0 = 0
    height = 0
    comps = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
    for comp in comps:
        sub = g.subgraph(comp).copy()
        p, pa, w, h = _component_layout(sub)
        for v, (x, y) in p.items():
            points[v] = (x + x0, y)
        for k, pts in pa.items():
            paths[k] = [(x + x0, y) for x, y in pts]
        x0 += w + 1
        height = max(height, h)
    out = OrthoLayout(points, paths, max(x0 - 1, 0), height)
    validate_layout(out, g)
    return out


def validate_layout(l: OrthoLayout, g: nx.Graph) -> None:
    """Paths are unit-step, end at their vertices, and share no grid point except endpoints."""
    owner = {}
    for v, p in l.points.items():
        if p in owner:
            raise LayoutError(f"vertices {owner[p]} and {v} share point {p}")
        owner[p] = ("vertex", v)
    for (u, v) in sorted(l.paths):
        pts = l.paths[(u, v)]
        if pts[0] != l.points[u] or pts[-1] != l.points[v]:
            raise LayoutError(f"path {u}-{v} does not join its endpoints")
        for a, b in zip(pts, pts[1:]):
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                raise LayoutError(f"path {u}-{v} is not unit-step at {a}->{b}")
        for p in pts[1:-1]:
            if p in owner:
                raise LayoutError(f"path {u}-{v} passes through {p}, already used by {owner[p]}")
            owner[p] = ("edge", (u, v))
    if set(l.paths) != {_edge_key(u, v) for u, v in g.edges}:
        raise LayoutError("layout edges differ from graph edges")
    # each vertex uses distinct directions for its edges
    for v, p in l.points.items():
        dirs = []
        for k, pts in l.paths.items():
            if v in k:
                q = pts[1] if pts[0] == p else pts[-2]
                dirs.append((q[0] - p[0], q[1] - p[1]))
        if len(set(dirs)) != len(dirs):
            raise LayoutError(f"two edges leave {v} in the same direction")


def double_coords(l: OrthoLayout) -> OrthoLayout:
    """Scale by two; each unit step gains its midpoint."""
    points = {v: (2 * x, 2 * y) for v, (x, y) in l.points.items()}
    paths = {}
    for k, pts in l.paths.items():
        out = [(2 * pts[0][0], 2 * pts[0][1])]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            out.append((x0 + x1, y0 + y1))
            out.append((2 * x1, 2 * y1))
        paths[k] = out
    return OrthoLayout(points, paths, 2 * l.width, 2 * l.height)
