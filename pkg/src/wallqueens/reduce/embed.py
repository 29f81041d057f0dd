"""Planar embedding of the incidence graph and splitting of high-degree variables."""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .formula import IncidenceGraph


class NonPlanar(ValueError):
    """The incidence graph has no planar embedding."""


def _canonical(g: nx.Graph) -> nx.Graph:
    """Copy with nodes and edges inserted in sorted order, so embeddings are reproducible."""
    h = nx.Graph()
    h.add_nodes_from(sorted(g.nodes))
    for u, v in sorted(tuple(sorted(e)) for e in g.edges):
        h.add_edge(u, v, **g.edges[u, v])
    return h


@dataclass
class PlanarEmbedding:
    graph: nx.Graph  # with edge attributes (polarity, kind)
    embedding: nx.PlanarEmbedding
    outer_face: tuple

    @property
    def rotation(self) -> dict:
        """Clockwise neighbour order around each vertex."""
        return {v: tuple(self.embedding.neighbors_cw_order(v)) for v in self.embedding.nodes}

    def faces(self) -> list:
        seen = set()
        out = []
        for u, v in sorted(self.embedding.edges()):
            if (u, v) in seen:
                continue
            face = self.embedding.traverse_face(u, v, mark_half_edges=seen)
            out.append(tuple(face))
        return out

    def euler_ok(self) -> bool:
        g = self.graph
        comps = nx.number_connected_components(g) if g.number_of_nodes() else 0
        nf = len(self.faces())
        # every component contributes its own outer face; merge them into one
        isolated = sum(1 for v in g.nodes if g.degree(v) == 0)
        faces = nf + isolated - max(comps - 1, 0)
        return g.number_of_nodes() - g.number_of_edges() + faces == 1 + comps


def embed_graph(g: nx.Graph) -> PlanarEmbedding:
    g = _canonical(g)
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise NonPlanar("incidence graph is not planar")
    outer = ()
    if g.number_of_edges():
        u, v = min(tuple(sorted(e)) for e in g.edges)
        outer = tuple(emb.traverse_face(u, v))
    return PlanarEmbedding(g, emb, outer)


def planar_embed(ig: IncidenceGraph) -> PlanarEmbedding:
    return embed_graph(ig.to_networkx())


def split_high_degree(e: PlanarEmbedding) -> PlanarEmbedding:
    """Replace each variable of degree d > 3 by a chain of d - 2 subvariables.

    The occurrences are handed out in rotation order (two to each end of the
    chain, one to each inner link), so the split graph stays planar.
    """
    g = nx.Graph()
    rot = e.rotation
    for v in sorted(e.graph.nodes):
        d = e.graph.degree(v)
        if v[0] != "v" or d <= 3:
            g.add_node(v)
    for u, v in e.graph.edges:
        if e.graph.degree(u) <= 3 and e.graph.degree(v) <= 3:
            g.add_edge(u, v, **e.graph.edges[u, v])
    for v in sorted(e.graph.nodes):
        d = e.graph.degree(v)
        if v[0] != "v" or d <= 3:
            continue
        nbrs = list(rot[v])
        start = nbrs.index(min(nbrs))
        nbrs = nbrs[start:] + nbrs[:start]
        k = d - 2
        subs = [(v[0], v[1], i) for i in range(k)]
        share = [nbrs[0:2]] + [[n] for n in nbrs[2:d - 2]] + [nbrs[d - 2:d]]
        for sv, group in zip(subs, share):
            g.add_node(sv)
            for n in group:
                g.add_edge(sv, n, **e.graph.edges[v, n])
        for a, b in zip(subs, subs[1:]):
            g.add_edge(a, b, kind="link", polarity=1)
    out = embed_graph(g)
    if any(out.graph.degree(v) > 3 for v in out.graph.nodes):
        raise AssertionError("split left a vertex of degree above 3")
    n = e.graph.number_of_nodes()
    if n >= 2 and out.graph.number_of_nodes() > n * n:
        raise AssertionError("split grew the vertex count beyond n^2")
    return out
