"""Planarity testing, combinatorial embeddings, and face lists.

Thin, deterministic wrapper over networkx's left-right planarity test; faces
are extracted by the standard half-edge walk so triangle/face membership
queries are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx

Adjacency = Mapping[int, set[int]]


def to_nx(adj: Adjacency) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(sorted(adj))
    for u in sorted(adj):
        for v in sorted(adj[u]):
            if u < v:
                g.add_edge(u, v)
    return g


@dataclass(frozen=True)
class PlanarEmbedding:
    """Per-vertex clockwise edge order plus the derived face walks."""

    rotation: Mapping[int, tuple[int, ...]]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        succ = {
            u: {v: nbrs[(i + 1) % len(nbrs)] for i, v in enumerate(nbrs)}
            for u, nbrs in self.rotation.items()
            if nbrs
        }
        seen: set[tuple[int, int]] = set()
        out: list[tuple[int, ...]] = []
        for u in sorted(succ):
            for v in self.rotation[u]:
                if (u, v) in seen:
                    continue
                walk: list[int] = []
                cu, cv = u, v
                while (cu, cv) not in seen:
                    seen.add((cu, cv))
                    walk.append(cu)
                    cu, cv = cv, succ[cv][cu]
                out.append(tuple(walk))
        return tuple(out)

    @cached_property
    def face_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(f) for f in self.faces)

    def is_triangle_face(self, triangle: Iterable[int]) -> bool:
        tri = frozenset(triangle)
        return any(len(f) == 3 and frozenset(f) == tri for f in self.faces)

    def euler_ok(self, n_vertices: int, n_edges: int, n_components: int) -> bool:
        # v - e + f = 1 + c for a plane multigraph drawn with c components.
        return n_vertices - n_edges + len(self.faces) == 1 + n_components


@dataclass(frozen=True)
class NonPlanar:
    """Witness for non-planarity: the edges of a K5/K3,3 subdivision."""

    witness_edges: frozenset[frozenset[int]]


def planar_embed(adj: Adjacency) -> PlanarEmbedding | NonPlanar:
    """Embed a simple undirected graph or return a Kuratowski witness."""
    g = to_nx(adj)
    ok, cert = nx.check_planarity(g, counterexample=True)
    if not ok:
        return NonPlanar(frozenset(frozenset(e) for e in cert.edges()))
    rotation = {
        v: tuple(cert.neighbors_cw_order(v)) if cert.degree(v) else ()
        for v in sorted(g.nodes)
    }
    emb = PlanarEmbedding(rotation)
    n_comp = nx.number_connected_components(g) if g.number_of_nodes() else 0
    # Isolated vertices contribute no face walk; exclude them from Euler.
    isolated = sum(1 for v in g.nodes if g.degree(v) == 0)
    if g.number_of_edges() and not emb.euler_ok(
        g.number_of_nodes() - isolated, g.number_of_edges(), n_comp - isolated
    ):
        raise AssertionError("embedding failed the Euler check")
    return emb


def is_planar(adj: Adjacency) -> bool:
    return isinstance(planar_embed(adj), PlanarEmbedding)
