"""Clique-sum decomposition trees: construction, refinement, validation.

A decomposition is a 2-colored tree of component nodes (edge-disjoint
subnetworks) and clique nodes (shared vertex sets of size 1..3).  Components
never store clique edges removed by a clique-sum; structural operations work
on the component *torso* (its underlying simple graph plus one phantom edge
per pair inside each incident clique), which is how the clique-sum semantics
see the component.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import networkx as nx

from .network import Edge, FlowNetwork, merge_networks
from .planar import Adjacency, NonPlanar, PlanarEmbedding, is_planar, planar_embed, to_nx
from . import spqr as spqr_mod
from .spqr import SpqrTree, spqr


class NotK33MinorFree(Exception):
    pass


class NotK5MinorFree(Exception):
    pass


class InvalidDecomposition(Exception):
    pass


@dataclass(frozen=True)
class Label:
    kind: str  # "planar" | "planar_plus_k" | "btw"
    extra: int = 0


PLANAR = Label("planar")
BTW = Label("btw")


def planar_plus(extra: int) -> Label:
    return Label("planar_plus_k", extra)


@dataclass
class Component:
    id: int
    net: FlowNetwork
    label: Label
    mimic: bool = False  # True once this node holds an installed mimicking network


@dataclass
class Clique:
    id: int
    vertices: frozenset[int]

    def __post_init__(self) -> None:
        if not 1 <= len(self.vertices) <= 3:
            raise InvalidDecomposition(f"clique size {len(self.vertices)} out of range 1..3")


@dataclass
class DecompositionTree:
    components: dict[int, Component] = field(default_factory=dict)
    cliques: dict[int, Clique] = field(default_factory=dict)
    comp_cliques: dict[int, set[int]] = field(default_factory=dict)
    clique_comps: dict[int, set[int]] = field(default_factory=dict)

    def next_component_id(self) -> int:
        return max(self.components, default=-1) + 1

    def next_clique_id(self) -> int:
        return max(self.cliques, default=-1) + 1

    def add_component(self, net: FlowNetwork, label: Label, mimic: bool = False) -> int:
        cid = self.next_component_id()
        self.components[cid] = Component(cid, net, label, mimic)
        self.comp_cliques[cid] = set()
        return cid

    def add_clique(self, vertices: Iterable[int]) -> int:
        kid = self.next_clique_id()
        self.cliques[kid] = Clique(kid, frozenset(vertices))
        self.clique_comps[kid] = set()
        return kid

    def attach(self, comp_id: int, clique_id: int) -> None:
        self.comp_cliques[comp_id].add(clique_id)
        self.clique_comps[clique_id].add(comp_id)

    def detach(self, comp_id: int, clique_id: int) -> None:
        self.comp_cliques[comp_id].discard(clique_id)
        self.clique_comps[clique_id].discard(comp_id)

    def remove_component(self, comp_id: int) -> None:
        for kid in sorted(self.comp_cliques.pop(comp_id, ())):
            self.clique_comps[kid].discard(comp_id)
        del self.components[comp_id]

    def remove_clique(self, clique_id: int) -> None:
        for cid in sorted(self.clique_comps.pop(clique_id, ())):
            self.comp_cliques[cid].discard(clique_id)
        del self.cliques[clique_id]

    def copy(self) -> "DecompositionTree":
        # Networks are immutable and shared; incidence maps are copied.
        t = DecompositionTree()
        t.components = {cid: replace(c) for cid, c in self.components.items()}
        t.cliques = dict(self.cliques)
        t.comp_cliques = {cid: set(s) for cid, s in self.comp_cliques.items()}
        t.clique_comps = {kid: set(s) for kid, s in self.clique_comps.items()}
        return t

    def reassemble(self) -> FlowNetwork:
        return merge_networks(*(c.net for _, c in sorted(self.components.items())))

    def all_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for c in self.components.values():
            out |= c.net.vertices
        return frozenset(out)


def underlying(net: FlowNetwork) -> Adjacency:
    adj: dict[int, set[int]] = {v: set() for v in net.vertices}
    for e in net.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    return adj


def torso_adjacency(tree: DecompositionTree, comp_id: int) -> Adjacency:
    """Component underlying graph plus phantom clique-completion edges."""
    comp = tree.components[comp_id]
    adj = {v: set(nbrs) for v, nbrs in underlying(comp.net).items()}
    for kid in sorted(tree.comp_cliques[comp_id]):
        verts = sorted(tree.cliques[kid].vertices)
        for u, v in itertools.combinations(verts, 2):
            adj[u].add(v)
            adj[v].add(u)
    return adj


def single_component_tree(net: FlowNetwork, label: Label | None = None) -> DecompositionTree:
    tree = DecompositionTree()
    if label is None:
        label = PLANAR if is_planar(underlying(net)) else BTW
    tree.add_component(net, label)
    return tree


# ---------------------------------------------------------------------------
# Structural splits


def biconnected_split(
    adj: Adjacency,
) -> tuple[list[tuple[frozenset[int], frozenset[frozenset[int]]]], frozenset[int]]:
    """Standard block-cut decomposition of a connected undirected graph.

    Returns edge-disjoint blocks as (vertices, pairs) plus the articulation
    vertices; isolated vertices become single-vertex blocks.
    """
    g = to_nx(adj)
    blocks: list[tuple[frozenset[int], frozenset[frozenset[int]]]] = []
    covered: set[int] = set()
    for comp_edges in nx.biconnected_component_edges(g):
        pairs = frozenset(frozenset(e) for e in comp_edges)
        verts = frozenset(w for p in pairs for w in p)
        blocks.append((verts, pairs))
        covered |= verts
    for v in sorted(set(adj) - covered):
        blocks.append((frozenset((v,)), frozenset()))
    blocks.sort(key=lambda b: sorted(b[0]))
    return blocks, frozenset(nx.articulation_points(g))


def _edges_for_pairs(net: FlowNetwork, pairs: frozenset[frozenset[int]]) -> list[Edge]:
    return [e for e in net.edges if frozenset((e.tail, e.head)) in pairs]


def _piece_label(original: Label, piece_torso: Adjacency) -> Label:
    if is_planar(piece_torso):
        return PLANAR
    return original if original.kind == "btw" else BTW


def _replace_component(
    tree: DecompositionTree,
    comp_id: int,
    pieces: Sequence[tuple[frozenset[int], Sequence[Edge], Label]],
    internal_cliques: Sequence[tuple[frozenset[int], Sequence[int]]],
) -> list[int]:
    """Swap one component for edge-disjoint pieces glued at new cliques.

    ``internal_cliques`` lists (vertex set, piece indexes).  Pre-existing
    incident cliques are merged with a coinciding internal clique when one
    exists, otherwise reattached to the first piece containing them.
    """
    old_cliques = sorted(tree.comp_cliques[comp_id])
    tree.remove_component(comp_id)
    ids: list[int] = []
    for verts, edges, label in pieces:
        net = FlowNetwork(frozenset(verts), tuple(sorted(edges, key=lambda e: e.id)))
        ids.append(tree.add_component(net, label))
    grouped: dict[frozenset[int], set[int]] = {}
    for verts, members in internal_cliques:
        grouped.setdefault(frozenset(verts), set()).update(ids[i] for i in members)
    for kid in old_cliques:
        kverts = tree.cliques[kid].vertices
        if kverts in grouped:
            for cid in sorted(grouped.pop(kverts)):
                tree.attach(cid, kid)
            continue
        homes = [cid for cid in ids if kverts <= tree.components[cid].net.vertices]
        if not homes:
            raise InvalidDecomposition(
                f"no piece contains clique {sorted(kverts)} after splitting"
            )
        tree.attach(homes[0], kid)
    for verts in sorted(grouped, key=sorted):
        kid = tree.add_clique(verts)
        for cid in sorted(grouped[verts]):
            tree.attach(cid, kid)
    return ids


def _block_pass(tree: DecompositionTree) -> bool:
    changed = False
    for cid in sorted(tree.components):
        comp = tree.components[cid]
        torso = torso_adjacency(tree, cid)
        g = to_nx(torso)
        if g.number_of_nodes() == 0:
            continue
        if not nx.is_connected(g):
            raise InvalidDecomposition(f"component {cid} has a disconnected torso")
        blocks, _ = biconnected_split(torso)
        if len(blocks) <= 1:
            continue
        pieces = []
        for verts, pairs in blocks:
            piece_torso = {v: {w for w in torso[v] if frozenset((v, w)) in pairs} for v in verts}
            pieces.append((verts, _edges_for_pairs(comp.net, pairs), _piece_label(comp.label, piece_torso)))
        arts: dict[frozenset[int], list[int]] = {}
        for v in sorted(set.union(*(set(b[0]) for b in blocks))):
            holders = [i for i, (verts, _) in enumerate(blocks) if v in verts]
            if len(holders) > 1:
                arts[frozenset((v,))] = holders
        _replace_component(tree, cid, pieces, sorted(arts.items(), key=lambda kv: sorted(kv[0])))
        changed = True
    return changed


def _spqr_pass(tree: DecompositionTree) -> bool:
    changed = False
    for cid in sorted(tree.components):
        comp = tree.components[cid]
        torso = torso_adjacency(tree, cid)
        n_pairs = sum(len(s) for s in torso.values()) // 2
        if len(torso) <= 2 or n_pairs <= 1:
            continue
        stree = spqr(torso)
        if len(stree.nodes) <= 1:
            continue
        changed = True
        _apply_spqr_split(tree, cid, comp, stree)
    return changed


def _apply_spqr_split(
    tree: DecompositionTree, cid: int, comp: Component, stree: SpqrTree
) -> None:
    node_ids = sorted(stree.nodes)
    non_p = [nid for nid in node_ids if stree.nodes[nid].kind != spqr_mod.P]
    piece_index = {nid: i for i, nid in enumerate(non_p)}
    pair_owner: dict[frozenset[int], int] = {}
    piece_specs: list[tuple[frozenset[int], frozenset[frozenset[int]]]] = []
    for nid in non_p:
        node = stree.nodes[nid]
        pairs = frozenset(node.real_pairs())
        piece_specs.append((frozenset(node.vertices), pairs))
        for p in pairs:
            pair_owner[p] = piece_index[nid]
    cliques: list[tuple[frozenset[int], list[int]]] = []
    for nid in node_ids:
        node = stree.nodes[nid]
        if node.kind != spqr_mod.P:
            continue
        attached = sorted(piece_index[other] for _, other in stree.neighbors(nid))
        pair = frozenset(node.vertices)
        cliques.append((pair, attached))
        for p in node.real_pairs():
            pair_owner[p] = attached[0]
    for link, (a, b) in sorted(stree.tree_edges.items()):
        if stree.nodes[a].kind == spqr_mod.P or stree.nodes[b].kind == spqr_mod.P:
            continue
        virt = next(e for e in stree.nodes[a].edges if e.link == link)
        cliques.append((virt.pair, sorted((piece_index[a], piece_index[b]))))
    pieces = []
    for verts, pairs in piece_specs:
        edges = [
            e
            for e in comp.net.edges
            if pair_owner.get(frozenset((e.tail, e.head))) == len(pieces)
        ]
        skel_adj: dict[int, set[int]] = {v: set() for v in verts}
        for nid in non_p:
            if piece_index[nid] == len(pieces):
                for e in stree.nodes[nid].edges:
                    skel_adj[e.u].add(e.v)
                    skel_adj[e.v].add(e.u)
        pieces.append((verts, edges, _piece_label(comp.label, skel_adj)))
    _replace_component(tree, cid, pieces, cliques)


def _triangle_pass(tree: DecompositionTree) -> bool:
    changed = False
    for cid in sorted(tree.components):
        comp = tree.components[cid]
        if comp.label.kind == "btw":
            continue
        tri_cliques = [
            kid
            for kid in sorted(tree.comp_cliques[cid])
            if len(tree.cliques[kid].vertices) == 3
        ]
        if not tri_cliques:
            continue
        torso = torso_adjacency(tree, cid)
        emb = planar_embed(torso)
        if isinstance(emb, NonPlanar):
            continue
        for kid in tri_cliques:
            tri = tree.cliques[kid].vertices
            if emb.is_triangle_face(tri):
                continue
            _split_at_triangle(tree, cid, comp, torso, kid, tri)
            changed = True
            break  # component replaced; revisit the new pieces next sweep
    return changed


def _split_at_triangle(
    tree: DecompositionTree,
    cid: int,
    comp: Component,
    torso: Adjacency,
    clique_id: int,
    tri: frozenset[int],
) -> None:
    parts = _components_minus(torso, tri)
    if len(parts) < 2:
        raise InvalidDecomposition(
            f"gluing triangle {sorted(tri)} of component {cid} is neither a face nor separating"
        )
    pieces = []
    piece_verts: list[frozenset[int]] = []
    for part in parts:
        verts = frozenset(part | tri)
        edges = [
            e
            for e in comp.net.edges
            if {e.tail, e.head} <= verts and not {e.tail, e.head} <= tri
        ]
        piece_verts.append(verts)
        pieces.append((verts, edges, comp.label))
    inner = [e for e in comp.net.edges if {e.tail, e.head} <= tri]
    if inner:
        verts, edges, label = pieces[0]
        pieces[0] = (verts, list(edges) + inner, label)
    _replace_component(tree, cid, pieces, [(tri, list(range(len(pieces))))])


def _components_minus(adj: Adjacency, removed: frozenset[int]) -> list[set[int]]:
    rest = sorted(set(adj) - removed)
    seen: set[int] = set()
    out: list[set[int]] = []
    for start in rest:
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in removed and v not in seen:
                    seen.add(v)
                    comp.add(v)
                    queue.append(v)
        out.append(comp)
    return out


def separating_triangles(
    component: FlowNetwork,
    embedding: PlanarEmbedding,
    triangles: Sequence[Iterable[int]],
) -> list[FlowNetwork]:
    """Split a triconnected planar component at every gluing triangle that is
    not a face, recursively, until each listed triangle is a face of its
    piece.  Returns the pieces (the input unchanged when nothing splits)."""
    tree = DecompositionTree()
    cid = tree.add_component(component, PLANAR)
    for tri in triangles:
        kid = tree.add_clique(tri)
        tree.attach(cid, kid)
        # A standalone anchor so clique degree stays meaningful.
    while _triangle_pass(tree):
        pass
    return [tree.components[c].net for c in sorted(tree.components)]


def refine(tree: DecompositionTree) -> DecompositionTree:
    """Split components until every piece is biconnected and triconnected and
    every gluing triangle of every planar component is one of its faces.
    Reassembly is unchanged; refining twice equals refining once."""
    out = tree.copy()
    for _ in range(10_000):
        changed = _block_pass(out)
        changed |= _spqr_pass(out)
        changed |= _triangle_pass(out)
        if not changed:
            return out
    raise InvalidDecomposition("refinement did not converge")


# ---------------------------------------------------------------------------
# Family decomposers

_V8 = nx.Graph(
    [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
)


def _is_k5(adj: Adjacency) -> bool:
    return len(adj) == 5 and all(len(adj[v]) == 4 for v in adj)


def _is_v8(adj: Adjacency) -> bool:
    if len(adj) != 8 or any(len(adj[v]) != 3 for v in adj):
        return False
    return nx.is_isomorphic(to_nx(adj), _V8)


def _structure_tree(net: FlowNetwork) -> DecompositionTree:
    """Blocks plus SPQR splits of every component (1- and 2-sums only)."""
    adj = underlying(net)
    if adj and not nx.is_connected(to_nx(adj)):
        raise InvalidDecomposition("decomposers require a connected input graph")
    tree = single_component_tree(net)
    while _block_pass(tree) or _spqr_pass(tree):
        pass
    return tree


def decompose_k33_free(net: FlowNetwork) -> DecompositionTree:
    """Clique-sum decomposition with planar and K5 components (2-sums).

    Raises NotK33MinorFree when some triconnected component is neither.
    """
    tree = _structure_tree(net)
    for cid in sorted(tree.components):
        comp = tree.components[cid]
        if comp.label.kind == "planar":
            continue
        torso = torso_adjacency(tree, cid)
        if _is_k5(torso):
            comp.label = BTW
        else:
            raise NotK33MinorFree(
                f"triconnected component on vertices {sorted(torso)} is neither planar nor K5"
            )
    return tree


def decompose_k5_free(net: FlowNetwork) -> DecompositionTree:
    """Clique-sum decomposition with planar and Wagner-graph components
    (1-, 2-, and 3-sums).  Raises NotK5MinorFree when impossible."""
    tree = _structure_tree(net)
    memo: dict[tuple[frozenset[int], frozenset[frozenset[int]]], object] = {}
    for cid in sorted(tree.components):
        comp = tree.components[cid]
        torso = torso_adjacency(tree, cid)
        if comp.label.kind == "planar":
            continue
        if _is_v8(torso):
            comp.label = BTW
            continue
        verts = frozenset(torso)
        pairs = frozenset(
            frozenset((u, v)) for u in torso for v in torso[u] if u < v
        )
        result = _split_k5(verts, pairs, memo)
        if result is None:
            raise NotK5MinorFree(
                f"component on vertices {sorted(verts)} is not a 3-sum of planar and Wagner pieces"
            )
        sub_pieces, sub_cliques = result
        owner: dict[int, int] = {}
        for e in comp.net.edges:
            pair = frozenset((e.tail, e.head))
            home = min(
                i for i, (pv, pp) in enumerate(sub_pieces) if pair in pp
            )
            owner[e.id] = home
        final_pieces = []
        for i, (p_verts, _) in enumerate(sub_pieces):
            edges = [e for e in comp.net.edges if owner[e.id] == i]
            adj_piece = {v: set() for v in p_verts}
            for pr in sub_pieces[i][1]:
                u, v = sorted(pr)
                adj_piece[u].add(v)
                adj_piece[v].add(u)
            label = PLANAR if is_planar(adj_piece) else BTW
            final_pieces.append((p_verts, edges, label))
        _replace_component(tree, cid, final_pieces, sub_cliques)
    return tree


def _separating_triples(verts: frozenset[int], pairs: frozenset[frozenset[int]]) -> list[tuple[int, ...]]:
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for p in pairs:
        u, v = sorted(p)
        adj[u].add(v)
        adj[v].add(u)
    triples: set[tuple[int, ...]] = set()
    for a, b in itertools.combinations(sorted(verts), 2):
        sub = {v: {w for w in adj[v] if w not in (a, b)} for v in verts if v not in (a, b)}
        for c in _articulations(sub):
            triples.add(tuple(sorted((a, b, c))))
    return sorted(triples)


def _articulations(adj: Adjacency) -> set[int]:
    g = to_nx(adj)
    return set(nx.articulation_points(g))


_K5Result = tuple[
    list[tuple[frozenset[int], frozenset[frozenset[int]]]],
    list[tuple[frozenset[int], list[int]]],
]


def _split_k5(
    verts: frozenset[int],
    pairs: frozenset[frozenset[int]],
    memo: dict,
) -> _K5Result | None:
    """Recursive 3-cut refinement of a 3-connected nonplanar torso.

    Sides carry the completed cut triangle.  Tries separating triples in
    lexicographic order with full backtracking: a K5-free graph can have
    3-cuts whose completed sides are not K5-free, so greedy choice is not
    complete.  Returns (pieces, cliques) with clique piece indexes, or None.
    """
    key = (verts, pairs)
    if key in memo:
        return memo[key]
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for p in pairs:
        u, v = sorted(p)
        adj[u].add(v)
        adj[v].add(u)
    if is_planar(adj) or _is_v8(adj):
        memo[key] = ([(verts, pairs)], [])
        return memo[key]
    for triple in _separating_triples(verts, pairs):
        tri = frozenset(triple)
        parts = _components_minus(adj, tri)
        if len(parts) < 2:
            continue
        tri_pairs = {frozenset(p) for p in itertools.combinations(sorted(tri), 2)}
        all_pieces: list[tuple[frozenset[int], frozenset[frozenset[int]]]] = []
        all_cliques: list[tuple[frozenset[int], list[int]]] = []
        attach: list[int] = []
        ok = True
        for part in sorted(parts, key=sorted):
            side_verts = frozenset(part | tri)
            side_pairs = frozenset(
                p for p in pairs if p <= side_verts and not p <= tri
            ) | frozenset(tri_pairs)
            sub = _split_k5(side_verts, side_pairs, memo)
            if sub is None:
                ok = False
                break
            base = len(all_pieces)
            sub_pieces, sub_cliques = sub
            all_pieces.extend(sub_pieces)
            all_cliques.extend(
                (cv, [base + i for i in members]) for cv, members in sub_cliques
            )
            attach.append(
                base + next(i for i, (pv, _) in enumerate(sub_pieces) if tri <= pv)
            )
        if ok:
            memo[key] = (all_pieces, all_cliques + [(tri, attach)])
            return memo[key]
    memo[key] = None
    return None


# ---------------------------------------------------------------------------
# Validation


def validate(
    graph: FlowNetwork, tree: DecompositionTree, btw_cap: int = 10
) -> tuple[bool, list[str]]:
    """Check every decomposition-tree invariant plus label truthfulness."""
    problems: list[str] = []
    comp_ids = sorted(tree.components)
    clique_ids = sorted(tree.cliques)
    if not comp_ids:
        return False, ["tree has no components"]
    # Incidence bookkeeping and tree shape.
    n_edges = 0
    for cid in comp_ids:
        for kid in tree.comp_cliques[cid]:
            if kid not in tree.cliques:
                problems.append(f"component {cid} attached to missing clique {kid}")
            n_edges += 1
    for kid in clique_ids:
        if len(tree.clique_comps[kid]) < 2:
            problems.append(f"clique {kid} attached to fewer than 2 components")
    if n_edges != len(comp_ids) + len(clique_ids) - 1:
        problems.append("tree edge count is not nodes-1 (not a tree)")
    seen: set[tuple[str, int]] = set()
    start = ("c", comp_ids[0])
    queue = deque([start])
    seen.add(start)
    while queue:
        kind, nid = queue.popleft()
        nbrs = (
            [("k", k) for k in tree.comp_cliques[nid]]
            if kind == "c"
            else [("c", c) for c in tree.clique_comps[nid]]
        )
        for nb in nbrs:
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    if len(seen) != len(comp_ids) + len(clique_ids):
        problems.append("tree is disconnected")
    # Clique containment.
    for kid in clique_ids:
        for cid in sorted(tree.clique_comps[kid]):
            if not tree.cliques[kid].vertices <= tree.components[cid].net.vertices:
                problems.append(f"clique {kid} vertices missing from component {cid}")
    # Edge partition and exact reassembly.
    by_id: dict[int, tuple[int, Edge]] = {}
    for cid in comp_ids:
        for e in tree.components[cid].net.edges:
            if e.id in by_id:
                problems.append(f"edge {e.id} appears in components {by_id[e.id][0]} and {cid}")
            by_id[e.id] = (cid, e)
    graph_edges = {e.id: e for e in graph.edges}
    if set(by_id) != set(graph_edges):
        missing = sorted(set(graph_edges) - set(by_id))[:5]
        extra = sorted(set(by_id) - set(graph_edges))[:5]
        problems.append(f"edge sets differ (missing {missing}, extra {extra})")
    else:
        for eid, (cid, e) in by_id.items():
            if e != graph_edges[eid]:
                problems.append(f"edge {eid} differs from the input edge")
    if tree.all_vertices() != graph.vertices:
        problems.append("vertex union differs from the input network")
    # Running intersection: nodes holding any vertex form a subtree.
    holders: dict[int, list[tuple[str, int]]] = {}
    for cid in comp_ids:
        for v in tree.components[cid].net.vertices:
            holders.setdefault(v, []).append(("c", cid))
    for v, nodes in sorted(holders.items()):
        if len(nodes) == 1:
            continue
        want = set(nodes)
        root = nodes[0]
        reach = {root}
        queue = deque([root])
        while queue:
            kind, nid = queue.popleft()
            if kind == "c":
                nbrs = [
                    ("k", k)
                    for k in tree.comp_cliques[nid]
                    if v in tree.cliques[k].vertices
                ]
            else:
                nbrs = [("c", c) for c in tree.clique_comps[nid]]
            for nb in nbrs:
                if nb not in reach:
                    reach.add(nb)
                    queue.append(nb)
        if not want <= reach:
            problems.append(f"vertex {v} is shared outside its cliques")
    # Torso connectivity and label truthfulness.
    for cid in comp_ids:
        comp = tree.components[cid]
        torso = torso_adjacency(tree, cid)
        g = to_nx(torso)
        if g.number_of_nodes() and not nx.is_connected(g):
            problems.append(f"component {cid} torso is disconnected")
        if comp.label.kind == "planar" and not is_planar(torso):
            problems.append(f"component {cid} labeled planar but torso is not")
        if comp.label.kind == "btw" and len(comp.net.vertices) > btw_cap:
            problems.append(
                f"component {cid} labeled btw exceeds the size cap {btw_cap}"
            )
    return (not problems, problems)
