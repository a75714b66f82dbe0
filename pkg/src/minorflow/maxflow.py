"""Exact max-flow engine: shortest-augmenting-path with BFS layering (Dinic).

The engine is the single seam every cut computation goes through; a
specialized backend (planar, bounded-treewidth, ...) can replace it by
providing the same ``max_flow`` signature.  Antiparallel and parallel edges
are kept as distinct residual arcs, never merged or canceled.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .network import Edge, FlowAssignment, FlowNetwork, UnknownVertexError


def _compile(net: FlowNetwork) -> tuple[dict[int, int], list[list[int]], list[int], list[int]]:
    index = {v: i for i, v in enumerate(sorted(net.vertices))}
    adj: list[list[int]] = [[] for _ in index]
    to: list[int] = []
    cap: list[int] = []
    for e in net.edges:
        u, v = index[e.tail], index[e.head]
        adj[u].append(len(to))
        to.append(v)
        cap.append(e.cap)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)
    return index, adj, to, cap


def _dinic(adj: list[list[int]], to: list[int], cap: list[int], s: int, t: int) -> int:
    n = len(adj)
    value = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in adj[u]:
                if cap[a] > 0 and level[to[a]] < 0:
                    level[to[a]] = level[u] + 1
                    queue.append(to[a])
        if level[t] < 0:
            return value
        it = [0] * n
        # Iterative blocking-flow DFS over the level graph.
        path: list[int] = []
        u = s
        while True:
            if u == t:
                pushed = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= pushed
                    cap[a ^ 1] += pushed
                value += pushed
                # Retreat to just before the first saturated arc.
                for i, a in enumerate(path):
                    if cap[a] == 0:
                        del path[i:]
                        break
                u = to[path[-1]] if path else s
                continue
            advanced = False
            while it[u] < len(adj[u]):
                a = adj[u][it[u]]
                if cap[a] > 0 and level[to[a]] == level[u] + 1:
                    path.append(a)
                    u = to[a]
                    advanced = True
                    break
                it[u] += 1
            if advanced:
                continue
            level[u] = -1
            if not path:
                break
            a = path.pop()
            u = to[a ^ 1]
            it[u] += 1


def max_flow(net: FlowNetwork, s: int, t: int) -> tuple[int, FlowAssignment]:
    """Maximum s-t flow value and an integral flow achieving it."""
    if s not in net.vertices:
        raise UnknownVertexError(f"source {s} not in network")
    if t not in net.vertices:
        raise UnknownVertexError(f"sink {t} not in network")
    if s == t:
        raise ValueError("source and sink must differ")
    index, adj, to, cap = _compile(net)
    value = _dinic(adj, to, cap, index[s], index[t])
    flow = {e.id: e.cap - cap[2 * i] for i, e in enumerate(net.edges)}
    return value, flow


def _augmented(
    net: FlowNetwork, sources: Iterable[int], sinks: Iterable[int]
) -> tuple[FlowNetwork, int, int]:
    """Attach a super source/sink with effectively-infinite edges.

    "Effectively infinite" is 1 + the sum of all capacities, never a sentinel.
    """
    sources = sorted(set(sources))
    sinks = sorted(set(sinks))
    if not sources or not sinks:
        raise ValueError("sources and sinks must be nonempty")
    if set(sources) & set(sinks):
        raise ValueError("sources and sinks overlap")
    for v in sources + sinks:
        if v not in net.vertices:
            raise UnknownVertexError(f"vertex {v} not in network")
    inf = net.total_capacity + 1
    ss = net.next_vertex_id()
    tt = ss + 1
    eid = net.next_edge_id()
    extra = []
    for v in sources:
        extra.append(Edge(eid, ss, v, inf))
        eid += 1
    for v in sinks:
        extra.append(Edge(eid, v, tt, inf))
        eid += 1
    return net.with_edges(extra, (ss, tt)), ss, tt


def min_cut_value(net: FlowNetwork, sources: Iterable[int], sinks: Iterable[int]) -> int:
    """Minimum cut with every vertex of ``sources`` on the source side and
    every vertex of ``sinks`` on the sink side (other vertices free)."""
    aug, ss, tt = _augmented(net, sources, sinks)
    value, _ = max_flow(aug, ss, tt)
    return value


def min_cut_side(
    net: FlowNetwork, sources: Iterable[int], sinks: Iterable[int]
) -> tuple[int, frozenset[int]]:
    """Minimum cut value plus its source-side-minimal vertex set.

    The side is the residual-reachable set from the super source, which makes
    it deterministic and minimal among all minimum cuts.
    """
    aug, ss, tt = _augmented(net, sources, sinks)
    index, adj, to, cap = _compile(aug)
    value = _dinic(adj, to, cap, index[ss], index[tt])
    seen = {index[ss]}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for a in adj[u]:
            if cap[a] > 0 and to[a] not in seen:
                seen.add(to[a])
                queue.append(to[a])
    back = sorted(aug.vertices)
    side = frozenset(back[i] for i in seen) & net.vertices
    return value, side
