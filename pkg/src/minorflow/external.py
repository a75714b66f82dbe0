"""External flows: cut tables, realizability (Gale conditions), routing,
and flow verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .maxflow import max_flow, min_cut_value
from .network import (
    FULL,
    SINGLE_SOURCE,
    CutTable,
    Edge,
    FlowAssignment,
    FlowNetwork,
    InfeasibleDemandError,
    TerminalSet,
    imbalances,
    nonempty_subsets,
    proper_subsets,
)


def cut_table(net: FlowNetwork, terminals: TerminalSet, mode: str = FULL) -> CutTable:
    """All minimum-cut values over terminal splits.

    Full mode computes the 2^k - 2 values S↛(Q∖S); single-source mode the
    2^(k-1) - 1 values source↛S for nonempty S among the other terminals.
    """
    if not 2 <= terminals.k <= 4:
        raise ValueError(f"cut tables support 2..4 terminals, got {terminals.k}")
    terminals.check_in(net)
    values: dict[frozenset[int], int] = {}
    if mode == FULL:
        order = terminals.order
        for s_side in proper_subsets(order):
            t_side = tuple(q for q in order if q not in s_side)
            values[frozenset(s_side)] = min_cut_value(net, s_side, t_side)
    elif mode == SINGLE_SOURCE:
        src = terminals.source
        if src is None:
            raise ValueError("single-source mode needs a designated source terminal")
        for sinks in nonempty_subsets(terminals.non_sources):
            values[frozenset(sinks)] = min_cut_value(net, (src,), sinks)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CutTable(mode, terminals, values)


def check_external_realizable(table: CutTable, x: Sequence[int]) -> bool:
    """Gale conditions: ``x`` is realizable iff it sums to zero and no
    terminal subset demands more than its cut allows."""
    terms = table.terminals
    if len(x) != terms.k:
        raise ValueError("demand length does not match terminal count")
    if sum(x) != 0:
        return False
    demand = dict(zip(terms.order, x))
    if table.mode == FULL:
        for subset, cut in table.values.items():
            if sum(demand[q] for q in subset) > cut:
                return False
        return True
    src = terms.source
    if any(demand[q] > 0 for q in terms.order if q != src):
        return False
    for subset, cut in table.values.items():
        if sum(-demand[q] for q in subset) > cut:
            return False
    return True


def route_external_flow(
    net: FlowNetwork, terminals: TerminalSet, x: Sequence[int]
) -> FlowAssignment:
    """A feasible flow with net imbalance exactly ``x[i]`` at terminal i.

    Attaches a super source to all supply terminals (capacity x_i) and a
    super sink from all demand terminals (capacity -x_i) and saturates.
    Raises InfeasibleDemandError when the demand violates the Gale bounds,
    which signals a broken mimicking invariant upstream.
    """
    if len(x) != terminals.k:
        raise ValueError("demand length does not match terminal count")
    if sum(x) != 0:
        raise InfeasibleDemandError("demands must sum to zero")
    terminals.check_in(net)
    supply = [(q, xi) for q, xi in zip(terminals.order, x) if xi > 0]
    need = sum(xi for _, xi in supply)
    if need == 0:
        return {e.id: 0 for e in net.edges}
    ss = net.next_vertex_id()
    tt = ss + 1
    eid = net.next_edge_id()
    extra = []
    for q, xi in supply:
        extra.append(Edge(eid, ss, q, xi))
        eid += 1
    for q, xi in zip(terminals.order, x):
        if xi < 0:
            extra.append(Edge(eid, q, tt, -xi))
            eid += 1
    aug = net.with_edges(extra, (ss, tt))
    value, flow = max_flow(aug, ss, tt)
    if value != need:
        raise InfeasibleDemandError(f"demand {tuple(x)} not realizable (routed {value} of {need})")
    return {e.id: flow[e.id] for e in net.edges}


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    problems: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def verify_flow(
    net: FlowNetwork,
    terminals: TerminalSet,
    x: Sequence[int],
    flow: Mapping[int, int],
) -> VerifyResult:
    """Check capacity bounds, conservation off the terminals, and exact
    imbalance ``x`` at each terminal.  Never raises; returns diagnostics."""
    problems: list[str] = []
    if len(x) != terminals.k:
        return VerifyResult(False, ("demand length does not match terminal count",))
    known = net.edge_by_id
    for eid in flow:
        if eid not in known:
            problems.append(f"flow on unknown edge {eid}")
    for e in net.edges:
        f = flow.get(e.id, 0)
        if f < 0:
            problems.append(f"negative flow {f} on edge {e.id}")
        elif f > e.cap:
            problems.append(f"flow {f} exceeds capacity {e.cap} on edge {e.id}")
    want = dict(zip(terminals.order, x))
    for v, bal in sorted(imbalances(net, flow).items()):
        if v in want:
            if bal != want[v]:
                problems.append(f"terminal {v} imbalance {bal}, expected {want[v]}")
        elif bal != 0:
            problems.append(f"conservation violated at vertex {v} (imbalance {bal})")
    return VerifyResult(not problems, tuple(problems))
