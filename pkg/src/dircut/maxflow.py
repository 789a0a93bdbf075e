"""Exact single-commodity max-flow / min-cut (Dinic, arc-list adjacency).

All arithmetic is on integer capacity numerators, so flow values, per-arc
flows and cut values are exact.  The engine sits behind one function so a
faster solver could replace it without touching callers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graph import CutCertificate, DiGraph, cut_certificate


@dataclass(frozen=True)
class MaxFlowResult:
    """Flow assignment plus the canonical minimal source side.

    ``flows[i]`` is the flow on ``graph.arcs[i]``; ``source_side`` is the
    set of vertices reachable from the source in the residual graph, which
    makes the induced minimum cut deterministic.
    """

    graph: DiGraph
    source: int
    sink: int
    value: int  # numerator at graph.scale
    flows: tuple
    source_side: frozenset

    def value_fraction(self) -> Fraction:
        return self.graph.value(self.value)


def max_flow(g: DiGraph, s: int, t: int) -> MaxFlowResult:
    """Exact maximum (s, t)-flow via shortest augmenting paths."""
    if s == t:
        raise ValueError("source and sink coincide")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError("source or sink out of range")
    n = g.n
    # paired residual arcs: edge 2i is arcs[i], edge 2i+1 its reverse
    head = []
    cap = []
    adj = [[] for _ in range(n)]
    for (u, v, c) in g.arcs:
        adj[u].append(len(head))
        head.append(v)
        cap.append(c)
        adj[v].append(len(head))
        head.append(u)
        cap.append(0)

    level = [-1] * n
    total = 0
    while True:
        for i in range(n):
            level[i] = -1
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                v = head[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[t] < 0:
            break
        ptr = [0] * n
        while True:
            # iterative DFS for one augmenting path in the level graph
            path = []
            v = s
            stuck = False
            while v != t:
                advanced = False
                while ptr[v] < len(adj[v]):
                    e = adj[v][ptr[v]]
                    w = head[e]
                    if cap[e] > 0 and level[w] == level[v] + 1:
                        path.append(e)
                        v = w
                        advanced = True
                        break
                    ptr[v] += 1
                if advanced:
                    continue
                if v == s:
                    stuck = True
                    break
                dead = path.pop()
                v = head[dead ^ 1]  # tail of the popped edge
                ptr[v] += 1
            if stuck:
                break
            bottleneck = min(cap[e] for e in path)
            for e in path:
                cap[e] -= bottleneck
                cap[e ^ 1] += bottleneck
            total += bottleneck

    flows = tuple(g.arcs[i][2] - cap[2 * i] for i in range(g.m))
    seen = [False] * n
    seen[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            v = head[e]
            if cap[e] > 0 and not seen[v]:
                seen[v] = True
                queue.append(v)
    source_side = frozenset(v for v in range(n) if seen[v])
    return MaxFlowResult(g, s, t, total, flows, source_side)


def min_cut_sink_side(res: MaxFlowResult) -> CutCertificate:
    """Certificate of the minimum cut whose sink side is V minus source_side."""
    g = res.graph
    sink = frozenset(range(g.n)) - res.source_side
    cert = cut_certificate(g, sink)
    assert cert.value == g.value(res.value), "max-flow/min-cut duality violated"
    return cert


def verify_flow(g: DiGraph, flows, s: int, t: int) -> bool:
    """Check capacity feasibility and conservation exactly. Test helper."""
    if len(flows) != g.m:
        return False
    for (u, v, c), f in zip(g.arcs, flows):
        if f < 0 or f > c:
            return False
    net = [0] * g.n
    for (u, v, _), f in zip(g.arcs, flows):
        net[u] -= f
        net[v] += f
    for v in range(g.n):
        if v not in (s, t) and net[v] != 0:
            return False
    return True
