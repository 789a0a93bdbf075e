"""Rooted Steiner connectivity via the shrink-wrap divide-and-conquer.

Given a root r, terminals T and a connectivity target, either certify that
r can push the target amount of flow to a terminal, or produce a rooted
cut of smaller value whose sink contains that terminal.  The recursion
attaches a supersink fed by per-terminal demand arcs, splits the minimum
cut of that network, certifies the saturated terminals, contracts the
source side into the root and recurses on the halved terminal sets.

Cuts found deeper in the recursion are lifted back through the chain of
contraction maps; contraction preserves every surviving cut value exactly,
so lifted certificates are rebuilt and re-validated in the parent graph at
each step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import CutCertificate, DiGraph, contract_into_root, cut_certificate
from .maxflow import max_flow, min_cut_sink_side


@dataclass(frozen=True)
class SteinerInstance:
    """One rooted Steiner connectivity question.

    ``level`` is the connectivity target as a numerator at ``graph.scale``.
    """

    graph: DiGraph
    root: int
    terminals: frozenset
    level: int

    def __post_init__(self):
        if not self.terminals:
            raise ValueError("terminal set must be nonempty")
        if self.root in self.terminals:
            raise ValueError("root may not be a terminal")
        for t in self.terminals:
            if not (0 <= t < self.graph.n):
                raise ValueError(f"terminal {t} out of range")
        if self.level <= 0:
            raise ValueError("connectivity level must be positive")


@dataclass(frozen=True)
class Certified:
    """Terminal whose root connectivity is at least the level; witness is
    the flow value actually routed to it."""

    witness: Fraction


@dataclass(frozen=True)
class Below:
    """Terminal separated by a rooted cut of value strictly below the level.
    The cut lives in the instance's original graph."""

    cut: CutCertificate


@dataclass
class ShrinkWrapStats:
    """Flow-call accounting for one shrink-wrap group.

    ``raw_flow_calls`` counts every max-flow invocation (sequential
    implementation).  ``paper_flow_calls`` is the batched-equivalent count:
    two per recursion depth that contains internal nodes plus one per base
    case, which is the quantity bounded by 2*ceil(log2 k) + leaves.
    ``contraction_log`` records (depth, edges after contraction, surviving
    terminal count) for every recursion edge, for the shrink-bound checks.
    """

    group_size: int
    raw_flow_calls: int = 0
    leaf_flow_calls: int = 0
    internal_depths: set = field(default_factory=set)
    contraction_log: list = field(default_factory=list)
    max_depth: int = 0

    @property
    def paper_flow_calls(self) -> int:
        return 2 * len(self.internal_depths) + self.leaf_flow_calls

    def depth_bound(self) -> int:
        return math.ceil(math.log2(self.group_size)) if self.group_size > 1 else 0


def build_steiner_network(inst: SteinerInstance):
    """Attach a supersink fed by one demand arc per terminal.

    Returns the extended graph and the supersink id.  Each terminal t gets
    an arc (t, supersink) of capacity ``level``, so a max flow from the
    root simultaneously tries to route ``level`` units to every terminal.
    """
    g = inst.graph
    arcs = g.arcs_as_input()
    supersink = g.n
    for t in sorted(inst.terminals):
        arcs.append((t, supersink, inst.level))
    return DiGraph(g.n + 1, arcs, scale=g.scale, root=g.root), supersink


def partition_terminals(terminals, cap: int):
    """Split terminals into ceil(|T|/cap) sorted groups of size at most cap."""
    if cap < 1:
        raise ValueError("group capacity must be at least 1")
    ordered = sorted(terminals)
    return [tuple(ordered[i : i + cap]) for i in range(0, len(ordered), cap)]


def shrink_wrap(inst: SteinerInstance):
    """Resolve every terminal of the instance.

    Returns (outcome, stats) where outcome maps each terminal to Certified
    or Below.  Below cuts are valid in the instance graph with value
    strictly below the level; Certified terminals have root connectivity
    at least the level in the instance graph.
    """
    stats = ShrinkWrapStats(group_size=len(inst.terminals))
    outcome = _solve(
        inst.graph, inst.root, tuple(sorted(inst.terminals)), inst.level, 0, stats
    )
    assert len(stats.internal_depths) <= stats.depth_bound(), (
        "shrink-wrap exceeded its recursion-depth flow budget"
    )
    return outcome, stats


def _solve(g: DiGraph, r: int, terms, level: int, depth: int, stats) -> dict:
    stats.max_depth = max(stats.max_depth, depth)
    if len(terms) == 1:
        t = terms[0]
        res = max_flow(g, r, t)
        stats.raw_flow_calls += 1
        stats.leaf_flow_calls += 1
        if res.value >= level:
            return {t: Certified(g.value(res.value))}
        cert = min_cut_sink_side(res)
        return {t: Below(cert)}

    stats.internal_depths.add(depth)
    mid = (len(terms) + 1) // 2
    out = {}
    for half in (terms[:mid], terms[mid:]):
        net, supersink = build_steiner_network(
            SteinerInstance(g, r, frozenset(half), level)
        )
        res = max_flow(net, r, supersink)
        stats.raw_flow_calls += 1
        source_side = res.source_side
        uncertified = tuple(t for t in half if t not in source_side)
        for t in half:
            if t in source_side:
                # demand arc (t, supersink) is saturated: level units reach t
                out[t] = Certified(g.value(level))
        if not uncertified:
            continue
        block = [v for v in range(g.n) if v in source_side]
        contracted, cmap = contract_into_root(g, r, block)
        stats.contraction_log.append((depth + 1, contracted.m, len(uncertified)))
        child_terms = tuple(sorted(cmap.apply(t) for t in uncertified))
        sub = _solve(contracted, cmap.root_image, child_terms, level, depth + 1, stats)
        for t in uncertified:
            child = sub[cmap.apply(t)]
            if isinstance(child, Certified):
                out[t] = child
            else:
                sink = cmap.preimage(child.cut.sink_set)
                lifted = cut_certificate(g, sink, root=r)
                assert lifted.value == child.cut.value, (
                    "contraction failed to preserve a lifted cut value"
                )
                out[t] = Below(lifted)
    return out
