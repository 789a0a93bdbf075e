"""Shared brute-force oracles and instance generators.

The oracles here enumerate subsets or separators directly and never call
the library's flow or certificate machinery, so they stay independent of
the code paths they check.
"""

import itertools
import random
from collections import deque
from fractions import Fraction

from dircut import DiGraph, VertexCapGraph


def cut_value(g, sink):
    """Independent re-summation of the cut into ``sink`` over the arc list."""
    sink = set(sink)
    total = 0
    for t, h, c in g.arcs:
        if h in sink and t not in sink:
            total += c
    return Fraction(total, g.scale)


def iter_sink_sets(n, root):
    others = [v for v in range(n) if v != root]
    for size in range(1, len(others) + 1):
        for combo in itertools.combinations(others, size):
            yield frozenset(combo)


def brute_min_rooted_cut(g, root):
    """Exhaustive minimum rooted cut: (value, sink set)."""
    best = None
    for sink in iter_sink_sets(g.n, root):
        val = cut_value(g, sink)
        if best is None or val < best[0]:
            best = (val, sink)
    return best


def brute_min_st_cut(g, s, t):
    """Exhaustive minimum (s, t)-cut value."""
    best = None
    for sink in iter_sink_sets(g.n, s):
        if t not in sink:
            continue
        val = cut_value(g, sink)
        if best is None or val < best:
            best = val
    return best


def topo_reach(n, arcs, source, removed=frozenset()):
    """Reachability in a plain arc list with some vertices removed."""
    removed = set(removed)
    adj = [[] for _ in range(n)]
    for u, v in arcs:
        adj[u].append(v)
    if source in removed:
        return set()
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen and v not in removed:
                seen.add(v)
                queue.append(v)
    return seen


def brute_min_separator(g, s, t):
    """Exhaustive minimum vertex (s, t)-separator value, or None if s->t
    survives every removal (i.e. the arc (s, t) exists)."""
    others = [v for v in range(g.n) if v not in (s, t)]
    best = None
    for size in range(len(others) + 1):
        for combo in itertools.combinations(others, size):
            if t in topo_reach(g.n, g.arcs, s, frozenset(combo)):
                continue
            val = Fraction(sum(g.vcaps[w] for w in combo), g.scale)
            if best is None or val < best:
                best = val
    return best


def brute_global_vertex_cut(g):
    """Exhaustive global minimum vertex cut value, or None for complete graphs."""
    best = None
    vertices = list(range(g.n))
    for size in range(g.n - 1):
        for combo in itertools.combinations(vertices, size):
            removed = frozenset(combo)
            survivors = [v for v in vertices if v not in removed]
            if len(survivors) < 2:
                continue
            base = survivors[0]
            fwd = topo_reach(g.n, g.arcs, base, removed)
            rev = topo_reach(g.n, [(v, u) for u, v in g.arcs], base, removed)
            if all(v in fwd and v in rev for v in survivors):
                continue  # still strongly connected
            val = Fraction(sum(g.vcaps[w] for w in combo), g.scale)
            if best is None or val < best:
                best = val
    return best


def rand_digraph(rng, n, extra, wmax=10, strong=True, scale=1):
    """Random weighted digraph; a shuffled cycle keeps it strongly connected."""
    pairs = set()
    if strong:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(n):
            pairs.add((order[i], order[(i + 1) % n]))
    while len(pairs) < min(extra + (n if strong else 0), n * (n - 1)):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            pairs.add((u, v))
    arcs = [(u, v, rng.randint(1, wmax)) for u, v in sorted(pairs)]
    return DiGraph(n, arcs, scale=scale)


def rand_vertex_graph(rng, n, p=0.35, vmax=10, strong=True):
    pairs = set()
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                pairs.add((u, v))
    if strong:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(n):
            pairs.add((order[i], order[(i + 1) % n]))
    vcaps = [rng.randint(1, vmax) for _ in range(n)]
    return VertexCapGraph(n, sorted(pairs), vcaps)


def g1():
    """The small worked example used throughout: r->a:2, r->b:1, a->b:1, b->a:1."""
    return DiGraph(3, [(0, 1, 2), (0, 2, 1), (1, 2, 1), (2, 1, 1)])


def g2():
    """Vertex example: r->a, r->b, a->t, b->t with caps a=1, b=2."""
    return VertexCapGraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], [5, 1, 2, 5])
