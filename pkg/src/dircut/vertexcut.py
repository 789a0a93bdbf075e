"""Vertex-capacitated connectivity via the split-graph reduction.

A vertex-capacitated graph is modeled by an edge-capacitated one: each
vertex v becomes an arc (v_in, v_out) carrying v's capacity, and each
original arc (u, v) becomes an infinite arc (u_out, v_in).  Finite rooted
cuts in the split graph then consist purely of split arcs, which is what
lets an edge cut be read back as a vertex separator.

Rooted cuts reuse the edge machinery (preconditioning plus shrink-wrap) on
the split graph.  Global cuts sample roots in proportion to capacity, prune
each rooted instance, and run both orientations; the exact small-optimum
mode doubles the probe level with per-level tolerance 1/(1+level) so that
integer answers come out exact.
"""

from __future__ import annotations

import math
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .edgecut import (
    DEFAULT_SAMPLE_CONST,
    as_fraction,
    clamp_epsilon,
    condition_rooted,
    derive_seed,
    group_capacity,
    _geometric_grid,
    _volume_schedule,
)
from .graph import INFINITE, DiGraph, NoCutExistsError
from .maxflow import max_flow
from .steiner import Below, SteinerInstance, partition_terminals, shrink_wrap


class VertexCapGraph:
    """Directed graph topology with exact scaled-integer vertex capacities."""

    __slots__ = ("n", "arcs", "vcaps", "scale")

    def __init__(self, n, arcs, vcaps, scale=1):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if scale <= 0:
            raise ValueError("scale must be positive")
        vcaps = tuple(vcaps)
        if len(vcaps) != n:
            raise ValueError("need one capacity per vertex")
        for v, c in enumerate(vcaps):
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise ValueError(f"vertex {v}: capacity must be a nonnegative int")
        arcs = tuple(arcs)
        for i, (u, v) in enumerate(arcs):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {i}: endpoint out of range")
            if u == v:
                raise ValueError(f"arc {i}: self-loop")
        self.n = n
        self.arcs = arcs
        self.vcaps = vcaps
        self.scale = scale

    @property
    def m(self) -> int:
        return len(self.arcs)

    def value(self, numerator: int) -> Fraction:
        return Fraction(numerator, self.scale)

    def in_degrees(self):
        deg = [0] * self.n
        for _, v in self.arcs:
            deg[v] += 1
        return deg

    def out_neighbors(self, v):
        return frozenset(h for t, h in self.arcs if t == v)

    def in_neighbors(self, v):
        return frozenset(t for t, h in self.arcs if h == v)

    def __eq__(self, other):
        return (
            isinstance(other, VertexCapGraph)
            and (self.n, self.arcs, self.vcaps, self.scale)
            == (other.n, other.arcs, other.vcaps, other.scale)
        )

    def __hash__(self):
        return hash((self.n, self.arcs, self.vcaps, self.scale))

    def __repr__(self):
        return f"VertexCapGraph(n={self.n}, m={self.m}, scale={self.scale})"


@dataclass(frozen=True)
class SplitMaps:
    """Bijections v <-> (v_in, v_out) between a graph and its split form."""

    n: int

    def to_in(self, v: int) -> int:
        return v

    def to_out(self, v: int) -> int:
        return self.n + v

    def original(self, split_id: int) -> int:
        return split_id if split_id < self.n else split_id - self.n

    def is_out(self, split_id: int) -> bool:
        return split_id >= self.n


@dataclass(frozen=True)
class VertexCutCertificate:
    """Separator W with its sink component U, N-in(U) == W exactly.

    ``orientation`` records whether the certificate refers to the input
    graph or its reversal (global modes try both).
    """

    separator: frozenset
    sink_component: frozenset
    value: Fraction
    orientation: str = "forward"


@dataclass
class VertexCutResult:
    certificate: VertexCutCertificate
    flow_calls: int
    probe_log: tuple

    @property
    def value(self) -> Fraction:
        return self.certificate.value


def split_transform(g: VertexCapGraph):
    """Edge-capacitated model: 2n vertices, one finite arc per vertex and
    one infinite arc per original arc (m + n arcs total)."""
    maps = SplitMaps(g.n)
    arcs = [(maps.to_in(v), maps.to_out(v), g.vcaps[v]) for v in range(g.n)]
    for u, v in g.arcs:
        arcs.append((maps.to_out(u), maps.to_in(v), INFINITE))
    return DiGraph(2 * g.n, arcs, scale=g.scale), maps


def _normalize(g: VertexCapGraph) -> VertexCapGraph:
    """Deduplicate parallel arcs; topology duplicates carry no information."""
    arcs = sorted(set(g.arcs))
    return VertexCapGraph(g.n, arcs, g.vcaps, g.scale)


def _reverse_topology(g: VertexCapGraph) -> VertexCapGraph:
    return VertexCapGraph(g.n, [(v, u) for u, v in g.arcs], g.vcaps, g.scale)


def _reach(g: VertexCapGraph, source: int) -> frozenset:
    adj = [[] for _ in range(g.n)]
    for u, v in g.arcs:
        adj[u].append(v)
    seen = [False] * g.n
    seen[source] = True
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return frozenset(v for v in range(g.n) if seen[v])


def _in_neighbors_of_set(g: VertexCapGraph, vertices: frozenset) -> frozenset:
    return frozenset(u for u, v in g.arcs if v in vertices and u not in vertices)


def _vbetter(a, b):
    if a is None:
        return b
    if b is None:
        return a
    ka = (a.value, len(a.separator), tuple(sorted(a.separator)),
          tuple(sorted(a.sink_component)), a.orientation)
    kb = (b.value, len(b.separator), tuple(sorted(b.separator)),
          tuple(sorted(b.sink_component)), b.orientation)
    return a if ka <= kb else b


def _separator_value(g: VertexCapGraph, separator) -> Fraction:
    return Fraction(sum(g.vcaps[w] for w in separator), g.scale)


def _singleton_certificate(g: VertexCapGraph, t: int) -> VertexCutCertificate:
    sep = _in_neighbors_of_set(g, frozenset([t]))
    return VertexCutCertificate(sep, frozenset([t]), _separator_value(g, sep))


def _admissible_sinks(g: VertexCapGraph, r: int):
    """V' = V minus the root and its out-neighborhood: every rooted vertex
    cut is the in-neighborhood of some subset of V'."""
    blocked = g.out_neighbors(r) | {r}
    return tuple(v for v in range(g.n) if v not in blocked)


# -- rooted approximation ----------------------------------------------------


def _vertex_probe_one(ng, split, maps, admissible, r, level, volume, epsilon,
                      sample_const, seed):
    """One (level, volume) probe on the split graph; certificates are
    re-evaluated against the raw vertex capacities before acceptance."""
    floor = epsilon * level / (4 * ng.n)
    cond = condition_rooted(split, maps.to_out(r), level, volume, epsilon, 6, floor)
    rng = random.Random(seed)
    deg = ng.in_degrees()
    rate = float(as_fraction(sample_const)) * math.log(ng.n) / volume
    terminals = [
        v for v in admissible
        if deg[v] > 0 and rng.random() < min(1.0, rate * deg[v])
    ]
    if not terminals:
        return None, 0, None
    terminal_ids = frozenset(maps.to_in(v) for v in terminals)
    threshold = (1 + epsilon) * level
    level_num = threshold * cond.h.scale
    assert level_num.denominator == 1
    level_num = int(level_num)
    admissible_set = frozenset(admissible)
    root_out = maps.to_out(r)
    best = None
    calls = 0
    all_stats = []
    for group in partition_terminals(
        terminal_ids, group_capacity(cond.h, root_out, level_num)
    ):
        outcome, stats = shrink_wrap(
            SteinerInstance(cond.h, root_out, frozenset(group), level_num)
        )
        calls += stats.raw_flow_calls
        all_stats.append(stats)
        for t in sorted(outcome):
            result = outcome[t]
            if not isinstance(result, Below):
                continue
            sink = result.cut.sink_set
            component = frozenset(
                v for v in admissible_set if maps.to_in(v) in sink
            )
            if not component:
                continue
            separator = _in_neighbors_of_set(ng, component)
            assert r not in separator, "sink component leaked into the root's fan-out"
            value = _separator_value(ng, separator)
            if value < threshold:
                best = _vbetter(
                    best, VertexCutCertificate(separator, component, value)
                )
    return best, calls, tuple(all_stats)


def _rooted_fixed_probe(ng, split, maps, admissible, r, level, epsilon,
                        volumes, sample_const, seed_parts, threads):
    jobs = [
        (vol, derive_seed(*seed_parts, j)) for j, vol in enumerate(volumes)
    ]

    def run(job):
        vol, sub_seed = job
        return _vertex_probe_one(
            ng, split, maps, admissible, r, level, vol, epsilon,
            sample_const, sub_seed,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]
    best = None
    calls = 0
    log = []
    for (vol, _), (cert, c, _) in zip(jobs, results):
        calls += c
        log.append((level, vol, c))
        best = _vbetter(best, cert)
    return best, calls, log


def approx_rooted_vertex_cut(
    g: VertexCapGraph,
    r: int,
    epsilon,
    seed: int = 0,
    threads: int = 1,
    sample_const=DEFAULT_SAMPLE_CONST,
) -> VertexCutResult:
    """Rooted vertex cut within (1+epsilon) of optimal w.h.p.

    Always returns a valid separator with its exact value; raises
    NoCutExistsError when the root's out-neighborhood covers every other
    vertex (no rooted vertex cut exists at all).
    """
    eps = clamp_epsilon(epsilon)
    sample_const = as_fraction(sample_const)
    ng = _normalize(g)
    admissible = _admissible_sinks(ng, r)
    if not admissible:
        raise NoCutExistsError("every vertex is the root or a direct out-neighbor")
    missing = frozenset(range(ng.n)) - _reach(ng, r)
    if missing:
        cert = VertexCutCertificate(frozenset(), missing, Fraction(0))
        return VertexCutResult(cert, 0, ())

    best = None
    for t in admissible:
        best = _vbetter(best, _singleton_certificate(ng, t))
    flow_calls = 0
    probe_log = []
    positive = [c for c in ng.vcaps if c > 0]
    if best.value > 0 and positive:
        split, maps = split_transform(ng)
        eps_in = eps / (2 + eps)
        lo = Fraction(min(positive), ng.scale) * eps_in / (2 * ng.n)
        grid = _geometric_grid(lo, best.value, 1 + eps_in)
        volumes = _volume_schedule(max(ng.m, 1))
        lo_i, hi_i = 0, len(grid) - 1
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            cert, calls, log = _rooted_fixed_probe(
                ng, split, maps, admissible, r, grid[mid], eps_in,
                volumes, sample_const, (seed, "vertex", mid), threads,
            )
            flow_calls += calls
            probe_log.extend(log)
            if cert is not None:
                best = _vbetter(best, cert)
                hi_i = mid
            else:
                lo_i = mid + 1
    return VertexCutResult(best, flow_calls, tuple(probe_log))


# -- global reduction --------------------------------------------------------


def sample_roots(g: VertexCapGraph, epsilon, rng) -> list:
    """Root sample for the global reduction.

    The sample count is min over the two standard bounds (tolerance-driven
    and singleton-slack-driven, constant 2), clamped to [1, n]; roots are
    drawn i.i.d. in proportion to their capacities.
    """
    if g.n < 2:
        raise ValueError("need at least two vertices")
    eps = as_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    total = sum(g.vcaps)
    if total == 0:
        raise ValueError("all vertex capacities are zero; no root can be sampled")
    singleton_floor = min(
        min(
            sum(g.vcaps[u] for u in g.in_neighbors(v)),
            sum(g.vcaps[u] for u in g.out_neighbors(v)),
        )
        for v in range(g.n)
    )
    count = math.ceil(2 * math.log(g.n) / float(eps))
    if total > singleton_floor:
        alt = math.ceil(2 * total * math.log(g.n) / (total - singleton_floor))
        count = min(count, alt)
    count = max(1, min(count, g.n))
    return rng.choices(range(g.n), weights=g.vcaps, k=count)


def prune_for_root(g: VertexCapGraph, r: int) -> VertexCapGraph:
    """Drop arcs that cannot matter for r-connectivity: every arc into an
    out-neighbor of r other than the arc from r itself, and every arc into
    r.  The rooted connectivity value is unchanged."""
    fanout = g.out_neighbors(r)
    arcs = [
        (u, v)
        for u, v in g.arcs
        if v != r and not (v in fanout and u != r)
    ]
    return VertexCapGraph(g.n, arcs, g.vcaps, g.scale)


def _is_complete(g: VertexCapGraph) -> bool:
    pairs = set(g.arcs)
    return all(
        (u, v) in pairs
        for u in range(g.n)
        for v in range(g.n)
        if u != v
    )


def _disconnected_certificate(g: VertexCapGraph):
    """Zero-value certificate when the graph is not strongly connected,
    or None.  The sink component is closed under incoming arcs in the
    reported orientation, so the empty separator is genuinely N-in(U)."""
    forward_reach = _reach(g, 0)
    if len(forward_reach) != g.n:
        sink = frozenset(range(g.n)) - forward_reach
        return VertexCutCertificate(frozenset(), sink, Fraction(0), "forward")
    backward_reach = _reach(_reverse_topology(g), 0)
    if len(backward_reach) != g.n:
        sink = frozenset(range(g.n)) - backward_reach
        return VertexCutCertificate(frozenset(), sink, Fraction(0), "reverse")
    return None


def _global_singleton(g: VertexCapGraph):
    """Best valid single-sink certificate over both orientations, or None
    (None only for complete digraphs)."""
    best = None
    rev = _reverse_topology(g)
    for orientation, graph in (("forward", g), ("reverse", rev)):
        for v in range(g.n):
            sep = _in_neighbors_of_set(graph, frozenset([v]))
            if len(sep) + 1 == g.n:
                continue  # no surviving outside vertex: not a cut
            cert = VertexCutCertificate(
                sep, frozenset([v]), _separator_value(graph, sep), orientation
            )
            best = _vbetter(best, cert)
    return best


def approx_global_vertex_cut(
    g: VertexCapGraph,
    epsilon,
    seed: int = 0,
    threads: int = 1,
    sample_const=DEFAULT_SAMPLE_CONST,
) -> VertexCutResult:
    """Global vertex cut within (1+epsilon) of optimal w.h.p.

    Samples roots in proportion to capacity, prunes each rooted instance,
    and solves it in both orientations.  Raises NoCutExistsError on
    complete digraphs, where no vertex cut exists.
    """
    eps = clamp_epsilon(epsilon)
    ng = _normalize(g)
    if ng.n < 2:
        raise NoCutExistsError("need at least two vertices")
    zero = _disconnected_certificate(ng)
    if zero is not None:
        return VertexCutResult(zero, 0, ())
    if _is_complete(ng):
        raise NoCutExistsError("complete digraph has no vertex cut")

    best = _global_singleton(ng)
    assert best is not None
    rng = random.Random(derive_seed(seed, "roots"))
    roots = sample_roots(ng, eps, rng)
    rev = _reverse_topology(ng)
    flow_calls = 0
    probe_log = []
    for i, root in enumerate(roots):
        for orientation, base in (("forward", ng), ("reverse", rev)):
            pruned = prune_for_root(base, root)
            try:
                res = approx_rooted_vertex_cut(
                    pruned, root, eps,
                    seed=derive_seed(seed, "root", i, orientation),
                    threads=threads, sample_const=sample_const,
                )
            except NoCutExistsError:
                continue
            flow_calls += res.flow_calls
            probe_log.extend(res.probe_log)
            cert = res.certificate
            best = _vbetter(
                best,
                VertexCutCertificate(
                    cert.separator, cert.sink_component, cert.value, orientation
                ),
            )
    return VertexCutResult(best, flow_calls, tuple(probe_log))


# -- exact modes -------------------------------------------------------------


def _require_integer_vcaps(g: VertexCapGraph):
    for c in g.vcaps:
        if c % g.scale != 0:
            raise ValueError("exact small-connectivity mode needs integer capacities")


def _exact_small_rooted(ng, r, seed, threads, sample_const):
    admissible = _admissible_sinks(ng, r)
    if not admissible:
        raise NoCutExistsError("every vertex is the root or a direct out-neighbor")
    missing = frozenset(range(ng.n)) - _reach(ng, r)
    if missing:
        cert = VertexCutCertificate(frozenset(), missing, Fraction(0))
        return VertexCutResult(cert, 0, ())
    singleton = None
    for t in admissible:
        singleton = _vbetter(singleton, _singleton_certificate(ng, t))
    if singleton.value == 0:
        return VertexCutResult(singleton, 0, ())
    delta = int(singleton.value)
    split, maps = split_transform(ng)
    volumes = _volume_schedule(max(ng.m, 1))
    flow_calls = 0
    probe_log = []

    def probe(level_int, tag):
        nonlocal flow_calls
        eps = Fraction(1, 1 + level_int)
        cert, calls, log = _rooted_fixed_probe(
            ng, split, maps, admissible, r, Fraction(level_int), eps,
            volumes, sample_const, (seed, "small", tag, level_int), threads,
        )
        flow_calls += calls
        probe_log.extend(log)
        return cert

    best = None
    level = 1
    while True:
        cert = probe(level, "up")
        if cert is not None:
            best = cert
            break
        if level >= delta:
            best = singleton
            break
        level *= 2
    lo, hi = 1, int(best.value)
    while lo < hi:
        mid = (lo + hi) // 2
        cert = probe(mid, "bin")
        if cert is not None:
            best = _vbetter(best, cert)
            hi = int(cert.value)
        else:
            lo = mid + 1
    return VertexCutResult(best, flow_calls, tuple(probe_log))


def _global_fixed_probe(ng, rev, level_int, seed, threads, sample_const):
    """Fixed-level global probe: sampled roots, both orientations, pruned."""
    eps = Fraction(1, 1 + level_int)
    rng = random.Random(derive_seed(seed, "roots", level_int))
    roots = sample_roots(ng, eps, rng)
    best = None
    calls = 0
    for i, root in enumerate(roots):
        for orientation, base in (("forward", ng), ("reverse", rev)):
            pruned = prune_for_root(base, root)
            admissible = _admissible_sinks(pruned, root)
            if not admissible:
                continue
            split, maps = split_transform(pruned)
            cert, c, _ = _rooted_fixed_probe(
                pruned, split, maps, admissible, root, Fraction(level_int),
                eps, _volume_schedule(max(pruned.m, 1)), sample_const,
                (seed, "probe", level_int, i, orientation), threads,
            )
            calls += c
            if cert is not None:
                best = _vbetter(
                    best,
                    VertexCutCertificate(
                        cert.separator, cert.sink_component, cert.value,
                        orientation,
                    ),
                )
    return best, calls


def exact_small_vertex_cut(
    g: VertexCapGraph,
    root=None,
    seed: int = 0,
    threads: int = 1,
    sample_const=DEFAULT_SAMPLE_CONST,
) -> VertexCutResult:
    """Exact minimum vertex cut for integer capacities, efficient when the
    optimum is small.

    Doubles the probe level until a certificate of value at most the level
    appears (or the trivial singleton bound is passed), then binary
    searches the integers below it.  Per-level tolerance 1/(1+level) makes
    integer answers exact.  ``root=None`` solves the global problem.
    """
    _require_integer_vcaps(g)
    sample_const = as_fraction(sample_const)
    ng = _normalize(g)
    if root is not None:
        return _exact_small_rooted(ng, root, seed, threads, sample_const)

    if ng.n < 2:
        raise NoCutExistsError("need at least two vertices")
    zero = _disconnected_certificate(ng)
    if zero is not None:
        return VertexCutResult(zero, 0, ())
    if _is_complete(ng):
        raise NoCutExistsError("complete digraph has no vertex cut")
    singleton = _global_singleton(ng)
    if singleton.value == 0:
        return VertexCutResult(singleton, 0, ())
    delta = int(singleton.value)
    rev = _reverse_topology(ng)
    flow_calls = 0

    best = None
    level = 1
    while True:
        cert, calls = _global_fixed_probe(ng, rev, level, seed, threads, sample_const)
        flow_calls += calls
        if cert is not None and cert.value <= level:
            best = cert
            break
        best = _vbetter(best, cert)
        if level >= delta:
            best = _vbetter(best, singleton)
            break
        level *= 2
    lo, hi = 1, int(best.value)
    while lo < hi:
        mid = (lo + hi) // 2
        cert, calls = _global_fixed_probe(ng, rev, mid, seed, threads, sample_const)
        flow_calls += calls
        if cert is not None:
            best = _vbetter(best, cert)
            hi = int(cert.value)
        else:
            lo = mid + 1
    return VertexCutResult(best, flow_calls, ())


# -- exact oracle ------------------------------------------------------------


def _oracle_extract(ng, maps, source, flow_result):
    sink_side = frozenset(range(2 * ng.n)) - flow_result.source_side
    component = frozenset(
        v for v in range(ng.n)
        if v != source and maps.to_in(v) in sink_side
    )
    separator = _in_neighbors_of_set(ng, component)
    value = _separator_value(ng, separator)
    assert value == Fraction(flow_result.value, ng.scale), (
        "split-graph cut does not match its vertex separator"
    )
    return VertexCutCertificate(separator, component, value)


def exact_vertex_cut_oracle(g: VertexCapGraph, root=None) -> VertexCutCertificate:
    """Exact minimum vertex cut by pairwise split-graph flows.

    ``root`` given: one flow per admissible sink.  ``root=None``: one flow
    per ordered nonadjacent pair.  Test oracle and CLI --exact mode.
    """
    ng = _normalize(g)
    if root is not None:
        admissible = _admissible_sinks(ng, root)
        if not admissible:
            raise NoCutExistsError(
                "every vertex is the root or a direct out-neighbor"
            )
        missing = frozenset(range(ng.n)) - _reach(ng, root)
        if missing:
            return VertexCutCertificate(frozenset(), missing, Fraction(0))
        split, maps = split_transform(ng)
        best = None
        for t in admissible:
            res = max_flow(split, maps.to_out(root), maps.to_in(t))
            best = _vbetter(best, _oracle_extract(ng, maps, root, res))
        return best

    if ng.n < 2:
        raise NoCutExistsError("need at least two vertices")
    zero = _disconnected_certificate(ng)
    if zero is not None:
        return zero
    if _is_complete(ng):
        raise NoCutExistsError("complete digraph has no vertex cut")
    split, maps = split_transform(ng)
    adjacent = set(ng.arcs)
    best = None
    for s in range(ng.n):
        for t in range(ng.n):
            if s == t or (s, t) in adjacent:
                continue
            res = max_flow(split, maps.to_out(s), maps.to_in(t))
            best = _vbetter(best, _oracle_extract(ng, maps, s, res))
    return best
