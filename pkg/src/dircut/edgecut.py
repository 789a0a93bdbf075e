"""Approximate rooted and global minimum edge cuts.

The pipeline for one probe: precondition the graph with cheap root-to-vertex
arcs so every rooted cut value dominates its sink in-volume, truncate the
original weights into a polynomial band, sample terminals with probability
proportional to in-degree, and run the shrink-wrap recursion at a slightly
inflated connectivity target.  Any cut that comes back is re-evaluated
against the untruncated input capacities, so returned certificates are
always valid regardless of randomness; the probability statements only
govern how good they are.

A geometric grid of probe levels is binary searched.  The grid ratio and
the per-probe inflation are both set to epsilon/(2+epsilon) so that their
product stays within the requested (1+epsilon) factor end to end.
"""

from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    INFINITE,
    CutCertificate,
    DiGraph,
    NoCutExistsError,
    cut_certificate,
    merge_parallel,
    reachable,
    reverse,
)
from .maxflow import max_flow, min_cut_sink_side
from .steiner import Below, SteinerInstance, partition_terminals, shrink_wrap

DEFAULT_SAMPLE_CONST = Fraction(2)


def derive_seed(*parts) -> int:
    """Stable 64-bit sub-seed from a master seed and a label path."""
    text = "/".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def as_fraction(x) -> Fraction:
    """Exact rational from int, str, Fraction, or (via repr) float."""
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def clamp_epsilon(epsilon) -> Fraction:
    eps = as_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if eps >= 1:
        eps = Fraction(99, 100)
    return eps


@dataclass(frozen=True)
class ProbeConfig:
    """Parameters of one well-conditioned probe: connectivity guess,
    in-volume guess (a power of two), tolerance, sampling constant, seed."""

    level: Fraction
    volume: int
    epsilon: Fraction
    sample_const: Fraction = DEFAULT_SAMPLE_CONST
    seed: int = 0

    def __post_init__(self):
        if self.level <= 0:
            raise ValueError("level must be positive")
        if self.volume < 1 or self.volume & (self.volume - 1):
            raise ValueError("volume must be a power of two")
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")


@dataclass(frozen=True)
class ConditionedGraph:
    """Preconditioned graph plus the conditioning ratio it provably satisfies.

    ``original_arc[i]`` is False exactly for the auxiliary root arcs.  For
    every sink set U the cut into U has capacity at least ``phi`` times the
    in-volume of U measured in ``h`` itself.
    """

    h: DiGraph
    phi: Fraction
    original_arc: tuple
    level: Fraction
    epsilon: Fraction

    def original_in_degrees(self) -> list:
        deg = [0] * self.h.n
        for i, (_, head, _) in enumerate(self.h.arcs):
            if self.original_arc[i]:
                deg[head] += 1
        return deg


def condition_rooted(
    base: DiGraph,
    r: int,
    level: Fraction,
    volume: int,
    epsilon: Fraction,
    aux_divisor: int,
    floor: Fraction,
) -> ConditionedGraph:
    """Shared preconditioning: per-vertex root arcs plus weight truncation.

    Adds an arc (r, v) of capacity epsilon*level*indeg(v)/(aux_divisor*volume)
    for every non-root vertex with positive in-degree, and clamps finite
    original weights into [floor, 2*level].  Infinite arcs are exempt.  The
    provable conditioning ratio, measured against in-volumes of the output
    graph, is epsilon*level/(2*aux_divisor*volume).
    """
    if level <= 0:
        raise ValueError("level must be positive")
    quantum = epsilon * level / (aux_divisor * volume)
    needed = [quantum, floor, level, epsilon * level]
    new_scale = base.scale
    for q in needed:
        new_scale = math.lcm(new_scale, q.denominator)
    factor = new_scale // base.scale
    floor_num = int(floor * new_scale)
    cap_num = int(2 * level * new_scale)
    quantum_num = int(quantum * new_scale)

    arcs = []
    flags = []
    for i, (t, h, c) in enumerate(base.arcs):
        if i in base.inf_arcs:
            arcs.append((t, h, INFINITE))
        else:
            arcs.append((t, h, min(max(c * factor, floor_num), cap_num)))
        flags.append(True)
    for v, deg in enumerate(base.in_degrees()):
        if v != r and deg > 0:
            arcs.append((r, v, quantum_num * deg))
            flags.append(False)
    h = DiGraph(base.n, arcs, scale=new_scale, root=base.root)
    phi = epsilon * level / (2 * aux_divisor * volume)
    return ConditionedGraph(h, phi, tuple(flags), level, epsilon)


def precondition_rooted(
    g: DiGraph, r: int, level, volume: int, epsilon
) -> ConditionedGraph:
    """Edge-cut preconditioning: aux weight eps*level*indeg/(2*volume),
    original weights clamped into [eps*level/(2m), 2*level]."""
    level = as_fraction(level)
    epsilon = as_fraction(epsilon)
    floor = epsilon * level / (2 * max(g.m, 1))
    return condition_rooted(g, r, level, volume, epsilon, 2, floor)


def sample_terminals(cond: ConditionedGraph, r: int, volume: int, sample_const, rng):
    """Each non-root vertex independently with probability
    min(1, sample_const * ln(n) * indeg(v) / volume), using in-degrees of
    the original (non-auxiliary) arcs.  Deterministic given the rng state."""
    n = cond.h.n
    scale = float(as_fraction(sample_const)) * math.log(n) / volume
    picked = []
    deg = cond.original_in_degrees()
    for v in range(n):
        if v == r or deg[v] == 0:
            continue
        if rng.random() < min(1.0, scale * deg[v]):
            picked.append(v)
    return frozenset(picked)


@dataclass
class ProbeReport:
    certificate: object
    flow_calls: int
    steiner_stats: tuple


def group_capacity(h: DiGraph, r: int, level_num: int) -> int:
    """Terminal group size for one probe.

    One group's total demand (level per terminal) is kept within half the
    root's effective out-capacity, so groups that are fully connected at
    the probe level certify at the top of the recursion in two flows
    instead of splitting all the way down.  Infinite arcs out of the root
    contribute the finite out-capacity of their heads (in a split graph
    that is the head's own split arc).  Never below the classic
    conditioning-based group size, which this dominates.
    """
    finite_out = [0] * h.n
    for i, (t, _, c) in enumerate(h.arcs):
        if i not in h.inf_arcs:
            finite_out[t] += c
    supply = 0
    for i, (t, head, c) in enumerate(h.arcs):
        if t != r:
            continue
        supply += finite_out[head] if i in h.inf_arcs else c
    return max(1, supply // (2 * level_num))


def _better(a, b):
    """Deterministic minimum of two certificates (None allowed)."""
    if a is None:
        return b
    if b is None:
        return a
    ka = (a.value, len(a.sink_set), tuple(sorted(a.sink_set)))
    kb = (b.value, len(b.sink_set), tuple(sorted(b.sink_set)))
    return a if ka <= kb else b


def probe_rooted_edge(g: DiGraph, r: int, cfg: ProbeConfig) -> ProbeReport:
    """One preconditioned shrink-wrap probe.

    If a certificate is returned it is a valid rooted cut in ``g`` itself,
    re-evaluated against untruncated capacities, with value strictly below
    (1+epsilon)*level.  Returning nothing is a legitimate outcome.
    """
    cond = precondition_rooted(g, r, cfg.level, cfg.volume, cfg.epsilon)
    rng = random.Random(cfg.seed)
    terminals = sample_terminals(cond, r, cfg.volume, cfg.sample_const, rng)
    if not terminals:
        return ProbeReport(None, 0, ())
    threshold = (1 + cfg.epsilon) * as_fraction(cfg.level)
    level_num = threshold * cond.h.scale
    assert level_num.denominator == 1
    level_num = int(level_num)
    best = None
    calls = 0
    all_stats = []
    for group in partition_terminals(terminals, group_capacity(cond.h, r, level_num)):
        outcome, stats = shrink_wrap(
            SteinerInstance(cond.h, r, frozenset(group), level_num)
        )
        calls += stats.raw_flow_calls
        all_stats.append(stats)
        for t in sorted(outcome):
            result = outcome[t]
            if isinstance(result, Below):
                cert = cut_certificate(g, result.cut.sink_set, root=r)
                if cert.value < threshold:
                    best = _better(best, cert)
    return ProbeReport(best, calls, tuple(all_stats))


def _volume_schedule(m: int) -> list:
    """Powers of two whose half-open windows [v/2, v) cover volumes 1..m."""
    vols = [1]
    while vols[-1] <= m:
        vols.append(vols[-1] * 2)
    return vols


def _geometric_grid(lo: Fraction, hi: Fraction, ratio: Fraction) -> list:
    """Increasing grid from lo to at least hi with consecutive ratio about
    ``ratio``.  Points are exact dyadic snapshots of float arithmetic so
    downstream rescaling stays within small denominators."""
    points = [lo]
    x = float(lo)
    step = float(ratio)
    while points[-1] < hi:
        x *= step
        nxt = Fraction(x)
        if nxt <= points[-1]:  # float stall; exact fallback
            nxt = points[-1] * ratio
        points.append(nxt)
    return points


def _min_singleton_cut(g: DiGraph, r: int) -> CutCertificate:
    best = None
    for t in range(g.n):
        if t == r:
            continue
        best = _better(best, cut_certificate(g, [t], root=r))
    return best


def _run_probes(g, r, level, volumes, epsilon, sample_const, seed_parts, threads):
    configs = [
        ProbeConfig(
            level=level,
            volume=vol,
            epsilon=epsilon,
            sample_const=sample_const,
            seed=derive_seed(*seed_parts, j),
        )
        for j, vol in enumerate(volumes)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda cfg: probe_rooted_edge(g, r, cfg), configs))
    return [probe_rooted_edge(g, r, cfg) for cfg in configs]


@dataclass
class EdgeCutResult:
    certificate: CutCertificate
    orientation: str
    flow_calls: int
    probe_log: tuple

    @property
    def value(self) -> Fraction:
        return self.certificate.value


def _probe_level(g, r, level, volumes, epsilon, sample_const, seed_parts, threads):
    """Run all volume guesses at one level; returns (best cert, calls, log)."""
    reports = _run_probes(g, r, level, volumes, epsilon, sample_const, seed_parts, threads)
    best = None
    calls = 0
    log = []
    for vol, rep in zip(volumes, reports):
        calls += rep.flow_calls
        log.append((level, vol, rep.flow_calls))
        best = _better(best, rep.certificate)
    return best, calls, log


def approx_rooted_edge_cut(
    g: DiGraph,
    r: int,
    epsilon,
    seed: int = 0,
    threads: int = 1,
    sample_const=DEFAULT_SAMPLE_CONST,
) -> EdgeCutResult:
    """Rooted cut of value at most (1+epsilon) times optimal, w.h.p.

    The returned certificate is always a valid rooted cut of ``g``.  If some
    vertex is unreachable from the root the exact zero cut is returned.
    """
    eps = clamp_epsilon(epsilon)
    sample_const = as_fraction(sample_const)
    if g.n < 2:
        raise NoCutExistsError("graph has no non-root vertex")
    gm = merge_parallel(g)
    missing = frozenset(range(gm.n)) - reachable(gm, r)
    if missing:
        return EdgeCutResult(cut_certificate(gm, missing, root=r), "forward", 0, ())

    best = _min_singleton_cut(gm, r)
    flow_calls = 0
    probe_log = []
    positive = [
        c for i, (_, _, c) in enumerate(gm.arcs) if c > 0 and i not in gm.inf_arcs
    ]
    if best.value > 0 and positive:
        eps_in = eps / (2 + eps)
        lo = Fraction(min(positive), gm.scale) * eps_in / (2 * gm.m)
        grid = _geometric_grid(lo, best.value, 1 + eps_in)
        volumes = _volume_schedule(gm.m)
        lo_i, hi_i = 0, len(grid) - 1
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            cert, calls, log = _probe_level(
                gm, r, grid[mid], volumes, eps_in, sample_const,
                (seed, "edge", mid), threads,
            )
            flow_calls += calls
            probe_log.extend(log)
            if cert is not None:
                best = _better(best, cert)
                hi_i = mid
            else:
                lo_i = mid + 1
    return EdgeCutResult(best, "forward", flow_calls, tuple(probe_log))


def approx_global_edge_cut(
    g: DiGraph,
    epsilon,
    seed: int = 0,
    threads: int = 1,
    sample_const=DEFAULT_SAMPLE_CONST,
) -> EdgeCutResult:
    """Global minimum cut: best rooted cut over the graph and its reversal,
    rooted at vertex 0.  The certificate is tagged with its orientation."""
    if g.n < 2:
        raise NoCutExistsError("need at least two vertices")
    forward = approx_rooted_edge_cut(
        g, 0, epsilon, derive_seed(seed, "fwd"), threads, sample_const
    )
    backward = approx_rooted_edge_cut(
        reverse(g), 0, epsilon, derive_seed(seed, "rev"), threads, sample_const
    )
    total = forward.flow_calls + backward.flow_calls
    log = forward.probe_log + backward.probe_log
    if _better(forward.certificate, backward.certificate) is forward.certificate:
        return EdgeCutResult(forward.certificate, "forward", total, log)
    return EdgeCutResult(backward.certificate, "reverse", total, log)


def exact_rooted_edge_cut_oracle(g: DiGraph, r: int) -> CutCertificate:
    """Exact minimum rooted cut via one max-flow per non-root vertex."""
    if g.n < 2:
        raise NoCutExistsError("graph has no non-root vertex")
    best = None
    for t in range(g.n):
        if t == r:
            continue
        res = max_flow(g, r, t)
        if res.value == 0:
            sink = frozenset(range(g.n)) - reachable(g, r)
            return cut_certificate(g, sink, root=r)
        best = _better(best, min_cut_sink_side(res))
    return best


def exact_global_edge_cut_oracle(g: DiGraph):
    """Exact global minimum cut; returns (certificate, orientation)."""
    forward = exact_rooted_edge_cut_oracle(g, 0)
    backward = exact_rooted_edge_cut_oracle(reverse(g), 0)
    if _better(forward, backward) is forward:
        return forward, "forward"
    return backward, "reverse"


def _require_integer_capacities(g: DiGraph):
    for i, (_, _, c) in enumerate(g.arcs):
        if i not in g.inf_arcs and c % g.scale != 0:
            raise ValueError("exact small-connectivity mode needs integer capacities")


def _exact_small_rooted_edge(g, r, seed, threads, sample_const):
    gm = merge_parallel(g)
    missing = frozenset(range(gm.n)) - reachable(gm, r)
    if missing:
        return EdgeCutResult(cut_certificate(gm, missing, root=r), "forward", 0, ())
    singleton = _min_singleton_cut(gm, r)
    if singleton.value == 0:
        return EdgeCutResult(singleton, "forward", 0, ())
    delta = int(singleton.value)
    volumes = _volume_schedule(gm.m)
    flow_calls = 0
    probe_log = []

    def probe(level_int, tag):
        nonlocal flow_calls
        eps = Fraction(1, 1 + level_int)
        cert, calls, log = _probe_level(
            gm, r, Fraction(level_int), volumes, eps, sample_const,
            (seed, "small", tag, level_int), threads,
        )
        flow_calls += calls
        probe_log.extend(log)
        return cert

    # double until a certificate witnesses level >= optimum, or the trivial
    # singleton bound does
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
            best = _better(best, cert)
            hi = int(cert.value)
        else:
            lo = mid + 1
    return EdgeCutResult(best, "forward", flow_calls, tuple(probe_log))


def exact_small_edge_cut(
    g: DiGraph,
    root=None,
    seed: int = 0,
    threads: int = 1,
    sample_const=DEFAULT_SAMPLE_CONST,
) -> EdgeCutResult:
    """Exact minimum cut for integer capacities, efficient when the optimum
    is small: double the level with per-level tolerance 1/(1+level), then
    binary search the integers below the first witnessed level.  At integer
    granularity a (1+1/(1+level))-approximate answer is exact."""
    _require_integer_capacities(g)
    if g.n < 2:
        raise NoCutExistsError("need at least two vertices")
    sample_const = as_fraction(sample_const)
    if root is not None:
        return _exact_small_rooted_edge(g, root, seed, threads, sample_const)
    forward = _exact_small_rooted_edge(g, 0, derive_seed(seed, "fwd"), threads, sample_const)
    backward = _exact_small_rooted_edge(
        reverse(g), 0, derive_seed(seed, "rev"), threads, sample_const
    )
    total = forward.flow_calls + backward.flow_calls
    log = forward.probe_log + backward.probe_log
    if _better(forward.certificate, backward.certificate) is forward.certificate:
        return EdgeCutResult(forward.certificate, "forward", total, log)
    return EdgeCutResult(backward.certificate, "reverse", total, log)
