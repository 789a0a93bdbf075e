"""Random instance families for experiments and acceptance runs.

Every family is deterministic for a fixed seed.  ``planted-sink`` embeds a
sink component with a controlled in-cut value and in-volume and reports
both in the metadata, which makes it a semi-oracle: the true minimum
rooted cut is at most the planted value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

FAMILIES = (
    "erdos-renyi-digraph",
    "planted-sink",
    "cycle",
    "star",
    "layered-dag-backarcs",
)


@dataclass(frozen=True)
class GeneratedInstance:
    text: str
    meta: dict


def _render_edge(n, arcs, comments):
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge-cap {n} {len(arcs)}")
    for u, v, cap in arcs:
        lines.append(f"a {u + 1} {v + 1} {cap}")
    return "\n".join(lines) + "\n"


def _render_vertex(n, arcs, vcaps, comments):
    lines = [f"c {c}" for c in comments]
    lines.append(f"p vertex-cap {n} {len(arcs)}")
    for u, v in arcs:
        lines.append(f"a {u + 1} {v + 1}")
    for v, cap in enumerate(vcaps):
        lines.append(f"w {v + 1} {cap}")
    return "\n".join(lines) + "\n"


def _cycle(seed, n=3, caps=None, wmax=10, **extra):
    _reject_extra(extra)
    if n < 2:
        raise ValueError("cycle needs n >= 2")
    rng = random.Random(seed)
    if caps is None:
        caps = [rng.randint(1, wmax) for _ in range(n)]
    arcs = [(i, (i + 1) % n, caps[i % len(caps)]) for i in range(n)]
    meta = {"family": "cycle", "n": n, "seed": seed}
    return GeneratedInstance(_render_edge(n, arcs, _comments(meta)), meta)


def _star(seed, n=4, cap=7, **extra):
    _reject_extra(extra)
    if n < 2:
        raise ValueError("star needs n >= 2")
    arcs = [(0, i, cap) for i in range(1, n)]
    meta = {"family": "star", "n": n, "seed": seed}
    return GeneratedInstance(_render_edge(n, arcs, _comments(meta)), meta)


def _erdos_renyi(seed, n=10, p=0.3, wmax=10, ensure_strong=True,
                 kind="edge-cap", vcap_max=10, **extra):
    _reject_extra(extra)
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0 <= p <= 1):
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    pairs = set()
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                pairs.add((u, v))
    if ensure_strong:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(n):
            pairs.add((order[i], order[(i + 1) % n]))
    arcs = sorted(pairs)
    meta = {
        "family": "erdos-renyi-digraph", "n": n, "seed": seed,
        "strong": bool(ensure_strong),
    }
    if kind == "vertex-cap":
        vcaps = [rng.randint(1, vcap_max) for _ in range(n)]
        return GeneratedInstance(
            _render_vertex(n, arcs, vcaps, _comments(meta)), meta
        )
    weighted = [(u, v, rng.randint(1, wmax)) for u, v in arcs]
    return GeneratedInstance(_render_edge(n, weighted, _comments(meta)), meta)


def _planted_sink(seed, n=20, sink_size=4, volume=12, value=5,
                  out_degree=3, hub_out=None, **extra):
    _reject_extra(extra)
    ambient_size = n - sink_size
    if sink_size < 2 or ambient_size < 2:
        raise ValueError("need at least 2 ambient and 2 sink vertices")
    if hub_out is None:
        # vertex 0 doubles as the conventional root; give it a wide fan-out
        # so rooted runs are not supply-starved at the source
        hub_out = max(out_degree, ambient_size // 4)
    internal = volume - 1  # one crossing arc carries the whole planted value
    if internal < sink_size:
        raise ValueError("volume too small for a strongly connected sink")
    if internal > sink_size * (sink_size - 1):
        raise ValueError("volume too large for a simple sink component")
    if value < 1:
        raise ValueError("planted value must be positive")
    rng = random.Random(seed)
    heavy = 5 * value + 10
    ambient = list(range(ambient_size))
    sink = list(range(ambient_size, n))
    pairs = set()
    order = ambient[:]
    rng.shuffle(order)
    for i in range(ambient_size):
        pairs.add((order[i], order[(i + 1) % ambient_size]))
    for u in ambient:
        for _ in range(out_degree - 1):
            v = rng.randrange(ambient_size)
            if v != u:
                pairs.add((u, v))
    for v in rng.sample(ambient[1:], min(hub_out, ambient_size - 1)):
        pairs.add((0, v))
    arcs = [(u, v, rng.randint(heavy, 2 * heavy)) for u, v in sorted(pairs)]
    # sink interior: a cycle plus extra arcs until the in-volume target
    interior = set()
    for i in range(sink_size):
        interior.add((sink[i], sink[(i + 1) % sink_size]))
    while len(interior) < internal:
        u, v = rng.sample(sink, 2)
        interior.add((u, v))
    arcs.extend((u, v, rng.randint(heavy, 2 * heavy)) for u, v in sorted(interior))
    entry = rng.randrange(ambient_size)
    arcs.append((entry, sink[0], value))  # the planted crossing arc
    # heavy return arcs keep the whole graph strongly connected
    arcs.append((sink[-1], ambient[0], rng.randint(heavy, 2 * heavy)))
    meta = {
        "family": "planted-sink", "n": n, "seed": seed,
        "planted_value": value, "sink": tuple(sink), "volume": volume,
    }
    comments = _comments(meta) + [
        "planted-value " + str(value),
        "planted-sink " + " ".join(str(v + 1) for v in sink),
    ]
    return GeneratedInstance(_render_edge(n, arcs, comments), meta)


def _layered(seed, n=12, width=4, p=0.5, wmax=10, **extra):
    _reject_extra(extra)
    if n < 2 or width < 1:
        raise ValueError("need n >= 2 and width >= 1")
    rng = random.Random(seed)
    layers = [list(range(i, min(i + width, n))) for i in range(0, n, width)]
    pairs = set()
    for a, b in zip(layers, layers[1:]):
        for u in a:
            hit = False
            for v in b:
                if rng.random() < p:
                    pairs.add((u, v))
                    hit = True
            if not hit:
                pairs.add((u, rng.choice(b)))
    for i in range(n):  # back arcs: one global cycle
        pairs.add((i, (i + 1) % n))
    arcs = [(u, v, rng.randint(1, wmax)) for u, v in sorted(pairs)]
    meta = {"family": "layered-dag-backarcs", "n": n, "seed": seed}
    return GeneratedInstance(_render_edge(n, arcs, _comments(meta)), meta)


def _comments(meta):
    return [f"{k} {v}" for k, v in meta.items() if k not in ("sink",)]


def _reject_extra(extra):
    if extra:
        raise ValueError(f"unknown parameters: {sorted(extra)}")


_DISPATCH = {
    "cycle": _cycle,
    "star": _star,
    "erdos-renyi-digraph": _erdos_renyi,
    "planted-sink": _planted_sink,
    "layered-dag-backarcs": _layered,
}


def generate(family: str, seed: int = 0, **params) -> GeneratedInstance:
    """Produce one deterministic instance of the given family."""
    if family not in _DISPATCH:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return _DISPATCH[family](seed, **params)
