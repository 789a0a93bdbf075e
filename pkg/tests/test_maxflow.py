import random

import pytest

from dircut import (
    INFINITE,
    DiGraph,
    max_flow,
    min_cut_sink_side,
    verify_flow,
)

from conftest import brute_min_st_cut, g1, rand_digraph


def test_single_arc_network():
    g = DiGraph(2, [(0, 1, 5)])
    res = max_flow(g, 0, 1)
    assert res.value == 5
    assert res.source_side == frozenset([0])
    cert = min_cut_sink_side(res)
    assert cert.sink_set == frozenset([1]) and cert.value == 5


def test_g1_flows():
    g = g1()
    rb = max_flow(g, 0, 2)
    assert rb.value == 2 and rb.source_side == frozenset([0, 1])
    cert = min_cut_sink_side(rb)
    assert cert.sink_set == frozenset([2]) and cert.value == 2
    assert [g.arcs[i] for i in cert.crossing] == [(0, 2, 1), (1, 2, 1)]

    ra = max_flow(g, 0, 1)
    assert ra.value == 3 and ra.source_side == frozenset([0])
    cert = min_cut_sink_side(ra)
    assert cert.sink_set == frozenset([1, 2]) and cert.value == 3
    assert [g.arcs[i] for i in cert.crossing] == [(0, 1, 2), (0, 2, 1)]


def test_source_equals_sink_rejected():
    with pytest.raises(ValueError):
        max_flow(g1(), 1, 1)


def test_oracle_equivalence_random():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(2, 8)
        g = rand_digraph(rng, n, rng.randint(0, 14), wmax=10, strong=False)
        s, t = rng.sample(range(n), 2)
        res = max_flow(g, s, t)
        assert res.graph.value(res.value) == brute_min_st_cut(g, s, t)


def test_duality_arc_by_arc():
    rng = random.Random(8)
    for _ in range(30):
        g = rand_digraph(rng, rng.randint(2, 8), rng.randint(0, 14), strong=False)
        s, t = rng.sample(range(g.n), 2)
        res = max_flow(g, s, t)
        side = res.source_side
        assert s in side and t not in side
        for (u, v, c), f in zip(g.arcs, res.flows):
            if u in side and v not in side:
                assert f == c, "forward cut arc must be saturated"
            if u not in side and v in side:
                assert f == 0, "reverse cut arc must carry nothing"


def test_integrality_and_feasibility():
    rng = random.Random(9)
    for _ in range(30):
        g = rand_digraph(rng, rng.randint(2, 7), rng.randint(0, 12), strong=False)
        s, t = rng.sample(range(g.n), 2)
        res = max_flow(g, s, t)
        assert isinstance(res.value, int)
        assert all(isinstance(f, int) for f in res.flows)
        assert verify_flow(g, res.flows, s, t)


def test_verify_flow_rejects_corruptions():
    g = DiGraph(3, [(0, 1, 2), (1, 2, 2)])
    res = max_flow(g, 0, 2)
    assert verify_flow(g, res.flows, 0, 2)
    over = list(res.flows)
    over[0] += 1  # exceeds capacity by one scale unit
    assert not verify_flow(g, tuple(over), 0, 2)
    broken = list(res.flows)
    broken[1] -= 1  # violates conservation at vertex 1
    assert not verify_flow(g, tuple(broken), 0, 2)
    assert not verify_flow(g, res.flows[:1], 0, 2)


def test_infinite_arcs_participate():
    g = DiGraph(3, [(0, 1, INFINITE), (1, 2, 4)])
    res = max_flow(g, 0, 2)
    assert res.value == 4
    cert = min_cut_sink_side(res)
    assert cert.sink_set == frozenset([2])
