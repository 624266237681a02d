import random

import pytest
from hypothesis import given, strategies as st

from seqembed.embed.clusters import Assignment, ClusterPartition, assign_leftovers
from seqembed.embed.phases import distribute_components, phase1_cover, random_halving
from seqembed.errors import Infeasible
from seqembed.graph import SimpleGraph
from seqembed.stars import Star, StarDecomposition
from seqembed.unbalanced import Component


def _pair(m, p_edge, seed, extra=True):
    """Two clusters of size m joined at density ~p_edge, plus one leftover vertex seeing cluster B."""
    rng = random.Random(seed)
    g = SimpleGraph(2 * m + 1)
    for u in range(m):
        for w in range(m, 2 * m):
            if rng.random() < p_edge:
                g.add_edge(u, w)
    if extra:
        for w in range(m, 2 * m):
            if rng.random() < p_edge:
                g.add_edge(2 * m, w)
    part = ClusterPartition([list(range(m)), list(range(m, 2 * m))], [2 * m], SimpleGraph(2, [(0, 1)]), 0.5)
    return g, part, StarDecomposition([Star(0, [1])], 1, {0, 1})


def _star_component(q, base=0):
    return Component(small=[base], large=list(range(base + 1, base + 1 + q)),
                     edges=[(base, base + 1 + i) for i in range(q)])


def test_halving_splits_every_cluster():
    g, part, stars = _pair(20, 0.8, 1)
    halves = random_halving(g, part, stars, 0.5, seed=3)
    for i, c in enumerate(part.clusters):
        a, b = halves[i]
        assert sorted(a + b) == sorted(c)


def test_no_assigned_vertices():
    g, part, stars = _pair(10, 0.9, 0)
    res = phase1_cover(g, part, stars, Assignment(), [_star_component(2)], 0.5, seed=0)
    assert res.mapping == {} and res.vacant == set(range(20)) and res.uncovered == []


def test_complete_pair_star_cover():
    m, q = 8, 3
    g = SimpleGraph.complete_bipartite(m, m)
    g = SimpleGraph.disjoint_union(g, SimpleGraph(1))
    for w in range(m, 2 * m):
        g.add_edge(2 * m, w)
    part = ClusterPartition([list(range(m)), list(range(m, 2 * m))], [2 * m], SimpleGraph(2, [(0, 1)]), 0.5)
    stars = StarDecomposition([Star(0, [1])], 1, {0, 1})
    a = assign_leftovers(g, part, stars, 0.1)
    assert a.target == {2 * m: 0}
    res = phase1_cover(g, part, stars, a, [_star_component(q)], 0.5, seed=0)
    assert res.mapping[0] == 2 * m
    assert all(m <= res.mapping[u] < 2 * m for u in range(1, q + 1))
    assert res.uncovered == [] and res.fallbacks == 0


def _random_component(rng, q=1, d=3):
    s = rng.randint(1, 2)
    t = rng.randint(q * s, min(d * s, 8 - s))
    small = list(range(s))
    large = list(range(s, s + t))
    edges = [(small[i % s], w) for i, w in enumerate(large)]
    for u in small:
        for w in large:
            if (u, w) not in edges and rng.random() < 0.3 and sum(1 for e in edges if e[0] == u) < d:
                edges.append((u, w))
    return Component(small, large, edges)


def test_dense_pair_monte_carlo():
    ok = 0
    for seed in range(200):
        rng = random.Random(seed)
        g, part, stars = _pair(40, 0.6, seed)
        a = assign_leftovers(g, part, stars, 0.1)
        comp = _random_component(rng)
        res = phase1_cover(g, part, stars, a, [comp], 0.5, seed)
        images = list(res.mapping.values())
        assert len(set(images)) == len(images)
        assert len(images) <= comp.size
        if not res.uncovered:
            assert all(g.has_edge(res.mapping[u], res.mapping[w]) for u, w in comp.edges)
            assert 2 * 40 in images
            ok += 1
    assert ok == 200


# distribution ----------------------------------------------------------------

def test_distribute_examples():
    d = distribute_components([(1, 1)] * 5, 10, 10, 1)
    assert len(d.larger_to_a) == 5 and d.trace[-1] == (5, 5)
    empty = distribute_components([], 7, 9, 1)
    assert empty.larger_to_a == [] and empty.trace == [(7, 9)]


def test_distribute_infeasible_reports_index():
    with pytest.raises(Infeasible) as exc:
        distribute_components([(1, 3), (2, 8)], 4, 6, 1)
    assert exc.value.index == 1 and exc.value.trace[-1] == (3, 3)


def _instance(rng, q, d=2):
    h = rng.randint(1, q)
    a = rng.randint(4 * (2 * q + 1) * d * d, 120)
    b = h * a
    vol_max = a + b - 4 * (2 * q + 1) * d * d
    comps, vol = [], 0
    while True:
        s = rng.randint(1, max(1, 2 * d * d // q))
        t = rng.randint(q * s, 2 * d * d)
        if vol + s + t > vol_max:
            break
        comps.append((s, t))
        vol += s + t
    return comps, a, b, h


def test_volume_bound_monte_carlo():
    # total volume exactly a + b - 4(2q+1)D^2 with D = 2, q = 2, a = b = 64
    q, d = 2, 2
    for seed in range(200):
        rng = random.Random(seed)
        a = b = 64
        remaining = a + b - 4 * (2 * q + 1) * d * d
        comps = []
        while remaining > 2 * d * d + 1:
            s = rng.randint(1, 2)
            t = rng.randint(q * s, min(2 * d * d, remaining - s - (q + 1)))
            comps.append((s, t))
            remaining -= s + t
        comps.append((1, remaining - 1))
        assert sum(s + t for s, t in comps) == a + b - 4 * (2 * q + 1) * d * d
        assert all(t >= q * s for s, t in comps)
        dist = distribute_components(comps, a, b, 1)
        assert len(dist.larger_to_a) == len(comps)


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_places_everything_under_volume_bound(q, seed):
    comps, a, b, h = _instance(random.Random(seed), q)
    dist = distribute_components(comps, a, b, h)
    assert len(dist.larger_to_a) == len(comps)


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_running_balance_stays_in_window(q, seed):
    # with L the largest class placed, h*a_k - b_k stays in (-h*L, L]
    comps, a, b, h = _instance(random.Random(seed), q)
    dist = distribute_components(comps, a, b, h)
    big = max((t for _, t in comps), default=0)
    for ak, bk in dist.trace:
        assert -h * big < h * ak - bk <= big or (ak, bk) == (a, b)
