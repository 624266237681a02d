import math

import pytest
from hypothesis import given, strategies as st

from seqembed.errors import BadParity, Infeasible
from seqembed.graph import SimpleGraph
from seqembed.harness.generators import (gen_bounded_graphic_seq, gen_host_min_degree, gen_host_with_odd_component,
                                         gen_sharpness_host, gen_unbalanced_seq)
from seqembed.sequences import is_graphic
from seqembed.unbalanced import decompose_unbalanced


def test_forced_complete():
    assert gen_host_min_degree(10, 0.9, 0) == SimpleGraph.complete(10)


@given(st.integers(2, 40), st.floats(0.05, 0.95), st.integers(0, 10 ** 6))
def test_min_degree_bound(n, frac, seed):
    if math.ceil(frac * n) > n - 1:
        return
    g = gen_host_min_degree(n, frac, seed)
    assert g.min_degree() >= math.ceil(frac * n)


def test_density_sanity():
    dens = [gen_host_min_degree(30, 0.55, s).density() for s in range(100)]
    mean = sum(dens) / len(dens)
    assert 0.55 <= mean <= 1


def test_sharpness_host():
    g = gen_sharpness_host(8)
    assert g == SimpleGraph.complete_bipartite(3, 5)
    assert gen_sharpness_host(4) == SimpleGraph.complete_bipartite(1, 3)
    assert g.min_degree() == 3
    with pytest.raises(BadParity):
        gen_sharpness_host(7)


def test_bounded_sequences():
    assert gen_bounded_graphic_seq(4, 1, 0) == [1, 1, 1, 1]
    with pytest.raises(Infeasible):
        gen_bounded_graphic_seq(5, 1, 0)
    for seed in range(1000):
        n, d = 4 + 2 * (seed % 15), 1 + seed % 5
        seq = gen_bounded_graphic_seq(n, d, seed)
        assert len(seq) == n and is_graphic(seq) and max(seq) <= d


@given(st.integers(1, 3), st.integers(1, 10), st.integers(0, 10 ** 6))
def test_unbalanced_sequences(q, s, seed):
    d = q + 1
    seq = gen_unbalanced_seq(s, q * s, q, d, seed)
    assert len(seq.side_s) == s and len(seq.side_t) == q * s
    assert seq.max_degree <= d
    assert sum(seq.side_s) == sum(seq.side_t)
    decompose_unbalanced(seq, d)


def test_odd_component_host():
    g = gen_host_with_odd_component(10, 3)
    assert any(len(c) % 2 for c in g.components())
    with pytest.raises(BadParity):
        gen_host_with_odd_component(9, 0)
