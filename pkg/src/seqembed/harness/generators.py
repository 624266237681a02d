"""Seeded random instances: dense hosts, sharpness hosts, bounded sequences.

Every generator takes an integer seed and draws from its own
``random.Random`` (Mersenne Twister), which produces the same stream on every
platform for a given seed.
"""

from __future__ import annotations

import math
import random

from ..errors import BadParity, Infeasible, InvalidInput
from ..graph import SimpleGraph
from ..sequences import is_graphic
from ..unbalanced import UnbalancedBipartiteSeq


def gen_host_min_degree(n: int, min_frac: float, seed: int) -> SimpleGraph:
    """G(n, min_frac + 0.1) patched until the minimum degree is ceil(min_frac * n)."""
    target = math.ceil(min_frac * n - 1e-9)
    if target > n - 1:
        raise InvalidInput(f"minimum degree {target} impossible on {n} vertices")
    rng = random.Random(seed)
    p = min(1.0, min_frac + 0.1)
    g = SimpleGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    for v in range(n):
        missing = target - g.degree(v)
        if missing > 0:
            candidates = [w for w in range(n) if w != v and w not in g.adj[v]]
            for w in rng.sample(candidates, missing):
                g.add_edge(v, w)
    return g


def gen_sharpness_host(n: int) -> SimpleGraph:
    """K_{n/2-1, n/2+1}: minimum degree n/2 - 1 and no perfect matching."""
    if n % 2:
        raise BadParity(f"n={n} must be even")
    if n < 4:
        raise InvalidInput("n must be at least 4")
    return SimpleGraph.complete_bipartite(n // 2 - 1, n // 2 + 1)


def gen_bounded_graphic_seq(n: int, max_degree: int, seed: int, min_degree: int = 1,
                            attempts: int = 200) -> list[int]:
    """Uniform entries in [min_degree, max_degree], parity-repaired, rejected until graphic."""
    if n < 1 or max_degree < min_degree or min_degree < 0:
        raise Infeasible(f"no sequences for n={n}, degrees in [{min_degree}, {max_degree}]")
    rng = random.Random(seed)
    for _ in range(attempts):
        seq = [rng.randint(min_degree, max_degree) for _ in range(n)]
        if sum(seq) % 2:
            i = rng.randrange(n)
            if seq[i] < max_degree:
                seq[i] += 1
            elif seq[i] > min_degree:
                seq[i] -= 1
            else:
                continue
        if is_graphic(seq):
            return seq
    raise Infeasible(f"no graphic sequence found for n={n}, D={max_degree} in {attempts} draws")


def gen_unbalanced_graph(s: int, t: int, q: int, max_degree: int, seed: int) -> SimpleGraph:
    """Random bipartite graph, S = 0..s-1 and T = s..s+t-1, positive degrees <= max_degree.

    Each T vertex first hangs off one S vertex (every S vertex gets between 1
    and max_degree of them), then random extra S–T edges are added within the
    degree cap.
    """
    if s < 1 or q * s > t or t > max_degree * s:
        raise Infeasible(f"need 1 <= s, q*s <= t <= D*s; got s={s}, t={t}, q={q}, D={max_degree}")
    rng = random.Random(seed)
    g = SimpleGraph(s + t)
    # star-forest skeleton: split t into s parts in [1, D]
    parts = [1] * s
    for _ in range(t - s):
        i = rng.choice([k for k in range(s) if parts[k] < max_degree])
        parts[i] += 1
    ts = list(range(s, s + t))
    rng.shuffle(ts)
    pos = 0
    for i, k in enumerate(parts):
        for w in ts[pos:pos + k]:
            g.add_edge(i, w)
        pos += k
    extra = rng.randint(0, s * max_degree)
    for _ in range(extra):
        u = rng.randrange(s)
        w = rng.randrange(s, s + t)
        if w not in g.adj[u] and g.degree(u) < max_degree and g.degree(w) < max_degree:
            g.add_edge(u, w)
    return g


def gen_unbalanced_seq(s: int, t: int, q: int, max_degree: int, seed: int) -> UnbalancedBipartiteSeq:
    """Degrees read off a random q-unbalanced bipartite graph (realizable by construction)."""
    g = gen_unbalanced_graph(s, t, q, max_degree, seed)
    deg = g.degrees()
    return UnbalancedBipartiteSeq(side_s=tuple(deg[:s]), side_t=tuple(deg[s:]), q=q)


def gen_host_with_odd_component(n: int, seed: int, p: float = 0.7) -> SimpleGraph:
    """Two random blocks of odd size (n even), no edges between them."""
    if n % 2 or n < 2:
        raise BadParity(f"n={n} must be even and positive")
    rng = random.Random(seed)
    first = rng.randrange(1, n, 2)
    g = SimpleGraph(n)
    for block in (range(first), range(first, n)):
        verts = list(block)
        for i, u in enumerate(verts):
            for v in verts[i + 1:]:
                if rng.random() < p:
                    g.add_edge(u, v)
    return g
