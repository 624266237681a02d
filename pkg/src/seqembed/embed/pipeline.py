"""Desk-scale embedding of a bounded-degree sequence into a dense host.

Stages, in order:

``realize``   build a realization H with small components
``prefix``    place H's non-bipartite components with the exact search
``clusters``  equal-size random clusters and their density graph
``stars``     star decomposition of the cluster graph
``assign``    super-regularize along stars, assign leftover vertices
``phase1``    cover every assigned leftover vertex with one component
``phase2``    spread the remaining components over the stars and place them

Whatever cannot be placed inside a star goes through one final exact search
over all vacant host vertices.  A returned map is always checked against the
host; success rates are empirical.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import (DegenerateInput, Infeasible, InsufficientGadgets, InvalidInput,
                      Overload, PipelineFailed, SearchTimeout, Stuck, Unassignable)
from ..gadgets import build_bounded_realization
from ..graph import SimpleGraph
from ..sequences import realize_graphic
from ..stars import star_decompose
from ..unbalanced import Component, UnbalancedBipartiteSeq, decompose_unbalanced, union_graph
from .clusters import assign_leftovers, build_cluster_graph, dissolve_cluster, super_regularize
from .oracle import DEFAULT_BUDGET, EmbeddingMap, check_embedding, embed_backtracking
from .phases import distribute_components, phase1_cover

log = logging.getLogger(__name__)

STAGES = ("realize", "prefix", "clusters", "stars", "assign", "phase1", "phase2")


@dataclass
class PipelineParams:
    cluster_size: int | None = None
    density: float = 0.3
    eta: float = 0.1
    seed: int = 0
    slack: int = 0
    node_budget: int = DEFAULT_BUDGET
    max_degree: int | None = None


@dataclass
class PipelineResult:
    embedding: EmbeddingMap
    pattern: SimpleGraph
    stages: list[str] = field(default_factory=list)
    realization: str = "gadgets"
    phase1_fallbacks: int = 0
    final_sweep: int = 0


class _Failure(PipelineFailed):
    def __init__(self, stage, cause, stages):
        super().__init__(stage, cause)
        self.stages = stages


def auto_cluster_size(n: int, q: int) -> int:
    """Aim for about six clusters of at least four vertices; an even count when q = 1."""
    for ell in (6, 5, 4, 3, 2):
        if q == 1 and ell % 2:
            continue
        m = n // ell
        if m >= 4:
            return m
    return max(1, n // 2)


def embed_pipeline(host: SimpleGraph, seq, q: int = 1, params: PipelineParams | None = None) -> PipelineResult:
    """Embed a realization of ``seq`` into ``host``.

    ``seq`` is either a plain degree sequence (vertex v of the pattern has
    degree seq[v]) or an UnbalancedBipartiteSeq (global S-then-T labels).
    Raises PipelineFailed carrying the failing stage and the completed ones.
    """
    params = params or PipelineParams()
    done: list[str] = []

    def fail(stage, cause):
        raise _Failure(stage, cause, list(done))

    n_pattern = seq.n if isinstance(seq, UnbalancedBipartiteSeq) else len(seq)
    if n_pattern > host.n - params.slack:
        raise InvalidInput(f"sequence of length {n_pattern} needs host of at least {n_pattern + params.slack}")

    # realize
    realization = "gadgets"
    try:
        if isinstance(seq, UnbalancedBipartiteSeq):
            comps = decompose_unbalanced(seq, params.max_degree, merge="minimal")
            pattern = union_graph(comps, seq.n)
            realization = "unbalanced"
            odd_parts, isolated = [], []
        else:
            try:
                pattern = build_bounded_realization(seq, params.max_degree).graph
            except InsufficientGadgets:
                pattern = realize_graphic(seq)
                realization = "havel-hakimi"
            comps, odd_parts, isolated = _split_components(pattern)
    except InvalidInput as exc:
        fail("realize", exc)
    done.append("realize")

    # prefix: non-bipartite pieces go first, anywhere in the host
    mapping: dict[int, int] = {}
    if odd_parts:
        placed = _exact_place(pattern, odd_parts, host, set(range(host.n)), params.node_budget)
        if placed is None:
            fail("prefix", "exact search could not place the non-bipartite components")
        mapping.update(placed)
    done.append("prefix")
    free_host = set(range(host.n)) - set(mapping.values())

    # clusters
    m = params.cluster_size or auto_cluster_size(len(free_host), q)
    try:
        part = build_cluster_graph(host, m, params.density, params.seed, vertices=free_host)
    except DegenerateInput as exc:
        fail("clusters", exc)
    done.append("clusters")

    # stars; a cluster that cannot be covered is dissolved into the leftover set
    while True:
        try:
            stars = star_decompose(part.cluster_graph, q)
            break
        except Stuck as exc:
            if len(part.clusters) <= 2:
                fail("stars", exc)
            part = dissolve_cluster(part, exc.vertex, host)
    done.append("stars")

    # assign
    try:
        part = super_regularize(host, part, stars)
        assignment = assign_leftovers(host, part, stars, params.eta, params.density, params.seed + 1)
    except (DegenerateInput, Unassignable, Overload) as exc:
        fail("assign", exc)
    done.append("assign")

    # phase 1
    ph1 = phase1_cover(host, part, stars, assignment, comps, params.density, params.seed + 2)
    done.append("phase1")
    mapping.update(ph1.mapping)
    vacant = set(ph1.vacant) | set(ph1.uncovered)
    remaining = [c for i, c in enumerate(comps) if i not in ph1.used_components]

    # phase 2
    leftovers, placed_in_stars = _phase2(host, part, stars, remaining, vacant, params.node_budget)
    mapping.update(placed_in_stars)
    vacant -= set(placed_in_stars.values())
    sweep_vertices = [u for c in leftovers for u in c.vertices()] + isolated
    if sweep_vertices:
        sweep = _exact_place(pattern, [sorted(sweep_vertices)], host, vacant, params.node_budget)
        if sweep is None:
            fail("phase2", f"final exact search could not place {len(sweep_vertices)} vertices")
        mapping.update(sweep)
    done.append("phase2")

    if not check_embedding(pattern, host, mapping):
        raise RuntimeError("pipeline produced an invalid embedding")
    return PipelineResult(EmbeddingMap(mapping), pattern, done, realization,
                          ph1.fallbacks, len(sweep_vertices))


def _split_components(pattern: SimpleGraph):
    """Bipartite components (small class first), non-bipartite vertex groups, isolated vertices."""
    comps, odd, isolated = [], [], []
    for verts in pattern.components():
        if len(verts) == 1 and pattern.degree(verts[0]) == 0:
            isolated.append(verts[0])
            continue
        sides = pattern.bipartition(verts)
        if sides is None:
            odd.append(verts)
            continue
        small, large = sorted(sides, key=len)
        edges = [(u, w) for u in verts for w in pattern.adj[u] if u < w]
        comps.append(Component(small=list(small), large=list(large), edges=edges))
    return comps, odd, isolated


def _exact_place(pattern: SimpleGraph, groups: Sequence[Sequence[int]], host: SimpleGraph,
                 allowed: set, budget: int):
    verts = sorted(v for g in groups for v in g)
    sub, labels = pattern.induced(verts)
    doms = {i: allowed for i in range(sub.n)}
    try:
        found = embed_backtracking(sub, host, budget, domains=doms)
    except SearchTimeout:
        return None
    if found is None:
        return None
    return {labels[i]: img for i, img in found.mapping.items()}


def _phase2(host, part, stars, components: list[Component], vacant: set, budget: int):
    """Spread components over stars by remaining capacity, then place each star exactly."""
    sides = []
    for st in stars.stars:
        a_side = {v for v in part.clusters[st.center] if v in vacant}
        b_side = {v for b in st.leaves for v in part.clusters[b] if v in vacant}
        if len(a_side) > len(b_side):
            a_side, b_side = b_side, a_side
        sides.append((a_side, b_side))
    capacity = [len(a) + len(b) for a, b in sides]
    buckets: list[list[Component]] = [[] for _ in sides]
    leftovers: list[Component] = []
    for comp in sorted(components, key=lambda c: (-c.size, min(c.vertices()))):
        if not sides:
            leftovers.append(comp)
            continue
        k = max(range(len(sides)), key=lambda i: (capacity[i], -i))
        if capacity[k] < comp.size:
            leftovers.append(comp)
            continue
        buckets[k].append(comp)
        capacity[k] -= comp.size

    placed: dict[int, int] = {}
    for (a_side, b_side), bucket in zip(sides, buckets):
        if not bucket:
            continue
        a, b = len(a_side), len(b_side)
        try:
            dist = distribute_components(bucket, a, b, b / a if a else 1.0)
        except Infeasible as exc:
            fits = bucket[:exc.index]
            leftovers.extend(bucket[exc.index:])
            if not fits:
                continue
            bucket = fits
            dist = distribute_components(bucket, a, b, b / a if a else 1.0)
        domains = {}
        for comp, to_a in zip(bucket, dist.larger_to_a):
            lo, hi = sorted((comp.small, comp.large), key=len)
            for u in hi:
                domains[u] = a_side if to_a else b_side
            for u in lo:
                domains[u] = b_side if to_a else a_side
        verts = [u for c in bucket for u in c.vertices()]
        sub_placed = _place_bucket(host, bucket, verts, domains, budget)
        if sub_placed is None:
            leftovers.extend(bucket)
            continue
        placed.update(sub_placed)
    return leftovers, placed


def _place_bucket(host, bucket, verts, domains, budget):
    verts = sorted(verts)
    index = {u: i for i, u in enumerate(verts)}
    sub = SimpleGraph(len(verts))
    for comp in bucket:
        for u, w in comp.edges:
            sub.add_edge(index[u], index[w])
    try:
        found = embed_backtracking(sub, host, budget, domains={index[u]: domains[u] for u in verts})
    except SearchTimeout:
        return None
    if found is None:
        return None
    return {verts[i]: img for i, img in found.mapping.items()}
