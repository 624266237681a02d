"""Covering the leftover vertices, and distributing components over a star."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import CoverFailed, Infeasible, SearchTimeout
from ..graph import SimpleGraph
from ..stars import StarDecomposition
from ..unbalanced import Component
from .clusters import Assignment, ClusterPartition, pair_density
from .oracle import embed_backtracking

HALVING_RETRIES = 10


def random_halving(host: SimpleGraph, p: ClusterPartition, stars: StarDecomposition, d: float,
                   seed: int, retries: int = HALVING_RETRIES) -> dict[int, tuple[list[int], list[int]]]:
    """Split every cluster in two by fair coin flips.

    A split is accepted when, along every star edge (X, Y), each vertex of Y
    keeps more than a third of its X-degree in both halves of X (and vice
    versa) and the first halves have density >= d/2.  After ``retries``
    rejected draws the split with the best worst-case degree ratio is used.
    """
    rng = random.Random(seed)
    best, best_score = None, -1.0
    for _ in range(retries):
        halves = {}
        for i, cluster in enumerate(p.clusters):
            first, second = [], []
            for v in cluster:
                (first if rng.random() < 0.5 else second).append(v)
            halves[i] = (first, second)
        ok, score = _halving_quality(host, stars, halves, p, d)
        if ok:
            return halves
        if score > best_score:
            best, best_score = halves, score
    return best


def _halving_quality(host, stars, halves, p, d):
    ok = True
    worst = 1.0
    for st in stars.stars:
        for leaf in st.leaves:
            for x, y in ((st.center, leaf), (leaf, st.center)):
                xa, xb = set(halves[x][0]), set(halves[x][1])
                for w in p.clusters[y]:
                    da, db = host.degree_into(w, xa), host.degree_into(w, xb)
                    total = da + db
                    if total == 0:
                        continue
                    ratio = min(da, db) / total
                    worst = min(worst, ratio)
                    if ratio <= 1 / 3:
                        ok = False
            if pair_density(host, halves[st.center][0], halves[leaf][0]) < d / 2:
                ok = False
    return ok, worst


@dataclass
class Phase1Result:
    mapping: dict[int, int] = field(default_factory=dict)
    vacant: set[int] = field(default_factory=set)
    used_components: set[int] = field(default_factory=set)
    uncovered: list[int] = field(default_factory=list)
    halves: dict = field(default_factory=dict)
    fallbacks: int = 0


def _star_index(stars: StarDecomposition) -> dict[int, int]:
    return {c: i for i, st in enumerate(stars.stars) for c in [st.center] + st.leaves}


def phase1_cover(host: SimpleGraph, p: ClusterPartition, stars: StarDecomposition,
                 assignment: Assignment, components: Sequence[Component], d: float, seed: int,
                 budget: int = 10 ** 5) -> Phase1Result:
    """Cover each assigned leftover vertex with its own pattern component.

    For v assigned to cluster X inside a star, the partner Y is the centre
    when X is a leaf, else the leaf where v has most neighbours.  v becomes
    the image of one vertex of the component's class that belongs on X's
    side (small class on centres, large class on leaves); the rest of that
    class is placed greedily in X's first half, each new vertex needing at
    least d|N|/3 neighbours in the running common neighbourhood N inside
    Y's first half, and the other class is placed inside the final N.

    If the common neighbourhood gets too small the component is handed to
    the exact search, first inside X ∪ Y and then anywhere vacant.  Leftover
    vertices that no component could cover are reported in ``uncovered``.
    """
    halves = random_halving(host, p, stars, d, seed)
    out = Phase1Result(vacant={v for c in p.clusters for v in c}, halves=halves)
    star_of = _star_index(stars)
    free = sorted(range(len(components)), key=lambda i: (components[i].size, i))

    for v, x in sorted(assignment.target.items(), key=lambda kv: (kv[1], kv[0])):
        if not free:
            out.uncovered.append(v)
            continue
        st = stars.stars[star_of[x]]
        if x == st.center:
            y = max(st.leaves, key=lambda b: (host.degree_into(v, set(halves[b][0])), -b))
            on_centre = True
        else:
            y = st.center
            on_centre = False
        k = free.pop(0)
        comp = components[k]
        same, other = (comp.small, comp.large) if on_centre else (comp.large, comp.small)
        if not same:
            same, other = other, same
        try:
            placed = _greedy_cover(host, v, same, other, halves[x][0], halves[y][0], out.vacant, d)
        except CoverFailed:
            out.fallbacks += 1
            try:
                placed = _oracle_cover(host, v, comp, same, other, p.clusters[x], p.clusters[y],
                                       out.vacant, budget)
            except CoverFailed:
                free.insert(0, k)
                out.uncovered.append(v)
                continue
        for u, img in placed.items():
            out.mapping[u] = img
            out.vacant.discard(img)
        out.used_components.add(k)
    return out


def _greedy_cover(host, v, same, other, x_half, y_half, vacant, d):
    xs = [c for c in x_half if c in vacant]
    y_set = set(y_half)
    common = {w for w in host.adj[v] if w in vacant and w in y_set}
    placed = {same[0]: v}
    taken = {v}
    for u in same[1:]:
        need = d * len(common) / 3
        best, best_deg = None, -1
        for c in xs:
            if c in taken:
                continue
            k = host.degree_into(c, common)
            if k >= need and k > best_deg:
                best, best_deg = c, k
        if best is None or best_deg < len(other):
            raise CoverFailed(v)
        placed[u] = best
        taken.add(best)
        common &= host.adj[best]
    if len(common) < len(other):
        raise CoverFailed(v)
    for u, img in zip(other, sorted(common)):
        placed[u] = img
    return placed


def _oracle_cover(host, v, comp, same, other, x_cluster, y_cluster, vacant, budget):
    local = comp.vertices()
    index = {u: i for i, u in enumerate(local)}
    pattern = SimpleGraph(len(local), ((index[a], index[b]) for a, b in comp.edges))
    x_dom = {c for c in x_cluster if c in vacant}
    y_dom = {c for c in y_cluster if c in vacant}
    everywhere = set(vacant)
    for doms in (({index[u]: x_dom for u in same} | {index[u]: y_dom for u in other}),
                 {index[u]: everywhere for u in local}):
        for pin in same:
            try:
                found = embed_backtracking(pattern, host, budget, domains=doms, pinned={index[pin]: v})
            except SearchTimeout:
                found = None
            if found is not None:
                return {local[i]: img for i, img in found.mapping.items()}
    raise CoverFailed(v)


@dataclass
class Distribution:
    """Per component: True when its larger class goes to side A."""

    larger_to_a: list[bool]
    trace: list[tuple[int, int]]


def _class_sizes(c) -> tuple[int, int]:
    if isinstance(c, Component):
        lo, hi = sorted((len(c.small), len(c.large)))
    else:
        lo, hi = sorted(c)
    return lo, hi


def distribute_components(components, a: int, b: int, h: float) -> Distribution:
    """Assign each component's classes to the two sides of K_{a,b}, one by one.

    With a_k, b_k the current vacancies: if h*a_k - b_k > 0 the larger class
    goes to A and the smaller to B, otherwise the other way round.
    ``trace`` holds (a_k, b_k) before each step and after the last.
    Raises Infeasible (with ``.trace`` and ``.index``) when a class does not fit.
    """
    larger_to_a = []
    trace = [(a, b)]
    for k, c in enumerate(components):
        lo, hi = _class_sizes(c)
        to_a = h * a - b > 0
        need_a, need_b = (hi, lo) if to_a else (lo, hi)
        if need_a > a or need_b > b:
            err = Infeasible(f"component {k} ({lo}+{hi}) does not fit into vacancies a={a}, b={b}")
            err.trace = trace
            err.index = k
            raise err
        a -= need_a
        b -= need_b
        larger_to_a.append(to_a)
        trace.append((a, b))
    return Distribution(larger_to_a, trace)
