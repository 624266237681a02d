"""Equal-size cluster partitions with a density-threshold cluster graph.

This is a density-only stand-in for a regular partition: pairs are joined
in the cluster graph when their edge density reaches the threshold, and no
ε-regularity is certified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from ..errors import DegenerateInput, InvalidInput, Overload, Unassignable
from ..graph import SimpleGraph
from ..stars import StarDecomposition


@dataclass
class ClusterPartition:
    clusters: list[list[int]]
    exceptional: list[int]
    cluster_graph: SimpleGraph
    density_threshold: float

    @property
    def cluster_size(self) -> int:
        return len(self.clusters[0]) if self.clusters else 0

    def cluster_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.clusters) for v in c}


def pair_density(host: SimpleGraph, a, b) -> float:
    if not a or not b:
        return 0.0
    bset = set(b)
    return sum(host.degree_into(v, bset) for v in a) / (len(a) * len(b))


def build_cluster_graph(host: SimpleGraph, m: int, d: float, seed: int,
                        vertices=None) -> ClusterPartition:
    """Random equitable partition of ``vertices`` (default: all) into clusters of size m.

    The fewer-than-m leftover vertices form the exceptional set.  Cluster
    i and j are adjacent in the cluster graph iff their density is >= d.
    """
    verts = list(range(host.n)) if vertices is None else sorted(vertices)
    if m < 1:
        raise InvalidInput("cluster size must be positive")
    if not 0 < d < 1:
        raise InvalidInput("density threshold must lie in (0, 1)")
    if len(verts) < 2 * m:
        raise DegenerateInput(f"{len(verts)} vertices cannot hold two clusters of size {m}")
    rng = random.Random(seed)
    rng.shuffle(verts)
    ell = len(verts) // m
    clusters = [verts[i * m:(i + 1) * m] for i in range(ell)]
    exceptional = sorted(verts[ell * m:])
    return ClusterPartition(clusters, exceptional, cluster_graph_of(host, clusters, d), d)


def cluster_graph_of(host: SimpleGraph, clusters, d: float) -> SimpleGraph:
    """Cluster i ~ cluster j iff their pair density is at least d."""
    cg = SimpleGraph(len(clusters))
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            if pair_density(host, clusters[i], clusters[j]) >= d:
                cg.add_edge(i, j)
    return cg


def dissolve_cluster(p: ClusterPartition, index: int, host: SimpleGraph) -> ClusterPartition:
    """Move one cluster into the exceptional set and rebuild the cluster graph."""
    clusters = [list(c) for i, c in enumerate(p.clusters) if i != index]
    exceptional = sorted(p.exceptional + p.clusters[index])
    return ClusterPartition(clusters, exceptional, cluster_graph_of(host, clusters, p.density_threshold),
                            p.density_threshold)


def super_regularize(host: SimpleGraph, p: ClusterPartition, stars: StarDecomposition) -> ClusterPartition:
    """Discard low-degree vertices along every star edge, then equalize cluster sizes.

    For a star with centre A and leaf B, vertices of A with at most 2dm/3
    neighbours in B go to the exceptional set, then vertices of B with at
    most 2dm/3 neighbours in (the trimmed) A.  Afterwards every cluster is cut
    down to the smallest surviving size by dropping its last vertices.  The
    cluster graph is kept as is; star edges keep their meaning.
    """
    m = p.cluster_size
    d = p.density_threshold
    limit = 2 * d * m / 3
    clusters = [list(c) for c in p.clusters]
    discarded: list[int] = []
    for st in stars.stars:
        for leaf in st.leaves:
            a, b = clusters[st.center], clusters[leaf]
            bset = set(b)
            keep_a = [v for v in a if host.degree_into(v, bset) > limit]
            discarded += [v for v in a if host.degree_into(v, bset) <= limit]
            aset = set(keep_a)
            keep_b = [w for w in b if host.degree_into(w, aset) > limit]
            discarded += [w for w in b if host.degree_into(w, aset) <= limit]
            clusters[st.center], clusters[leaf] = keep_a, keep_b
    size = min(len(c) for c in clusters)
    if size == 0:
        raise DegenerateInput("super-regularization emptied a cluster")
    for i, c in enumerate(clusters):
        discarded += c[size:]
        clusters[i] = c[:size]
    return ClusterPartition(clusters, sorted(p.exceptional + discarded), p.cluster_graph, d)


@dataclass
class Assignment:
    """Exceptional vertex -> cluster index, plus the per-cluster load."""

    target: dict[int, int] = field(default_factory=dict)
    load: dict[int, int] = field(default_factory=dict)
    cap: int = 0

    def per_cluster(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in sorted(self.target.items()):
            out.setdefault(c, []).append(v)
        return out


def permitted_clusters(host: SimpleGraph, p: ClusterPartition, stars: StarDecomposition,
                       v: int, eta: float) -> list[int]:
    """Clusters an exceptional vertex may join.

    v has large degree to a cluster Q when it has >= eta*|Q|/4 neighbours in
    Q.  Large degree to a leaf of a star permits its centre; if the star has
    fewer than q leaves, large degree to the centre permits every leaf.
    """
    out = set()
    for st in stars.stars:
        centre = p.clusters[st.center]
        if any(_large(host, v, p.clusters[b], eta) for b in st.leaves):
            out.add(st.center)
        if len(st.leaves) < stars.q and _large(host, v, centre, eta):
            out.update(st.leaves)
    return sorted(out)


def _large(host, v, cluster, eta):
    return host.degree_into(v, set(cluster)) >= eta * len(cluster) / 4


def assign_leftovers(host: SimpleGraph, p: ClusterPartition, stars: StarDecomposition,
                     eta: float, d: float | None = None, seed: int = 0) -> Assignment:
    """Assign every exceptional vertex to a permitted cluster, least loaded first.

    Each cluster takes at most floor(sqrt(d) * m) vertices.  Vertices with
    fewer options go first; ties are broken by a seeded shuffle.
    """
    d = p.density_threshold if d is None else d
    cap = math.floor(math.sqrt(d) * p.cluster_size)
    rng = random.Random(seed)
    options = {v: permitted_clusters(host, p, stars, v, eta) for v in p.exceptional}
    tiebreak = {v: rng.random() for v in p.exceptional}
    out = Assignment(cap=cap)
    for v in sorted(p.exceptional, key=lambda v: (len(options[v]), tiebreak[v])):
        if not options[v]:
            raise Unassignable(v)
        best = min(options[v], key=lambda c: (out.load.get(c, 0), c))
        if out.load.get(best, 0) >= cap:
            raise Overload(v, cap)
        out.target[v] = best
        out.load[best] = out.load.get(best, 0) + 1
    return out
