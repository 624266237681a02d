"""Exact subgraph embedding by backtracking.

``embed_backtracking`` answers three ways: a mapping, ``None`` (exhaustive
search proved no embedding exists), or ``SearchTimeout`` when the node budget
runs out.  A timeout is never reported as non-existence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx
from networkx.algorithms import isomorphism

from ..errors import SearchTimeout
from ..graph import SimpleGraph

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class EmbeddingMap:
    """Injective map pattern vertex -> host vertex."""

    mapping: dict

    def __len__(self):
        return len(self.mapping)

    def as_list(self, n: int) -> list[int]:
        return [self.mapping[v] for v in range(n)]


def check_embedding(pattern: SimpleGraph, host: SimpleGraph, mapping: Mapping[int, int]) -> bool:
    """Total, injective, in range, and every pattern edge lands on a host edge."""
    if set(mapping) != set(range(pattern.n)):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images):
        return False
    if any(not (0 <= x < host.n) for x in images):
        return False
    return all(host.has_edge(mapping[u], mapping[v]) for u, v in pattern.edges())


def embed_backtracking(pattern: SimpleGraph, host: SimpleGraph, budget: int = DEFAULT_BUDGET,
                       *, domains: Mapping[int, set] | None = None,
                       pinned: Mapping[int, int] | None = None) -> EmbeddingMap | None:
    """Find an edge-preserving injection of ``pattern`` into ``host``.

    ``domains`` optionally restricts each pattern vertex to a set of host
    vertices; ``pinned`` fixes some images outright.  Pattern vertices are
    placed component by component, highest degree first, and host candidates
    are tried by ascending number of still-unused neighbours.  Isomorphic
    pattern components with identical domains are forced into increasing
    order of their root images, which removes their permutation symmetry.
    """
    return _Search(pattern, host, budget, domains or {}, pinned or {}).run()


class _Search:
    def __init__(self, pattern, host, budget, domains, pinned):
        self.p = pattern
        self.h = host
        self.budget = budget
        self.nodes = 0
        everything = set(range(host.n))
        self.allowed = []
        for u in range(pattern.n):
            if u in pinned:
                dom = {pinned[u]}
            else:
                dom = set(domains.get(u, everything))
            du = pattern.degree(u)
            self.allowed.append({x for x in dom if 0 <= x < host.n and host.degree(x) >= du})

    def run(self):
        p, h = self.p, self.h
        if p.n > h.n or any(not dom for dom in self.allowed):
            return None
        isolated = [u for u in range(p.n) if p.degree(u) == 0]
        comps = [c for c in p.components() if len(c) > 1]
        order, sym_prev = self._plan(comps)
        self.order = order
        self.sym_prev = sym_prev
        self.above = self._root_orbits(comps, order)
        self.isolated = isolated
        self.mapping: dict[int, int] = {}
        self.used: set[int] = set()
        self.residual = [h.degree(x) for x in range(h.n)]
        if self._extend(0):
            return EmbeddingMap(dict(self.mapping))
        return None

    # ordering ---------------------------------------------------------------

    def _component_order(self, comp):
        p = self.p
        inside = set(comp)
        start = min(comp, key=lambda v: (-p.degree(v), len(self.allowed[v]), v))
        order = [start]
        placed = {start}
        while len(order) < len(comp):
            best = max((v for v in inside if v not in placed),
                       key=lambda v: (sum(1 for w in p.adj[v] if w in placed), p.degree(v), -v))
            order.append(best)
            placed.add(best)
        return order

    def _plan(self, comps):
        """Search order over non-isolated vertices, plus symmetry links root -> previous root."""
        p = self.p
        comps = sorted(comps, key=lambda c: (-max(p.degree(v) for v in c), -len(c),
                                             min(len(self.allowed[v]) for v in c), c[0]))
        classes: list[tuple[list[int], list[list[int]]]] = []  # (rep order, member orders)
        for comp in comps:
            placed = False
            for rep_order, members in classes:
                aligned = self._align(rep_order, comp)
                if aligned is not None:
                    members.append(aligned)
                    placed = True
                    break
            if not placed:
                rep_order = self._component_order(comp)
                classes.append((rep_order, [rep_order]))
        order: list[int] = []
        sym_prev: dict[int, int] = {}
        for _, members in classes:
            for i, m in enumerate(members):
                if i > 0:
                    sym_prev[m[0]] = members[i - 1][0]
                order.extend(m)
        return order, sym_prev

    def _align(self, rep_order, comp):
        """Order of ``comp`` matching ``rep_order`` under an isomorphism with equal domains."""
        p = self.p
        if len(rep_order) != len(comp):
            return None
        rep_edges = sum(p.degree(v) for v in rep_order)
        if rep_edges != sum(p.degree(v) for v in comp):
            return None
        if sorted(p.degree(v) for v in rep_order) != sorted(p.degree(v) for v in comp):
            return None
        g1 = nx.Graph()
        g1.add_nodes_from(rep_order)
        g1.add_edges_from((u, w) for u in rep_order for w in p.adj[u] if u < w)
        g2 = nx.Graph()
        g2.add_nodes_from(comp)
        g2.add_edges_from((u, w) for u in comp for w in p.adj[u] if u < w)
        matcher = isomorphism.GraphMatcher(g1, g2)
        for iso in matcher.isomorphisms_iter():
            if all(self.allowed[u] == self.allowed[iso[u]] for u in rep_order):
                return [iso[u] for u in rep_order]
            break  # only the first isomorphism is tried; domain mismatch means no symmetry link
        return None

    def _root_orbits(self, comps, order):
        """w -> root for every w that some domain-preserving automorphism maps the root to.

        Any embedding can be composed with such an automorphism so that the
        root gets the smallest image in its orbit.
        """
        p = self.p
        position = {v: i for i, v in enumerate(order)}
        above = {}
        for comp in comps:
            root = min(comp, key=position.__getitem__)
            peers = [w for w in comp if w != root and p.degree(w) == p.degree(root)
                     and self.allowed[w] == self.allowed[root]]
            if not peers:
                continue
            g = nx.Graph()
            for v in comp:
                g.add_node(v, dom=frozenset(self.allowed[v]))
            g.add_edges_from((u, w) for u in comp for w in p.adj[u] if u < w)

            def same(a, b):
                return a["dom"] == b["dom"] and a.get("mark") == b.get("mark")

            for w in peers:
                g1 = g.copy()
                g1.nodes[root]["mark"] = True
                g2 = g.copy()
                g2.nodes[w]["mark"] = True
                if nx.is_isomorphic(g1, g2, node_match=same):
                    above[w] = root
        return above

    # search -----------------------------------------------------------------

    def _candidates(self, u):
        p, h = self.p, self.h
        mapped_nbrs = [self.mapping[w] for w in p.adj[u] if w in self.mapping]
        if mapped_nbrs:
            base = min((h.adj[x] for x in mapped_nbrs), key=len)
            cands = [c for c in base if c in self.allowed[u] and c not in self.used
                     and all(c in h.adj[x] for x in mapped_nbrs)]
        else:
            cands = [c for c in self.allowed[u] if c not in self.used]
        need = sum(1 for w in p.adj[u] if w not in self.mapping)
        cands = [c for c in cands if self.residual[c] >= need]
        if u in self.sym_prev:
            floor = self.mapping[self.sym_prev[u]]
            cands = [c for c in cands if c > floor]
        if u in self.above:
            floor = self.mapping[self.above[u]]
            cands = [c for c in cands if c > floor]
        cands.sort(key=lambda c: (self.residual[c], c))
        return cands

    def _place(self, u, c):
        self.mapping[u] = c
        self.used.add(c)
        for x in self.h.adj[c]:
            self.residual[x] -= 1

    def _unplace(self, u, c):
        del self.mapping[u]
        self.used.discard(c)
        for x in self.h.adj[c]:
            self.residual[x] += 1

    def _forward_ok(self, u):
        p, h = self.p, self.h
        for w in p.adj[u]:
            if w in self.mapping:
                continue
            imgs = [self.mapping[x] for x in p.adj[w] if x in self.mapping]
            base = min((h.adj[x] for x in imgs), key=len)
            if not any(c not in self.used and c in self.allowed[w] and all(c in h.adj[x] for x in imgs)
                       for c in base):
                return False
        return True

    def _extend(self, i):
        if i == len(self.order):
            return self._place_isolated()
        u = self.order[i]
        for c in self._candidates(u):
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchTimeout(self.nodes)
            self._place(u, c)
            if self._forward_ok(u) and self._extend(i + 1):
                return True
            self._unplace(u, c)
        return False

    def _place_isolated(self):
        """Isolated pattern vertices only need distinct free hosts: bipartite matching."""
        if not self.isolated:
            return True
        free = {u: [c for c in sorted(self.allowed[u]) if c not in self.used] for u in self.isolated}
        match: dict[int, int] = {}  # host -> pattern

        def augment(u, seen):
            for c in free[u]:
                if c in seen:
                    continue
                seen.add(c)
                if c not in match or augment(match[c], seen):
                    match[c] = u
                    return True
            return False

        for u in self.isolated:
            if not augment(u, set()):
                return False
        for c, u in match.items():
            self.mapping[u] = c
        return True
