"""Brute-force reference implementations used to cross-check the package.

Nothing here imports the algorithms under test; graphs are plain numpy
adjacency matrices or edge lists.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def all_pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@lru_cache(maxsize=None)
def degree_multisets(n: int) -> frozenset:
    """Sorted degree sequences of all labelled simple graphs on n vertices."""
    pairs = all_pairs(n)
    if not pairs:
        return frozenset({tuple([0] * n)})
    incidence = np.zeros((len(pairs), n), dtype=np.int16)
    for k, (i, j) in enumerate(pairs):
        incidence[k, i] = incidence[k, j] = 1
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(len(pairs))) & 1).astype(np.int16)
    degs = np.sort(bits @ incidence, axis=1)
    return frozenset(map(tuple, np.unique(degs, axis=0).tolist()))


def graphic_by_enumeration(seq) -> bool:
    return tuple(sorted(seq)) in degree_multisets(len(seq))


def realizations(seq):
    """Every labelled graph (as an edge frozenset) with the given positional degrees."""
    n = len(seq)
    pairs = all_pairs(n)
    out = []
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        edges = []
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                deg[i] += 1
                deg[j] += 1
                edges.append((i, j))
        if deg == list(seq):
            out.append(frozenset(edges))
    return out


def graphic_by_backtracking(seq) -> bool:
    """Realizability by deciding each vertex pair in order; for lengths beyond full enumeration."""
    n = len(seq)
    need = list(seq)
    if any(d < 0 for d in need) or sum(need) % 2:
        return False
    pairs = all_pairs(n)

    def rec(k):
        if k == len(pairs):
            return not any(need)
        i, j = pairs[k]
        if j == i + 1 and any(need[:i]):
            return False
        if need[i] > n - j:
            return False
        if need[i] and need[j]:
            need[i] -= 1
            need[j] -= 1
            if rec(k + 1):
                return True
            need[i] += 1
            need[j] += 1
        return rec(k + 1)

    return rec(0)


@lru_cache(maxsize=None)
def _injections(n_host: int, n_pat: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n_host), n_pat)), dtype=np.int8).reshape(-1, n_pat)


def embeds_by_enumeration(pattern_edges, n_pat: int, host_edges, n_host: int) -> bool:
    """Does some injection send every pattern edge onto a host edge?"""
    if n_pat > n_host:
        return False
    if not pattern_edges:
        return True
    adj = np.zeros((n_host, n_host), dtype=bool)
    for u, v in host_edges:
        adj[u, v] = adj[v, u] = True
    perms = _injections(n_host, n_pat)
    ok = np.ones(len(perms), dtype=bool)
    for u, v in pattern_edges:
        ok &= adj[perms[:, u], perms[:, v]]
        if not ok.any():
            return False
    return bool(ok.any())


def gale_ryser(a, b) -> bool:
    """Classical sorted-prefix criterion for bigraphic pairs."""
    if sum(a) != sum(b):
        return False
    a = sorted(a, reverse=True)
    for k in range(1, len(a) + 1):
        if sum(a[:k]) > sum(min(x, k) for x in b):
            return False
    return True


def has_perfect_matching(edges, vertices) -> bool:
    vs = list(vertices)
    if len(vs) % 2:
        return False
    es = {frozenset(e) for e in edges}

    def rec(rest):
        if not rest:
            return True
        v = rest[0]
        for w in rest[1:]:
            if frozenset((v, w)) in es and rec([x for x in rest if x not in (v, w)]):
                return True
        return False

    return rec(vs)


def chromatic_at_most(n, edges, k) -> bool:
    for colours in itertools.product(range(k), repeat=n):
        if all(colours[u] != colours[v] for u, v in edges):
            return True
    return n == 0
