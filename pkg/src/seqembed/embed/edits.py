"""Parity obstruction and embedding after a bounded number of host edits."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..errors import InvalidInput, SearchTimeout
from ..graph import SimpleGraph
from ..sequences import realize_graphic
from .oracle import DEFAULT_BUDGET, EmbeddingMap, embed_backtracking

MAX_EDIT_HOST = 14
MAX_EDITS = 2


def parity_obstruction(seq: Sequence[int], host: SimpleGraph) -> bool:
    """All-odd spanning sequence against a host with an odd-order component.

    Every component of a graph whose degrees are all odd has an even number
    of vertices, so no realization can be a spanning subgraph of such a host.
    Only sequences of length v(host) are considered.
    """
    if not seq or len(seq) != host.n:
        return False
    if any(d % 2 == 0 for d in seq):
        return False
    return any(len(c) % 2 for c in host.components())


def embed_with_edits(host: SimpleGraph, seq: Sequence[int], q: int = 1, max_edits: int = 1,
                     budget: int = DEFAULT_BUDGET, pattern: SimpleGraph | None = None):
    """Smallest set of added host edges (at most ``max_edits``) that admits an embedding.

    Deleting host edges can never help, so only additions are enumerated,
    by increasing size and then lexicographically.  The pattern is the
    Havel–Hakimi realization of ``seq`` unless one is given; a None result
    means no edit set within the budget works *for that realization*.
    Returns (edited host, EmbeddingMap) or None.  Raises SearchTimeout when
    no edit set succeeded and at least one search ran out of budget.
    ``q`` is accepted for interface symmetry with the pipeline and unused
    by the exhaustive search.
    """
    if host.n > MAX_EDIT_HOST or max_edits > MAX_EDITS:
        raise InvalidInput(f"edit search is limited to v(host) <= {MAX_EDIT_HOST} and K <= {MAX_EDITS}")
    if len(seq) > host.n:
        raise InvalidInput("sequence longer than the host")
    if pattern is None:
        pattern = realize_graphic(seq)
    non_edges = [(u, v) for u in range(host.n) for v in range(u + 1, host.n) if not host.has_edge(u, v)]
    timed_out = None
    for k in range(max_edits + 1):
        for added in combinations(non_edges, k):
            g = host.copy()
            for u, v in added:
                g.add_edge(u, v)
            try:
                found = embed_backtracking(pattern, g, budget)
            except SearchTimeout as exc:
                timed_out = exc
                continue
            if found is not None:
                return g, found
    if timed_out is not None:
        raise timed_out
    return None
