"""Realize a q-unbalanced bipartite degree sequence as small q-unbalanced pieces.

Labels are global: S vertices are 0..|S|-1 and T vertices are |S|..|S|+|T|-1,
so ``seq.degree(v)`` and the union of the returned components agree
position by position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadShape, InvalidInput, NotBigraphic, NotRealizable
from .graph import SimpleGraph
from .sequences import BipartiteDemand, realize_bipartite, zero_sum_split


@dataclass(frozen=True)
class UnbalancedBipartiteSeq:
    side_s: tuple[int, ...]
    side_t: tuple[int, ...]
    q: int = 1

    def __post_init__(self):
        object.__setattr__(self, "side_s", tuple(int(x) for x in self.side_s))
        object.__setattr__(self, "side_t", tuple(int(x) for x in self.side_t))
        if self.q < 1:
            raise InvalidInput("q must be a positive integer")
        if any(x < 0 for x in self.side_s + self.side_t):
            raise InvalidInput("degrees must be non-negative")

    @property
    def n(self) -> int:
        return len(self.side_s) + len(self.side_t)

    @property
    def max_degree(self) -> int:
        return max(self.side_s + self.side_t, default=0)

    def degrees(self) -> list[int]:
        return list(self.side_s) + list(self.side_t)

    def degree(self, v: int) -> int:
        s = len(self.side_s)
        return self.side_s[v] if v < s else self.side_t[v - s]

    def s_vertices(self) -> list[int]:
        return list(range(len(self.side_s)))

    def t_vertices(self) -> list[int]:
        s = len(self.side_s)
        return list(range(s, s + len(self.side_t)))


@dataclass(frozen=True)
class Tuple:
    s_vertex: int
    t_vertices: tuple[int, ...]
    bias: int


@dataclass
class Component:
    """One bipartite piece, with global labels; ``small`` is the S side."""

    small: list[int]
    large: list[int]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.small) + len(self.large)

    def vertices(self) -> list[int]:
        return sorted(self.small + self.large)


def union_graph(components: Sequence[Component], n: int) -> SimpleGraph:
    g = SimpleGraph(n)
    for comp in components:
        for u, v in comp.edges:
            g.add_edge(u, v)
    return g


def tuple_sizes(n_s: int, n_t: int, q: int, max_degree: int) -> list[int]:
    """Greedy h per S vertex: as many T vertices as possible while the rest stays feasible."""
    if n_s == 0:
        if n_t:
            raise BadShape("T vertices but no S vertex to attach them to")
        return []
    if n_t < q * n_s or n_t > max_degree * n_s:
        raise BadShape(f"need q*|S| <= |T| <= D*|S|; got |S|={n_s}, |T|={n_t}, q={q}, D={max_degree}")
    sizes = []
    rem_s, rem_t = n_s, n_t
    for _ in range(n_s):
        h = min(max_degree, rem_t - q * (rem_s - 1))
        sizes.append(h)
        rem_s -= 1
        rem_t -= h
    return sizes


def tuple_bias(t: Tuple | tuple[int, Sequence[int]], seq: UnbalancedBipartiteSeq) -> int:
    """Sum of the T-degrees in the tuple minus the degree of its S vertex."""
    if isinstance(t, Tuple):
        s_vertex, t_vertices = t.s_vertex, t.t_vertices
    else:
        s_vertex, t_vertices = t
    return sum(seq.degree(w) for w in t_vertices) - seq.degree(s_vertex)


def form_tuples(seq: UnbalancedBipartiteSeq, max_degree: int | None = None) -> list[Tuple]:
    """Split S ∪ T into tuples (s; t_1..t_h) with q <= h <= D, in label order."""
    d = seq.max_degree if max_degree is None else max_degree
    sizes = tuple_sizes(len(seq.side_s), len(seq.side_t), seq.q, d)
    tvs = seq.t_vertices()
    out = []
    pos = 0
    for s_vertex, h in zip(seq.s_vertices(), sizes):
        members = tuple(tvs[pos:pos + h])
        pos += h
        out.append(Tuple(s_vertex, members, tuple_bias((s_vertex, members), seq)))
    return out


def decompose_unbalanced(seq: UnbalancedBipartiteSeq, max_degree: int | None = None,
                         merge: str = "threshold") -> list[Component]:
    """Realize ``seq`` as a disjoint union of q-unbalanced bipartite components.

    Tuple biases are split into zero-sum groups (K = D^2); groups are whole
    tuples, so each is q-unbalanced and has equal side sums.  Groups are then
    merged first-fit by ascending size:

    ``merge="threshold"``
        until both sides hold at least 2Δ² vertices (Δ the group maximum),
        which makes every merged group bigraphic for positive degrees;
    ``merge="minimal"``
        only as far as needed for max-flow to find a realization, which
        keeps components smaller.

    A trailing group that misses the target is folded into the last one.
    """
    if merge not in ("threshold", "minimal"):
        raise InvalidInput(f"unknown merge policy {merge!r}")
    if sum(seq.side_s) != sum(seq.side_t):
        raise NotRealizable(f"side sums differ: {sum(seq.side_s)} != {sum(seq.side_t)}")
    d = seq.max_degree if max_degree is None else max_degree
    if seq.max_degree > d:
        raise InvalidInput(f"max degree {seq.max_degree} exceeds D={d}")
    tuples = form_tuples(seq, d)
    if not tuples:
        return []
    groups = zero_sum_split([t.bias for t in tuples], max(1, d * d))
    groups = sorted(groups, key=lambda g: (sum(len(tuples[i].t_vertices) + 1 for i in g), g[0]))

    bins: list[list[int]] = []
    pending: list[int] = []
    for group in groups:
        pending = pending + group
        if _bin_done(pending, tuples, seq, merge):
            bins.append(pending)
            pending = []
    if pending:
        if bins:
            bins[-1] = bins[-1] + pending
        else:
            bins.append(pending)

    comps = []
    k = 0
    while k < len(bins):
        try:
            comps.append(_realize_bin(bins[k], tuples, seq))
            k += 1
        except NotBigraphic:
            if len(bins) == 1:
                raise NotRealizable("sequence is not bigraphic") from None
            # fold into a neighbour and retry; only reachable for the minimal policy's tail
            j = k - 1 if k > 0 else k + 1
            merged = bins[j] + bins[k]
            lo = min(j, k)
            bins[lo:lo + 2] = [merged]
            if lo < k:
                comps.pop()
            k = lo
    return comps


def _bin_done(idx: list[int], tuples: list[Tuple], seq: UnbalancedBipartiteSeq, merge: str) -> bool:
    if merge == "minimal":
        try:
            _realize_bin(idx, tuples, seq)
            return True
        except NotBigraphic:
            return False
    s_side = [tuples[i].s_vertex for i in idx]
    t_side = [w for i in idx for w in tuples[i].t_vertices]
    delta = max(seq.degree(v) for v in s_side + t_side)
    need = 2 * delta * delta
    return len(s_side) >= need and len(t_side) >= need


def _realize_bin(idx: list[int], tuples: list[Tuple], seq: UnbalancedBipartiteSeq) -> Component:
    small = sorted(tuples[i].s_vertex for i in idx)
    large = sorted(w for i in idx for w in tuples[i].t_vertices)
    demand = BipartiteDemand([seq.degree(v) for v in small], [seq.degree(w) for w in large])
    local = realize_bipartite(demand)
    s = len(small)
    edges = [(small[u], large[v - s]) for u, v in local.edges()]
    return Component(small=small, large=large, edges=edges)
