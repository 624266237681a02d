"""Vertex-disjoint star decompositions with at most q leaves per star."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInput, Stuck
from .graph import SimpleGraph


@dataclass
class Star:
    center: int
    leaves: list[int]

    @property
    def vertices(self) -> list[int]:
        return [self.center] + self.leaves


@dataclass
class StarDecomposition:
    stars: list[Star]
    q: int
    covered: set[int] = field(default_factory=set)

    def star_of(self) -> dict[int, int]:
        """vertex -> index of the star containing it."""
        return {v: i for i, st in enumerate(self.stars) for v in st.vertices}

    def is_valid(self, g: SimpleGraph) -> bool:
        seen = set()
        for st in self.stars:
            if not 1 <= len(st.leaves) <= self.q:
                return False
            for v in st.vertices:
                if v in seen:
                    return False
                seen.add(v)
            if any(not g.has_edge(st.center, w) for w in st.leaves):
                return False
        return seen == self.covered


class _State:
    """Mutable partial decomposition: star id -> (center, leaves) and vertex -> star id."""

    def __init__(self, g: SimpleGraph, q: int):
        self.g = g
        self.q = q
        self.stars: dict[int, list] = {}
        self.owner: dict[int, int] = {}
        self.next_id = 0

    def new_star(self, center, leaves):
        sid = self.next_id
        self.next_id += 1
        self.stars[sid] = [center, list(leaves)]
        self.owner[center] = sid
        for w in leaves:
            self.owner[w] = sid
        return sid

    def drop_star(self, sid):
        center, leaves = self.stars.pop(sid)
        for v in [center] + leaves:
            del self.owner[v]
        return center, leaves

    def snapshot(self):
        return {k: [c, list(ls)] for k, (c, ls) in self.stars.items()}, dict(self.owner), self.next_id

    def restore(self, snap):
        stars, owner, nid = snap
        self.stars = {k: [c, list(ls)] for k, (c, ls) in stars.items()}
        self.owner = dict(owner)
        self.next_id = nid


def star_decompose(g: SimpleGraph, q: int, swap_depth: int = 1) -> StarDecomposition:
    """Cover every vertex of ``g`` by vertex-disjoint stars with 1..q leaves.

    Starts from a greedy maximal set of 1-stars (edges in lexicographic
    order) and covers each remaining vertex v, lowest label first, by the
    first applicable move over v's neighbours u in label order:

    a) u lies in a 1-star and q >= 2: grow it into a 2-star centred at u;
    b) u is the centre of an h-star with h < q: add v as a leaf;
    c) u is a leaf of an h-star with h >= 2: detach u, make the 1-star (u; v).

    If none applies, a swap is tried: take u out of its 1-star as (u; v) and
    re-cover u's old partner recursively, up to ``swap_depth`` levels.  With
    q = 1 this is an augmenting path of length 3, which always exists when
    the minimum degree exceeds n/2.  Raises Stuck(v) otherwise.
    """
    if q < 1:
        raise InvalidInput("q must be a positive integer")
    st = _State(g, q)
    for u, v in g.edges():
        if u not in st.owner and v not in st.owner:
            st.new_star(u, [v])

    for v in range(g.n):
        if v in st.owner:
            continue
        if not _cover(st, v, swap_depth, frozenset()):
            raise Stuck(v)

    stars = [Star(c, sorted(ls)) for _, (c, ls) in sorted(st.stars.items(), key=lambda kv: kv[1][0])]
    stars.sort(key=lambda s: min(s.vertices))
    return StarDecomposition(stars=stars, q=q, covered=set(st.owner))


def _cover(st: _State, v: int, depth: int, protected: frozenset) -> bool:
    g, q = st.g, st.q
    nbrs = sorted(g.adj[v])
    for u in nbrs:
        if u not in st.owner:
            st.new_star(u, [v])
            return True
    # a) neighbour in a 1-star
    if q >= 2:
        for u in nbrs:
            sid = st.owner[u]
            if sid in protected:
                continue
            center, leaves = st.stars[sid]
            if len(leaves) == 1:
                other = leaves[0] if u == center else center
                st.drop_star(sid)
                st.new_star(u, [other, v])
                return True
    # b) centre of an h-star with h < q
    for u in nbrs:
        sid = st.owner[u]
        if sid in protected:
            continue
        center, leaves = st.stars[sid]
        if center == u and len(leaves) < q:
            leaves.append(v)
            st.owner[v] = sid
            return True
    # c) leaf of an h-star with h >= 2
    for u in nbrs:
        sid = st.owner[u]
        if sid in protected:
            continue
        center, leaves = st.stars[sid]
        if center != u and len(leaves) >= 2:
            leaves.remove(u)
            del st.owner[u]
            st.new_star(u, [v])
            return True
    if depth <= 0:
        return False
    # swap through a 1-star: (u, w) -> (u; v), then re-cover w
    for u in nbrs:
        sid = st.owner[u]
        if sid in protected:
            continue
        center, leaves = st.stars[sid]
        if len(leaves) != 1:
            continue
        w = leaves[0] if u == center else center
        snap = st.snapshot()
        st.drop_star(sid)
        new_sid = st.new_star(u, [v])
        if _cover(st, w, depth - 1, protected | {new_sid}):
            return True
        st.restore(snap)
    return False
