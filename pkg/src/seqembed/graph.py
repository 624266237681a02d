"""Undirected simple graphs on vertex labels 0..n-1, plus the edge-list file format."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

from .errors import InvalidInput


class SimpleGraph:
    """Adjacency-set graph. Loops and parallel edges are rejected."""

    __slots__ = ("adj",)

    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SimpleGraph":
        return cls(a + b, ((u, a + v) for u in range(a) for v in range(b)))

    @classmethod
    def disjoint_union(cls, *graphs: "SimpleGraph") -> "SimpleGraph":
        out = cls(sum(g.n for g in graphs))
        offset = 0
        for g in graphs:
            for u, v in g.edges():
                out.add_edge(u + offset, v + offset)
            offset += g.n
        return out

    @property
    def n(self) -> int:
        return len(self.adj)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise InvalidInput(f"loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidInput(f"edge ({u}, {v}) out of range for n={self.n}")
        if v in self.adj[u]:
            raise InvalidInput(f"duplicate edge ({u}, {v})")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self.adj[u]:
            raise InvalidInput(f"no edge ({u}, {v})")
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def density(self) -> float:
        n = self.n
        return 0.0 if n < 2 else 2 * self.num_edges() / (n * (n - 1))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield u, v

    def copy(self) -> "SimpleGraph":
        g = SimpleGraph(self.n)
        g.adj = [set(a) for a in self.adj]
        return g

    def degree_into(self, v: int, vertices) -> int:
        """Number of neighbours of v inside ``vertices`` (a set)."""
        a = self.adj[v]
        if len(a) < len(vertices):
            return sum(1 for w in a if w in vertices)
        return sum(1 for w in vertices if w in a)

    def induced(self, vertices: Iterable[int]) -> tuple["SimpleGraph", list[int]]:
        """Induced subgraph relabelled 0..k-1, plus the list mapping new -> old labels."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        sub = SimpleGraph(len(labels))
        for i, v in enumerate(labels):
            sub.adj[i] = {index[w] for w in self.adj[v] if w in index}
        return sub, labels

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def bipartition(self, vertices: Iterable[int] | None = None):
        """Two-colouring of the subgraph induced on ``vertices`` as (side0, side1), or None."""
        verts = range(self.n) if vertices is None else sorted(set(vertices))
        inside = set(verts)
        colour: dict[int, int] = {}
        for s in verts:
            if s in colour:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w not in inside:
                        continue
                    if w not in colour:
                        colour[w] = 1 - colour[u]
                        queue.append(w)
                    elif colour[w] == colour[u]:
                        return None
        side0 = sorted(v for v, c in colour.items() if c == 0)
        side1 = sorted(v for v, c in colour.items() if c == 1)
        return side0, side1

    def __eq__(self, other) -> bool:
        return isinstance(other, SimpleGraph) and self.adj == other.adj

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.num_edges()})"


# edge-list file format: header "n <count>", then one "u v" pair per line, 0-indexed

def format_edge_list(g: SimpleGraph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    g = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if g is None:
            if len(parts) != 2 or parts[0] != "n":
                raise InvalidInput(f"line {lineno}: expected header 'n <count>', got {raw!r}")
            try:
                g = SimpleGraph(int(parts[1]))
            except ValueError as exc:
                raise InvalidInput(f"line {lineno}: bad vertex count {parts[1]!r}") from exc
            continue
        if len(parts) != 2:
            raise InvalidInput(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InvalidInput(f"line {lineno}: non-integer vertex in {raw!r}") from exc
        try:
            g.add_edge(u, v)
        except InvalidInput as exc:
            raise InvalidInput(f"line {lineno}: {exc}") from exc
    if g is None:
        raise InvalidInput("empty graph file: missing 'n <count>' header")
    return g
