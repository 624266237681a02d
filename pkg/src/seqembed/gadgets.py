"""Bounded-component realization of bounded-degree sequences.

The realization H is assembled from three pieces:

* type-1 gadgets: 2i equal degrees i realized as a K_{i,i};
* a perfect matching on the leftover vertices with odd demand;
* type-2 gadgets: each still-deficient vertex v takes a fresh type-1 gadget
  and repeatedly trades one of its matching edges xy for vx and vy.

The type-2 part (set A) is 3-colourable with small components; the rest of H
is a disjoint union of balanced complete bipartite graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InsufficientGadgets, InvalidInput, NotGraphic
from .graph import SimpleGraph
from .sequences import is_graphic


@dataclass
class TypeOneGadget:
    """A K_{i,i}; ``left[j]``–``right[j]`` is the j-th edge of its fixed perfect matching."""

    left: list[int]
    right: list[int]
    marked: bool = False
    used_pairs: int = 0

    @property
    def vertices(self) -> list[int]:
        return self.left + self.right

    @property
    def size(self) -> int:
        return len(self.left)


@dataclass
class GadgetRealization:
    graph: SimpleGraph
    type1_components: list[list[int]]
    set_a: set[int]
    residual_matching: list[tuple[int, int]]
    gadgets: list[TypeOneGadget] = field(default_factory=list, repr=False)


@dataclass
class CertificateReport:
    degrees_match: bool
    a_size_ok: bool
    components_ok: bool
    three_colourable: bool
    separated: bool
    a_size: int = 0
    a_bound: int = 0

    @property
    def ok(self) -> bool:
        return (self.degrees_match and self.a_size_ok and self.components_ok
                and self.three_colourable and self.separated)

    def as_dict(self) -> dict:
        return {
            "degrees_match": self.degrees_match,
            "a_size_ok": self.a_size_ok,
            "components_ok": self.components_ok,
            "three_colourable": self.three_colourable,
            "separated": self.separated,
            "a_size": self.a_size,
            "a_bound": self.a_bound,
            "ok": self.ok,
        }


def build_bounded_realization(seq: Sequence[int], max_degree: int | None = None) -> GadgetRealization:
    """Realize ``seq`` with type-1 / type-2 gadgets.

    Vertex v of the returned graph has degree seq[v].  Zero entries stay
    isolated.  Raises InsufficientGadgets when the type-1 gadgets run out
    before every residual vertex is complete (typical for short sequences).
    """
    if any(d < 0 for d in seq):
        raise InvalidInput("degrees must be non-negative")
    if not is_graphic(seq):
        raise NotGraphic(f"{list(seq)} is not graphic")
    delta = max(seq, default=0)
    if max_degree is not None and delta > max_degree:
        raise InvalidInput(f"max degree {delta} exceeds the configured bound {max_degree}")
    n = len(seq)
    g = SimpleGraph(n)

    # step 1: type-1 gadgets, largest degree value first, lowest labels first
    active = [v for v in range(n) if seq[v] > 0]
    gadgets: list[TypeOneGadget] = []
    for i in range(delta, 0, -1):
        pool = [v for v in active if seq[v] == i]
        taken = set()
        while len(pool) >= 2 * i:
            chunk, pool = pool[: 2 * i], pool[2 * i:]
            gadget = TypeOneGadget(left=chunk[:i], right=chunk[i:])
            for x in gadget.left:
                for y in gadget.right:
                    g.add_edge(x, y)
            gadgets.append(gadget)
            taken.update(chunk)
        active = [v for v in active if v not in taken]

    # step 2: perfect matching on the odd residual vertices
    odd = sorted((v for v in active if seq[v] % 2), key=lambda v: (-seq[v], v))
    matching = []
    for k in range(0, len(odd), 2):
        x, y = odd[k], odd[k + 1]
        g.add_edge(x, y)
        matching.append((x, y))

    # step 3: type-2 gadgets
    set_a = set(active)
    unmarked = iter(gadgets)
    for v in active:
        deficiency = seq[v] - g.degree(v)
        gadget = None
        while deficiency > 0:
            if gadget is None or gadget.used_pairs == gadget.size:
                gadget = next(unmarked, None)
                if gadget is None:
                    raise InsufficientGadgets(v)
                gadget.marked = True
                set_a.update(gadget.vertices)
            x = gadget.left[gadget.used_pairs]
            y = gadget.right[gadget.used_pairs]
            gadget.used_pairs += 1
            g.remove_edge(x, y)
            g.add_edge(v, x)
            g.add_edge(v, y)
            deficiency -= 2

    type1 = [sorted(k.vertices) for k in gadgets if not k.marked]
    return GadgetRealization(graph=g, type1_components=type1, set_a=set_a,
                             residual_matching=matching, gadgets=gadgets)


def verify_bounded_structure(r: GadgetRealization, seq: Sequence[int]) -> CertificateReport:
    """Check the structural certificate of a realization without raising."""
    g = r.graph
    delta = max(seq, default=0)
    degrees_match = g.n == len(seq) and g.degrees() == list(seq)
    a = set(r.set_a)
    bound = 5 * delta ** 3
    rest = [v for v in range(g.n) if v not in a]
    separated = all(w not in a for v in rest for w in g.adj[v])

    sub, labels = g.induced(rest)
    components_ok = True
    for comp in sub.components():
        if len(comp) == 1 and sub.degree(comp[0]) == 0 and seq[labels[comp[0]]] == 0:
            continue  # zero-demand vertices are isolated by design
        if not _is_balanced_complete_bipartite(sub, comp) or len(comp) > 2 * delta:
            components_ok = False
            break

    sub_a, _ = g.induced(a)
    three = all(_colourable(sub_a, comp, 3) for comp in sub_a.components())
    return CertificateReport(degrees_match=degrees_match, a_size_ok=len(a) <= bound,
                             components_ok=components_ok, three_colourable=three,
                             separated=separated, a_size=len(a), a_bound=bound)


def _is_balanced_complete_bipartite(g: SimpleGraph, comp: list[int]) -> bool:
    parts = g.bipartition(comp)
    if parts is None:
        return False
    left, right = parts
    if len(left) != len(right):
        return False
    return all(g.degree(v) == len(right) for v in left) and all(g.degree(v) == len(left) for v in right)


def _colourable(g: SimpleGraph, comp: list[int], k: int) -> bool:
    """Exact k-colouring search on one component, most-constrained vertex first."""
    colour: dict[int, int] = {}
    verts = set(comp)

    def pick():
        best, best_key = None, None
        for v in verts:
            if v in colour:
                continue
            used = {colour[w] for w in g.adj[v] if w in colour}
            key = (len(used), len(g.adj[v]))
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve():
        v = pick()
        if v is None:
            return True
        used = {colour[w] for w in g.adj[v] if w in colour}
        for c in range(k):
            if c not in used:
                colour[v] = c
                if solve():
                    return True
                del colour[v]
        return False

    return solve()
