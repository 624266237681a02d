"""Graphic / bigraphic sequence tests and realizers, and zero-sum splitting.

Degree sequences are plain sequences of ints indexed by vertex label; the
position of an entry is the vertex it belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import BudgetExceeded, InvalidInput, NotBigraphic, NotGraphic, NotZeroSum
from .graph import SimpleGraph

# ffactor_condition_holds enumerates 2^(s+t) subset pairs
SUBSET_PAIR_BUDGET = 2 ** 22


@dataclass(frozen=True)
class BipartiteDemand:
    """Prescribed degrees for the two classes of a bipartite graph."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "side_a", tuple(int(x) for x in self.side_a))
        object.__setattr__(self, "side_b", tuple(int(x) for x in self.side_b))
        if any(x < 0 for x in self.side_a + self.side_b):
            raise InvalidInput("bipartite demand entries must be non-negative")

    @property
    def balanced_sums(self) -> bool:
        return sum(self.side_a) == sum(self.side_b)


def _check_nonnegative(seq: Sequence[int]) -> None:
    if any(d < 0 for d in seq):
        raise InvalidInput("degrees must be non-negative")


def is_graphic(seq: Sequence[int]) -> bool:
    """Erdős–Gallai test."""
    if any(d < 0 for d in seq):
        return False
    n = len(seq)
    d = sorted(seq, reverse=True)
    if sum(d) % 2:
        return False
    if d and d[0] >= n:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        rhs = k * (k - 1) + sum(min(k, x) for x in d[k:])
        if prefix > rhs:
            return False
    return True


def realize_graphic(seq: Sequence[int]) -> SimpleGraph:
    """Havel–Hakimi realization with vertex identity preserved.

    The vertex with the largest remaining demand is connected to the next
    largest demands; equal demands are broken by lowest label.
    """
    _check_nonnegative(seq)
    if not is_graphic(seq):
        raise NotGraphic(f"{list(seq)} is not graphic")
    n = len(seq)
    g = SimpleGraph(n)
    remaining = list(seq)
    while n:
        order = sorted(range(n), key=lambda v: (-remaining[v], v))
        v = order[0]
        k = remaining[v]
        if k == 0:
            break
        remaining[v] = 0
        targets = [u for u in order[1:]][:k]
        for u in targets:
            if remaining[u] == 0:
                raise NotGraphic(f"{list(seq)} is not graphic")
            g.add_edge(v, u)
            remaining[u] -= 1
    return g


def ffactor_condition_holds(demand: BipartiteDemand) -> bool:
    """Exhaustive check of the f-factor inequality in K_{s,t}.

    For every X ⊆ A and Y ⊆ B: f(X) <= |X|·|Y| + f(B - Y).  Unequal side
    sums can never be factors and return False.
    """
    a, b = demand.side_a, demand.side_b
    s, t = len(a), len(b)
    if 2 ** (s + t) > SUBSET_PAIR_BUDGET:
        raise BudgetExceeded(f"2^{s + t} subset pairs exceeds budget {SUBSET_PAIR_BUDGET}")
    if not demand.balanced_sums:
        return False
    total_b = sum(b)
    sums_a = _subset_sums(a)
    sums_b = _subset_sums(b)
    sizes_a = [bin(mask).count("1") for mask in range(1 << s)]
    sizes_b = [bin(mask).count("1") for mask in range(1 << t)]
    for xm in range(1 << s):
        fx, nx_ = sums_a[xm], sizes_a[xm]
        for ym in range(1 << t):
            if fx > nx_ * sizes_b[ym] + total_b - sums_b[ym]:
                return False
    return True


def _subset_sums(values: Sequence[int]) -> list[int]:
    sums = [0] * (1 << len(values))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + values[low.bit_length() - 1]
    return sums


def realize_bipartite(demand: BipartiteDemand) -> SimpleGraph:
    """Realize a bipartite demand by max-flow in K_{s,t}.

    Vertices 0..s-1 form side A and s..s+t-1 form side B; vertex i of side B
    is label s+i.  Raises NotBigraphic when no realization exists.
    """
    a, b = demand.side_a, demand.side_b
    s, t = len(a), len(b)
    if not demand.balanced_sums or any(x > t for x in a) or any(x > s for x in b):
        raise NotBigraphic(f"demand {a};{b} is not bigraphic")
    total = sum(a)
    g = SimpleGraph(s + t)
    if total == 0:
        return g
    net = nx.DiGraph()
    for i, x in enumerate(a):
        if x:
            net.add_edge("src", ("a", i), capacity=x)
    for j, y in enumerate(b):
        if y:
            net.add_edge(("b", j), "sink", capacity=y)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                net.add_edge(("a", i), ("b", j), capacity=1)
    value, flow = nx.maximum_flow(net, "src", "sink")
    if value != total:
        raise NotBigraphic(f"demand {a};{b} is not bigraphic")
    for i, x in enumerate(a):
        if not x:
            continue
        for node, f in flow[("a", i)].items():
            if f:
                g.add_edge(i, s + node[1])
    return g


def zero_sum_split(values: Sequence[int], bound: int) -> list[list[int]]:
    """Partition the indices of a zero-sum sequence into minimal zero-sum groups.

    ``bound`` is K with every |value| <= K.  Any zero-sum sequence over
    [-K, K] of length >= 2K has a proper nonempty zero-sum subsequence, so
    splitting until no such subsequence exists leaves groups of < 2K items.
    Groups are returned sorted by their smallest index.
    """
    if bound < 1:
        raise InvalidInput("bound K must be a positive integer")
    if any(abs(x) > bound for x in values):
        raise InvalidInput(f"values exceed the bound K={bound}")
    if sum(values) != 0:
        raise NotZeroSum(f"sequence sums to {sum(values)}, not 0")
    groups = []
    stack = [list(range(len(values)))]
    while stack:
        idx = stack.pop()
        if not idx:
            continue
        part = _proper_zero_sum_subset([values[i] for i in idx])
        if part is None:
            groups.append(idx)
            continue
        chosen = {idx[k] for k in part}
        stack.append([i for i in idx if i not in chosen])
        stack.append(sorted(chosen))
    groups.sort(key=lambda g: g[0])
    return groups


def _proper_zero_sum_subset(vals: Sequence[int]) -> list[int] | None:
    """Positions of a proper nonempty zero-sum subsequence of a zero-sum ``vals``.

    A proper zero-sum subset and its complement are both zero-sum, and one of
    them avoids the last position, so it suffices to search vals[:-1].
    """
    if len(vals) < 2:
        return None
    # reached[sum] = (position added last, previous sum or None for a singleton)
    reached: dict[int, tuple[int, int | None]] = {}
    for i, x in enumerate(vals[:-1]):
        if x == 0:
            return [i]
        updates = {x: (i, None)} if x not in reached else {}
        for s in reached:
            if s + x not in reached and s + x not in updates:
                updates[s + x] = (i, s)
        reached.update(updates)
        if 0 in reached:
            out = []
            s: int | None = 0
            while s is not None:
                pos, prev = reached[s]
                out.append(pos)
                s = prev
            return sorted(out)
    return None
