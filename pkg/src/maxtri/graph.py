"""Weighted digraphs of nonnegative matrices and ordering tests on them.

Vertex ``i`` has an edge to ``j`` exactly when ``a_ij > 0``; the edge carries
the weight ``a_ij``.  Diagonal entries become self-loops, which the
triangularization criteria ignore but nilpotency does not.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .core import MaxMatrix, Permutation
from .errors import CyclicGraph, DimensionMismatch

__all__ = [
    "Digraph",
    "SupportChain",
    "digraph_of",
    "union",
    "find_multivertex_cycle",
    "has_multivertex_cycle",
    "has_cycle",
    "topological_order",
    "is_topological_order",
    "is_topological_order_unique",
    "support_chain",
    "is_transitive",
    "is_cycle_in",
]

_WHITE, _GRAY, _BLACK = 0, 1, 2


@dataclass(frozen=True, eq=False)
class Digraph:
    n: int
    edges: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        edges = dict(self.edges)
        for (i, j), w in edges.items():
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) outside vertex range 0..{self.n - 1}")
            if not w > 0:
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {w}")
        object.__setattr__(self, "edges", MappingProxyType(dict(sorted(edges.items()))))
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            succ[i].append(j)
        object.__setattr__(self, "_succ", tuple(tuple(s) for s in succ))

    def successors(self, v: int) -> tuple[int, ...]:
        """Out-neighbours of ``v`` in increasing index order, self-loop included."""
        return self._succ[v]

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and dict(self.edges) == dict(other.edges)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={dict(self.edges)!r})"


@dataclass(frozen=True)
class SupportChain:
    """Nested index sets ``{} = S_0 < S_1 < ... < S_n``, one new index per step."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        if not sets or sets[0]:
            raise ValueError("chain must start with the empty set")
        for k in range(1, len(sets)):
            if not (sets[k - 1] < sets[k] and len(sets[k]) == k):
                raise ValueError("chain must grow by exactly one index per step")
        if sets[-1] != frozenset(range(len(sets) - 1)):
            raise ValueError("chain must end with the full index set")
        object.__setattr__(self, "sets", sets)


def digraph_of(A: MaxMatrix) -> Digraph:
    rows, cols = np.nonzero(A.array > 0.0)
    return Digraph(A.n, {(int(i), int(j)): float(A.array[i, j]) for i, j in zip(rows, cols)})


def union(G: Digraph, H: Digraph) -> Digraph:
    """Edge union, keeping the larger weight on shared edges."""
    if G.n != H.n:
        raise DimensionMismatch(f"vertex counts differ: {G.n} vs {H.n}")
    edges = dict(G.edges)
    for e, w in H.edges.items():
        edges[e] = max(w, edges.get(e, 0.0))
    return Digraph(G.n, edges)


def _find_cycle(G: Digraph, skip_loops: bool) -> list[int] | None:
    # Iterative three-colour DFS; returns the first back-edge cycle found.
    color = [_WHITE] * G.n
    parent = [-1] * G.n
    for root in range(G.n):
        if color[root] != _WHITE:
            continue
        color[root] = _GRAY
        stack = [(root, iter(G.successors(root)))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if w == v:
                    if skip_loops:
                        continue
                    return [v]
                if color[w] == _GRAY:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    return cycle
                if color[w] == _WHITE:
                    color[w] = _GRAY
                    parent[w] = v
                    stack.append((w, iter(G.successors(w))))
                    break
            else:
                color[v] = _BLACK
                stack.pop()
    return None


def find_multivertex_cycle(G: Digraph) -> list[int] | None:
    """Vertices ``[v0, ..., vk]`` of a directed cycle with k >= 1, or None.

    Consecutive vertices are joined by edges and ``vk -> v0`` closes the cycle.
    """
    return _find_cycle(G, skip_loops=True)


def has_multivertex_cycle(G: Digraph) -> bool:
    return find_multivertex_cycle(G) is not None


def has_cycle(G: Digraph) -> bool:
    """True if G has any directed cycle, self-loops included."""
    return _find_cycle(G, skip_loops=False) is not None


def is_cycle_in(G: Digraph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 2 or len(set(cycle)) != k:
        return False
    return all(G.has_edge(cycle[t], cycle[(t + 1) % k]) for t in range(k))


def topological_order(G: Digraph) -> Permutation:
    """Topological order ignoring self-loops, ties broken by smallest index.

    Raises:
        CyclicGraph: if a multi-vertex cycle exists.
    """
    indeg = [0] * G.n
    for i, j in G.edges:
        if i != j:
            indeg[j] += 1
    heap = [v for v in range(G.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in G.successors(v):
            if w == v:
                continue
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) < G.n:
        raise CyclicGraph(find_multivertex_cycle(G))
    return Permutation.from_order(order)


def is_topological_order(G: Digraph, P: Permutation) -> bool:
    return P.n == G.n and all(P(i) < P(j) for i, j in G.edges if i != j)


def is_topological_order_unique(G: Digraph) -> bool:
    # Unique iff the order is a Hamiltonian path: each consecutive pair is an edge.
    order = topological_order(G).order
    return all(G.has_edge(u, v) for u, v in zip(order, order[1:]))


def support_chain(P: Permutation) -> SupportChain:
    order = P.order
    return SupportChain(tuple(frozenset(order[:k]) for k in range(P.n + 1)))


def is_transitive(G: Digraph) -> bool:
    for i, k in G.edges:
        for j in G.successors(k):
            if not G.has_edge(i, j):
                return False
    return True
