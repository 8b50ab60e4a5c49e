"""Proper colorings, the exact chromatic number, and the product coloring.

Every chromatic threshold in the subdivision constructions is checked with
the exact solver here, so it never returns an approximation: it either
answers exactly or raises :class:`BudgetExceeded` with the bounds it had.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .digraph import Edge, UnderlyingGraph, _edge
from .errors import BudgetExceeded, PreconditionError

BUDGET_ENV = "SUBDIV_CHI_BUDGET"


def default_max_nodes() -> int:
    return int(os.environ.get(BUDGET_ENV, 10**7))


@dataclass(frozen=True)
class Coloring:
    """Colors are 1..palette_size, ``assignment[v]`` is the color of vertex v."""

    assignment: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment))


@dataclass(frozen=True)
class ChromaticBudget:
    max_nodes: int = 0  # 0 means "take the default"
    shortcut_complete: bool = True

    def __post_init__(self):
        if self.max_nodes == 0:
            object.__setattr__(self, "max_nodes", default_max_nodes())
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be at least 1")


def is_proper(g: UnderlyingGraph, c: Coloring) -> bool:
    if len(c.assignment) != g.vertex_count:
        raise ValueError(
            f"coloring covers {len(c.assignment)} vertices, graph has {g.vertex_count}"
        )
    if any(not (1 <= x <= c.palette_size) for x in c.assignment):
        return False
    return all(c.assignment[u] != c.assignment[v] for u, v in g.edges)


# --- search primitives on adjacency lists ------------------------------------


class _Counter:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int):
        self.nodes = 0
        self.limit = limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise _OutOfNodes


class _OutOfNodes(Exception):
    pass


def greedy_clique(adj: Sequence[frozenset[int]]) -> list[int]:
    """A maximal clique grown from every start vertex; the largest one wins."""
    n = len(adj)
    by_degree = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    best: list[int] = []
    for start in by_degree:
        if len(adj[start]) + 1 <= len(best):
            break
        clique = [start]
        candidates = set(adj[start])
        for v in by_degree:
            if v in candidates:
                clique.append(v)
                candidates &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_pick(colors, sat, adj, n):
    best, key = -1, None
    for v in range(n):
        if colors[v]:
            continue
        k = (sat[v], len(adj[v]), -v)
        if key is None or k > key:
            best, key = v, k
    return best


def greedy_coloring(adj: Sequence[frozenset[int]]) -> list[int]:
    """DSATUR without backtracking; an upper bound."""
    n = len(adj)
    colors = [0] * n
    sat = [0] * n
    for _ in range(n):
        v = _dsatur_pick(colors, sat, adj, n)
        taken = {colors[u] for u in adj[v]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
        for u in adj[v]:
            if not colors[u] and c not in {colors[w] for w in adj[u] if w != v}:
                sat[u] += 1
    return colors


def _k_color_search(adj: Sequence[frozenset[int]], k: int, counter: _Counter) -> list[int] | None:
    """Backtracking k-colorability, DSATUR vertex order, largest degree breaks ties."""
    n = len(adj)
    if n == 0:
        return []
    if k <= 0:
        return None
    colors = [0] * n
    count = [[0] * (k + 1) for _ in range(n)]
    sat = [0] * n

    def assign(v, c, delta):
        for u in adj[v]:
            row = count[u]
            if delta > 0:
                if row[c] == 0:
                    sat[u] += 1
                row[c] += 1
            else:
                row[c] -= 1
                if row[c] == 0:
                    sat[u] -= 1

    def rec(colored: int, used: int) -> bool:
        if colored == n:
            return True
        counter.tick()
        v = _dsatur_pick(colors, sat, adj, n)
        if sat[v] >= k:
            return False
        row = count[v]
        # a fresh color is only ever tried as color used+1 (symmetry)
        for c in range(1, min(used + 1, k) + 1):
            if row[c]:
                continue
            colors[v] = c
            assign(v, c, +1)
            if rec(colored + 1, max(used, c)):
                return True
            assign(v, c, -1)
            colors[v] = 0
        return False

    return colors if rec(0, 0) else None


def k_coloring(g: UnderlyingGraph, k: int, budget: ChromaticBudget | None = None) -> Coloring | None:
    """A proper k-coloring of ``g`` or None if none exists."""
    budget = budget or ChromaticBudget()
    counter = _Counter(budget.max_nodes)
    try:
        colors = _k_color_search(g.adjacency, k, counter)
    except _OutOfNodes:
        raise BudgetExceeded(0, g.vertex_count, counter.nodes) from None
    return None if colors is None else Coloring(tuple(colors), k)


def _exact(adj: Sequence[frozenset[int]], budget: ChromaticBudget, complete: bool) -> tuple[int, list[int]]:
    n = len(adj)
    if n == 0:
        return 0, []
    if budget.shortcut_complete and complete:
        return n, list(range(1, n + 1))
    lower = len(greedy_clique(adj))
    best = greedy_coloring(adj)
    upper = max(best)
    counter = _Counter(budget.max_nodes)
    for k in range(lower, upper):
        try:
            colors = _k_color_search(adj, k, counter)
        except _OutOfNodes:
            raise BudgetExceeded(k, upper, counter.nodes) from None
        if colors is not None:
            return k, colors
    return upper, best


def chromatic_number(g: UnderlyingGraph, budget: ChromaticBudget | None = None) -> tuple[int, Coloring]:
    budget = budget or ChromaticBudget()
    k, colors = _exact(g.adjacency, budget, g.is_complete())
    return k, Coloring(tuple(colors), k)


def product_coloring(
    g: UnderlyingGraph,
    e1: Iterable[Edge],
    e2: Iterable[Edge],
    c1: Coloring,
    c2: Coloring,
) -> Coloring:
    """Pair coloring x -> (c1(x), c2(x)) flattened to 1..k1*k2."""
    e1 = frozenset(_edge(u, v) for u, v in e1)
    e2 = frozenset(_edge(u, v) for u, v in e2)
    if e1 | e2 != g.edges:
        raise PreconditionError("the two edge sets do not cover exactly E(g)")
    g1 = UnderlyingGraph(g.vertex_count, e1)
    g2 = UnderlyingGraph(g.vertex_count, e2)
    if not is_proper(g1, c1):
        raise PreconditionError("first coloring is not proper on its edge set")
    if not is_proper(g2, c2):
        raise PreconditionError("second coloring is not proper on its edge set")
    k2 = c2.palette_size
    assignment = tuple((a - 1) * k2 + b for a, b in zip(c1.assignment, c2.assignment))
    return Coloring(assignment, c1.palette_size * k2)


class IncrementalChromatic:
    """Exact chi of a growing induced subgraph of a fixed graph.

    Each added vertex raises chi by 0 or 1. The previous optimal coloring is
    kept as a hint: if the new vertex finds a free color, chi is unchanged
    without any search.
    """

    def __init__(self, g: UnderlyingGraph, budget: ChromaticBudget | None = None):
        self.graph = g
        self.budget = budget or ChromaticBudget()
        self.vertices: list[int] = []
        self.colors: dict[int, int] = {}
        self.chi = 0

    def copy(self) -> "IncrementalChromatic":
        other = IncrementalChromatic(self.graph, self.budget)
        other.vertices = list(self.vertices)
        other.colors = dict(self.colors)
        other.chi = self.chi
        return other

    def add(self, v: int) -> int:
        if v in self.colors:
            raise ValueError(f"vertex {v} already added")
        adj = self.graph.adjacency[v]
        taken = {self.colors[u] for u in adj if u in self.colors}
        previous = self.chi
        self.vertices.append(v)
        free = next((c for c in range(1, previous + 1) if c not in taken), None)
        if free is not None:
            self.colors[v] = free
            return self.chi
        sub = self.graph.induced(self.vertices)
        colors = None
        if not (self.budget.shortcut_complete and sub.is_complete()):
            if len(greedy_clique(sub.adjacency)) <= previous:
                counter = _Counter(self.budget.max_nodes)
                try:
                    colors = _k_color_search(sub.adjacency, previous, counter)
                except _OutOfNodes:
                    self.vertices.pop()
                    raise BudgetExceeded(previous, previous + 1, counter.nodes) from None
        if colors is not None:
            self.colors = {u: colors[i] for i, u in enumerate(self.vertices)}
        else:
            self.colors[v] = previous + 1
            self.chi = previous + 1
        assert self.chi - previous in (0, 1)
        return self.chi

    def coloring(self) -> Coloring:
        """Coloring of the current subgraph, indexed in insertion order."""
        return Coloring(tuple(self.colors[u] for u in self.vertices), self.chi)


def incremental_chromatic(
    g: UnderlyingGraph, prefix: Iterable[int], budget: ChromaticBudget | None = None
) -> Iterator[int]:
    inc = IncrementalChromatic(g, budget)
    for v in prefix:
        yield inc.add(v)
