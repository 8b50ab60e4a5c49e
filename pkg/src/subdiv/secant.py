"""k-secant edge pairs and the (2k+1)-coloring of graphs without them.

Two edges v_i v_j and v_r v_l of a graph with an enumeration are k-secant
when i < r < j < l and j - r >= k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring
from .digraph import Edge, Enumeration, UnderlyingGraph
from .errors import PreconditionError, SecantFoundError


@dataclass(frozen=True)
class SecantPair:
    """``positions`` are 1-based indices (i, r, j, l) in the enumeration.

    first_edge joins the vertices at positions i and j, second_edge those at
    r and l.
    """

    first_edge: Edge
    second_edge: Edge
    positions: tuple[int, int, int, int]
    k: int

    def is_valid_for(self, g: UnderlyingGraph, n: Enumeration) -> bool:
        i, r, j, l = self.positions
        if not (i < r < j < l and j - r >= self.k):
            return False
        order = n.order
        try:
            want1 = {order[i - 1], order[j - 1]}
            want2 = {order[r - 1], order[l - 1]}
        except IndexError:
            return False
        edges = g.edges
        return (
            set(self.first_edge) == want1
            and set(self.second_edge) == want2
            and tuple(sorted(want1)) in edges
            and tuple(sorted(want2)) in edges
        )


def _check_enumeration(g: UnderlyingGraph, n: Enumeration):
    if not n.covers(g.vertex_count):
        raise PreconditionError("enumeration does not cover the vertices of the graph")


def _position_edges(g: UnderlyingGraph, pos: dict[int, int]) -> list[tuple[int, int]]:
    spans = []
    for u, v in g.edges:
        a, b = pos[u], pos[v]
        spans.append((a, b) if a < b else (b, a))
    spans.sort()
    return spans


def find_k_secant(g: UnderlyingGraph, n: Enumeration, k: int) -> SecantPair | None:
    """Lexicographically least k-secant pair by (i, r, j, l), or None."""
    if k < 1:
        raise ValueError("k must be positive")
    _check_enumeration(g, n)
    pos = n.positions
    spans = _position_edges(g, pos)
    best = None
    for a, (i, j) in enumerate(spans):
        if best is not None and i > best[0]:
            break
        if j - i < k + 1:
            # need i < r and r + k <= j
            continue
        for r, l in spans[a + 1:]:
            if r >= j - k + 1:
                break
            if r > i and l > j:
                cand = (i, r, j, l)
                if best is None or cand < best:
                    best = cand
                # spans are sorted by (r, l): the first hit is least for this first edge
                break
    if best is None:
        return None
    i, r, j, l = best
    order = n.order
    return SecantPair(
        (order[i - 1], order[j - 1]), (order[r - 1], order[l - 1]), best, k
    )


class _Remaining:
    """The shrinking graph of the elimination, with enumeration order kept."""

    def __init__(self, g: UnderlyingGraph, n: Enumeration):
        self.adj = {v: set(g.adjacency[v]) for v in n.order}
        self.order = list(n.order)
        self.pos = n.positions

    def remove(self, v: int):
        for u in self.adj.pop(v):
            self.adj[u].discard(v)
        self.order.remove(v)


def _claim_pair(rem: _Remaining, k: int) -> SecantPair:
    """Build a k-secant pair when every remaining degree exceeds 2k.

    Every v has a neighbour at least k+1 places away in the current order;
    take the last v whose far neighbour lies to its right, and the vertex k
    places after it.
    """
    order = rem.order
    local = {v: i for i, v in enumerate(order)}
    far = {}
    for v in order:
        # pick the farthest neighbour to keep the choice deterministic
        cands = [u for u in rem.adj[v] if abs(local[u] - local[v]) >= k + 1]
        if not cands:
            raise AssertionError("degree > 2k but no far neighbour")
        far[v] = max(cands, key=lambda u: (abs(local[u] - local[v]), -local[u]))
    right = [v for v in order if local[far[v]] > local[v]]
    vj = max(right, key=lambda v: local[v])
    j = local[vj]
    vjk = order[j + k]
    assert local[far[vjk]] < j
    first = (far[vjk], vjk)
    second = (vj, far[vj])
    p = rem.pos
    positions = (p[first[0]], p[second[0]], p[first[1]], p[second[1]])
    return SecantPair(first, second, positions, k)


def _pick_low_degree(rem: _Remaining, k: int) -> int:
    v = min(rem.order, key=lambda u: (len(rem.adj[u]), rem.pos[u]))
    if len(rem.adj[v]) > 2 * k:
        pair = _claim_pair(rem, k)
        raise SecantFoundError(pair, f"every vertex has degree above {2 * k}")
    return v


def low_degree_vertex(g: UnderlyingGraph, n: Enumeration, k: int) -> int:
    """A vertex of degree at most 2k (minimum degree, earliest on ties)."""
    _check_enumeration(g, n)
    if g.vertex_count == 0:
        raise ValueError("empty graph has no vertices")
    return _pick_low_degree(_Remaining(g, n), k)


def secant_free_coloring(g: UnderlyingGraph, n: Enumeration, k: int) -> Coloring:
    """Proper coloring with at most 2k+1 colors of a graph with no k-secant pair.

    Eliminate low-degree vertices one at a time, then put them back in
    reverse order, each taking the smallest color its neighbours leave free.
    """
    if k < 1:
        raise ValueError("k must be positive")
    _check_enumeration(g, n)
    rem = _Remaining(g, n)
    stack = []
    while rem.order:
        v = _pick_low_degree(rem, k)
        stack.append(v)
        rem.remove(v)
    colors = [0] * g.vertex_count
    adj = g.adjacency
    while stack:
        v = stack.pop()
        taken = {colors[u] for u in adj[v]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    palette = max(colors, default=0)
    assert palette <= 2 * k + 1
    return Coloring(tuple(colors), palette)
