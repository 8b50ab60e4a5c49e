"""Brute-force ground truth for small instances.

Nothing here shares search code with :mod:`subdiv.finder` or the solver in
:mod:`subdiv.coloring`; the point of these functions is to disagree with them
if either is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    BlockPath,
    CyclePattern,
    Digraph,
    HamiltonianWitness,
    SubdivisionWitness,
    UnderlyingGraph,
    verify_hamiltonian,
)
from .errors import AssemblyError, LimitExceeded


@dataclass(frozen=True)
class SearchLimit:
    max_vertices: int = 12
    max_steps: int = 5_000_000

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_steps < 1:
            raise ValueError("search limits must be positive")

    def check(self, n: int):
        if n > self.max_vertices:
            raise LimitExceeded(f"{n} vertices exceeds the oracle limit of {self.max_vertices}")


class _Steps:
    def __init__(self, limit: int):
        self.left = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise LimitExceeded("oracle step limit exhausted")


def contains_subdivision(
    d: Digraph, c: CyclePattern, lim: SearchLimit | None = None
) -> SubdivisionWitness | None:
    """Exhaustive search for a subdivision of ``c``.

    Branch vertices are placed one at a time: from the current branch vertex
    the block is grown as a directed path (along out-arcs for a forward
    block, in-arcs for a backward one) over unused vertices, and may end at
    any vertex once it is long enough. The last block has to come back to the
    first branch vertex.
    """
    from .finder import verify_subdivision

    lim = lim or SearchLimit()
    lim.check(d.vertex_count)
    steps = _Steps(lim.max_steps)
    n = d.vertex_count
    ks = c.blocks
    l = len(ks)
    fwd = [c.block_forward(i) for i in range(l)]
    nxt = [d.out_neighbors, d.in_neighbors]
    # suffix[i] = total length still required from block i on
    suffix = [0] * (l + 1)
    for i in range(l - 1, -1, -1):
        suffix[i] = suffix[i + 1] + ks[i]
    min_cycle = 2 if c.is_directed else 3
    used = [False] * n
    blocks: list[list[int]] = []

    def grow(bi: int, cur: int, length: int, total: int, start: int) -> bool:
        steps.tick()
        # vertices still to add: at least (required length left) - 1, the last step closes
        need = max(suffix[bi] - length - 1, 0)
        if total + need > n:
            return False
        k = ks[bi]
        for w in sorted(nxt[0 if fwd[bi] else 1][cur]):
            if w == start and bi == l - 1:
                if length + 1 >= k and total >= min_cycle:
                    blocks[-1].append(w)
                    return True
                continue
            if used[w]:
                continue
            used[w] = True
            blocks[-1].append(w)
            if grow(bi, w, length + 1, total + 1, start):
                return True
            blocks[-1].pop()
            used[w] = False
        if bi < l - 1 and length >= k:
            blocks.append([cur])
            if grow(bi + 1, cur, 0, total, start):
                return True
            blocks.pop()
        return False

    for b0 in range(n):
        used[b0] = True
        blocks[:] = [[b0]]
        if grow(0, b0, 0, 1, b0):
            paths = tuple(
                BlockPath(tuple(t) if fwd[i] else tuple(reversed(t)), fwd[i])
                for i, t in enumerate(blocks)
            )
            w = SubdivisionWitness(c, paths)
            if not verify_subdivision(d, c, w):
                raise AssemblyError("oracle produced an invalid witness")
            return w
        used[b0] = False
    return None


def chromatic_bruteforce(g: UnderlyingGraph, lim: SearchLimit | None = None) -> int:
    """Smallest k admitting a proper coloring, by plain backtracking in index order.

    The only pruning is the usual symmetry break: a vertex may open at most
    one color beyond those already used.
    """
    lim = lim or SearchLimit()
    lim.check(g.vertex_count)
    steps = _Steps(lim.max_steps)
    n = g.vertex_count
    earlier = [[u for u in g.adjacency[v] if u < v] for v in range(n)]
    colors = [0] * n

    def place(v: int, k: int, used: int) -> bool:
        if v == n:
            return True
        steps.tick()
        for col in range(1, min(k, used + 1) + 1):
            if all(colors[u] != col for u in earlier[v]):
                colors[v] = col
                if place(v + 1, k, max(used, col)):
                    return True
        colors[v] = 0
        return False

    k = 0
    while not place(0, k, 0):
        k += 1
    return k


def tournament_hamiltonian_path(d: Digraph) -> HamiltonianWitness:
    """Insertion method: put each vertex before the first placed vertex it beats."""
    if not d.is_tournament():
        raise ValueError("insertion method needs a tournament")
    order: list[int] = []
    for v in range(d.vertex_count):
        for idx, u in enumerate(order):
            if d.has_arc(v, u):
                order.insert(idx, v)
                break
        else:
            order.append(v)
    w = HamiltonianWitness("path", tuple(order))
    assert verify_hamiltonian(d, w)
    return w


def find_hamiltonian(
    d: Digraph, kind: str, lim: SearchLimit | None = None
) -> HamiltonianWitness | None:
    lim = lim or SearchLimit()
    if kind == "path" and d.is_tournament():
        return tournament_hamiltonian_path(d)
    if kind not in ("path", "circuit"):
        raise ValueError(f"kind must be path or circuit, got {kind!r}")
    lim.check(d.vertex_count)
    n = d.vertex_count
    if n == 0:
        return HamiltonianWitness(kind, ()) if kind == "path" else None
    if kind == "circuit" and n < 2:
        return None
    steps = _Steps(lim.max_steps)
    out = [sorted(s) for s in d.out_neighbors]
    seen = [False] * n
    order: list[int] = []

    def extend(v: int) -> bool:
        steps.tick()
        if len(order) == n:
            return kind == "path" or d.has_arc(order[-1], order[0])
        for w in out[v]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                if extend(w):
                    return True
                order.pop()
                seen[w] = False
        return False

    # a circuit passes through vertex 0, so one start suffices
    starts = [0] if kind == "circuit" else range(n)
    for s in starts:
        seen[s] = True
        order[:] = [s]
        if extend(s):
            w = HamiltonianWitness(kind, tuple(order))
            assert verify_hamiltonian(d, w)
            return w
        seen[s] = False
    return None
