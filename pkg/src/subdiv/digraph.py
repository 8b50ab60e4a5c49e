"""Digraphs, their underlying graphs, oriented-cycle patterns and witnesses.

Vertices are dense 0-based integers everywhere in the library. File formats
(see :mod:`subdiv.formats`) are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import PatternParseError

Arc = tuple[int, int]
Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    arcs: frozenset[Arc]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"arc ({u}, {v}) out of range")

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs: Iterable[Arc]) -> "Digraph":
        return cls(vertex_count, frozenset((int(u), int(v)) for u, v in arcs))

    @cached_property
    def out_neighbors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.arcs:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def in_neighbors(self) -> tuple[frozenset[int], ...]:
        inc: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.arcs:
            inc[v].add(u)
        return tuple(frozenset(s) for s in inc)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def digons(self) -> list[Edge]:
        """Vertex pairs joined in both directions (reported, never rejected)."""
        return sorted({_edge(u, v) for u, v in self.arcs if (v, u) in self.arcs})

    def is_tournament(self) -> bool:
        n = self.vertex_count
        if len(self.arcs) != n * (n - 1) // 2:
            return False
        return len({_edge(u, v) for u, v in self.arcs}) == len(self.arcs)


@dataclass(frozen=True)
class UnderlyingGraph:
    vertex_count: int
    edges: frozenset[Edge]

    def __post_init__(self):
        normalized = frozenset(_edge(u, v) for u, v in self.edges)
        for u, v in normalized:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
        object.__setattr__(self, "edges", normalized)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Edge]) -> "UnderlyingGraph":
        return cls(vertex_count, frozenset((int(u), int(v)) for u, v in edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_complete(self) -> bool:
        n = self.vertex_count
        return len(self.edges) == n * (n - 1) // 2

    def induced(self, vertices: Sequence[int]) -> "UnderlyingGraph":
        """Subgraph on ``vertices``, re-indexed in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return UnderlyingGraph.from_edges(len(vertices), edges)


@dataclass(frozen=True)
class Enumeration:
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise ValueError("enumeration repeats a vertex")

    @classmethod
    def natural(cls, n: int) -> "Enumeration":
        return cls(tuple(range(n)))

    @cached_property
    def positions(self) -> dict[int, int]:
        """1-based index of every vertex, i.e. i_N(v)."""
        return {v: i + 1 for i, v in enumerate(self.order)}

    def index(self, v: int) -> int:
        return self.positions[v]

    def __len__(self) -> int:
        return len(self.order)

    def covers(self, n: int) -> bool:
        return len(self.order) == n and set(self.order) == set(range(n))


def underlying(d: Digraph) -> UnderlyingGraph:
    return UnderlyingGraph(d.vertex_count, frozenset(_edge(u, v) for u, v in d.arcs))


class Induced(NamedTuple):
    digraph: Digraph
    ids: tuple[int, ...]  # new id -> original id

    def lift(self, v: int) -> int:
        return self.ids[v]


def induced(d: Digraph, vertices: Iterable[int]) -> Induced:
    """Induced subdigraph on ``vertices``; new ids follow the given order."""
    ids = tuple(vertices)
    index = {}
    for i, v in enumerate(ids):
        if not (0 <= v < d.vertex_count):
            raise ValueError(f"unknown vertex {v}")
        if v in index:
            raise ValueError(f"vertex {v} listed twice")
        index[v] = i
    arcs = frozenset((index[u], index[v]) for u, v in d.arcs if u in index and v in index)
    return Induced(Digraph(len(ids), arcs), ids)


# --- oriented cycle patterns -------------------------------------------------

_PATTERN_RE = re.compile(r"^\s*C\s*([+-])\s*\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)\s*$")


@dataclass(frozen=True)
class CyclePattern:
    """``C^sign(k_1, ..., k_l)``.

    A single block denotes the directed cycle of length ``k_1``; its sign is
    irrelevant. Otherwise ``l`` is even and ``sign`` tells whether the first
    block is forward.
    """

    sign: str
    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(k) for k in self.blocks))
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        if not self.blocks:
            raise ValueError("pattern needs at least one block")
        if any(k < 1 for k in self.blocks):
            raise ValueError("block lengths must be positive")
        if len(self.blocks) > 1 and len(self.blocks) % 2:
            raise ValueError("an oriented cycle has an even number of blocks")

    @classmethod
    def parse(cls, text: str) -> "CyclePattern":
        m = _PATTERN_RE.match(text)
        if not m:
            raise PatternParseError(f"bad pattern {text!r}; expected e.g. C+(1,2)")
        blocks = tuple(int(x) for x in m.group(2).split(","))
        try:
            return cls(m.group(1), blocks)
        except ValueError as exc:
            raise PatternParseError(f"bad pattern {text!r}: {exc}") from None

    def __str__(self) -> str:
        return f"C{self.sign}({','.join(map(str, self.blocks))})"

    @property
    def order(self) -> int:
        return sum(self.blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def t(self) -> int:
        return len(self.blocks) // 2

    @property
    def is_directed(self) -> bool:
        return len(self.blocks) == 1

    def block_forward(self, i: int) -> bool:
        """Orientation of block ``i`` relative to the traversal."""
        if self.is_directed:
            return True
        return (i % 2 == 0) == (self.sign == "+")

    def even_sum(self) -> int:
        # positions 2, 4, ... in 1-based terms
        return sum(self.blocks[1::2])

    def reversed(self) -> "CyclePattern":
        """Same oriented cycle read in the opposite direction."""
        if self.is_directed:
            return self
        return CyclePattern(self.sign, self.blocks[::-1])

    def as_plus(self) -> "CyclePattern":
        """Rewrite a minus pattern as a plus pattern by starting one block later."""
        if self.sign == "+" or self.is_directed:
            return CyclePattern("+", self.blocks)
        return CyclePattern("+", self.blocks[1:] + self.blocks[:1])


def canonicalize_pattern(c: CyclePattern) -> tuple[CyclePattern, bool]:
    """Return an equal pattern whose even-position sum is at most n/2.

    The flag tells whether the reversal identity was applied.
    """
    if c.is_directed or 2 * c.even_sum() <= c.order:
        return c, False
    return c.reversed(), True


def compositions(n: int, parts: int) -> list[tuple[int, ...]]:
    """All compositions of ``n`` into ``parts`` positive integers, lexicographic."""
    if parts == 1:
        return [(n,)] if n >= 1 else []
    out = []
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            out.append((first,) + rest)
    return out


def patterns_of_order(n: int, signs: Sequence[str] = ("+", "-")) -> list[CyclePattern]:
    """Every non-directed pattern of order ``n`` (as written, not up to isomorphism)."""
    out = []
    for parts in range(2, n + 1, 2):
        for comp in compositions(n, parts):
            for s in signs:
                out.append(CyclePattern(s, comp))
    return out


# --- Hamiltonian witnesses ---------------------------------------------------


@dataclass(frozen=True)
class HamiltonianWitness:
    kind: str  # "path" or "circuit"
    order: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("path", "circuit"):
            raise ValueError(f"kind must be 'path' or 'circuit', got {self.kind!r}")
        object.__setattr__(self, "order", tuple(self.order))

    @cached_property
    def positions(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def verify_hamiltonian(d: Digraph, w: HamiltonianWitness) -> bool:
    order = w.order
    if len(order) != d.vertex_count or set(order) != set(range(d.vertex_count)):
        return False
    if any(not d.has_arc(u, v) for u, v in zip(order, order[1:])):
        return False
    if w.kind == "circuit":
        if d.vertex_count < 2:
            return False
        if not d.has_arc(order[-1], order[0]):
            return False
    return True


def subpath(w: HamiltonianWitness, x: int, y: int) -> tuple[int, ...]:
    """C_[x,y] / P_[x,y]: the directed stretch of ``w`` from x to y."""
    pos = w.positions
    if x not in pos or y not in pos:
        raise ValueError(f"vertex {x if x not in pos else y} not on the witness")
    i, j = pos[x], pos[y]
    if i <= j:
        return w.order[i:j + 1]
    if w.kind == "path":
        raise ValueError(f"{x} comes after {y} on the path")
    return w.order[i:] + w.order[:j + 1]


# --- subdivision witnesses ---------------------------------------------------


@dataclass(frozen=True)
class BlockPath:
    """One block realised as a directed path, listed in arc direction.

    ``forward`` says whether the arcs agree with the cyclic traversal; for a
    backward block the traversal visits ``vertices`` in reverse.
    """

    vertices: tuple[int, ...]
    forward: bool

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def traversal(self) -> tuple[int, ...]:
        return self.vertices if self.forward else self.vertices[::-1]


@dataclass(frozen=True)
class SubdivisionWitness:
    pattern: CyclePattern
    block_paths: tuple[BlockPath, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_paths", tuple(self.block_paths))

    @property
    def branch_vertices(self) -> tuple[int, ...]:
        """Traversal-start vertex of every block."""
        return tuple(b.traversal[0] for b in self.block_paths if b.vertices)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b.length for b in self.block_paths)

    def cycle(self) -> tuple[int, ...]:
        """Vertices of the cycle in traversal order, each listed once."""
        out: list[int] = []
        for b in self.block_paths:
            out.extend(b.traversal[:-1])
        return tuple(out)

    def relabel(self, ids: Sequence[int]) -> "SubdivisionWitness":
        return SubdivisionWitness(
            self.pattern,
            tuple(BlockPath(tuple(ids[v] for v in b.vertices), b.forward) for b in self.block_paths),
        )
