"""Seeded instance families.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), a 64-bit
counter-plus-mix generator chosen because it is a few lines of integer
arithmetic and gives the same stream in any language. A ``density`` p is
applied as ``next_u64() < floor(p * 2**64)``, computed exactly with
fractions, so instances do not depend on float rounding either.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .digraph import Digraph, Enumeration, HamiltonianWitness, UnderlyingGraph
from .oracle import tournament_hamiltonian_path
from .secant import find_k_secant

MASK64 = (1 << 64) - 1

Density = Union[Fraction, float, int, str]


class SplitMix64:
    def __init__(self, seed: int):
        if not (0 <= seed <= MASK64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def bernoulli(self, p: Density) -> bool:
        return self.next_u64() < _threshold(p)

    def shuffle(self, items: list) -> list:
        """Fisher-Yates, in place; returns ``items``."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def _threshold(p: Density) -> int:
    p = Fraction(p)
    if not (0 <= p <= 1):
        raise ValueError("density must lie in [0, 1]")
    return int(p * (1 << 64))


def circulant_tournament(m: int) -> tuple[Digraph, HamiltonianWitness]:
    """Arcs i -> i+1, ..., i+(m-1)/2 (mod m), Hamiltonian circuit 0, 1, ..., m-1."""
    if m < 3 or m % 2 == 0:
        raise ValueError("circulant tournament needs an odd order of at least 3")
    arcs = frozenset((i, (i + j) % m) for i in range(m) for j in range(1, (m - 1) // 2 + 1))
    return Digraph(m, arcs), HamiltonianWitness("circuit", tuple(range(m)))


def transitive_tournament(m: int) -> tuple[Digraph, HamiltonianWitness]:
    if m < 1:
        raise ValueError("order must be at least 1")
    arcs = frozenset((i, j) for i in range(m) for j in range(i + 1, m))
    return Digraph(m, arcs), HamiltonianWitness("path", tuple(range(m)))


def random_tournament(m: int, seed: int) -> tuple[Digraph, HamiltonianWitness]:
    """Each pair i < j (lexicographic) is oriented i -> j when the top bit is 0."""
    rng = SplitMix64(seed)
    arcs = set()
    for i in range(m):
        for j in range(i + 1, m):
            arcs.add((i, j) if rng.next_u64() >> 63 == 0 else (j, i))
    d = Digraph(m, frozenset(arcs))
    return d, tournament_hamiltonian_path(d)


def random_digraph(m: int, density: Density, seed: int, digon_density: Density = 0) -> Digraph:
    """Each pair present with probability ``density``, random orientation;
    present pairs become digons with probability ``digon_density``."""
    rng = SplitMix64(seed)
    keep, both = _threshold(density), _threshold(digon_density)
    arcs = set()
    for i in range(m):
        for j in range(i + 1, m):
            if rng.next_u64() >= keep:
                continue
            flip = rng.next_u64() >> 63
            arcs.add((i, j) if flip == 0 else (j, i))
            if rng.next_u64() < both:
                arcs.add((j, i) if flip == 0 else (i, j))
    return Digraph(m, frozenset(arcs))


def random_graph(m: int, density: Density, seed: int) -> UnderlyingGraph:
    rng = SplitMix64(seed)
    keep = _threshold(density)
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if rng.next_u64() < keep]
    return UnderlyingGraph.from_edges(m, edges)


def banded_graph(m: int, k: int, density: Density, seed: int) -> tuple[UnderlyingGraph, Enumeration]:
    """Edges only between positions at most k apart, so no k-secant pair exists."""
    if k < 1:
        raise ValueError("k must be positive")
    rng = SplitMix64(seed)
    keep = _threshold(density)
    edges = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, min(m, i + k + 1))
        if rng.next_u64() < keep
    ]
    g = UnderlyingGraph.from_edges(m, edges)
    enum = Enumeration.natural(m)
    assert find_k_secant(g, enum, k) is None
    return g, enum


def complete_graph(m: int) -> UnderlyingGraph:
    return UnderlyingGraph.from_edges(m, ((i, j) for i in range(m) for j in range(i + 1, m)))


def cycle_graph(m: int) -> UnderlyingGraph:
    return UnderlyingGraph.from_edges(m, ((i, (i + 1) % m) for i in range(m)))


def petersen_graph() -> UnderlyingGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return UnderlyingGraph.from_edges(10, outer + spokes + inner)
