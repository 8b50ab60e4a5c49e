"""Random search over k-secant-free graphs, looking for chi above k + 2.

Every secant-free graph is (2k+1)-colorable; the open question is whether
k + 2 colors always suffice. Instances start as banded graphs (secant-free by
construction) and are mutated by adding longer edges, each kept only if the
graph stays k-secant-free. The clique on k + 2 vertices is always included:
it is secant-free and attains k + 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import ChromaticBudget, chromatic_number
from .digraph import Enumeration, UnderlyingGraph
from .errors import BudgetExceeded
from .generators import SplitMix64, banded_graph, complete_graph
from .secant import find_k_secant


@dataclass
class ExplorationReport:
    k: int
    instances: int
    seed: int
    max_chi: int = 0
    exceeded: int = 0  # instances with chi > k + 2
    skipped: int = 0  # chromatic budget ran out
    lemma_violations: int = 0  # chi > 2k + 1; must stay 0
    histogram: dict[int, int] = field(default_factory=dict)
    best: UnderlyingGraph | None = None

    def record(self, g: UnderlyingGraph, chi: int):
        self.histogram[chi] = self.histogram.get(chi, 0) + 1
        if chi > self.k + 2:
            self.exceeded += 1
        if chi > 2 * self.k + 1:
            self.lemma_violations += 1
        if chi > self.max_chi:
            self.max_chi = chi
            self.best = g


def mutate_secant_free(g: UnderlyingGraph, enum: Enumeration, k: int, rng: SplitMix64, attempts: int) -> UnderlyingGraph:
    """Try ``attempts`` random new edges of span > k, keeping the secant-free ones."""
    m = g.vertex_count
    if m < k + 2:
        return g
    edges = set(g.edges)
    for _ in range(attempts):
        i = rng.below(m)
        j = rng.below(m)
        a, b = min(i, j), max(i, j)
        if b - a <= k or (a, b) in edges:
            continue
        trial = UnderlyingGraph.from_edges(m, edges | {(a, b)})
        if find_k_secant(trial, enum, k) is None:
            edges.add((a, b))
            g = trial
    return g


def explore_conjecture(
    k: int,
    instances: int,
    seed: int,
    max_vertices: int = 14,
    budget: ChromaticBudget | None = None,
    include_clique: bool = True,
) -> ExplorationReport:
    if k < 1:
        raise ValueError("k must be positive")
    if max_vertices < k + 2:
        raise ValueError("max_vertices must be at least k + 2")
    rng = SplitMix64(seed)
    report = ExplorationReport(k, instances, seed)
    if include_clique:
        clique = complete_graph(k + 2)
        report.record(clique, chromatic_number(clique, budget)[0])
    for _ in range(instances):
        m = k + 2 + rng.below(max_vertices - k - 1)
        density = Fraction(rng.below(101), 100)
        g, enum = banded_graph(m, k, density, rng.next_u64())
        g = mutate_secant_free(g, enum, k, rng, 3 * m)
        try:
            chi, _ = chromatic_number(g, budget)
        except BudgetExceeded:
            report.skipped += 1
            continue
        report.record(g, chi)
    return report
