import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import graphs
from subdiv.coloring import (
    ChromaticBudget,
    Coloring,
    IncrementalChromatic,
    chromatic_number,
    incremental_chromatic,
    is_proper,
    k_coloring,
    product_coloring,
)
from subdiv.digraph import UnderlyingGraph
from subdiv.errors import BudgetExceeded, PreconditionError
from subdiv.generators import complete_graph, cycle_graph, petersen_graph, random_graph
from subdiv.oracle import chromatic_bruteforce


def colorable_by_enumeration(g, k):
    """Try every map V -> {1..k}; only for tiny graphs."""
    return any(
        all(c[u] != c[v] for u, v in g.edges)
        for c in itertools.product(range(k), repeat=g.vertex_count)
    )


def test_is_proper_examples():
    k3 = complete_graph(3)
    assert is_proper(k3, Coloring((1, 2, 3), 3))
    assert not is_proper(k3, Coloring((1, 1, 2), 2))
    assert is_proper(UnderlyingGraph(4, frozenset()), Coloring((1, 1, 1, 1), 1))
    with pytest.raises(ValueError):
        is_proper(k3, Coloring((1, 2), 2))


def test_chromatic_examples():
    assert chromatic_number(complete_graph(7))[0] == 7
    assert chromatic_number(cycle_graph(5))[0] == 3
    pet = petersen_graph()
    k, c = chromatic_number(pet)
    assert k == 3 and is_proper(pet, c)
    assert not colorable_by_enumeration(pet, 2)
    assert colorable_by_enumeration(pet, 3)


def test_complete_graph_without_shortcut():
    for m in range(1, 8):
        assert chromatic_number(complete_graph(m), ChromaticBudget(shortcut_complete=False))[0] == m


def test_empty_graph_has_chi_zero():
    assert chromatic_number(UnderlyingGraph(0, frozenset()))[0] == 0


def test_budget_exhaustion_is_reported_with_bounds():
    g = random_graph(40, "1/2", 3)
    with pytest.raises(BudgetExceeded) as info:
        chromatic_number(g, ChromaticBudget(max_nodes=1))
    assert info.value.lower <= info.value.upper


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("SUBDIV_CHI_BUDGET", "17")
    assert ChromaticBudget().max_nodes == 17
    with pytest.raises(ValueError):
        ChromaticBudget(max_nodes=-1)


@given(graphs(max_vertices=10))
def test_chromatic_number_is_exact(g):
    k, c = chromatic_number(g)
    assert is_proper(g, c)
    assert c.colors_used == k
    assert k == chromatic_bruteforce(g)
    if k >= 1:
        assert k_coloring(g, k - 1) is None


def test_product_coloring_k4_split():
    k4 = complete_graph(4)
    e1 = {(0, 1), (2, 3)}
    e2 = k4.edges - e1  # the 4-cycle 0-2-1-3-0
    c1 = Coloring((1, 2, 1, 2), 2)
    c2 = Coloring((1, 1, 2, 2), 2)
    out = product_coloring(k4, e1, e2, c1, c2)
    assert is_proper(k4, out) and out.palette_size == 4 and out.colors_used == 4


def test_product_coloring_degenerate_splits():
    empty = UnderlyingGraph(3, frozenset())
    assert product_coloring(empty, (), (), Coloring((1, 1, 1), 1), Coloring((1, 1, 1), 1)).palette_size == 1
    g = cycle_graph(5)
    k, c1 = chromatic_number(g)
    out = product_coloring(g, g.edges, (), c1, Coloring((1,) * 5, 1))
    assert is_proper(g, out) and out.palette_size == k


def test_product_coloring_rejects_bad_input():
    g = cycle_graph(4)
    edges = sorted(g.edges)
    with pytest.raises(PreconditionError):
        product_coloring(g, edges[:1], edges[1:2], Coloring((1, 2, 1, 2), 2), Coloring((1,) * 4, 1))
    with pytest.raises(PreconditionError):
        product_coloring(g, edges, (), Coloring((1,) * 4, 1), Coloring((1,) * 4, 1))


@given(graphs(max_vertices=10), st.data())
def test_product_coloring_is_proper(g, data):
    side = data.draw(st.lists(st.integers(0, 2), min_size=len(g.edges), max_size=len(g.edges)))
    edges = sorted(g.edges)
    e1 = {e for e, s in zip(edges, side) if s != 1}  # 2 puts the edge on both sides
    e2 = {e for e, s in zip(edges, side) if s != 0}
    k1, c1 = chromatic_number(UnderlyingGraph(g.vertex_count, frozenset(e1)))
    k2, c2 = chromatic_number(UnderlyingGraph(g.vertex_count, frozenset(e2)))
    if g.vertex_count == 0:
        return
    out = product_coloring(g, e1, e2, c1, c2)
    assert is_proper(g, out)
    assert out.colors_used <= k1 * k2


def test_incremental_examples():
    assert list(incremental_chromatic(complete_graph(5), [3, 1, 4, 0, 2])) == [1, 2, 3, 4, 5]
    assert list(incremental_chromatic(UnderlyingGraph(4, frozenset()), [2, 0, 3, 1])) == [1, 1, 1, 1]
    c5 = cycle_graph(5)
    expected = [chromatic_bruteforce(c5.induced(range(i))) for i in range(1, 6)]
    assert expected == [1, 2, 2, 2, 3]
    assert list(incremental_chromatic(c5, range(5))) == expected


@given(graphs(min_vertices=1, max_vertices=10), st.data())
def test_incremental_matches_exact_prefixes(g, data):
    order = data.draw(st.permutations(range(g.vertex_count)))
    inc = IncrementalChromatic(g)
    previous = 0
    for i, v in enumerate(order, 1):
        chi = inc.add(v)
        assert chi - previous in (0, 1)
        assert chi == chromatic_bruteforce(g.induced(order[:i]))
        assert is_proper(g.induced(order[:i]), inc.coloring())
        previous = chi


def test_incremental_rejects_repeated_vertex():
    inc = IncrementalChromatic(cycle_graph(3))
    inc.add(0)
    with pytest.raises(ValueError):
        inc.add(0)
