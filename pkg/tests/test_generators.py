from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subdiv.coloring import chromatic_number
from subdiv.digraph import underlying, verify_hamiltonian
from subdiv.generators import (
    SplitMix64,
    banded_graph,
    circulant_tournament,
    random_digraph,
    random_tournament,
    transitive_tournament,
)
from subdiv.oracle import chromatic_bruteforce
from subdiv.secant import find_k_secant


def test_splitmix_reference_stream():
    # published test vector for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
    with pytest.raises(ValueError):
        SplitMix64(-1)


@given(st.integers(0, 2**64 - 1), st.integers(1, 1000))
def test_below_stays_in_range(seed, bound):
    rng = SplitMix64(seed)
    assert all(0 <= rng.below(bound) < bound for _ in range(20))


def test_bernoulli_extremes():
    rng = SplitMix64(3)
    assert not any(rng.bernoulli(0) for _ in range(100))
    assert all(rng.bernoulli(1) for _ in range(100))
    with pytest.raises(ValueError):
        rng.bernoulli(Fraction(3, 2))


def test_circulant_examples():
    d, w = circulant_tournament(3)
    assert d.arcs == {(0, 1), (1, 2), (2, 0)}
    d, w = circulant_tournament(7)
    assert len(d.arcs) == 21 and verify_hamiltonian(d, w) and w.kind == "circuit"
    assert d.is_tournament() and not d.digons()
    for bad in (4, 1, 2):
        with pytest.raises(ValueError):
            circulant_tournament(bad)


def test_transitive_examples():
    assert transitive_tournament(2)[0].arcs == {(0, 1)}
    assert transitive_tournament(1)[0].arcs == frozenset()
    d, w = transitive_tournament(31)
    assert len(d.arcs) == 465 and verify_hamiltonian(d, w)
    assert all(u < v for u, v in d.arcs)  # identity order is topological


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11])
def test_tournaments_have_chi_m(m):
    for d in (circulant_tournament(m)[0], transitive_tournament(m)[0]):
        g = underlying(d)
        assert chromatic_number(g)[0] == m == chromatic_bruteforce(g)


def test_random_tournament_examples():
    d, w = random_tournament(1, 5)
    assert d.vertex_count == 1 and w.order == (0,)
    d, w = random_tournament(10, 99)
    assert random_tournament(10, 99) == (d, w)
    assert verify_hamiltonian(d, w) and d.is_tournament()
    assert random_tournament(10, 100)[0].arcs != d.arcs


@given(st.integers(0, 30), st.integers(0, 2**64 - 1))
def test_random_tournament_path_verifies(m, seed):
    d, w = random_tournament(m, seed)
    assert d.is_tournament() and verify_hamiltonian(d, w)


def test_banded_examples():
    g, n = banded_graph(12, 1, 1, 0)
    assert g.edges == {(i, i + 1) for i in range(11)}
    g, n = banded_graph(30, 3, 1, 0)
    assert len(g.edges) == 27 + 28 + 29 and find_k_secant(g, n, 3) is None
    assert not banded_graph(20, 4, 0, 1)[0].edges


@given(st.integers(0, 40), st.integers(1, 5), st.integers(0, 100), st.integers(0, 2**64 - 1))
def test_banded_graphs_are_secant_free_and_reproducible(m, k, pct, seed):
    g, n = banded_graph(m, k, Fraction(pct, 100), seed)
    assert all(abs(u - v) <= k for u, v in g.edges)
    assert find_k_secant(g, n, k) is None
    assert banded_graph(m, k, Fraction(pct, 100), seed) == (g, n)


def test_random_digraph_density_and_digons():
    d = random_digraph(12, 1, 7, digon_density=1)
    assert len(d.digons()) == 66
    assert random_digraph(12, 0, 7).arcs == frozenset()
    assert random_digraph(12, "1/3", 7) == random_digraph(12, "1/3", 7)
