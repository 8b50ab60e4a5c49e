import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdiv.coloring import chromatic_number
from subdiv.digraph import (
    BlockPath,
    CyclePattern,
    Digraph,
    HamiltonianWitness,
    SubdivisionWitness,
    patterns_of_order,
    subpath,
    underlying,
)
from subdiv.errors import InsufficientChromaticError, PreconditionError
from subdiv.finder import (
    REACH_TARGET,
    STOP_BELOW_TARGET,
    contract,
    find_in_hamiltonian,
    find_with_hamiltonian_path,
    partition_segments,
    segment_targets,
    solve_with_hamiltonian_path,
    verify_subdivision,
)
from subdiv.generators import (
    SplitMix64,
    circulant_tournament,
    random_digraph,
    random_tournament,
    transitive_tournament,
)
from subdiv.oracle import chromatic_bruteforce, contains_subdivision

TRIANGLE = Digraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))


def planted_circuit(m, density, seed):
    """Random digraph plus a Hamiltonian circuit along a shuffled order."""
    d = random_digraph(m, density, seed, digon_density="1/5")
    order = SplitMix64(seed ^ 0x5A5A).shuffle(list(range(m)))
    arcs = set(d.arcs) | {(order[i], order[(i + 1) % m]) for i in range(m)}
    return Digraph(m, frozenset(arcs)), HamiltonianWitness("circuit", tuple(order))


# --- verifier ----------------------------------------------------------------


def test_verify_subdivision_examples():
    c3 = CyclePattern("+", (3,))
    assert verify_subdivision(TRIANGLE, c3, SubdivisionWitness(c3, (BlockPath((0, 1, 2, 0), True),)))
    d, _ = transitive_tournament(4)
    c = CyclePattern("+", (1, 1))
    good = SubdivisionWitness(c, (BlockPath((0, 1, 3), True), BlockPath((0, 2, 3), False)))
    assert verify_subdivision(d, c, good)
    reused = SubdivisionWitness(c, (BlockPath((0, 1, 3), True), BlockPath((0, 1, 2, 3), False)))
    assert not verify_subdivision(d, c, reused)
    c21 = CyclePattern("+", (2, 1))
    short = (BlockPath((0, 3), True), BlockPath((0, 1, 2, 3), False))
    assert not verify_subdivision(d, c21, SubdivisionWitness(c21, short))
    c12 = CyclePattern("+", (1, 2))
    assert verify_subdivision(d, c12, SubdivisionWitness(c12, short))


def test_verify_subdivision_rejects_wrong_shape():
    d, _ = transitive_tournament(4)
    c = CyclePattern("+", (1, 1))
    good = SubdivisionWitness(c, (BlockPath((0, 1, 3), True), BlockPath((0, 2, 3), False)))
    minus = CyclePattern("-", (1, 1))
    assert not verify_subdivision(d, minus, SubdivisionWitness(minus, good.block_paths))
    broken = SubdivisionWitness(c, (BlockPath((0, 1, 3), True), BlockPath((3, 2, 0), False)))
    assert not verify_subdivision(d, c, broken)
    same_dir = SubdivisionWitness(c, (BlockPath((0, 1, 3), True), BlockPath((0, 2, 3), True)))
    assert not verify_subdivision(d, c, same_dir)
    parallel = SubdivisionWitness(c, (BlockPath((0, 3), True), BlockPath((0, 3), False)))
    assert not verify_subdivision(d, c, parallel)


# --- partition ---------------------------------------------------------------


def test_partition_examples():
    d, w = transitive_tournament(10)
    part = partition_segments(d, w, (3, 4), REACH_TARGET)
    assert [len(s) for s in part.segments] == [3, 4] and part.achieved_chi == (3, 4)
    assert part.segments[0] == (0, 1, 2) and part.leftover == tuple(range(7, 10))
    part = partition_segments(d, w, (1,), REACH_TARGET)
    assert part.segments == ((0,),)
    d, w = transitive_tournament(31)
    part = partition_segments(d, w, 6, STOP_BELOW_TARGET)
    assert [len(s) for s in part.segments] == [5, 5, 5, 5, 5, 5, 1]
    assert part.achieved_chi == (5,) * 6 + (1,)


def test_partition_zero_target_and_merge():
    d, w = transitive_tournament(10)
    part = partition_segments(d, w, (0, 2, 1), REACH_TARGET, merge_leftover=True)
    assert part.segments == ((), (0, 1), (2, 3, 4, 5, 6, 7, 8, 9))
    assert part.merged and part.leftover == tuple(range(3, 10))


def test_partition_runs_out_of_vertices():
    d, w = transitive_tournament(5)
    with pytest.raises(InsufficientChromaticError) as info:
        partition_segments(d, w, (3, 3), REACH_TARGET)
    assert info.value.segment == 1 and info.value.achieved == 2


def test_segment_targets():
    assert segment_targets(CyclePattern("+", (2, 1))) == (1, 4)
    assert segment_targets(CyclePattern("+", (1, 2, 3, 1)), 3) == (0, 6, 2)


@settings(max_examples=40)
@given(st.integers(4, 11), st.integers(0, 2**32), st.integers(2, 5))
def test_stop_below_semantics_by_oracle(m, seed, target):
    d = random_digraph(m, "3/5", seed)
    order = tuple(range(m))
    g = underlying(d)
    part = partition_segments(d, order, target, STOP_BELOW_TARGET)
    flat = [v for s in part.segments for v in s]
    assert tuple(flat) == order
    for i, seg in enumerate(part.segments):
        assert chromatic_bruteforce(g.induced(seg)) == part.achieved_chi[i]
        if i < len(part.segments) - 1:
            assert part.achieved_chi[i] == target - 1
            nxt = part.segments[i + 1][0]
            assert chromatic_bruteforce(g.induced(seg + (nxt,))) == target


# --- circuit engine ----------------------------------------------------------


def test_circuit_engine_examples():
    d, w = circulant_tournament(7)
    c = CyclePattern("+", (2, 1))
    found = find_in_hamiltonian(d, w, c)
    assert verify_subdivision(d, c, found)
    assert contains_subdivision(d, c) is not None
    c = CyclePattern("-", (1, 1, 1, 1))
    d, w = circulant_tournament(9)
    found = find_in_hamiltonian(d, w, c)
    assert verify_subdivision(d, c, found) and contains_subdivision(d, c) is not None


def test_one_block_pattern_returns_the_circuit():
    d, w = circulant_tournament(7)
    c = CyclePattern("+", (4,))
    found = find_in_hamiltonian(d, w, c)
    assert found.block_paths[0].vertices == w.order + w.order[:1]


def test_circuit_engine_preconditions():
    d, w = circulant_tournament(7)
    with pytest.raises(PreconditionError):
        find_in_hamiltonian(d, w, CyclePattern("+", (2, 2)))  # needs chi >= 8
    with pytest.raises(PreconditionError):
        find_in_hamiltonian(d, HamiltonianWitness("circuit", (0, 2, 1, 3, 4, 5, 6)), CyclePattern("+", (1, 1)))
    with pytest.raises(PreconditionError):
        find_in_hamiltonian(d, HamiltonianWitness("path", w.order), CyclePattern("+", (1, 1)))


@pytest.mark.parametrize("m", [5, 7, 9])
def test_circuit_engine_all_small_patterns(m):
    d, w = circulant_tournament(m)
    n = (m - 1) // 2
    for c in patterns_of_order(n):
        assert verify_subdivision(d, c, find_in_hamiltonian(d, w, c))


@settings(max_examples=50)
@given(st.integers(3, 10), st.integers(0, 2**32), st.sampled_from(["1/2", "3/4", "1"]), st.data())
def test_circuit_engine_cross_validates_with_oracle(m, seed, density, data):
    d, w = planted_circuit(m, density, seed)
    n = data.draw(st.integers(2, max(2, m // 2)))
    c = data.draw(st.sampled_from(patterns_of_order(n)))
    chi = chromatic_number(underlying(d))[0]
    try:
        found = find_in_hamiltonian(d, w, c)
    except PreconditionError:
        assert chi < 2 * n
        return
    assert verify_subdivision(d, c, found)
    assert contains_subdivision(d, c) is not None


# --- path engine -------------------------------------------------------------


def test_path_engine_transitive_31():
    d, w = transitive_tournament(31)
    c = CyclePattern("+", (1, 2))
    sol = solve_with_hamiltonian_path(d, w, c)
    assert sol.selection.case_tag == "both_forward"
    assert verify_subdivision(d, c, sol.witness)


def test_path_engine_rejects_one_block_and_low_chi():
    d, w = transitive_tournament(31)
    with pytest.raises(PreconditionError):
        find_with_hamiltonian_path(d, w, CyclePattern("+", (3,)))
    d, w = transitive_tournament(18)
    with pytest.raises(PreconditionError):
        find_with_hamiltonian_path(d, w, CyclePattern("+", (1, 1)))


def test_contracted_graph_matches_cross_segment_arcs():
    d, w = random_tournament(25, 11)
    part = partition_segments(d, w, 4, STOP_BELOW_TARGET)
    cg = contract(d, part, w.order)
    seg = part.segment_of()
    pos = w.positions
    expected = {tuple(sorted((seg[u], seg[v]))) for u, v in d.arcs if seg[u] != seg[v]}
    assert cg.graph.edges == expected
    for (r, s), dirs in cg.arc_provenance.items():
        assert r < s
        for kind, (u, v) in dirs.items():
            assert d.has_arc(u, v) and {seg[u], seg[v]} == {r, s}
            assert (pos[u] < pos[v]) == (kind == "forward")
    odd, even = cg.parity_split
    assert odd == tuple(range(0, len(part.segments), 2))
    assert even == tuple(range(1, len(part.segments), 2))


def _seg(part, v):
    return part.segment_of()[v]


def test_path_engine_case_one_on_random_tournaments():
    seen = 0
    for seed in range(60):
        d, w = random_tournament(19, seed)
        c = CyclePattern("+", (1, 1))
        sol = solve_with_hamiltonian_path(d, w, c)
        assert verify_subdivision(d, c, sol.witness)
        sel = sol.selection
        si, sr, sj, ss = (_seg(sol.partition, u) for u in (sel.u_i, sel.u_r, sel.u_j, sel.u_s))
        assert si < sel.m_1 < sr < sel.m_2 < ss and sr < sj < ss
        assert sj == sel.m_2 - 1 and si == sel.m_1 - 1
        if sel.case_tag != "backward_arc":
            continue
        seen += 1
        lo, hi = (sel.u_i, sel.u_j) if sel.pivot == sel.m_1 else (sel.u_r, sel.u_s)
        inside = set(subpath(w, lo, hi))
        pivot = sol.partition.segments[sel.pivot]
        assert set(pivot) <= inside and sel.x in inside
        assert chromatic_bruteforce(underlying(d).induced(pivot + (sel.x,))) == 4
        assert sol.delegated is not None
    assert seen >= 20


@settings(max_examples=80)
@given(st.integers(3, 10), st.integers(0, 2**32), st.data())
def test_unchecked_construction_never_returns_a_wrong_witness(m, seed, data):
    d, w = planted_circuit(m, "2/3", seed)
    c = data.draw(st.sampled_from(patterns_of_order(data.draw(st.integers(2, 5)))))
    try:
        found = find_in_hamiltonian(d, w, c, require_threshold=False)
    except PreconditionError:
        return
    assert verify_subdivision(d, c, found)
    assert contains_subdivision(d, c) is not None
