"""Constructive subdivision finders and the independent witness verifier.

Two engines:

* :func:`find_in_hamiltonian` works along a Hamiltonian circuit of a digraph
  with chi >= 2n. It cuts the circuit into segments whose chromatic numbers
  alternate k_i - 1 / 2k_i + 2, harvests a k_i-secant arc pair inside every
  even segment and threads the pieces into a subdivision.
* :func:`find_with_hamiltonian_path` works along a Hamiltonian path of a
  digraph with chi >= 12n - 5. It cuts the path into segments of chromatic
  number 2n - 1, contracts them, locates a 1-secant pair among inter-segment
  arcs and either hands a Hamiltonian sub-digraph to the circuit engine (some
  arc points backward) or assembles the cycle directly (both arcs forward).

Both engines build the cycle as a cyclic vertex sequence with explicit arc
directions, fit it to the requested pattern and run :func:`verify_subdivision`
before returning. A witness that fails its own check raises
:class:`AssemblyError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .coloring import (
    ChromaticBudget,
    Coloring,
    IncrementalChromatic,
    chromatic_number,
    product_coloring,
)
from .digraph import (
    BlockPath,
    CyclePattern,
    Digraph,
    Enumeration,
    HamiltonianWitness,
    SubdivisionWitness,
    UnderlyingGraph,
    canonicalize_pattern,
    induced,
    underlying,
    verify_hamiltonian,
)
from .errors import (
    AssemblyError,
    InconsistencyError,
    InsufficientChromaticError,
    PreconditionError,
)
from .secant import SecantPair, find_k_secant, secant_free_coloring

REACH_TARGET = "reach_target"
STOP_BELOW_TARGET = "stop_below_target"


# --- verification ------------------------------------------------------------


def verify_subdivision(d: Digraph, c: CyclePattern, w: SubdivisionWitness) -> bool:
    """True iff ``w`` is a subdivision of ``c`` inside ``d``."""
    if w.pattern != c or len(w.block_paths) != c.block_count:
        return False
    n = d.vertex_count
    travs = []
    for i, (b, k) in enumerate(zip(w.block_paths, c.blocks)):
        if b.forward != c.block_forward(i):
            return False
        vs = b.vertices
        if len(vs) < 2 or b.length < k:
            return False
        if any(not (0 <= v < n) for v in vs):
            return False
        if any(not d.has_arc(u, v) for u, v in zip(vs, vs[1:])):
            return False
        travs.append(b.traversal)
    l = len(travs)
    for i in range(l):
        if travs[i][-1] != travs[(i + 1) % l][0]:
            return False
    cycle = [v for t in travs for v in t[:-1]]
    if len(set(cycle)) != len(cycle):
        return False
    return len(cycle) >= (2 if c.is_directed else 3)


# --- segment partition -------------------------------------------------------


@dataclass(frozen=True)
class SegmentPartition:
    """Contiguous segments cut from a vertex order by chromatic thresholds.

    ``achieved_chi[i]`` is the chromatic number of segment ``i`` when its
    stopping rule fired. ``leftover`` lists the vertices after the last
    stopping point; when ``merged`` is set they are also the tail of the last
    segment.
    """

    segments: tuple[tuple[int, ...], ...]
    achieved_chi: tuple[int, ...]
    mode: str
    targets: tuple[int, ...]
    leftover: tuple[int, ...] = ()
    merged: bool = False

    def segment_of(self) -> dict[int, int]:
        return {v: i for i, seg in enumerate(self.segments) for v in seg}


def partition_segments(
    d: Digraph,
    w: Union[HamiltonianWitness, Sequence[int]],
    targets: Union[int, Sequence[int]],
    mode: str = REACH_TARGET,
    merge_leftover: bool = False,
    budget: ChromaticBudget | None = None,
) -> SegmentPartition:
    """Grow segments along ``w`` one vertex at a time, recomputing exact chi.

    ``reach_target``: segment i closes as soon as its chi equals targets[i]
    (a target of 0 gives an empty segment). Running out of vertices first
    raises :class:`InsufficientChromaticError`.

    ``stop_below_target``: a segment closes just before the vertex that would
    lift its chi to the target; that vertex opens the next segment. An
    integer target repeats until the order is exhausted; the last segment may
    stay below target - 1.
    """
    order = tuple(w.order if isinstance(w, HamiltonianWitness) else w)
    g = underlying(d)
    budget = budget or ChromaticBudget()
    repeat = isinstance(targets, int)
    seq = (targets,) if repeat else tuple(targets)
    if not seq:
        raise ValueError("targets must be non-empty")
    if any(t < 0 for t in seq):
        raise ValueError("targets must be non-negative")

    segments: list[tuple[int, ...]] = []
    achieved: list[int] = []
    used_targets: list[int] = []
    pos = 0

    if mode == REACH_TARGET:
        if repeat:
            raise ValueError("reach_target needs an explicit target sequence")
        for idx, t in enumerate(seq):
            inc = IncrementalChromatic(g, budget)
            while inc.chi < t:
                if pos == len(order):
                    raise InsufficientChromaticError(idx, t, inc.chi)
                inc.add(order[pos])
                pos += 1
            segments.append(tuple(inc.vertices))
            achieved.append(inc.chi)
            used_targets.append(t)
    elif mode == STOP_BELOW_TARGET:
        if any(t < 2 for t in seq):
            raise ValueError("stop_below_target needs targets of at least 2")
        idx = 0
        while pos < len(order) and (repeat or idx < len(seq)):
            t = seq[0] if repeat else seq[idx]
            inc = IncrementalChromatic(g, budget)
            while pos < len(order):
                trial = inc.copy()
                if trial.add(order[pos]) >= t:
                    break
                inc = trial
                pos += 1
            segments.append(tuple(inc.vertices))
            achieved.append(inc.chi)
            used_targets.append(t)
            idx += 1
    else:
        raise ValueError(f"unknown mode {mode!r}")

    leftover = order[pos:]
    merged = False
    if merge_leftover and leftover and segments:
        segments[-1] = segments[-1] + leftover
        merged = True
    return SegmentPartition(
        tuple(segments), tuple(achieved), mode, tuple(used_targets), leftover, merged
    )


def segment_targets(c: CyclePattern, count: int | None = None) -> tuple[int, ...]:
    """k_i - 1 for odd i and 2k_i + 2 for even i (1-based)."""
    ks = c.blocks if count is None else c.blocks[:count]
    return tuple(k - 1 if i % 2 == 0 else 2 * k + 2 for i, k in enumerate(ks))


# --- cycle assembly ----------------------------------------------------------


def _fit_pattern(verts: Sequence[int], forward: Sequence[bool], c: CyclePattern) -> SubdivisionWitness:
    """Express a closed oriented walk as a witness block-aligned with ``c``.

    ``forward[i]`` says whether the arc between verts[i] and verts[i+1]
    (cyclically) points along the traversal.
    """
    L = len(verts)
    if all(forward) or not any(forward):
        if not c.is_directed:
            raise AssemblyError("assembled a directed cycle for a non-directed pattern")
        trav = list(verts) + [verts[0]]
        if not forward[0]:
            trav.reverse()
        return SubdivisionWitness(c, (BlockPath(tuple(trav), True),))
    start = next(i for i in range(L) if forward[i] != forward[i - 1])
    runs: list[tuple[tuple[int, ...], bool]] = []
    i = 0
    while i < L:
        j = i
        while j + 1 < L and forward[(start + j + 1) % L] == forward[(start + i) % L]:
            j += 1
        trav = tuple(verts[(start + s) % L] for s in range(i, j + 2))
        runs.append((trav, forward[(start + i) % L]))
        i = j + 1
    l = c.block_count
    if len(runs) != l:
        raise AssemblyError(f"assembled cycle has {len(runs)} blocks, pattern has {l}")
    for flip in (False, True):
        cand = [(t[::-1], not f) for t, f in reversed(runs)] if flip else runs
        for rot in range(l):
            rotated = cand[rot:] + cand[:rot]
            if all(
                f == c.block_forward(q) and len(t) - 1 >= k
                for q, ((t, f), k) in enumerate(zip(rotated, c.blocks))
            ):
                return SubdivisionWitness(
                    c, tuple(BlockPath(t if f else t[::-1], f) for t, f in rotated)
                )
    raise AssemblyError("assembled cycle does not align with the pattern")


def _arc_direction(d: Digraph, a: int, b: int) -> bool:
    if d.has_arc(a, b):
        return True
    if d.has_arc(b, a):
        return False
    raise AssemblyError(f"vertices {a} and {b} are not adjacent")


@dataclass(frozen=True)
class SecantHarvest:
    """A k-secant arc pair inside one even segment, as host vertices.

    x(e) < x(f) < y(e) < y(f) along the order: e joins x(e), y(e) and f
    joins x(f), y(f).
    """

    segment: int
    k: int
    x_e: int
    y_e: int
    x_f: int
    y_f: int
    pair: SecantPair


def _harvest(d: Digraph, g: UnderlyingGraph, seg: Sequence[int], index: int, k: int) -> SecantHarvest:
    local = g.induced(seg)
    pair = find_k_secant(local, Enumeration.natural(len(seg)), k)
    if pair is None:
        raise AssemblyError(f"segment {index + 1} has no {k}-secant pair despite its chromatic number")
    i, r, j, l = pair.positions
    return SecantHarvest(index, k, seg[i - 1], seg[j - 1], seg[r - 1], seg[l - 1], pair)


def _thread(d, order, pos, harvests, entry_end, walk):
    """Append the zig-zag through consecutive secant harvests to ``walk``.

    Before each harvest the walk stands at x(e). It takes e to y(e), runs
    back along the order to x(f), takes f to y(f) and runs forward to the
    next harvest's x(e), or to ``entry_end`` after the last one.
    """
    verts, dirs = walk
    N = len(order)
    for q, h in enumerate(harvests):
        nxt = pos[harvests[q + 1].x_e] if q + 1 < len(harvests) else entry_end
        verts.append(h.x_e)
        dirs.append(_arc_direction(d, h.x_e, h.y_e))
        p = pos[h.y_e]
        while p != pos[h.x_f]:
            verts.append(order[p])
            dirs.append(False)
            p -= 1
        verts.append(h.x_f)
        dirs.append(_arc_direction(d, h.x_f, h.y_f))
        p = pos[h.y_f]
        while p != nxt:
            verts.append(order[p])
            dirs.append(True)
            p = (p + 1) % N


def _checked(d: Digraph, c: CyclePattern, verts, dirs) -> SubdivisionWitness:
    w = _fit_pattern(verts, dirs, c)
    if not verify_subdivision(d, c, w):
        raise AssemblyError("assembled witness failed verification")
    return w


# --- circuit engine ----------------------------------------------------------


@dataclass(frozen=True)
class CircuitSolution:
    witness: SubdivisionWitness
    canonical: CyclePattern | None = None
    partition: SegmentPartition | None = None
    harvests: tuple[SecantHarvest, ...] = ()


def solve_in_hamiltonian(
    d: Digraph, order: Sequence[int], c: CyclePattern, budget: ChromaticBudget | None = None
) -> CircuitSolution:
    """The circuit construction along ``order`` (a Hamiltonian circuit of ``d``).

    No chromatic precondition is checked here beyond what the partition
    itself certifies: if it runs out of vertices, chi(d) is below the sum of
    targets, hence below 2n, and InsufficientChromaticError is raised.
    """
    order = tuple(order)
    N = len(order)
    if c.is_directed:
        if N < max(c.blocks[0], 2):
            raise PreconditionError("circuit is shorter than the directed cycle")
        verts = list(order)
        return CircuitSolution(_checked(d, c, verts, [True] * N))
    canon, _ = canonicalize_pattern(c.as_plus())
    targets = segment_targets(canon)
    part = partition_segments(d, order, targets, REACH_TARGET, budget=budget)
    g = underlying(d)
    pos = {v: i for i, v in enumerate(order)}
    harvests = tuple(
        _harvest(d, g, part.segments[i], i, canon.blocks[i]) for i in range(1, len(targets), 2)
    )
    verts: list[int] = []
    dirs: list[bool] = []
    _thread(d, order, pos, harvests, pos[harvests[0].x_e], (verts, dirs))
    return CircuitSolution(_checked(d, c, verts, dirs), canon, part, harvests)


def find_in_hamiltonian(
    d: Digraph,
    circuit: HamiltonianWitness,
    c: CyclePattern,
    budget: ChromaticBudget | None = None,
    require_threshold: bool = True,
) -> SubdivisionWitness:
    """Subdivision of ``c`` in a Hamiltonian digraph with chi >= 2n.

    With ``require_threshold`` the exact chromatic number is computed first
    and a value below 2n raises :class:`PreconditionError`.
    """
    if circuit.kind != "circuit" or not verify_hamiltonian(d, circuit):
        raise PreconditionError("not a Hamiltonian circuit of the digraph")
    # a directed cycle only needs the circuit to be long enough
    if require_threshold and not c.is_directed:
        chi, _ = chromatic_number(underlying(d), budget)
        if chi < 2 * c.order:
            raise PreconditionError(f"chi = {chi} is below 2n = {2 * c.order}")
    return solve_in_hamiltonian(d, circuit.order, c, budget).witness


# --- path engine -------------------------------------------------------------


@dataclass(frozen=True)
class ContractedGraph:
    """Segments contracted to single vertices, arcs inside segments dropped.

    ``arc_provenance[(r, s)]`` (r < s) maps "forward" to a host arc from
    segment r to segment s and "backward" to one from s to r, when present.
    Each is the arc whose tail comes earliest on the path.
    """

    graph: UnderlyingGraph
    parity_split: tuple[tuple[int, ...], tuple[int, ...]]
    enumerations: tuple[Enumeration, Enumeration]
    arc_provenance: dict = field(compare=False)


def contract(d: Digraph, part: SegmentPartition, order: Sequence[int]) -> ContractedGraph:
    seg_of = part.segment_of()
    pos = {v: i for i, v in enumerate(order)}
    prov: dict[tuple[int, int], dict[str, tuple[int, int]]] = {}
    for u, v in d.arcs:
        a, b = seg_of.get(u), seg_of.get(v)
        if a is None or b is None or a == b:
            continue
        key = (a, b) if a < b else (b, a)
        direction = "forward" if a < b else "backward"
        slot = prov.setdefault(key, {})
        cur = slot.get(direction)
        if cur is None or (pos[u], pos[v]) < (pos[cur[0]], pos[cur[1]]):
            slot[direction] = (u, v)
    ell = len(part.segments)
    graph = UnderlyingGraph.from_edges(ell, prov)
    odd = tuple(range(0, ell, 2))  # H_1, H_3, ... in 1-based terms
    even = tuple(range(1, ell, 2))
    return ContractedGraph(
        graph, (odd, even), (Enumeration(odd), Enumeration(even)), prov
    )


@dataclass(frozen=True)
class CaseSelection:
    """How the 1-secant pair of the contracted graph was lifted.

    Segment indices are 0-based. ``m_1`` and ``m_2`` are the segments right
    after those of u_i and u_j; ``x`` is the first vertex of the segment
    following the one whose chromatic jump certifies chi(D) >= 2n in the
    backward case (segment m_1 or m_2, see ``pivot``).
    """

    u_i: int
    u_j: int
    u_r: int
    u_s: int
    case_tag: str  # "backward_arc" or "both_forward"
    m_1: int
    m_2: int
    x: int | None
    parity: int  # 0 for G_1, 1 for G_2
    pair: SecantPair
    back_arc: tuple[int, int] | None = None
    pivot: int | None = None


@dataclass(frozen=True)
class PathSolution:
    witness: SubdivisionWitness
    partition: SegmentPartition
    contracted: ContractedGraph
    selection: CaseSelection
    delegated: CircuitSolution | None = None
    sub_partition: SegmentPartition | None = None
    harvests: tuple[SecantHarvest, ...] = ()


def _no_pair_certificate(d, part, contracted, budget) -> dict:
    """Colorings showing chi(host) <= (2n-1) * 6 when no 1-secant pair exists."""
    g = underlying(d)
    halves = []
    for cls, enum in zip(contracted.parity_split, contracted.enumerations):
        sub = contracted.graph.induced(cls)
        halves.append(secant_free_coloring(sub, Enumeration.natural(len(cls)), 1))
    # contracted coloring: the two halves on disjoint palettes
    k1 = halves[0].palette_size
    contracted_colors = [0] * contracted.graph.vertex_count
    for cls, col, offset in zip(contracted.parity_split, halves, (0, k1)):
        for idx, s in enumerate(cls):
            contracted_colors[s] = col.assignment[idx] + offset
    seg_of = part.segment_of()
    inner = {e for e in g.edges if seg_of.get(e[0]) == seg_of.get(e[1])}
    outer = g.edges - inner
    # R_1: each segment colored on its own; vertices outside segments do not exist
    r1 = [0] * d.vertex_count
    for seg in part.segments:
        _, col = chromatic_number(g.induced(seg), budget)
        for idx, v in enumerate(seg):
            r1[v] = col.assignment[idx]
    c1 = Coloring(tuple(r1), max(r1, default=0))
    r2 = tuple(contracted_colors[seg_of[v]] for v in range(d.vertex_count))
    c2 = Coloring(r2, max(contracted_colors, default=0))
    host = product_coloring(g, inner, outer, c1, c2)
    return {
        "g1_coloring": halves[0],
        "g2_coloring": halves[1],
        "host_coloring": host,
        "bound": c1.palette_size * c2.palette_size,
    }


def solve_with_hamiltonian_path(
    d: Digraph,
    path: HamiltonianWitness,
    c: CyclePattern,
    budget: ChromaticBudget | None = None,
    require_threshold: bool = True,
) -> PathSolution:
    if c.is_directed:
        raise PreconditionError("the path construction needs a pattern with more than one block")
    if path.kind != "path" or not verify_hamiltonian(d, path):
        raise PreconditionError("not a Hamiltonian path of the digraph")
    n = c.order
    threshold = 12 * n - 5
    if require_threshold:
        chi, _ = chromatic_number(underlying(d), budget)
        if chi < threshold:
            raise PreconditionError(f"chi = {chi} is below 12n - 5 = {threshold}")

    order = path.order
    pos = path.positions
    part = partition_segments(d, order, 2 * n, STOP_BELOW_TARGET, budget=budget)
    contracted = contract(d, part, order)

    pair = None
    parity = 0
    for parity, cls in enumerate(contracted.parity_split):
        pair = find_k_secant(contracted.graph.induced(cls), Enumeration.natural(len(cls)), 1)
        if pair is not None:
            break
    if pair is None:
        cert = _no_pair_certificate(d, part, contracted, budget)
        msg = f"no 1-secant pair in either parity class; chi <= {cert['bound']}"
        if require_threshold:
            raise InconsistencyError(msg, cert)
        err = PreconditionError(msg)
        err.certificate = cert
        raise err

    cls = contracted.parity_split[parity]
    i, r, j, l = (cls[p - 1] for p in pair.positions)
    first = contracted.arc_provenance[(i, j)]
    second = contracted.arc_provenance[(r, l)]
    m_1, m_2 = i + 1, j + 1
    ell = len(part.segments)

    if "backward" in first or "backward" in second:
        if "backward" in first:
            u_j, u_i = first["backward"]
            u_r, u_s = second.get("forward") or second["backward"][::-1]
            lo, hi, pivot, back = u_i, u_j, m_1, first["backward"]
        else:
            u_s, u_r = second["backward"]
            u_i, u_j = first.get("forward") or first["backward"][::-1]
            lo, hi, pivot, back = u_r, u_s, m_2, second["backward"]
        assert pivot < ell - 1, "pivot segment must be followed by another segment"
        x = part.segments[pivot + 1][0]
        sel = CaseSelection(u_i, u_j, u_r, u_s, "backward_arc", m_1, m_2, x, parity, pair, back, pivot)
        sub_order = order[pos[lo]:pos[hi] + 1]
        inside = set(sub_order)
        if not (set(part.segments[pivot]) <= inside and x in inside):
            raise AssemblyError("Hamiltonian sub-digraph misses the pivot segment")
        # pivot segment + x has chi exactly 2n by the stop-below rule
        if part.achieved_chi[pivot] != 2 * n - 1:
            raise AssemblyError("pivot segment does not have chi 2n - 1")
        sub = induced(d, sub_order)
        circuit = HamiltonianWitness("circuit", tuple(range(len(sub_order))))
        if not verify_hamiltonian(sub.digraph, circuit):
            raise AssemblyError("backward arc does not close a Hamiltonian circuit")
        try:
            inner = solve_in_hamiltonian(sub.digraph, circuit.order, c, budget)
        except InsufficientChromaticError as exc:
            raise AssemblyError(f"delegated circuit construction failed: {exc}") from exc
        witness = inner.witness.relabel(sub.ids)
        if not verify_subdivision(d, c, witness):
            raise AssemblyError("lifted witness failed verification")
        return PathSolution(witness, part, contracted, sel, delegated=inner)

    u_i, u_j = first["forward"]
    u_r, u_s = second["forward"]
    sel = CaseSelection(u_i, u_j, u_r, u_s, "both_forward", m_1, m_2, None, parity, pair)
    canon, _ = canonicalize_pattern(c.as_plus())
    t = canon.t
    sub_part = None
    harvests: tuple[SecantHarvest, ...] = ()
    if t > 1:
        targets = segment_targets(canon, 2 * t - 1)
        try:
            sub_part = partition_segments(
                d, part.segments[m_1], targets, REACH_TARGET, merge_leftover=True, budget=budget
            )
        except InsufficientChromaticError as exc:
            raise AssemblyError(f"segment {m_1 + 1} too small for the sub-partition: {exc}") from exc
        g = underlying(d)
        harvests = tuple(
            _harvest(d, g, sub_part.segments[q], q, canon.blocks[q]) for q in range(1, 2 * t - 2, 2)
        )
    verts: list[int] = []
    dirs: list[bool] = []
    p = pos[u_i]
    stop = pos[harvests[0].x_e] if harvests else pos[u_r]
    while p != stop:
        verts.append(order[p])
        dirs.append(True)
        p += 1
    _thread(d, order, pos, harvests, pos[u_r], (verts, dirs))
    verts.append(u_r)
    dirs.append(True)
    p = pos[u_s]
    while p != pos[u_j]:
        verts.append(order[p])
        dirs.append(False)
        p -= 1
    verts.append(u_j)
    dirs.append(False)
    witness = _checked(d, c, verts, dirs)
    return PathSolution(witness, part, contracted, sel, sub_partition=sub_part, harvests=harvests)


def find_with_hamiltonian_path(
    d: Digraph,
    path: HamiltonianWitness,
    c: CyclePattern,
    budget: ChromaticBudget | None = None,
    require_threshold: bool = True,
) -> SubdivisionWitness:
    """Subdivision of ``c`` (two or more blocks) in a digraph with a
    Hamiltonian path and chi >= 12n - 5."""
    return solve_with_hamiltonian_path(d, path, c, budget, require_threshold).witness
