"""Text formats for digraphs, witnesses, colorings and enumerations.

All formats are UTF-8, one record per line, 1-based vertex ids. Lines
starting with ``c`` are comments wherever a format allows them. Writers are
deterministic: the same object always serializes to the same bytes.
"""

from __future__ import annotations

from typing import Union

from .coloring import Coloring
from .digraph import (
    BlockPath,
    CyclePattern,
    Digraph,
    Enumeration,
    HamiltonianWitness,
    SubdivisionWitness,
)
from .errors import DigraphParseError
from .secant import SecantPair

Text = Union[str, bytes]


def _text(data: Text) -> str:
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _records(data: Text):
    """Yield (line_number, tokens) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield lineno, tokens


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DigraphParseError(lineno, f"expected an integer, got {token!r}") from None


# --- digraphs ----------------------------------------------------------------


def parse_digraph(data: Text) -> Digraph:
    n = m = None
    arcs: set[tuple[int, int]] = set()
    last = 0
    for lineno, tok in _records(data):
        last = lineno
        if tok[0] == "p":
            if n is not None:
                raise DigraphParseError(lineno, "second header line")
            if len(tok) != 4 or tok[1] != "digraph":
                raise DigraphParseError(lineno, "malformed header, expected 'p digraph <n> <m>'")
            n, m = _int(tok[2], lineno), _int(tok[3], lineno)
            if n < 0 or m < 0:
                raise DigraphParseError(lineno, "negative count in header")
        elif tok[0] == "a":
            if len(tok) != 3:
                raise DigraphParseError(lineno, "malformed arc, expected 'a <u> <v>'")
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if u == v:
                raise DigraphParseError(lineno, f"self-loop at vertex {u}")
            if n is None:
                raise DigraphParseError(lineno, "arc before header")
            if not (1 <= u <= n and 1 <= v <= n):
                raise DigraphParseError(lineno, f"vertex index out of range in arc {u} {v}")
            if (u - 1, v - 1) in arcs:
                raise DigraphParseError(lineno, f"duplicate arc {u} {v}")
            arcs.add((u - 1, v - 1))
        else:
            raise DigraphParseError(lineno, f"unknown record type {tok[0]!r}")
    if n is None:
        raise DigraphParseError(max(last, 1), "missing header")
    if len(arcs) != m:
        raise DigraphParseError(last, f"header declares {m} arcs, found {len(arcs)}")
    return Digraph(n, frozenset(arcs))


def serialize_digraph(d: Digraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    lines.append(f"p digraph {d.vertex_count} {len(d.arcs)}")
    lines.extend(f"a {u + 1} {v + 1}" for u, v in sorted(d.arcs))
    return "\n".join(lines) + "\n"


# --- Hamiltonian witnesses and enumerations ----------------------------------


def _ids(tokens, lineno) -> tuple[int, ...]:
    out = tuple(_int(t, lineno) - 1 for t in tokens)
    if any(v < 0 for v in out):
        raise DigraphParseError(lineno, "vertex ids are 1-based")
    return out


def serialize_hamiltonian(w: HamiltonianWitness) -> str:
    order = " ".join(str(v + 1) for v in w.order)
    return f"witness hamiltonian\nkind {w.kind}\norder {order}\n"


def parse_hamiltonian(data: Text) -> HamiltonianWitness:
    kind = order = None
    for lineno, tok in _records(data):
        if tok[0] == "witness":
            if tok[1:] != ["hamiltonian"]:
                raise DigraphParseError(lineno, "not a Hamiltonian witness")
        elif tok[0] == "kind":
            if len(tok) != 2 or tok[1] not in ("path", "circuit"):
                raise DigraphParseError(lineno, "kind must be path or circuit")
            kind = tok[1]
        elif tok[0] == "order":
            order = _ids(tok[1:], lineno)
        else:
            raise DigraphParseError(lineno, f"unknown key {tok[0]!r}")
    if kind is None or order is None:
        raise DigraphParseError(0, "Hamiltonian witness needs 'kind' and 'order'")
    return HamiltonianWitness(kind, order)


def serialize_enumeration(e: Enumeration) -> str:
    return "enumeration\norder " + " ".join(str(v + 1) for v in e.order) + "\n"


def parse_enumeration(data: Text) -> Enumeration:
    order = None
    for lineno, tok in _records(data):
        if tok[0] == "enumeration":
            continue
        if tok[0] == "order":
            order = _ids(tok[1:], lineno)
        else:
            raise DigraphParseError(lineno, f"unknown key {tok[0]!r}")
    if order is None:
        raise DigraphParseError(0, "enumeration needs an 'order' line")
    try:
        return Enumeration(order)
    except ValueError as exc:
        raise DigraphParseError(0, str(exc)) from None


# --- colorings ---------------------------------------------------------------


def serialize_coloring(c: Coloring) -> str:
    lines = [f"c palette {c.palette_size}"]
    lines.extend(f"v {v + 1} {color}" for v, color in enumerate(c.assignment))
    return "\n".join(lines) + "\n"


def parse_coloring(data: Text, vertex_count: int | None = None) -> Coloring:
    colors: dict[int, int] = {}
    for lineno, tok in _records(data):
        if tok[0] != "v" or len(tok) != 3:
            raise DigraphParseError(lineno, "expected 'v <vertex> <color>'")
        v, color = _int(tok[1], lineno) - 1, _int(tok[2], lineno)
        if v < 0 or color < 1:
            raise DigraphParseError(lineno, "vertex and color are 1-based")
        if v in colors:
            raise DigraphParseError(lineno, f"vertex {v + 1} colored twice")
        colors[v] = color
    n = vertex_count if vertex_count is not None else (max(colors) + 1 if colors else 0)
    missing = [v + 1 for v in range(n) if v not in colors]
    if missing:
        raise DigraphParseError(0, f"uncolored vertices: {missing[:10]}")
    if any(v >= n for v in colors):
        raise DigraphParseError(0, "coloring names a vertex outside the graph")
    assignment = tuple(colors[v] for v in range(n))
    return Coloring(assignment, max(assignment, default=0))


# --- secant pairs ------------------------------------------------------------


def format_secant(p: SecantPair) -> str:
    (a, b), (c, d) = p.first_edge, p.second_edge
    i, r, j, l = p.positions
    return f"secant k={p.k} e1={a + 1},{b + 1} e2={c + 1},{d + 1} pos={i},{r},{j},{l}"


# --- subdivision witnesses ---------------------------------------------------


def serialize_subdivision(w: SubdivisionWitness) -> str:
    """Stanza format.

    ::

        witness subdivision
        pattern C+(2,1)
        blocks 2
        branch 1 3

        block 1
        direction forward
        length 2
        vertices 1 2 3
    """
    lines = [
        "witness subdivision",
        f"pattern {w.pattern}",
        f"blocks {len(w.block_paths)}",
        "branch " + " ".join(str(v + 1) for v in w.branch_vertices),
    ]
    for i, b in enumerate(w.block_paths, 1):
        lines += [
            "",
            f"block {i}",
            f"direction {'forward' if b.forward else 'backward'}",
            f"length {b.length}",
            "vertices " + " ".join(str(v + 1) for v in b.vertices),
        ]
    return "\n".join(lines) + "\n"


def parse_subdivision(data: Text) -> SubdivisionWitness:
    pattern = None
    declared_blocks = branch = None
    stanzas: list[dict] = []
    for lineno, tok in _records(data):
        key = tok[0]
        if key == "witness":
            if tok[1:] != ["subdivision"]:
                raise DigraphParseError(lineno, "not a subdivision witness")
        elif key == "pattern":
            try:
                pattern = CyclePattern.parse("".join(tok[1:]))
            except ValueError as exc:
                raise DigraphParseError(lineno, str(exc)) from None
        elif key == "blocks":
            declared_blocks = _int(tok[1], lineno)
        elif key == "branch":
            branch = _ids(tok[1:], lineno)
        elif key == "block":
            if _int(tok[1], lineno) != len(stanzas) + 1:
                raise DigraphParseError(lineno, "blocks must be numbered 1, 2, ...")
            stanzas.append({})
        elif key in ("direction", "length", "vertices"):
            if not stanzas:
                raise DigraphParseError(lineno, f"{key!r} outside a block stanza")
            stanza = stanzas[-1]
            if key == "direction":
                if tok[1:] not in (["forward"], ["backward"]):
                    raise DigraphParseError(lineno, "direction must be forward or backward")
                stanza["forward"] = tok[1] == "forward"
            elif key == "length":
                stanza["length"] = _int(tok[1], lineno)
            else:
                stanza["vertices"] = _ids(tok[1:], lineno)
        else:
            raise DigraphParseError(lineno, f"unknown key {key!r}")
    if pattern is None:
        raise DigraphParseError(0, "subdivision witness needs a pattern")
    paths = []
    for i, s in enumerate(stanzas, 1):
        if "forward" not in s or "vertices" not in s:
            raise DigraphParseError(0, f"block {i} lacks direction or vertices")
        b = BlockPath(s["vertices"], s["forward"])
        if "length" in s and s["length"] != b.length:
            raise DigraphParseError(0, f"block {i} length does not match its vertices")
        paths.append(b)
    if declared_blocks is not None and declared_blocks != len(paths):
        raise DigraphParseError(0, "block count does not match stanzas")
    w = SubdivisionWitness(pattern, tuple(paths))
    if branch is not None and branch != w.branch_vertices:
        raise DigraphParseError(0, "branch line does not match block endpoints")
    return w
