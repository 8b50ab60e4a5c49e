"""Command line entry point: ``subdiv <command> ...``.

Every run prints one human summary on stderr and one machine-readable
``report`` line on stdout (key=value, fixed field order). Wall time appears
only in the summary so that reruns produce byte-identical reports.

Exit codes: 0 success, 1 invalid witness, 2 precondition, 3 budget,
4 internal assembly failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .coloring import BUDGET_ENV, ChromaticBudget, chromatic_number, is_proper
from .digraph import CyclePattern, Digraph, Enumeration, underlying, verify_hamiltonian
from .errors import (
    AssemblyError,
    BudgetExceeded,
    DigraphParseError,
    LimitExceeded,
    PatternParseError,
    PreconditionError,
    SecantFoundError,
)
from .explore import explore_conjecture
from .finder import find_in_hamiltonian, find_with_hamiltonian_path, verify_subdivision
from .generators import (
    MASK64,
    banded_graph,
    circulant_tournament,
    random_tournament,
    transitive_tournament,
)
from .oracle import SearchLimit, chromatic_bruteforce, contains_subdivision, find_hamiltonian
from .secant import find_k_secant, secant_free_coloring

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


@dataclass
class RunReport:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)
    status: str = "ok"
    exit_code: int = EXIT_OK
    result: list[tuple[str, object]] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    seed: int | None = None
    wall_ms: float = 0.0
    message: str = ""

    def add(self, key: str, value) -> None:
        self.result.append((key, value))

    def line(self) -> str:
        parts = [f"command={self.command}", f"status={self.status}", f"exit={self.exit_code}"]
        parts += [f"input.{name}={digest}" for name, digest in self.inputs]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        parts += [f"{k}={v}" for k, v in self.result]
        parts += [f"out={p}" for p in self.outputs]
        return "report " + " ".join(parts)

    def summary(self) -> str:
        head = f"{self.command}: {self.status}"
        if self.message:
            head += f" ({self.message})"
        details = ", ".join(f"{k}={v}" for k, v in self.result)
        return f"{head}{' - ' + details if details else ''} [{self.wall_ms:.0f} ms]"


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()[:16]


class _Run:
    """Input loading and output writing bound to one report."""

    def __init__(self, report: RunReport):
        self.report = report

    def read(self, name: str, path: str) -> bytes:
        data = Path(path).read_bytes()
        self.report.inputs.append((name, _digest(data)))
        return data

    def digraph(self, path: str) -> Digraph:
        d = formats.parse_digraph(self.read("graph", path))
        if d.digons():
            self.report.add("digons", len(d.digons()))
        return d

    def write(self, path: str, text: str) -> None:
        Path(path).write_text(text, encoding="utf-8")
        self.report.outputs.append(path)


def _budget(args) -> ChromaticBudget:
    return ChromaticBudget(getattr(args, "max_nodes", 0) or 0, not getattr(args, "no_shortcut", False))


def _limit(args) -> SearchLimit:
    return SearchLimit(args.limit_vertices, args.limit_steps)


def _derive_seed(args, fields: tuple[str, ...]) -> int:
    text = "|".join(f"{f}={getattr(args, f, None)}" for f in fields)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big") & MASK64


def _enumeration(run: _Run, args, n: int) -> Enumeration:
    if args.enumeration:
        e = formats.parse_enumeration(run.read("enumeration", args.enumeration))
        if not e.covers(n):
            raise PreconditionError("enumeration does not cover the graph")
        return e
    return Enumeration.natural(n)


# --- commands ----------------------------------------------------------------


def cmd_chromatic(args, run: _Run):
    d = run.digraph(args.graph)
    k, coloring = chromatic_number(underlying(d), _budget(args))
    run.report.add("chi", k)
    if args.out:
        run.write(args.out, formats.serialize_coloring(coloring))


def cmd_find_secant(args, run: _Run):
    d = run.digraph(args.graph)
    g = underlying(d)
    pair = find_k_secant(g, _enumeration(run, args, g.vertex_count), args.k)
    run.report.add("k", args.k)
    if pair is None:
        run.report.add("secant", "none")
    else:
        print(formats.format_secant(pair))
        i, r, j, l = pair.positions
        run.report.add("secant", f"{i},{r},{j},{l}")


def cmd_color_secant_free(args, run: _Run):
    d = run.digraph(args.graph)
    g = underlying(d)
    try:
        c = secant_free_coloring(g, _enumeration(run, args, g.vertex_count), args.k)
    except SecantFoundError as exc:
        print(formats.format_secant(exc.pair))
        raise
    run.report.add("colors", c.palette_size)
    run.report.add("bound", 2 * args.k + 1)
    if args.out:
        run.write(args.out, formats.serialize_coloring(c))


def cmd_find_subdivision(args, run: _Run):
    d = run.digraph(args.graph)
    pattern = CyclePattern.parse(args.pattern)
    kind = "circuit" if args.mode == "circuit" else "path"
    if args.witness:
        ham = formats.parse_hamiltonian(run.read("witness", args.witness))
        if ham.kind != kind:
            raise PreconditionError(f"mode {args.mode} needs a {kind} witness, got {ham.kind}")
        if not verify_hamiltonian(d, ham):
            raise PreconditionError("Hamiltonian witness does not verify")
    else:
        ham = find_hamiltonian(d, kind)
        if ham is None:
            raise PreconditionError(f"digraph has no Hamiltonian {kind}")
    finder = find_in_hamiltonian if kind == "circuit" else find_with_hamiltonian_path
    w = finder(d, ham, pattern, _budget(args), require_threshold=not args.skip_threshold)
    if not verify_subdivision(d, pattern, w):
        raise AssemblyError("returned witness failed verification")
    run.report.add("pattern", str(pattern))
    run.report.add("lengths", ",".join(map(str, w.lengths)))
    run.write(args.out, formats.serialize_subdivision(w))


def cmd_explore_conjecture(args, run: _Run):
    if args.k < 1:
        raise PreconditionError("k must be at least 1")
    seed = args.seed if args.seed is not None else _derive_seed(args, ("k", "instances", "max_vertices"))
    run.report.seed = seed
    rep = explore_conjecture(args.k, args.instances, seed, args.max_vertices, _budget(args))
    run.report.add("k", rep.k)
    run.report.add("instances", rep.instances)
    run.report.add("max_chi", rep.max_chi)
    run.report.add("exceeded", rep.exceeded)
    run.report.add("skipped", rep.skipped)
    run.report.add("lemma_bound", 2 * rep.k + 1)
    run.report.add("histogram", ",".join(f"{c}:{n}" for c, n in sorted(rep.histogram.items())))
    if rep.lemma_violations:
        raise AssemblyError(f"{rep.lemma_violations} secant-free instances exceeded 2k+1 colors")
    if args.out and rep.best is not None:
        best = Digraph(rep.best.vertex_count, rep.best.edges)
        run.write(args.out, formats.serialize_digraph(best, comment=f"explore k={rep.k} chi={rep.max_chi}"))


def cmd_verify(args, run: _Run):
    d = run.digraph(args.graph)
    data = run.read("witness", args.witness)
    try:
        if args.kind == "hamiltonian":
            ok = verify_hamiltonian(d, formats.parse_hamiltonian(data))
        elif args.kind == "coloring":
            c = formats.parse_coloring(data, d.vertex_count)
            ok = is_proper(underlying(d), c)
            run.report.add("colors", c.palette_size)
        else:
            w = formats.parse_subdivision(data)
            pattern = CyclePattern.parse(args.pattern) if args.pattern else w.pattern
            ok = verify_subdivision(d, pattern, w)
    except (DigraphParseError, PatternParseError, ValueError) as exc:
        run.report.message = f"unreadable witness: {exc}"
        ok = False
    run.report.add("valid", str(ok).lower())
    if not ok:
        run.report.status = "invalid"
        run.report.exit_code = EXIT_INVALID


def cmd_oracle(args, run: _Run):
    d = run.digraph(args.graph)
    lim = _limit(args)
    if args.what == "chromatic":
        run.report.add("chi", chromatic_bruteforce(underlying(d), lim))
    elif args.what == "hamiltonian":
        w = find_hamiltonian(d, args.kind, lim)
        run.report.add("found", str(w is not None).lower())
        if w is not None and args.out:
            run.write(args.out, formats.serialize_hamiltonian(w))
    else:
        if not args.pattern:
            raise PreconditionError("oracle subdivision needs --pattern")
        pattern = CyclePattern.parse(args.pattern)
        w = contains_subdivision(d, pattern, lim)
        run.report.add("pattern", str(pattern))
        run.report.add("found", str(w is not None).lower())
        if w is not None and args.out:
            run.write(args.out, formats.serialize_subdivision(w))


def cmd_generate(args, run: _Run):
    family = args.family
    if family in ("random-tournament", "banded"):
        fields = ("family", "m", "k", "density")
        run.report.seed = args.seed if args.seed is not None else _derive_seed(args, fields)
    if family == "circulant":
        d, w = circulant_tournament(args.m)
    elif family == "transitive":
        d, w = transitive_tournament(args.m)
    elif family == "random-tournament":
        d, w = random_tournament(args.m, run.report.seed)
    else:
        g, enum = banded_graph(args.m, args.k, args.density, run.report.seed)
        d = Digraph(g.vertex_count, g.edges)  # orient low -> high position
        run.write(args.out, formats.serialize_digraph(d))
        run.write(args.out + ".enum", formats.serialize_enumeration(enum))
        run.report.add("arcs", len(d.arcs))
        return
    run.write(args.out, formats.serialize_digraph(d))
    run.write(args.out + ".ham", formats.serialize_hamiltonian(w))
    run.report.add("arcs", len(d.arcs))


# --- parser ------------------------------------------------------------------


def _add_budget(p):
    p.add_argument("--max-nodes", type=int, default=0,
                   help=f"chromatic search-node budget (default 10^7, env {BUDGET_ENV})")
    p.add_argument("--no-shortcut", action="store_true", help="search even when the graph is complete")


def _add_limit(p):
    p.add_argument("--limit-vertices", type=int, default=12)
    p.add_argument("--limit-steps", type=int, default=5_000_000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subdiv", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chromatic", help="exact chromatic number with a coloring witness")
    p.add_argument("graph")
    p.add_argument("--out", help="write the coloring here")
    _add_budget(p)
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("find-secant", help="least k-secant edge pair")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumeration", help="enumeration file (default: natural order)")
    p.set_defaults(func=cmd_find_secant)

    p = sub.add_parser("color-secant-free", help="(2k+1)-coloring of a k-secant-free graph")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumeration")
    p.add_argument("--out")
    p.set_defaults(func=cmd_color_secant_free)

    p = sub.add_parser("find-subdivision", help="subdivision of an oriented cycle")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("circuit", "path"), required=True)
    p.add_argument("--pattern", required=True, help="e.g. 'C+(1,2)'")
    p.add_argument("--witness", help="Hamiltonian witness file (searched for when omitted)")
    p.add_argument("--out", required=True, help="subdivision witness output")
    p.add_argument("--skip-threshold", action="store_true",
                   help="do not compute chi first; run the construction anyway")
    _add_budget(p)
    p.set_defaults(func=cmd_find_subdivision)

    p = sub.add_parser("explore-conjecture", help="search secant-free graphs for chi > k+2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--max-vertices", type=int, default=14)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write the instance of largest chi here")
    _add_budget(p)
    p.set_defaults(func=cmd_explore_conjecture)

    p = sub.add_parser("verify", help="check a witness file")
    p.add_argument("kind", choices=("hamiltonian", "coloring", "subdivision"))
    p.add_argument("graph")
    p.add_argument("witness")
    p.add_argument("--pattern", help="require this pattern (subdivision only)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force ground truth on small instances")
    p.add_argument("what", choices=("subdivision", "chromatic", "hamiltonian"))
    p.add_argument("graph")
    p.add_argument("--pattern")
    p.add_argument("--kind", choices=("path", "circuit"), default="circuit")
    p.add_argument("--out")
    _add_limit(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="write a seeded instance and its sidecar")
    p.add_argument("family", choices=("circulant", "transitive", "random-tournament", "banded"))
    p.add_argument("--m", type=int, required=True, help="number of vertices")
    p.add_argument("--k", type=int, default=1, help="band width (banded only)")
    p.add_argument("--density", default="1", help="edge density as a fraction (banded only)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    variant = {"oracle": "what", "generate": "family", "verify": "kind"}.get(args.command)
    report = RunReport(f"{args.command}-{getattr(args, variant)}" if variant else args.command)
    run = _Run(report)
    start = time.perf_counter()
    try:
        args.func(args, run)
    except PreconditionError as exc:
        report.status, report.exit_code, report.message = "precondition", EXIT_PRECONDITION, str(exc)
    except (DigraphParseError, PatternParseError, OSError) as exc:
        report.status, report.exit_code, report.message = "bad-input", EXIT_PRECONDITION, str(exc)
    except (BudgetExceeded, LimitExceeded) as exc:
        report.status, report.exit_code, report.message = "budget", EXIT_BUDGET, str(exc)
    except AssemblyError as exc:
        report.status, report.exit_code, report.message = "internal", EXIT_INTERNAL, str(exc)
    except ValueError as exc:
        report.status, report.exit_code, report.message = "bad-input", EXIT_PRECONDITION, str(exc)
    report.wall_ms = (time.perf_counter() - start) * 1000
    print(report.summary(), file=sys.stderr)
    print(report.line())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
