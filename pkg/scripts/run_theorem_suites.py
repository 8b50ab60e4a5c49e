"""Run both subdivision constructions over their structured instance families.

Circuit engine: circulant tournaments on 2n+1 vertices, every pattern of
order n. Path engine: transitive tournaments on 12n-5 vertices plus seeded
random tournaments, every pattern of order n with at least two blocks.

    python scripts/run_theorem_suites.py --circuit-orders 3 4 5 6 --path-orders 2 3
"""

import argparse
import collections
import time
from dataclasses import dataclass, field

from subdiv.digraph import patterns_of_order
from subdiv.finder import find_in_hamiltonian, solve_with_hamiltonian_path, verify_subdivision
from subdiv.generators import circulant_tournament, random_tournament, transitive_tournament


@dataclass
class SuiteConfig:
    circuit_orders: list[int] = field(default_factory=lambda: [3, 4, 5, 6])
    path_orders: list[int] = field(default_factory=lambda: [2, 3])
    random_tournaments: int = 20
    seed: int = 0


def circuit_suite(cfg: SuiteConfig):
    for n in cfg.circuit_orders:
        d, w = circulant_tournament(2 * n + 1)
        start = time.perf_counter()
        ok = sum(verify_subdivision(d, c, find_in_hamiltonian(d, w, c)) for c in patterns_of_order(n))
        total = len(patterns_of_order(n))
        print(f"circuit  n={n}  m={2 * n + 1:3d}  verified {ok}/{total}  {time.perf_counter() - start:.2f}s")


def path_suite(cfg: SuiteConfig):
    for n in cfg.path_orders:
        m = 12 * n - 5
        hosts = [("transitive", *transitive_tournament(m))]
        hosts += [(f"random#{s}", *random_tournament(m, cfg.seed + s)) for s in range(cfg.random_tournaments)]
        cases = collections.Counter()
        ok = total = 0
        start = time.perf_counter()
        for _, d, w in hosts:
            for c in patterns_of_order(n):
                sol = solve_with_hamiltonian_path(d, w, c)
                cases[sol.selection.case_tag] += 1
                ok += verify_subdivision(d, c, sol.witness)
                total += 1
        print(f"path     n={n}  m={m:3d}  verified {ok}/{total}  cases {dict(cases)}  "
              f"{time.perf_counter() - start:.2f}s")


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--circuit-orders", type=int, nargs="*", default=SuiteConfig().circuit_orders)
    p.add_argument("--path-orders", type=int, nargs="*", default=SuiteConfig().path_orders)
    p.add_argument("--random-tournaments", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    cfg = SuiteConfig(args.circuit_orders, args.path_orders, args.random_tournaments, args.seed)
    circuit_suite(cfg)
    path_suite(cfg)


if __name__ == "__main__":
    main()
