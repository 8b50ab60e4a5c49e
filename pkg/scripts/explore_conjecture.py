"""Sweep the secant-free explorer over several k and seeds and tabulate chi.

The lemma caps chi at 2k+1; the open question is whether k+2 is ever
exceeded. Any instance above k+2 is written out as a digraph file.

    python scripts/explore_conjecture.py --ks 1 2 3 --seeds 5 --instances 300
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from subdiv import formats
from subdiv.digraph import Digraph
from subdiv.explore import explore_conjecture


@dataclass
class SweepConfig:
    ks: tuple[int, ...] = (1, 2, 3)
    seeds: int = 3
    instances: int = 200
    max_vertices: int = 14
    out_dir: Path = Path("findings")


def sweep(cfg: SweepConfig):
    for k in cfg.ks:
        hist: dict[int, int] = {}
        max_chi = exceeded = skipped = 0
        for seed in range(cfg.seeds):
            rep = explore_conjecture(k, cfg.instances, seed, cfg.max_vertices)
            for chi, count in rep.histogram.items():
                hist[chi] = hist.get(chi, 0) + count
            max_chi = max(max_chi, rep.max_chi)
            exceeded += rep.exceeded
            skipped += rep.skipped
            if rep.exceeded and rep.best is not None:
                cfg.out_dir.mkdir(exist_ok=True)
                path = cfg.out_dir / f"k{k}_seed{seed}_chi{rep.max_chi}.dig"
                best = Digraph(rep.best.vertex_count, rep.best.edges)
                path.write_text(formats.serialize_digraph(best, comment=f"k={k} chi={rep.max_chi}"))
                print(f"  finding written to {path}")
        cells = "  ".join(f"chi={c}:{n}" for c, n in sorted(hist.items()))
        print(f"k={k}  max chi {max_chi} (k+2={k + 2}, 2k+1={2 * k + 1})  above k+2: {exceeded}  "
              f"skipped {skipped}  {cells}")


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--ks", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--max-vertices", type=int, default=14)
    p.add_argument("--out-dir", type=Path, default=Path("findings"))
    args = p.parse_args()
    sweep(SweepConfig(tuple(args.ks), args.seeds, args.instances, args.max_vertices, args.out_dir))


if __name__ == "__main__":
    main()
