"""Sweep random C1/C2 inputs through the induction and tally identity checks.

    python scripts/induction_sweep.py --dims 3 4 5 --arities 2 3 --trials 20
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from homnambu.construct import double_induce, induce_algebra
from homnambu.families import random_induction_instance
from homnambu.identities import check_abelian
from homnambu.space import classify_tuple


@dataclass
class SweepConfig:
    dims: list = field(default_factory=lambda: [3, 4, 5])
    arities: list = field(default_factory=lambda: [2, 3])
    families: list = field(default_factory=lambda: ["c1", "c2"])
    trials: int = 10
    seed: int = 1
    jobs: int = 1


def run(cfg: SweepConfig):
    rows = []
    for family in cfg.families:
        for d in cfg.dims:
            for n in cfg.arities:
                if n >= d:
                    continue
                t0 = time.perf_counter()
                tally = Counter()
                for k in range(cfg.trials):
                    inst = random_induction_instance(family, d, n, cfg.seed * 100003 + 1000 * k + d * 10 + n)
                    tally[classify_tuple(list(inst.algebra.twists) + [inst.alpha_n], inst.tau).kind.name] += 1
                    rec = induce_algebra(inst.algebra, inst.tau, inst.alpha_n, jobs=cfg.jobs)
                    tally["hnj_pass" if rec.reports["HNJ"].passed else "hnj_fail"] += 1
                    twice = double_induce(inst.algebra, inst.tau, inst.alpha_n, inst.alpha_n, verify=False)
                    tally["double_abelian" if check_abelian(twice.result.bracket).passed else "double_nonzero"] += 1
                rows.append({"family": family, "dim": d, "arity": n,
                             "seconds": round(time.perf_counter() - t0, 3), **tally})
                print(json.dumps(rows[-1]))
    return rows


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--arities", type=int, nargs="+", default=[2, 3])
    p.add_argument("--families", nargs="+", default=["c1", "c2"])
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", help="write all rows plus the config here")
    args = p.parse_args()
    out = args.__dict__.pop("json")
    cfg = SweepConfig(**vars(args))
    rows = run(cfg)
    if out:
        with open(out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
