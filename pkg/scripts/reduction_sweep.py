#!/usr/bin/env python3
"""Run the three hardness reductions on random formulas and compare with brute force."""
from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from attacktrees import QBFInstance, aqbf_to_sm, pne, qbf_eval, qbf_to_sne, sat_to_pne, sm_memoryless, sne_attractor
from attacktrees.random_instances import random_cnf
from attacktrees.reductions import EXISTS, FORALL, brute_sat, brute_valid


@dataclass
class Config:
    seed: int = 0
    count: int = 200
    max_vars: int = 5
    max_clauses: int = 5


def run(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    bad = 0
    timing = {"qbf": 0.0, "sat": 0.0, "aqbf": 0.0}
    for _ in range(cfg.count):
        n = rng.randint(1, cfg.max_vars)
        cs = random_cnf(rng, n, cfg.max_clauses)
        q = QBFInstance(tuple((rng.choice((EXISTS, FORALL)), v) for v in range(1, n + 1)), cs)

        t = time.perf_counter()
        ok = sne_attractor(*qbf_to_sne(q)).verdict == qbf_eval(q)
        timing["qbf"] += time.perf_counter() - t

        t = time.perf_counter()
        ok &= pne(*sat_to_pne(cs, n)).verdict == brute_sat(cs, n)
        timing["sat"] += time.perf_counter() - t

        t = time.perf_counter()
        arena, tree, strat, start = aqbf_to_sm(cs, n)
        ok &= sm_memoryless(arena, tree, strat, start).verdict == brute_valid(cs, n)
        timing["aqbf"] += time.perf_counter() - t

        if not ok:
            bad += 1
            print("mismatch:", q)
    print(f"instances={cfg.count} mismatches={bad} " + " ".join(f"{k}_s={v:.2f}" for k, v in timing.items()))
    return 1 if bad else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    d = Config()
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--count", type=int, default=d.count)
    ap.add_argument("--max-vars", type=int, default=d.max_vars)
    ap.add_argument("--max-clauses", type=int, default=d.max_clauses)
    a = ap.parse_args()
    raise SystemExit(run(Config(a.seed, a.count, a.max_vars, a.max_clauses)))


if __name__ == "__main__":
    main()
