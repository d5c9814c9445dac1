#!/usr/bin/env python3
"""Probe the history bound |Pos| x n of the alternating search.

For each YES instance, report the attractor witness depth and the smallest
history bound under which sne_alg1 still answers YES, next to |Pos| x n.
A row with needed > |Pos| x n would be a counterexample to the bound.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from attacktrees import sne_alg1, sne_attractor
from attacktrees.random_instances import sne_corpus


@dataclass
class Config:
    seed: int = 0
    count: int = 300
    max_positions: int = 4
    max_actions: int = 2
    max_leaves: int = 3
    csv_out: str | None = None


def smallest_bound(arena, tree, limit: int) -> int | None:
    for b in range(1, limit + 1):
        if sne_alg1(arena, tree, bound=b).verdict:
            return b
    return None


def run(cfg: Config) -> int:
    rows = []
    corpus = sne_corpus(cfg.seed, cfg.count, cfg.max_positions, cfg.max_actions, cfg.max_leaves)
    for k, (arena, tree) in enumerate(corpus):
        res = sne_attractor(arena, tree)
        if not res.verdict:
            continue
        history_bound = len(arena.positions) * tree.leaf_count
        # the attractor witness depth is always enough, so search up to the larger of the two
        needed = smallest_bound(arena, tree, max(history_bound, res.witness.depth))
        rows.append(dict(instance=k, positions=len(arena.positions), leaves=tree.leaf_count,
                         bound=history_bound, witness_depth=res.witness.depth, needed=needed))
    violations = [r for r in rows if r["needed"] is None or r["needed"] > r["bound"]]
    if cfg.csv_out:
        with open(cfg.csv_out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["instance"])
            w.writeheader()
            w.writerows(rows)
    slack = min((r["bound"] - r["needed"] for r in rows), default=None)
    print(f"yes_instances={len(rows)} violations={len(violations)} "
          f"max_needed={max((r['needed'] for r in rows), default=0)} min_slack={slack}")
    for r in violations:
        print("violation:", r, file=sys.stderr)
    return 1 if violations else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    d = Config()
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--count", type=int, default=d.count)
    ap.add_argument("--max-positions", type=int, default=d.max_positions)
    ap.add_argument("--max-actions", type=int, default=d.max_actions)
    ap.add_argument("--max-leaves", type=int, default=d.max_leaves)
    ap.add_argument("--csv", dest="csv_out")
    a = ap.parse_args()
    raise SystemExit(run(Config(a.seed, a.count, a.max_positions, a.max_actions, a.max_leaves, a.csv_out)))


if __name__ == "__main__":
    main()
