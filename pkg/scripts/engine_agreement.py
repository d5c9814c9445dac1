#!/usr/bin/env python3
"""Cross-check the attractor engine against the alternating search on random arenas."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from attacktrees import sne_alg1, sne_attractor
from attacktrees.random_instances import sne_corpus
from attacktrees.syntax import print_arena, print_tree


@dataclass
class Config:
    seed: int = 0
    count: int = 300
    max_positions: int = 4
    max_actions: int = 2
    max_leaves: int = 2
    memo: bool = True


def run(cfg: Config) -> int:
    t0 = time.perf_counter()
    yes = mismatches = 0
    corpus = sne_corpus(cfg.seed, cfg.count, cfg.max_positions, cfg.max_actions, cfg.max_leaves)
    for k, (arena, tree) in enumerate(corpus):
        a = sne_attractor(arena, tree)
        b = sne_alg1(arena, tree, memo=cfg.memo)
        yes += a.verdict
        if a.verdict != b.verdict:
            mismatches += 1
            print(f"# mismatch at instance {k}: attractor={a.verdict} alg1={b.verdict}")
            print(print_arena(arena))
            print(print_tree(tree))
    dt = time.perf_counter() - t0
    print(f"instances={cfg.count} yes={yes} mismatches={mismatches} seconds={dt:.2f}")
    return 1 if mismatches else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    d = Config()
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--count", type=int, default=d.count)
    ap.add_argument("--max-positions", type=int, default=d.max_positions)
    ap.add_argument("--max-actions", type=int, default=d.max_actions)
    ap.add_argument("--max-leaves", type=int, default=d.max_leaves)
    ap.add_argument("--no-memo", action="store_true", help="plain polynomial-space search")
    args = ap.parse_args()
    cfg = Config(args.seed, args.count, args.max_positions, args.max_actions, args.max_leaves, not args.no_memo)
    raise SystemExit(run(cfg))


if __name__ == "__main__":
    main()
