"""Random small arenas, trees, paths and CNFs for cross-checking engines."""
from __future__ import annotations

import random
from itertools import product

from .model import OPERATORS, Atom, Conj, Const, Disj, GameArena, Leaf, Node, Not

PROPS = ("P", "Q", "R")


def random_arena(rng: random.Random, max_positions: int = 4, max_actions: int = 2,
                 props=PROPS, min_positions: int = 1) -> GameArena:
    n = rng.randint(min_positions, max_positions)
    positions = [f"s{k}" for k in range(n)]
    acts1 = [f"a{k}" for k in range(rng.randint(1, max_actions))]
    acts2 = [f"b{k}" for k in range(rng.randint(1, max_actions))]
    delta = {key: rng.choice(positions) for key in product(positions, acts1, acts2)}
    valuation = {p: {x for x in props if rng.random() < 0.4} for p in positions}
    return GameArena(positions, acts1, acts2, delta, valuation, props)


def random_formula(rng: random.Random, props=PROPS, depth: int = 1):
    r = rng.random()
    if depth <= 0 or r < 0.6:
        if rng.random() < 0.08:
            return Const(rng.random() < 0.5)
        return Atom(rng.choice(props))
    if r < 0.75:
        return Not(random_formula(rng, props, depth - 1))
    args = tuple(random_formula(rng, props, depth - 1) for _ in range(2))
    return Conj(args) if r < 0.88 else Disj(args)


def random_tree(rng: random.Random, props=PROPS, max_leaves: int = 3, max_depth: int = 3,
                max_nodes: int | None = None):
    """Tree with at most max_leaves leaves and height at most max_depth (a leaf has height 1)."""
    budget = [max_leaves]

    def gen(height):
        if height <= 1 or budget[0] <= 1 or rng.random() < 0.35:
            budget[0] -= 1
            return Leaf(random_formula(rng, props))
        k = rng.randint(1, min(3, budget[0]))
        budget[0] -= k - 1  # reserve one leaf per extra child
        kids = []
        for _ in range(k):
            budget[0] += 1 if kids else 0
            kids.append(gen(height - 1))
        return Node(rng.choice(OPERATORS), tuple(kids))

    while True:
        budget[0] = max_leaves
        t = gen(max_depth)
        if t.leaf_count <= max_leaves and (max_nodes is None or t.size <= max_nodes):
            return t


def random_path(rng: random.Random, system, max_len: int) -> tuple:
    states = getattr(system, "states", None) or system.positions
    path = [rng.choice(states)]
    for _ in range(rng.randint(0, max_len - 1)):
        path.append(rng.choice(system.successors(path[-1])))
    return tuple(path)


def random_cnf(rng: random.Random, n_vars: int, max_clauses: int = 3, max_width: int = 3) -> tuple:
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, max_width)
        vs = rng.sample(range(1, n_vars + 1), min(width, n_vars))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return tuple(clauses)


def sne_corpus(seed: int = 0, count: int = 300, max_positions: int = 4, max_actions: int = 2,
               max_leaves: int = 2):
    """Deterministic stream of small (arena, tree) pairs for engine cross-checks."""
    rng = random.Random(seed)
    for _ in range(count):
        arena = random_arena(rng, max_positions, max_actions)
        yield arena, random_tree(rng, arena.props, max_leaves=max_leaves, max_depth=3)
