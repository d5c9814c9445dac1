"""Path semantics of attack trees over a transition system.

`system` arguments accept a TransitionSystem or a GameArena (viewed through
its merged transition relation); only `valuation` and `is_path` are used.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .model import OR, SAND, Leaf, ModelError, Node

NEG_INF = -1  # sentinel below every index; indices are >= 0


def sync_concat(p1: Sequence, p2: Sequence) -> tuple:
    if not p1 or not p2:
        raise ModelError("paths are nonempty")
    if p1[-1] != p2[0]:
        raise ModelError(f"junction mismatch: {p1[-1]} != {p2[0]}")
    return tuple(p1) + tuple(p2[1:])


def concat_sets(s1: Iterable, s2: Iterable) -> frozenset:
    s2 = list(s2)
    return frozenset(sync_concat(a, b) for a in s1 for b in s2 if a[-1] == b[0])


def _is_prefix(u: tuple, w: tuple) -> bool:
    return len(u) <= len(w) and w[:len(u)] == u


def merge_pair(p1: Iterable, p2: Iterable) -> frozenset:
    """Binary merge, written exactly as the set comprehension of the definition."""
    p1, p2 = frozenset(map(tuple, p1)), frozenset(map(tuple, p2))
    left = {w for w in p1 if any(_is_prefix(u, w) for u in p2)}
    right = {w for w in p2 if any(_is_prefix(u, w) for u in p1)}
    return frozenset(left | right)


def merge_sets(sets: Sequence[Iterable]) -> frozenset:
    """n-ary merge: w is kept iff it lies in some set and every set holds a prefix of w."""
    sets = [frozenset(map(tuple, s)) for s in sets]
    if not sets:
        return frozenset()
    out = set()
    for w in frozenset().union(*sets):
        if all(any(w[:k] in s for k in range(1, len(w) + 1)) for s in sets):
            out.add(w)
    return frozenset(out)


def _require_path(system, path) -> tuple:
    path = tuple(path)
    if not system.is_path(path):
        raise ModelError(f"not a valid path: {' '.join(map(str, path))}")
    return path


# ---------------------------------------------------------------------------
# oracle: direct reading of the inductive definition

def pm_oracle(system, tree, path) -> bool:
    path = _require_path(system, path)
    val = system.valuation

    @lru_cache(maxsize=None)
    def mem(t, i, j) -> bool:
        # does path[i..j] (inclusive) belong to the semantics of t
        if isinstance(t, Leaf):
            return t.formula.holds(val[path[j]])
        kids = t.children
        if t.op == OR:
            return any(mem(c, i, j) for c in kids)
        if t.op == SAND:
            return sand(kids, i, j)
        # AND: some child takes the whole word, every child takes a prefix
        return (any(mem(c, i, j) for c in kids)
                and all(any(mem(c, i, k) for k in range(i, j + 1)) for c in kids))

    @lru_cache(maxsize=None)
    def sand(kids, i, j) -> bool:
        if len(kids) == 1:
            return mem(kids[0], i, j)
        return any(mem(kids[0], i, k) and sand(kids[1:], k, j) for k in range(i, j + 1))

    return mem(tree, 0, len(path) - 1)


# ---------------------------------------------------------------------------
# polynomial checker

class SegmentTable:
    """Per-node columns L and M over a growing path.

    L[t][i] is the greatest start index j such that path[j..i] belongs to
    the semantics of t (NEG_INF if none); M[t][i] = max(L[t][0..i]).
    Columns are appended one path position at a time, so callers that
    extend a history incrementally pay O(|T|) per step.
    """

    def __init__(self, tree, valuation):
        self.tree = tree
        self.valuation = valuation
        # positional indices: a subtree object may occur more than once
        self.order, self.kids = _postorder(tree)
        self.index = {}
        for k, t in enumerate(self.order):
            self.index.setdefault(id(t), k)
        self.L = [[] for _ in self.order]
        self.M = [[] for _ in self.order]
        self.path: list = []

    def __len__(self):
        return len(self.path)

    def push(self, state) -> None:
        i = len(self.path)
        self.path.append(state)
        val = self.valuation[state]
        L, M = self.L, self.M
        for k, t in enumerate(self.order):
            if isinstance(t, Leaf):
                v = i if t.formula.holds(val) else NEG_INF
            else:
                cs = self.kids[k]
                if t.op == OR:
                    v = max(L[c][i] for c in cs)
                elif t.op == SAND:
                    v = _sand_chain(cs, i, L, M)
                else:
                    v = NEG_INF
                    for c in cs:
                        cand = L[c][i]
                        for c2 in cs:
                            if c2 != c and M[c2][i] < cand:
                                cand = M[c2][i]
                        if cand > v:
                            v = cand
            L[k].append(v)
            M[k].append(v if i == 0 else max(M[k][i - 1], v))

    def pop(self) -> None:
        self.path.pop()
        for col in self.L:
            col.pop()
        for col in self.M:
            col.pop()

    def accepts(self) -> bool:
        return bool(self.path) and self.L[-1][-1] != NEG_INF

    def summary(self) -> tuple:
        """Canonical residue of the table: equal summaries accept the same extensions.

        Later columns read the past only through M at the current index and
        through M lookups at indices produced by earlier lookups, comparing
        values by order alone. So the current M column plus M on the closure
        of reachable indices, renamed by rank, determines every future verdict.
        """
        i = len(self.path) - 1
        M = self.M
        cur = [col[i] for col in M]
        reach = {v for v in cur if v != NEG_INF}
        todo = list(reach)
        while todo:
            j = todo.pop()
            for col in M:
                v = col[j]
                if v != NEG_INF and v not in reach:
                    reach.add(v)
                    todo.append(v)
        order = sorted(reach)
        rank = {v: k for k, v in enumerate(order)}
        rank[NEG_INF] = NEG_INF
        return (tuple(rank[v] for v in cur),
                tuple(tuple(rank[col[j]] for col in M) for j in order))

    def start(self, t=None, i=None) -> int:
        k = -1 if t is None else self.index[id(t)]
        return self.L[k][-1 if i is None else i]


def _sand_chain(cs, i, L, M) -> int:
    # greatest j with path[j..i] in SAND(t_1..t_n): walk junctions right to left
    j = L[cs[-1]][i]
    for c in reversed(cs[:-1]):
        if j == NEG_INF:
            return NEG_INF
        j = M[c][j]
    return j


def _postorder(tree) -> tuple[list, list]:
    order: list = []
    kids: list = []

    def walk(t) -> int:
        cs = [walk(c) for c in t.children] if isinstance(t, Node) else []
        order.append(t)
        kids.append(cs)
        return len(order) - 1

    walk(tree)
    return order, kids


def segment_table(system, tree, path) -> SegmentTable:
    path = _require_path(system, path)
    table = SegmentTable(tree, system.valuation)
    for s in path:
        table.push(s)
    return table


def pm_check(system, tree, path) -> bool:
    return segment_table(system, tree, path).accepts()


# ---------------------------------------------------------------------------
# bounded extensionalisation

def all_paths(system, max_len: int) -> list[tuple]:
    """Every valid path with at most max_len states, shortest first."""
    if max_len < 1:
        raise ValueError("max_len must be positive")
    layer = [(s,) for s in _states(system)]
    out = list(layer)
    for _ in range(max_len - 1):
        layer = [p + (q,) for p in layer for q in system.successors(p[-1])]
        out.extend(layer)
    return out


def enum_members(system, tree, max_len: int) -> frozenset:
    if max_len < 1:
        raise ValueError("max_len must be positive")
    out = set()
    table = SegmentTable(tree, system.valuation)

    def walk():
        if table.accepts():
            out.add(tuple(table.path))
        if len(table) >= max_len:
            return
        for q in system.successors(table.path[-1]):
            table.push(q)
            walk()
            table.pop()

    for s in _states(system):
        table.push(s)
        walk()
        table.pop()
    return frozenset(out)


def _states(system) -> tuple:
    return getattr(system, "states", None) or system.positions
