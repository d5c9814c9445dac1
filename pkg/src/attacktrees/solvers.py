"""Decision procedures: PNE, SNE (two engines), SM (explicit s-tree and memoryless strategy)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automaton import DEFAULT_CAP, build_automaton
from .model import GameArena, MemorylessStrategy, ModelError, QueryResult
from .paths import SegmentTable, pm_check
from .strees import STree, check_histories, check_witness


def _check_start(system, start):
    names = getattr(system, "states", None) or system.positions
    if start is not None and start not in names:
        raise ModelError(f"unknown start {start!r}")
    return names if start is None else (start,)


# ---------------------------------------------------------------------------
# PNE

def pne(system, tree, start=None, cap: int = DEFAULT_CAP) -> QueryResult:
    """Breadth-first search of the system x automaton product for an accepting state."""
    starts = _check_start(system, start)
    d = build_automaton(tree, system, cap)
    parent: dict = {}
    queue: deque = deque()
    for s in starts:
        node = (s, d.step(d.initial, s))
        if node not in parent:
            parent[node] = None
            queue.append(node)
    while queue:
        node = queue.popleft()
        if d.is_accepting(node[1]):
            path = []
            while node is not None:
                path.append(node[0])
                node = parent[node]
            path.reverse()
            return QueryResult(True, tuple(path), {"explored": len(parent), "dfa_states": d.num_states})
        s, q = node
        for t in system.successors(s):
            nxt = (t, d.step(q, t))
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return QueryResult(False, None, {"explored": len(parent), "dfa_states": d.num_states})


def pne_dfs(system, tree, start=None, bound: int | None = None, memo: bool = True) -> QueryResult:
    """Automaton-free PNE: iterative-deepening search over paths with at most `bound` states.

    The default bound is |S| * (number of leaves), enough for a shortest
    member path (each leaf needs at most one witnessing index and the gaps
    between witnessing indices can be made simple). Deepening one state at
    a time makes the witness a shortest one. With `memo`, failed
    sub-searches are remembered by (last state, remaining budget,
    segment-table summary), as in sne_alg1.
    """
    starts = _check_start(system, start)
    names = getattr(system, "states", None) or system.positions
    if bound is None:
        bound = len(names) * tree.leaf_count
    table = SegmentTable(tree, system.valuation)
    counter = [0]
    failed: set = set()

    def walk(limit):
        counter[0] += 1
        if table.accepts():
            return True
        if len(table) >= limit:
            return False
        if memo:
            key = (table.path[-1], limit - len(table), table.summary())
            if key in failed:
                return False
        for t in system.successors(table.path[-1]):
            table.push(t)
            if walk(limit):
                return True
            table.pop()
        if memo:
            failed.add(key)
        return False

    for limit in range(1, bound + 1):
        for s in starts:
            table.push(s)
            if walk(limit):
                return QueryResult(True, tuple(table.path), {"explored": counter[0], "bound": bound})
            table.pop()
    return QueryResult(False, None, {"explored": counter[0], "bound": bound})


# ---------------------------------------------------------------------------
# SNE, attractor engine

@dataclass
class AttractorTable:
    rank: dict = field(default_factory=dict)    # product state -> rank
    choice: dict = field(default_factory=dict)  # non-accepting winning product state -> attacker action


def _explore_product(arena: GameArena, d, roots):
    """All product states reachable from roots; successor lists per attacker action."""
    succ: dict = {}
    queue = deque(roots)
    seen = set(roots)
    while queue:
        node = queue.popleft()
        p, q = node
        per_action = []
        for a1 in arena.actions1:
            outs = tuple((t, d.step(q, t)) for t in arena.outcomes(p, a1))
            per_action.append((a1, outs))
            for nxt in outs:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        succ[node] = per_action
    return succ


def attractor(arena: GameArena, d, succ) -> AttractorTable:
    table = AttractorTable()
    for node in succ:
        if d.is_accepting(node[1]):
            table.rank[node] = 0
    r = 0
    pending = [n for n in succ if n not in table.rank]
    while True:
        layer = {}
        for node in pending:
            for a1, outs in succ[node]:
                if all(o in table.rank for o in outs):
                    layer[node] = a1
                    break
        if not layer:
            return table
        r += 1
        for node, a1 in layer.items():
            table.rank[node] = r
            table.choice[node] = a1
        pending = [n for n in pending if n not in layer]


def sne_attractor(arena: GameArena, tree, start=None, cap: int = DEFAULT_CAP) -> QueryResult:
    starts = _check_start(arena, start)
    d = build_automaton(tree, arena, cap)
    roots = [(p, d.step(d.initial, p)) for p in starts]
    succ = _explore_product(arena, d, roots)
    table = attractor(arena, d, succ)
    stats = {"product_states": len(succ), "dfa_states": d.num_states, "winning": len(table.rank)}
    winners = [r for r in roots if r in table.rank]
    if not winners:
        return QueryResult(False, None, stats)
    root = min(winners, key=lambda r: table.rank[r])  # stable: declaration order on ties

    def build(node):
        p, q = node
        if d.is_accepting(q):
            return STree(p)
        a1 = table.choice[node]
        return STree(p, tuple(build((t, d.step(q, t))) for t in arena.outcomes(p, a1)))

    witness = build(root)
    stats.update(root=root[0], rank=table.rank[root], depth=witness.depth)
    return QueryResult(True, witness, stats)


# ---------------------------------------------------------------------------
# SNE, alternating algorithm as bounded AND-OR search

def sne_alg1(arena: GameArena, tree, bound: int | None = None, early_exit: bool = False,
             memo: bool = True, start=None) -> QueryResult:
    """Deterministic evaluation of the alternating history-guessing algorithm.

    Existential guesses (start, break, attacker action) become disjunctions,
    the universal defender guess a conjunction; histories grow up to `bound`
    positions (default |Pos| x leaves). The membership test at each loop
    exit runs from scratch on the accumulated history unless `early_exit`,
    which reads it off the incrementally maintained segment table.

    With `memo`, sub-searches are cached on (last position, remaining
    budget, segment-table summary); equal keys have equal answers, so the
    verdict is unchanged. Without it the search uses polynomial space and
    exponential time.
    """
    starts = _check_start(arena, start)
    if bound is None:
        bound = len(arena.positions) * tree.leaf_count
    counter = [0]
    hist: list = []
    table = SegmentTable(tree, arena.valuation) if (early_exit or memo) else None
    cache: dict = {}

    def exit_check() -> bool:
        if early_exit:
            return table.accepts()
        return pm_check(arena, tree, hist)

    def push(p):
        hist.append(p)
        if table is not None:
            table.push(p)

    def pop():
        hist.pop()
        if table is not None:
            table.pop()

    def win() -> bool:
        if not memo:
            return search()
        key = (hist[-1], bound - len(hist), table.summary())
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = search()
        return hit

    def search() -> bool:
        counter[0] += 1
        if exit_check():  # break here
            return True
        if len(hist) >= bound:  # loop condition fails: exit with a rejected history
            return False
        last = hist[-1]
        tried = set()
        for a1 in arena.actions1:
            outs = arena.outcomes(last, a1)
            key = frozenset(outs)
            if key in tried:  # same universal branching as an earlier action
                continue
            tried.add(key)
            ok = True
            for t in outs:
                push(t)
                ok = win()
                pop()
                if not ok:
                    break
            if ok:
                return True
        return False

    for p in starts:
        push(p)
        found = win()
        pop()
        if found:
            return QueryResult(True, None, {"nodes": counter[0], "bound": bound, "root": p})
    return QueryResult(False, None, {"nodes": counter[0], "bound": bound})


# ---------------------------------------------------------------------------
# SM

def sm_explicit(arena: GameArena, tree, s: STree) -> QueryResult:
    check_histories(arena, s)
    return QueryResult(check_witness(arena, s, tree), None, {"nodes": s.size, "depth": s.depth})


def sm_memoryless(arena: GameArena, tree, strat: MemorylessStrategy, start,
                  cap: int = DEFAULT_CAP) -> QueryResult:
    """Every play consistent with `strat` from `start` has a prefix in the path semantics.

    Decided on the strategy-restricted product: the answer is no exactly
    when a cycle of non-accepting states is reachable through non-accepting
    states. On yes the witness is the strategy's unfolding pruned at the
    first accepting history.
    """
    strat.check(arena)
    _check_start(arena, start)
    d = build_automaton(tree, arena, cap)
    root = (start, d.step(d.initial, start))

    def succ(node):
        p, q = node
        return [(t, d.step(q, t)) for t in arena.outcomes(p, strat(p))]

    WHITE, GREY, BLACK = 0, 1, 2
    colour: dict = {}
    stack = []
    if not d.is_accepting(root[1]):
        colour[root] = GREY
        stack.append((root, iter(succ(root))))
    while stack:
        node, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            colour[node] = BLACK
            stack.pop()
            continue
        if d.is_accepting(nxt[1]):
            continue
        c = colour.get(nxt, WHITE)
        if c == GREY:
            lasso = [n[0] for n, _ in stack] + [nxt[0]]
            return QueryResult(False, None, {"product_states": len(colour), "lasso": tuple(lasso)})
        if c == WHITE:
            colour[nxt] = GREY
            stack.append((nxt, iter(succ(nxt))))

    def build(node):
        p, q = node
        if d.is_accepting(q):
            return STree(p)
        return STree(p, tuple(build(n) for n in succ(node)))

    witness = build(root)
    return QueryResult(True, witness, {"product_states": len(colour), "depth": witness.depth})
