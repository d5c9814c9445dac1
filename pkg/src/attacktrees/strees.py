"""Strategic trees (s-trees): finite rooted prefix-closed sets of histories."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .model import GameArena, Leaf, MemorylessStrategy, ModelError, Node
from .paths import pm_check


@dataclass(frozen=True)
class STree:
    """A node labelled by a position; the node denotes its root-to-node history.

    Siblings carry distinct labels and are kept sorted, so structural
    equality coincides with equality of the underlying word sets.
    """
    label: str
    children: tuple = ()

    def __post_init__(self):
        kids = tuple(sorted(self.children, key=lambda c: c.label))
        labels = [c.label for c in kids]
        if len(set(labels)) != len(labels):
            raise ModelError(f"node {self.label} has repeated child labels {labels}")
        object.__setattr__(self, "children", kids)

    @property
    def root(self) -> str:
        return self.label

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def histories(self) -> Iterable[tuple]:
        stack = [((self.label,), self)]
        while stack:
            h, node = stack.pop()
            yield h
            for c in reversed(node.children):
                stack.append((h + (c.label,), c))

    def words(self) -> frozenset:
        return frozenset(self.histories())

    def nodes(self) -> Iterable[tuple[tuple, "STree"]]:
        stack = [((self.label,), self)]
        while stack:
            h, node = stack.pop()
            yield h, node
            for c in reversed(node.children):
                stack.append((h + (c.label,), c))

    def leaves(self) -> list[tuple]:
        return [h for h, n in self.nodes() if not n.children]

    def find(self, history) -> "STree | None":
        history = tuple(history)
        if not history or history[0] != self.label:
            return None
        node = self
        for x in history[1:]:
            node = next((c for c in node.children if c.label == x), None)
            if node is None:
                return None
        return node

    def children_of(self, history) -> set[tuple]:
        node = self.find(history)
        if node is None:
            raise KeyError(history)
        h = tuple(history)
        return {h + (c.label,) for c in node.children}

    def __contains__(self, history) -> bool:
        return self.find(history) is not None


def validate_stree(words: Iterable) -> STree:
    ws = {tuple(w) for w in words}
    if not ws:
        raise ModelError("empty s-tree")
    if () in ws:
        raise ModelError("s-tree words must be nonempty")
    roots = {w[0] for w in ws}
    if len(roots) != 1:
        raise ModelError(f"multiple roots {sorted(roots)}")
    for w in ws:
        for k in range(1, len(w)):
            if w[:k] not in ws:
                raise ModelError(f"prefix closure violated: {' '.join(w[:k])} missing")

    kids: dict[tuple, list] = {}
    for w in ws:
        if len(w) > 1:
            kids.setdefault(w[:-1], []).append(w)

    def build(w):
        return STree(w[-1], tuple(build(c) for c in kids.get(w, ())))

    return build((roots.pop(),))


def is_prefix(small: STree, big: STree) -> bool:
    """small is a prefix of big: same root, inclusion, internal nodes keep all children."""
    if small.label != big.label:
        return False

    def walk(s: STree, b: STree) -> bool:
        if not s.children:
            return True
        if [c.label for c in s.children] != [c.label for c in b.children]:
            return False
        return all(walk(x, y) for x, y in zip(s.children, b.children))

    return walk(small, big)


def check_histories(arena: GameArena, s: STree) -> None:
    """Raise if some node of s is not a valid history of the arena."""
    if s.label not in arena.valuation:
        raise ModelError(f"unknown position {s.label!r}")
    for h, node in s.nodes():
        succ = arena.successors(h[-1])
        for c in node.children:
            if c.label not in succ:
                raise ModelError(f"history {' '.join(h + (c.label,))} is not valid in the arena")


def is_well_formed(arena: GameArena, s: STree) -> tuple[bool, dict]:
    """Local well-formedness check.

    Returns (ok, certificate) where the certificate maps every internal
    history to an attacker action whose full outcome set equals the node's
    children.
    """
    check_histories(arena, s)
    cert = {}
    for h, node in s.nodes():
        if not node.children:
            continue
        labels = {c.label for c in node.children}
        act = next((a for a in arena.actions1 if set(arena.outcomes(h[-1], a)) == labels), None)
        if act is None:
            return False, {}
        cert[h] = act
    return True, cert


def unfold_strategy(arena: GameArena, strat: MemorylessStrategy | Callable, start, depth: int,
                    stop: Callable[[tuple], bool] | None = None) -> STree:
    """Depth-truncated tree of histories consistent with an attacker strategy.

    `strat` is either a MemorylessStrategy or any callable mapping a history
    to an attacker action. When `stop` is given, a history for which it
    returns true becomes a leaf.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if isinstance(strat, MemorylessStrategy):
        choose = lambda h: strat(h[-1])  # noqa: E731
    else:
        choose = strat

    def build(h):
        if len(h) >= depth or (stop is not None and stop(h)):
            return STree(h[-1])
        a1 = choose(h)
        return STree(h[-1], tuple(build(h + (q,)) for q in arena.outcomes(h[-1], a1)))

    return build((start,))


def check_witness(arena: GameArena, s: STree, goal) -> bool:
    """Membership of s in the strategy semantics of `goal`.

    `goal` is an attack tree (leaves judged by path-semantics membership)
    or an explicit collection of target positions.
    """
    ok, _ = is_well_formed(arena, s)
    if not ok:
        return False
    if isinstance(goal, (Leaf, Node)):
        return all(pm_check(arena, goal, h) for h in s.leaves())
    targets = set(goal)
    return all(h[-1] in targets for h in s.leaves())


def certificate_strategy(arena: GameArena, cert: dict) -> Callable[[tuple], str]:
    """History-dependent strategy read off a well-formedness certificate.

    Histories outside the certificate get the first attacker action.
    """
    default = arena.actions1[0]
    return lambda h: cert.get(tuple(h), default)
