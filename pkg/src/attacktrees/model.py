"""Domain types: formulas, attack trees, game arenas, transition systems."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Path = tuple  # nonempty tuple of state / position names


class ModelError(ValueError):
    pass


class ParseError(ModelError):
    pass


class AutomatonCapExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Boolean formulas

@dataclass(frozen=True)
class Atom:
    name: str

    def holds(self, valuation: frozenset) -> bool:
        return self.name in valuation


@dataclass(frozen=True)
class Const:
    value: bool

    def holds(self, valuation: frozenset) -> bool:
        return self.value


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def holds(self, valuation: frozenset) -> bool:
        return not self.arg.holds(valuation)


@dataclass(frozen=True)
class Conj:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ModelError("conjunction needs at least one operand")

    def holds(self, valuation: frozenset) -> bool:
        return all(a.holds(valuation) for a in self.args)


@dataclass(frozen=True)
class Disj:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ModelError("disjunction needs at least one operand")

    def holds(self, valuation: frozenset) -> bool:
        return any(a.holds(valuation) for a in self.args)


Formula = Atom | Const | Not | Conj | Disj

TRUE = Const(True)
FALSE = Const(False)


def eval_formula(f: Formula, valuation: Iterable[str]) -> bool:
    return f.holds(frozenset(valuation))


def formula_atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, Not):
        return formula_atoms(f.arg)
    out: set[str] = set()
    for a in f.args:
        out |= formula_atoms(a)
    return out


# ---------------------------------------------------------------------------
# Attack trees

OR, AND, SAND = "OR", "AND", "SAND"
OPERATORS = (OR, AND, SAND)


@dataclass(frozen=True)
class Leaf:
    formula: Formula

    @property
    def size(self) -> int:
        return 1

    @property
    def leaf_count(self) -> int:
        return 1

    @property
    def height(self) -> int:
        return 1


@dataclass(frozen=True)
class Node:
    op: str
    children: tuple

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise ModelError(f"unknown operator {self.op!r}")
        if not self.children:
            raise ModelError(f"{self.op} needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @property
    def leaf_count(self) -> int:
        return sum(c.leaf_count for c in self.children)

    @property
    def height(self) -> int:
        return 1 + max(c.height for c in self.children)


AttackTree = Leaf | Node


def leaf(f: Formula | str) -> Leaf:
    return Leaf(Atom(f) if isinstance(f, str) else f)


def OR_(*children) -> Node:
    return Node(OR, tuple(_as_tree(c) for c in children))


def AND_(*children) -> Node:
    return Node(AND, tuple(_as_tree(c) for c in children))


def SAND_(*children) -> Node:
    return Node(SAND, tuple(_as_tree(c) for c in children))


def _as_tree(x) -> AttackTree:
    if isinstance(x, (Leaf, Node)):
        return x
    return leaf(x)


def tree_atoms(t: AttackTree) -> set[str]:
    if isinstance(t, Leaf):
        return formula_atoms(t.formula)
    out: set[str] = set()
    for c in t.children:
        out |= tree_atoms(c)
    return out


def subtrees(t: AttackTree) -> list[AttackTree]:
    """Post-order list of all nodes (children before parents)."""
    out: list[AttackTree] = []

    def walk(u):
        if isinstance(u, Node):
            for c in u.children:
                walk(c)
        out.append(u)

    walk(t)
    return out


# ---------------------------------------------------------------------------
# Transition systems and arenas

def _freeze_valuation(states, valuation: Mapping[str, Iterable[str]]) -> dict:
    out = {}
    for s in states:
        out[s] = frozenset(valuation.get(s, ()))
    return out


@dataclass(frozen=True, eq=False)
class TransitionSystem:
    states: tuple
    edges: frozenset
    valuation: Mapping[str, frozenset]
    props: tuple = ()
    _succ: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "edges", frozenset(self.edges))
        names = set(self.states)
        if len(names) != len(self.states):
            raise ModelError("duplicate state names")
        for (p, q) in self.edges:
            if p not in names or q not in names:
                raise ModelError(f"edge ({p}, {q}) mentions an unknown state")
        succ = {p: tuple(q for q in self.states if (p, q) in self.edges) for p in self.states}
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "valuation", _freeze_valuation(self.states, self.valuation))
        if not self.props:
            props = sorted(set().union(*self.valuation.values())) if self.states else []
            object.__setattr__(self, "props", tuple(props))

    def successors(self, s) -> tuple:
        return self._succ[s]

    def is_path(self, path: Sequence) -> bool:
        if not path:
            return False
        if any(s not in self._succ for s in path):
            return False
        return all((a, b) in self.edges for a, b in zip(path, path[1:]))

    def satisfies(self, s, f: Formula) -> bool:
        return f.holds(self.valuation[s])

    def __eq__(self, other):
        if not isinstance(other, TransitionSystem):
            return NotImplemented
        return (set(self.states) == set(other.states) and self.edges == other.edges
                and dict(self.valuation) == dict(other.valuation))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GameArena:
    """Concurrent two-player arena with a total transition map.

    `delta` maps (position, attacker action, defender action) to a position.
    Declaration order of positions and actions is kept and used for
    deterministic tie-breaking downstream.
    """
    positions: tuple
    actions1: tuple
    actions2: tuple
    delta: Mapping[tuple, str]
    valuation: Mapping[str, frozenset]
    props: tuple = ()

    def __post_init__(self):
        for name in ("positions", "actions1", "actions2", "props"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.positions:
            raise ModelError("arena has no positions")
        if not self.actions1 or not self.actions2:
            raise ModelError("empty action set")
        for name in ("positions", "actions1", "actions2", "props"):
            seq = getattr(self, name)
            if len(set(seq)) != len(seq):
                raise ModelError(f"duplicate names in {name}")
        pos = set(self.positions)
        delta = dict(self.delta)
        for key in itertools.product(self.positions, self.actions1, self.actions2):
            if key not in delta:
                raise ModelError("delta not total at ({}, {}, {})".format(*key))
            if delta[key] not in pos:
                raise ModelError(f"delta{key} leads to unknown position {delta[key]!r}")
        if len(delta) != len(self.positions) * len(self.actions1) * len(self.actions2):
            raise ModelError("delta defined outside Pos x Act1 x Act2")
        object.__setattr__(self, "delta", delta)
        for p in self.valuation:
            if p not in pos:
                raise ModelError(f"valuation mentions unknown position {p!r}")
        val = _freeze_valuation(self.positions, self.valuation)
        if self.props:
            known = set(self.props)
            for p, v in val.items():
                if not v <= known:
                    raise ModelError(f"unknown proposition(s) {sorted(v - known)} at {p}")
        else:
            object.__setattr__(self, "props", tuple(sorted(set().union(*val.values()))))
        object.__setattr__(self, "valuation", val)

    def move(self, p, a1, a2):
        return self.delta[(p, a1, a2)]

    def outcomes(self, p, a1) -> tuple:
        """Distinct successors of p under attacker action a1, in defender-action order."""
        seen: dict = {}
        for a2 in self.actions2:
            seen.setdefault(self.delta[(p, a1, a2)], None)
        return tuple(seen)

    def successors(self, p) -> tuple:
        seen: dict = {}
        for a1 in self.actions1:
            for q in self.outcomes(p, a1):
                seen.setdefault(q, None)
        return tuple(seen)

    def is_path(self, path: Sequence) -> bool:
        if not path or any(s not in self.valuation for s in path):
            return False
        return all(b in self.successors(a) for a, b in zip(path, path[1:]))

    def satisfies(self, p, f: Formula) -> bool:
        return f.holds(self.valuation[p])

    def __eq__(self, other):
        if not isinstance(other, GameArena):
            return NotImplemented
        return (self.positions == other.positions and self.actions1 == other.actions1
                and self.actions2 == other.actions2 and self.delta == other.delta
                and self.valuation == other.valuation and set(self.props) == set(other.props))

    __hash__ = None


def arena_to_ts(a: GameArena) -> TransitionSystem:
    edges = {(p, q) for (p, _, _), q in a.delta.items()}
    return TransitionSystem(a.positions, frozenset(edges), a.valuation, a.props)


@dataclass(frozen=True)
class MemorylessStrategy:
    choice: Mapping[str, str]
    owner: str = "attacker"

    def __call__(self, position):
        return self.choice[position]

    def check(self, a: GameArena) -> None:
        for p in a.positions:
            if p not in self.choice:
                raise ModelError(f"strategy undefined at position {p}")
            if self.choice[p] not in a.actions1:
                raise ModelError(f"strategy plays unknown action {self.choice[p]!r} at {p}")
        extra = set(self.choice) - set(a.positions)
        if extra:
            raise ModelError(f"strategy mentions unknown positions {sorted(extra)}")


@dataclass
class QueryResult:
    verdict: bool
    witness: object = None
    stats: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict
