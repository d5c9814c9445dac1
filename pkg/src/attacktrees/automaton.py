"""Deterministic word acceptor for the path semantics of an attack tree.

Each tree node compiles to a small deterministic machine whose states are
plain hashable values; SAND uses an on-the-fly subset of right-factor runs.
`SemanticsAutomaton` interns the composite states lazily as integers.
Only agreement on valid paths is guaranteed: products with the arena never
feed anything else.
"""
from __future__ import annotations

import copy
from collections import deque

from .model import AND, OR, SAND, AutomatonCapExceeded, Leaf
from .paths import pm_check

DEFAULT_CAP = 10 ** 6


class _LeafM:
    __slots__ = ("formula", "valuation", "init")

    def __init__(self, formula, valuation):
        self.formula = formula
        self.valuation = valuation
        self.init = False

    def step(self, s, letter):
        return self.formula.holds(self.valuation[letter])

    def acc(self, s):
        return s


class _OrM:
    def __init__(self, kids):
        self.kids = kids
        self.init = tuple(k.init for k in kids)

    def step(self, s, letter):
        return tuple(k.step(x, letter) for k, x in zip(self.kids, s))

    def acc(self, s):
        return any(k.acc(x) for k, x in zip(self.kids, s))


class _AndM:
    # per child: (run state, some nonempty prefix was accepted)
    def __init__(self, kids):
        self.kids = kids
        self.init = tuple((k.init, False) for k in kids)

    def step(self, s, letter):
        out = []
        for k, (x, seen) in zip(self.kids, s):
            y = k.step(x, letter)
            out.append((y, seen or k.acc(y)))
        return tuple(out)

    def acc(self, s):
        return (all(seen for _, seen in s)
                and any(k.acc(x) for k, (x, _) in zip(self.kids, s)))


class _SandM:
    # left run plus the set of right runs spawned at junction letters
    def __init__(self, left, right):
        self.left, self.right = left, right
        self.init = (left.init, frozenset())

    def step(self, s, letter):
        ls, rs = s
        right = self.right
        nl = self.left.step(ls, letter)
        nr = {right.step(r, letter) for r in rs}
        if self.left.acc(nl):
            nr.add(right.step(right.init, letter))
        return (nl, frozenset(nr))

    def acc(self, s):
        return any(self.right.acc(r) for r in s[1])


def _compile(t, valuation):
    if isinstance(t, Leaf):
        return _LeafM(t.formula, valuation)
    kids = [_compile(c, valuation) for c in t.children]
    if len(kids) == 1:
        return kids[0]
    if t.op == OR:
        return _OrM(kids)
    if t.op == AND:
        return _AndM(kids)
    assert t.op == SAND
    m = kids[0]
    for k in kids[1:]:
        m = _SandM(m, k)
    return m


class SemanticsAutomaton:
    """Lazily materialised DFA over positions; states are consecutive ints."""

    def __init__(self, tree, alphabet, valuation, cap: int = DEFAULT_CAP):
        self.tree = tree
        self.alphabet = tuple(alphabet)
        self.cap = cap
        self._machine = _compile(tree, valuation)
        self._ids: dict = {}
        self._states: list = []
        self._accepting: list[bool] = []
        self._trans: dict = {}
        self.initial = self._intern(self._machine.init)

    def _intern(self, raw) -> int:
        sid = self._ids.get(raw)
        if sid is None:
            if len(self._states) >= self.cap:
                raise AutomatonCapExceeded(f"automaton exceeded {self.cap} states")
            sid = len(self._states)
            self._ids[raw] = sid
            self._states.append(raw)
            self._accepting.append(bool(self._machine.acc(raw)))
        return sid

    def step(self, sid: int, letter) -> int:
        key = (sid, letter)
        nxt = self._trans.get(key)
        if nxt is None:
            nxt = self._intern(self._machine.step(self._states[sid], letter))
            self._trans[key] = nxt
        return nxt

    def is_accepting(self, sid: int) -> bool:
        return self._accepting[sid]

    def run(self, word) -> int:
        sid = self.initial
        for letter in word:
            sid = self.step(sid, letter)
        return sid

    def accepts(self, word) -> bool:
        return self.is_accepting(self.run(word))

    @property
    def num_states(self) -> int:
        """States materialised so far."""
        return len(self._states)

    def explore(self) -> int:
        """Materialise every state reachable over the full alphabet."""
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            for a in self.alphabet:
                t = self.step(s, a)
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return len(seen)

    def transitions(self):
        """Materialised transitions as (src, letter, dst), sorted."""
        order = {a: k for k, a in enumerate(self.alphabet)}
        return sorted(((s, a, t) for (s, a), t in self._trans.items()),
                      key=lambda e: (e[0], order[e[1]], e[2]))

    def corrupted(self, flip) -> "SemanticsAutomaton":
        """Copy whose acceptance is toggled on the given state ids (mutation testing)."""
        flip = set(flip)
        other = copy.copy(self)
        other._ids, other._states, other._trans = dict(self._ids), list(self._states), dict(self._trans)
        other._accepting = [acc != (k in flip) for k, acc in enumerate(self._accepting)]
        other._machine = _Flipped(self._machine, {self._states[k] for k in flip})
        return other


class _Flipped:
    def __init__(self, machine, raw_states):
        self.machine, self.raw = machine, raw_states
        self.init = machine.init

    def step(self, s, letter):
        return self.machine.step(s, letter)

    def acc(self, s):
        return self.machine.acc(s) != (s in self.raw)


def build_automaton(tree, system, cap: int = DEFAULT_CAP) -> SemanticsAutomaton:
    states = getattr(system, "states", None) or system.positions
    return SemanticsAutomaton(tree, states, system.valuation, cap)


def accepts(d: SemanticsAutomaton, word) -> bool:
    return d.accepts(word)


def bounded_equiv(d: SemanticsAutomaton, tree, system, k: int) -> bool:
    """accepts(w) == pm_check(w) for every valid path w with at most k states."""
    if k < 1:
        raise ValueError("k must be positive")
    states = getattr(system, "states", None) or system.positions

    def walk(path, sid):
        if d.is_accepting(sid) != pm_check(system, tree, path):
            return False
        if len(path) >= k:
            return True
        return all(walk(path + (q,), d.step(sid, q)) for q in system.successors(path[-1]))

    return all(walk((s,), d.step(d.initial, s)) for s in states)
