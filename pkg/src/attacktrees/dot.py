"""Graphviz DOT export for arenas, transition systems, s-trees and automata."""
from __future__ import annotations

from .model import GameArena, TransitionSystem
from .strees import STree


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _label(name, props, order) -> str:
    shown = ", ".join(p for p in order if p in props)
    return _q(f"{name}\n{{{shown}}}")


def export_dot(obj, name: str = "G") -> str:
    if isinstance(obj, GameArena):
        return _arena_dot(obj, name)
    if isinstance(obj, TransitionSystem):
        return _ts_dot(obj, name)
    if isinstance(obj, STree):
        return _stree_dot(obj, name)
    from .automaton import SemanticsAutomaton
    if isinstance(obj, SemanticsAutomaton):
        return _automaton_dot(obj, name)
    raise TypeError(f"cannot export {type(obj).__name__}")


def _arena_dot(a: GameArena, name: str) -> str:
    lines = [f"digraph {_q(name)} {{"]
    for p in a.positions:
        lines.append(f"  {_q(p)} [label={_label(p, a.valuation[p], a.props)}];")
    for p in a.positions:
        for q in a.successors(p):
            acts = [f"{x}/{y}" for x in a.actions1 for y in a.actions2 if a.delta[(p, x, y)] == q]
            lines.append(f"  {_q(p)} -> {_q(q)} [label={_q(' '.join(acts))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _ts_dot(ts: TransitionSystem, name: str) -> str:
    lines = [f"digraph {_q(name)} {{"]
    for s in ts.states:
        lines.append(f"  {_q(s)} [label={_label(s, ts.valuation[s], ts.props)}];")
    for s in ts.states:
        for t in ts.successors(s):
            lines.append(f"  {_q(s)} -> {_q(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _stree_dot(s: STree, name: str) -> str:
    lines = [f"digraph {_q(name)} {{"]
    ids = {}
    for h, _ in s.nodes():
        ids[h] = f"n{len(ids)}"
        lines.append(f"  {ids[h]} [label={_q(h[-1])}];")
    for h, node in s.nodes():
        for c in node.children:
            lines.append(f"  {ids[h]} -> {ids[h + (c.label,)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _automaton_dot(d, name: str) -> str:
    lines = [f"digraph {_q(name)} {{", "  init [shape=point];"]
    n = d.num_states
    for k in range(n):
        shape = "doublecircle" if d.is_accepting(k) else "circle"
        lines.append(f"  q{k} [shape={shape}];")
    lines.append(f"  init -> q{d.initial};")
    for s, a, t in d.transitions():
        lines.append(f"  q{s} -> q{t} [label={_q(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
