"""Text formats: arenas, attack trees, paths, s-trees, memoryless strategies.

Tree operators are uppercase (OR, AND, SAND); formula connectives are
lowercase (and, or, not, true, false).
"""
from __future__ import annotations

import re

from .model import (
    OPERATORS,
    Atom,
    Conj,
    Const,
    Disj,
    GameArena,
    Leaf,
    MemorylessStrategy,
    Node,
    Not,
    ParseError,
    ModelError,
    tree_atoms,
)

RESERVED = {"and", "or", "not", "true", "false", *OPERATORS, "*", "->", ":"}
_IDENT = re.compile(r"^[A-Za-z0-9_.'\[\]-]+$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _check_ident(name: str, what: str, lineno: int) -> str:
    if name in RESERVED or not _IDENT.match(name):
        raise ParseError(f"line {lineno}: bad {what} name {name!r}")
    return name


# ---------------------------------------------------------------------------
# arenas

def parse_arena(text: str) -> GameArena:
    headers: dict[str, list[str]] = {}
    labels: dict[str, set] = {}
    rows: dict[tuple, tuple] = {}  # (pos, a1|*, a2|*) -> (target, lineno)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head.endswith(":") and head[:-1] in ("props", "actions1", "actions2", "positions"):
            key = head[:-1]
            if key in headers:
                raise ParseError(f"line {lineno}: repeated header {key}")
            headers[key] = [_check_ident(x, key, lineno) for x in rest.split()]
        elif head == "label":
            pos, colon, props = rest.partition(":")
            pos = pos.strip()
            if not colon or not pos or len(pos.split()) != 1:
                raise ParseError(f"line {lineno}: expected 'label <pos> : <prop>*'")
            labels.setdefault(pos, set()).update(props.split())
        elif head == "delta":
            parts = rest.split()
            if len(parts) != 5 or parts[3] != "->":
                raise ParseError(f"line {lineno}: expected 'delta <pos> <act1|*> <act2|*> -> <pos>'")
            key = tuple(parts[:3])
            if key in rows:
                raise ParseError(f"line {lineno}: duplicate transition row {' '.join(key)}"
                                 f" (first at line {rows[key][1]})")
            rows[key] = (parts[4], lineno)
        else:
            raise ParseError(f"line {lineno}: unrecognised line {raw.strip()!r}")

    for key in ("actions1", "actions2", "positions"):
        if key not in headers:
            raise ParseError(f"missing '{key}:' header")
        if not headers[key]:
            raise ParseError(f"empty {key} set")
    positions = headers["positions"]
    acts1, acts2 = headers["actions1"], headers["actions2"]
    props = headers.get("props", [])
    pos_set, a1_set, a2_set, prop_set = set(positions), set(acts1), set(acts2), set(props)

    for pos, ps in labels.items():
        if pos not in pos_set:
            raise ParseError(f"label for unknown position {pos!r}")
        unknown = ps - prop_set
        if unknown:
            raise ParseError(f"unknown proposition(s) {sorted(unknown)} in label of {pos}")

    for (p, a1, a2), (q, lineno) in rows.items():
        if p not in pos_set:
            raise ParseError(f"line {lineno}: unknown position {p!r}")
        if q not in pos_set:
            raise ParseError(f"line {lineno}: unknown position {q!r}")
        if a1 != "*" and a1 not in a1_set:
            raise ParseError(f"line {lineno}: unknown attacker action {a1!r}")
        if a2 != "*" and a2 not in a2_set:
            raise ParseError(f"line {lineno}: unknown defender action {a2!r}")

    delta = {}
    for p in positions:
        for a1 in acts1:
            for a2 in acts2:
                cands = [(a1, a2), (a1, "*"), ("*", a2), ("*", "*")]
                best = None
                for pat in cands:
                    hit = rows.get((p, *pat))
                    if hit is None:
                        continue
                    spec = (pat[0] != "*") + (pat[1] != "*")
                    if best is None or spec > best[0]:
                        best = (spec, hit)
                    elif spec == best[0] and hit[0] != best[1][0]:
                        raise ParseError(
                            f"ambiguous transition at ({p}, {a1}, {a2}): lines {best[1][1]} and {hit[1]}")
                if best is None:
                    raise ParseError(f"delta not total at ({p}, {a1}, {a2})")
                delta[(p, a1, a2)] = best[1][0]

    try:
        return GameArena(positions, acts1, acts2, delta, labels, props)
    except ModelError as e:
        raise ParseError(str(e)) from e


def print_arena(a: GameArena) -> str:
    lines = [
        "props: " + " ".join(a.props),
        "actions1: " + " ".join(a.actions1),
        "actions2: " + " ".join(a.actions2),
        "positions: " + " ".join(a.positions),
    ]
    for p in a.positions:
        lines.append(f"label {p} : " + " ".join(x for x in a.props if x in a.valuation[p]))
    for p in a.positions:
        targets = {a.delta[(p, x, y)] for x in a.actions1 for y in a.actions2}
        if len(targets) == 1:
            lines.append(f"delta {p} * * -> {targets.pop()}")
            continue
        for x in a.actions1:
            row = [a.delta[(p, x, y)] for y in a.actions2]
            if len(set(row)) == 1:
                lines.append(f"delta {p} {x} * -> {row[0]}")
            else:
                lines.extend(f"delta {p} {x} {y} -> {q}" for y, q in zip(a.actions2, row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# s-expressions

_TOKEN = re.compile(r"\s*(?:(;[^\n]*|#[^\n]*)|(\()|(\))|([^\s()]+))")


def tokenize(text: str) -> list[str]:
    out, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            if text[i:].strip() == "":
                break
            raise ParseError(f"unexpected character at offset {i}")
        i = m.end()
        if m.group(1):
            continue
        tok = m.group(2) or m.group(3) or m.group(4)
        if tok:
            out.append(tok)
    return out


def read_sexpr(text: str):
    """Parse exactly one s-expression into nested lists of strings."""
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty input")
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of input")
        tok = toks[pos]
        pos += 1
        if tok == ")":
            raise ParseError("unexpected ')'")
        if tok != "(":
            return tok
        items = []
        while True:
            if pos >= len(toks):
                raise ParseError("unbalanced '('")
            if toks[pos] == ")":
                pos += 1
                return items
            items.append(read())

    expr = read()
    if pos != len(toks):
        raise ParseError(f"trailing input after expression: {' '.join(toks[pos:])}")
    return expr


# ---------------------------------------------------------------------------
# formulas and attack trees

_CONNECTIVES = {"and", "or", "not"}


def _formula(expr, props):
    if isinstance(expr, str):
        if expr == "true":
            return Const(True)
        if expr == "false":
            return Const(False)
        if expr in RESERVED:
            raise ParseError(f"misplaced keyword {expr!r}")
        if props is not None and expr not in props:
            raise ParseError(f"unknown atom {expr!r}")
        return Atom(expr)
    if not expr or not isinstance(expr[0], str) or expr[0] not in _CONNECTIVES:
        raise ParseError(f"malformed formula {expr!r}")
    head, args = expr[0], expr[1:]
    if not args:
        raise ParseError(f"'{head}' needs at least one operand")
    if head == "not":
        if len(args) != 1:
            raise ParseError("'not' takes exactly one operand")
        return Not(_formula(args[0], props))
    subs = tuple(_formula(a, props) for a in args)
    return Conj(subs) if head == "and" else Disj(subs)


def _tree(expr, props):
    if isinstance(expr, list) and expr and expr[0] in OPERATORS:
        if len(expr) == 1:
            raise ParseError(f"{expr[0]} needs at least one child")
        return Node(expr[0], tuple(_tree(c, props) for c in expr[1:]))
    if isinstance(expr, list) and not expr:
        raise ParseError("empty list")
    return Leaf(_formula(expr, props))


def parse_formula(text: str, props=None):
    return _formula(read_sexpr(text), None if props is None else set(props))


def parse_tree(text: str, props=None):
    """Parse an attack tree; atoms are checked against `props` when given."""
    return _tree(read_sexpr(text), None if props is None else set(props))


def print_formula(f) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return f"(not {print_formula(f.arg)})"
    head = "and" if isinstance(f, Conj) else "or"
    return f"({head} " + " ".join(print_formula(a) for a in f.args) + ")"


def print_tree(t) -> str:
    if isinstance(t, Leaf):
        return print_formula(t.formula)
    return f"({t.op} " + " ".join(print_tree(c) for c in t.children) + ")"


def check_tree_props(t, props) -> None:
    unknown = tree_atoms(t) - set(props)
    if unknown:
        raise ParseError(f"unknown atom(s) {sorted(unknown)}")


# ---------------------------------------------------------------------------
# paths, strategies

def parse_path(text: str) -> tuple:
    states = tuple(text.split())
    if not states:
        raise ParseError("empty path")
    return states


def print_path(path) -> str:
    return " ".join(path)


def parse_strategy(text: str, arena: GameArena | None = None) -> MemorylessStrategy:
    choice = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[1] != "->":
            raise ParseError(f"line {lineno}: expected '<pos> -> <act1>'")
        if parts[0] in choice:
            raise ParseError(f"line {lineno}: duplicate entry for {parts[0]}")
        choice[parts[0]] = parts[2]
    strat = MemorylessStrategy(choice)
    if arena is not None:
        try:
            strat.check(arena)
        except ModelError as e:
            raise ParseError(str(e)) from e
    return strat


def print_strategy(strat: MemorylessStrategy, arena: GameArena | None = None) -> str:
    order = arena.positions if arena is not None else list(strat.choice)
    return "".join(f"{p} -> {strat.choice[p]}\n" for p in order)


# s-trees live in strees.py but share the reader
def parse_stree(text: str):
    from .strees import STree

    def build(expr):
        if isinstance(expr, str):
            return STree(expr)
        if not expr or not isinstance(expr[0], str):
            raise ParseError(f"malformed s-tree node {expr!r}")
        return STree(expr[0], tuple(build(c) for c in expr[1:]))

    try:
        return build(read_sexpr(text))
    except ModelError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from e


def print_stree(s) -> str:
    if not s.children:
        return f"({s.label})"
    return f"({s.label} " + " ".join(print_stree(c) for c in s.children) + ")"

