"""Instance generators from QBF / SAT / universal QBF, plus brute-force logical oracles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import AND_, SAND_, GameArena, MemorylessStrategy, ModelError, ParseError, arena_to_ts

EXISTS, FORALL = "e", "a"
START = "Start"
START_PROP = "start"


@dataclass(frozen=True)
class QBFInstance:
    prefix: tuple   # ((EXISTS|FORALL, var), ...) in quantification order; vars are positive ints
    clauses: tuple  # tuple of tuples of nonzero ints, DIMACS-style literals

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((q, int(v)) for q, v in self.prefix))
        object.__setattr__(self, "clauses", tuple(tuple(int(x) for x in c) for c in self.clauses))
        vs = [v for _, v in self.prefix]
        if len(set(vs)) != len(vs):
            raise ModelError("variable quantified twice")
        if any(q not in (EXISTS, FORALL) for q, _ in self.prefix):
            raise ModelError("quantifiers are 'e' or 'a'")
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) not in vs:
                    raise ModelError(f"literal {lit} is not over a quantified variable")

    @property
    def variables(self) -> tuple:
        return tuple(v for _, v in self.prefix)


def prop_name(j: int) -> str:
    return f"p{j}"


def pos_name(var: int, value: bool) -> str:
    return f"v{var}" if value else f"nv{var}"


def qbf_to_sne(q: QBFInstance):
    """Arena and attack tree whose SNE answer is the truth value of q.

    Positions: Start, then v_i / nv_i for each variable in prefix order.
    A position is owned by the quantifier of the next variable; at an
    existential position only the attacker's action matters, at a universal
    one only the defender's. Action True leads to v_i, False to nv_i. The
    last pair of positions loops on itself.
    """
    if not q.prefix or not q.clauses:
        raise ModelError("empty prefix or matrix")
    acts = ("True", "False")
    props = (START_PROP,) + tuple(prop_name(j) for j in range(1, len(q.clauses) + 1))
    order = q.variables
    positions = [START]
    for v in order:
        positions += [pos_name(v, True), pos_name(v, False)]

    delta = {}
    for k, (quant, v) in enumerate(q.prefix):
        sources = [START] if k == 0 else [pos_name(order[k - 1], True), pos_name(order[k - 1], False)]
        for src in sources:
            for a1 in acts:
                for a2 in acts:
                    chosen = a1 if quant == EXISTS else a2
                    delta[(src, a1, a2)] = pos_name(v, chosen == "True")
    for src in (pos_name(order[-1], True), pos_name(order[-1], False)):
        for a1 in acts:
            for a2 in acts:
                delta[(src, a1, a2)] = src

    valuation = {START: {START_PROP}}
    for v in order:
        valuation[pos_name(v, True)] = {prop_name(j) for j, c in enumerate(q.clauses, 1) if v in c}
        valuation[pos_name(v, False)] = {prop_name(j) for j, c in enumerate(q.clauses, 1) if -v in c}
    arena = GameArena(positions, acts, acts, delta, valuation, props)
    tree = SAND_(START_PROP, AND_(*[prop_name(j) for j in range(1, len(q.clauses) + 1)]))
    return arena, tree


def _cnf_vars(clauses, n):
    used = {abs(x) for c in clauses for x in c}
    if n is None:
        n = max(used, default=0)
    if any(v > n for v in used):
        raise ModelError("clause mentions a variable beyond n")
    return n


def sat_to_pne(clauses, n: int | None = None):
    """Transition system and tree whose PNE answer is satisfiability of the CNF."""
    n = _cnf_vars(clauses, n)
    arena, tree = qbf_to_sne(QBFInstance(tuple((EXISTS, v) for v in range(1, n + 1)), clauses))
    return arena_to_ts(arena), tree


def aqbf_to_sm(clauses, n: int | None = None):
    """Arena, tree, attacker strategy and start for which SM holds iff the CNF is valid."""
    n = _cnf_vars(clauses, n)
    arena, tree = qbf_to_sne(QBFInstance(tuple((FORALL, v) for v in range(1, n + 1)), clauses))
    strat = MemorylessStrategy({p: arena.actions1[0] for p in arena.positions})
    return arena, tree, strat, START


# ---------------------------------------------------------------------------
# oracles

def eval_cnf(clauses, assignment: dict) -> bool:
    return all(any(assignment[abs(x)] == (x > 0) for x in c) for c in clauses)


def qbf_eval(q: QBFInstance, max_vars: int = 20) -> bool:
    if len(q.prefix) > max_vars:
        raise ModelError(f"QBF oracle limited to {max_vars} variables")
    assignment: dict = {}

    def go(k):
        if k == len(q.prefix):
            return eval_cnf(q.clauses, assignment)
        quant, v = q.prefix[k]
        results = []
        for b in (True, False):
            assignment[v] = b
            results.append(go(k + 1))
            if quant == EXISTS and results[-1]:
                break
            if quant == FORALL and not results[-1]:
                break
        del assignment[v]
        return any(results) if quant == EXISTS else all(results)

    return go(0)


def brute_sat(clauses, n: int) -> bool:
    return any(eval_cnf(clauses, dict(zip(range(1, n + 1), bits)))
               for bits in itertools.product((False, True), repeat=n))


def brute_valid(clauses, n: int) -> bool:
    return all(eval_cnf(clauses, dict(zip(range(1, n + 1), bits)))
               for bits in itertools.product((False, True), repeat=n))


# ---------------------------------------------------------------------------
# DIMACS-like text

def parse_qdimacs(text: str) -> QBFInstance:
    """`c` comments, optional `p cnf n m`, quantifier lines `e 1 2 0` / `a 3 0`, clause lines."""
    prefix, clauses = [], []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ParseError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
                declared = int(parts[2])
            elif parts[0] in (EXISTS, FORALL):
                vs = [int(x) for x in parts[1:]]
                if vs and vs[-1] == 0:
                    vs = vs[:-1]
                if not vs or any(v <= 0 for v in vs):
                    raise ParseError(f"line {lineno}: bad quantifier line")
                prefix.extend((parts[0], v) for v in vs)
            else:
                lits = [int(x) for x in parts]
                if lits[-1] != 0 or 0 in lits[:-1]:
                    raise ParseError(f"line {lineno}: clause must end with a single 0")
                clauses.append(tuple(lits[:-1]))
        except ValueError as e:
            raise ParseError(f"line {lineno}: {e}") from e
    quantified = {v for _, v in prefix}
    used = {abs(x) for c in clauses for x in c}
    n = max(used | quantified | {declared or 0})
    # free variables are existential, quantified outermost
    free = [(EXISTS, v) for v in range(1, n + 1) if v not in quantified and v in used]
    try:
        return QBFInstance(tuple(free + prefix), tuple(clauses))
    except ModelError as e:
        raise ParseError(str(e)) from e


def print_qdimacs(q: QBFInstance) -> str:
    n = max(q.variables, default=0)
    lines = [f"p cnf {n} {len(q.clauses)}"]
    for quant, v in q.prefix:
        lines.append(f"{quant} {v} 0")
    for c in q.clauses:
        lines.append(" ".join(map(str, c)) + " 0")
    return "\n".join(lines) + "\n"


def example_qbf() -> QBFInstance:
    """exists x1 forall x2 exists x3 . x1 & (x2 | x3) & (~x2 | x3)"""
    return QBFInstance(((EXISTS, 1), (FORALL, 2), (EXISTS, 3)), ((1,), (2, 3), (-2, 3)))

