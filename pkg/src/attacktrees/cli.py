"""Command-line front end.

The first output line of a decision subcommand is exactly YES or NO.
Exit codes: 0 = YES, 1 = NO, 2 = usage or parse error, 3 = resource cap
exceeded or internal disagreement between engines.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import fixtures
from .automaton import build_automaton
from .dot import export_dot
from .model import AutomatonCapExceeded, ModelError, arena_to_ts
from .paths import pm_check, pm_oracle
from .reductions import (
    EXISTS,
    QBFInstance,
    aqbf_to_sm,
    brute_sat,
    brute_valid,
    parse_qdimacs,
    qbf_eval,
    qbf_to_sne,
)
from .solvers import pne, pne_dfs, sm_explicit, sm_memoryless, sne_alg1, sne_attractor
from .syntax import (
    check_tree_props,
    parse_arena,
    parse_path,
    parse_strategy,
    parse_stree,
    parse_tree,
    print_arena,
    print_path,
    print_stree,
    print_strategy,
    print_tree,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class Disagreement(RuntimeError):
    pass


def _read(name: str) -> str:
    """Read a file; fall back to a bundled fixture of the same name."""
    p = Path(name)
    if p.is_file():
        return p.read_text()
    try:
        return fixtures.text(p.name)
    except FileNotFoundError:
        raise ModelError(f"no such file: {name}") from None


def _arena(args):
    return parse_arena(_read(args.arena))


def _tree(args, arena):
    t = parse_tree(_read(args.tree))
    check_tree_props(t, arena.props)
    return t


def _verdict(out, ok: bool) -> int:
    out.append("YES" if ok else "NO")
    return EXIT_YES if ok else EXIT_NO


def cmd_check_path(args, out):
    arena = _arena(args)
    t = _tree(args, arena)
    path = parse_path(args.path)
    ok = pm_check(arena, t, path)
    if args.oracle and pm_oracle(arena, t, path) != ok:
        raise Disagreement("segment-table checker and recursive oracle disagree")
    code = _verdict(out, ok)
    out.append(f"path: {print_path(path)}")
    if args.oracle:
        out.append("oracle: agrees")
    return code


def cmd_pne(args, out):
    arena = _arena(args)
    t = _tree(args, arena)
    ts = arena_to_ts(arena)
    res = pne(ts, t, args.start) if args.method == "dfa" else pne_dfs(ts, t, args.start)
    code = _verdict(out, res.verdict)
    if res.verdict:
        out.append(f"witness: {print_path(res.witness)}")
    out.append(f"method: {args.method}")
    return code


def cmd_sne(args, out):
    arena = _arena(args)
    t = _tree(args, arena)
    verdicts = {}
    witness = None
    if args.method in ("attractor", "both"):
        res = sne_attractor(arena, t, args.start)
        verdicts["attractor"] = res.verdict
        witness = res.witness
    if args.method in ("alg1", "both"):
        verdicts["alg1"] = sne_alg1(arena, t, start=args.start).verdict
    if len(set(verdicts.values())) > 1:
        raise Disagreement(f"engines disagree: {verdicts}")
    ok = next(iter(verdicts.values()))
    code = _verdict(out, ok)
    for name, v in verdicts.items():
        out.append(f"{name}: {'YES' if v else 'NO'}")
    if witness is not None:
        out.append(f"witness: {print_stree(witness)}")
        if args.emit_witness:
            Path(args.emit_witness).write_text(print_stree(witness) + "\n")
    return code


def cmd_sm(args, out):
    arena = _arena(args)
    t = _tree(args, arena)
    if args.stree:
        s = parse_stree(_read(args.stree))
        res = sm_explicit(arena, t, s)
        code = _verdict(out, res.verdict)
        out.append(f"s-tree: {print_stree(s)}")
        return code
    if not args.strategy or not args.start:
        raise ModelError("sm needs --stree FILE, or --strategy FILE with --from POS")
    strat = parse_strategy(_read(args.strategy), arena)
    res = sm_memoryless(arena, t, strat, args.start)
    code = _verdict(out, res.verdict)
    if res.verdict:
        out.append(f"witness: {print_stree(res.witness)}")
    else:
        out.append("avoiding play: " + print_path(res.stats["lasso"]) + " ...")
    return code


def cmd_reduce(args, out):
    q = parse_qdimacs(_read(args.input))
    if args.kind == "qbf":
        arena, t = qbf_to_sne(q)
        strat = None
        expected = qbf_eval(q)
    elif args.kind == "sat":
        # sat_to_pne merges this arena; keep the arena so it can be written out
        arena, t = qbf_to_sne(_all(q, EXISTS))
        strat = None
        expected = brute_sat(q.clauses, max(q.variables))
    else:
        arena, t, strat, _ = aqbf_to_sm(q.clauses)
        expected = brute_valid(q.clauses, max(q.variables))
    if args.out_arena:
        Path(args.out_arena).write_text(print_arena(arena))
    if args.out_tree:
        Path(args.out_tree).write_text(print_tree(t) + "\n")
    if args.out_strategy and strat is not None:
        Path(args.out_strategy).write_text(print_strategy(strat, arena))
    out.append(f"positions: {len(arena.positions)}")
    out.append(f"tree: {print_tree(t)}")
    out.append(f"oracle: {'true' if expected else 'false'}")
    if not (args.out_arena or args.out_tree):
        out.append("")
        out.append(print_arena(arena).rstrip("\n"))
    return 0


def _all(q, quant):
    return QBFInstance(tuple((quant, v) for v in q.variables), q.clauses)


def cmd_dot(args, out):
    if args.stree:
        out.append(export_dot(parse_stree(_read(args.stree)), "stree").rstrip("\n"))
        return 0
    if not args.arena:
        raise ModelError("dot needs --arena or --stree")
    arena = _arena(args)
    if args.tree:
        d = build_automaton(_tree(args, arena), arena)
        d.explore()
        out.append(export_dot(d, "automaton").rstrip("\n"))
    elif args.merged:
        out.append(export_dot(arena_to_ts(arena), "ts").rstrip("\n"))
    else:
        out.append(export_dot(arena, "arena").rstrip("\n"))
    return 0


def cmd_selftest(args, out):
    from .random_instances import random_arena, random_path, random_tree

    rng = random.Random(args.seed)
    bad = []
    for k in range(args.count):
        arena = random_arena(rng, max_positions=4, max_actions=2)
        t = random_tree(rng, arena.props, max_leaves=2, max_depth=2)
        p = random_path(rng, arena, 6)
        if pm_check(arena, t, p) != pm_oracle(arena, t, p):
            bad.append(f"pm #{k}: {print_tree(t)} on {print_path(p)}")
        a, b = sne_attractor(arena, t).verdict, sne_alg1(arena, t).verdict
        if a != b:
            bad.append(f"sne #{k}: attractor={a} alg1={b} tree {print_tree(t)}")
    code = _verdict(out, not bad)
    out.append(f"instances: {args.count} seed: {args.seed}")
    out.extend(bad)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="attacktrees", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_model(p, tree=True):
        p.add_argument("--arena", required=True, help="arena file (or bundled fixture name)")
        if tree:
            p.add_argument("--tree", required=True, help="attack tree file (or bundled fixture name)")

    p = sub.add_parser("check-path", help="path membership (PM)")
    with_model(p)
    p.add_argument("--path", required=True, help='whitespace-separated positions, e.g. "om d1d2"')
    p.add_argument("--oracle", action="store_true", help="cross-check against the recursive oracle")
    p.set_defaults(func=cmd_check_path)

    p = sub.add_parser("pne", help="path non-emptiness")
    with_model(p)
    p.add_argument("--from", dest="start")
    p.add_argument("--method", choices=("dfa", "dfs"), default="dfa")
    p.set_defaults(func=cmd_pne)

    p = sub.add_parser("sne", help="strategy non-emptiness")
    with_model(p)
    p.add_argument("--from", dest="start")
    p.add_argument("--method", choices=("attractor", "alg1", "both"), default="attractor")
    p.add_argument("--emit-witness", metavar="FILE")
    p.set_defaults(func=cmd_sne)

    p = sub.add_parser("sm", help="strategy membership")
    with_model(p)
    p.add_argument("--stree", metavar="FILE")
    p.add_argument("--strategy", metavar="FILE")
    p.add_argument("--from", dest="start")
    p.set_defaults(func=cmd_sm)

    p = sub.add_parser("reduce", help="build an arena/tree instance from a (Q)DIMACS file")
    p.add_argument("kind", choices=("qbf", "sat", "aqbf"))
    p.add_argument("input")
    p.add_argument("--out-arena")
    p.add_argument("--out-tree")
    p.add_argument("--out-strategy")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("dot", help="graphviz export")
    p.add_argument("--arena")
    p.add_argument("--stree")
    p.add_argument("--tree", help="with --arena: dump the semantics automaton instead")
    p.add_argument("--merged", action="store_true", help="with --arena: dump the merged transition system")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("selftest", help="randomised cross-checks of the engines")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_selftest)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0
    out: list[str] = []
    try:
        code = args.func(args, out)
    except AutomatonCapExceeded as e:
        print(f"error: {e}", file=stderr)
        return EXIT_CAP
    except Disagreement as e:
        print(f"error: {e}", file=stderr)
        return EXIT_CAP
    except (ModelError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    for line in out:
        print(line, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
