"""The nine acceptance criteria, each timed against its stated limit.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary). Run standalone with `python tests/test_acceptance.py`.
"""
import io
import itertools
import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from attacktrees import (  # noqa: E402
    OR_,
    AND_,
    SAND_,
    GameArena,
    QBFInstance,
    aqbf_to_sm,
    bounded_equiv,
    build_automaton,
    cli,
    fixtures,
    leaf,
    parse_arena,
    parse_stree,
    parse_tree,
    pm_check,
    pm_oracle,
    pne,
    qbf_eval,
    qbf_to_sne,
    sat_to_pne,
    sm_explicit,
    sm_memoryless,
    sne_alg1,
    sne_attractor,
)
from attacktrees.paths import all_paths  # noqa: E402
from attacktrees.random_instances import random_arena, random_cnf, random_path, random_tree, sne_corpus  # noqa: E402
from attacktrees.reductions import EXISTS, FORALL, brute_sat, brute_valid, example_qbf  # noqa: E402

import conftest  # noqa: E402


@contextmanager
def criterion(n: int, title: str, limit: float):
    t0 = time.perf_counter()
    note = {"detail": ""}
    try:
        yield note
    except BaseException as e:
        line = f"FAIL criterion {n}: {title} ({type(e).__name__}: {e})"
        conftest.ACCEPTANCE[n] = line
        print(line)
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < limit
    detail = f"; {note['detail']}" if note["detail"] else ""
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} [{elapsed:.2f}s < {limit:g}s{detail}]"
    conftest.ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def _thief():
    return parse_arena(fixtures.text("thief.arena"))


def _tree(name, arena):
    return parse_tree(fixtures.text(name), arena.props)


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return cli.run(list(argv), out, err), out.getvalue()


def test_criterion_1_door1_path():
    with criterion(1, "check-path accepts 'om d1d2' for leaf (D1 and not W)", 1.0):
        code, out = _cli("check-path", "--arena", "thief.arena", "--tree", "door1.tree",
                         "--path", "om d1d2", "--oracle")
        assert code == 0 and out.splitlines()[0] == "YES"


def test_criterion_2_non_compositionality():
    with criterion(2, "SAND door1 NO, SAND door2 NO, OR YES with witness root om, depth <= 3", 1.0) as note:
        a = _thief()
        for name in ("sand_door1.tree", "sand_door2.tree"):
            t = _tree(name, a)
            assert not sne_attractor(a, t).verdict
            assert not sne_alg1(a, t).verdict
        t = _tree("or_doors.tree", a)
        res = sne_attractor(a, t)
        assert res.verdict and sne_alg1(a, t).verdict
        w = res.witness
        assert w.root == "om"
        assert w.depth <= 3
        assert w.depth <= len(a.positions) * t.leaf_count == 36
        assert sm_explicit(a, t, w).verdict
        code, out = _cli("sne", "--arena", "thief.arena", "--tree", "or_doors.tree", "--method", "both")
        assert code == 0 and out.splitlines()[0] == "YES"
        note["detail"] = f"witness depth {w.depth}"


def test_criterion_3_qbf_fixture():
    with criterion(3, "example QBF reduces to SNE YES under both engines, arena valuations match", 5.0):
        q = example_qbf()
        arena, t = qbf_to_sne(q)
        assert len(arena.positions) == 7
        v = arena.valuation
        assert v["v2"] == {"p2"} and v["nv2"] == {"p3"}
        assert v["v3"] == {"p2", "p3"} and v["nv3"] == set()
        assert v["v1"] == {"p1"} and v["Start"] == {"start"}
        assert t == SAND_("start", AND_("p1", "p2", "p3"))
        assert qbf_eval(q)
        assert sne_attractor(arena, t).verdict
        assert sne_alg1(arena, t).verdict
        assert sne_alg1(arena, t, memo=False).verdict


def _sweep_system():
    pos = ["x", "y", "z"]
    succ = {"x": ["x", "y"], "y": ["z", "x"], "z": ["z", "y"]}
    delta = {(p, a, "u"): succ[p][k] for p in pos for k, a in enumerate(("a0", "a1"))}
    return GameArena(pos, ["a0", "a1"], ["u"], delta,
                     {"x": {"P"}, "y": {"Q"}, "z": {"P", "R"}}, ("P", "Q", "R"))


def _sweep_trees():
    leaves = [leaf("P"), leaf("Q"), leaf("R"), parse_tree("(not P)")]
    level = list(leaves)
    for _ in range(2):
        nxt = list(leaves)
        for op in (OR_, AND_, SAND_):
            for k in (1, 2):
                for kids in itertools.product(level, repeat=k):
                    t = op(*kids)
                    if t.leaf_count <= 2:
                        nxt.append(t)
        level = list(dict.fromkeys(nxt))
    return level


def test_criterion_4_pm_oracle_equivalence():
    with criterion(4, "pm_check = pm_oracle on >= 1000 random instances plus a 3-position sweep", 60.0) as note:
        rng = random.Random(2024)
        n_random = 0
        for _ in range(1500):
            arena = random_arena(rng, max_positions=5, max_actions=2)
            t = random_tree(rng, arena.props, max_leaves=4, max_depth=3, max_nodes=7)
            assert t.size <= 7 and t.height <= 3
            path = random_path(rng, arena, 7)
            assert pm_check(arena, t, path) == pm_oracle(arena, t, path), (t, path)
            n_random += 1
        a = _sweep_system()
        n_sweep = 0
        paths = all_paths(a, 5)
        for t in _sweep_trees():
            for path in paths:
                assert pm_check(a, t, path) == pm_oracle(a, t, path), (t, path)
                n_sweep += 1
        note["detail"] = f"{n_random} random, {n_sweep} sweep cases, 100% agreement"


FIXTURE_PAIRS = (
    ("thief.arena", ("door1.tree", "door2.tree", "sand_door1.tree", "sand_door2.tree",
                     "or_doors.tree", "entry_attack.tree")),
    ("toy.arena", ("leaf_p.tree", "sand_qp.tree", "and_pq.tree")),
)


def test_criterion_5_automaton_contract():
    with criterion(5, "bounded_equiv (paths <= 6) on every fixture arena/tree pair", 120.0) as note:
        count = 0
        for arena_name, trees in FIXTURE_PAIRS:
            a = parse_arena(fixtures.text(arena_name))
            for name in trees:
                t = _tree(name, a)
                assert bounded_equiv(build_automaton(t, a), t, a, 6), (arena_name, name)
                count += 1
        note["detail"] = f"{count} pairs"


def test_criterion_6_engine_agreement():
    with criterion(6, "sne_attractor = sne_alg1 on 300 random small instances", 600.0) as note:
        n = yes = 0
        for arena, t in sne_corpus(seed=0, count=300):
            assert len(arena.positions) <= 4 and t.leaf_count <= 2
            assert len(arena.actions1) <= 2 and len(arena.actions2) <= 2
            v = sne_attractor(arena, t).verdict
            assert v == sne_alg1(arena, t, memo=False).verdict
            assert v == sne_alg1(arena, t).verdict
            n += 1
            yes += v
        note["detail"] = f"{n} instances, {yes} YES"


def _clause_pool(n):
    lits = list(range(1, n + 1)) + [-v for v in range(1, n + 1)]
    return [c for k in range(1, n + 1) for c in itertools.combinations(lits, k)
            if not any(-x in c for x in c)]


def _cnf_grid():
    for n in (1, 2, 3):
        pool = _clause_pool(n)
        for k in (1, 2, 3):
            for cs in itertools.combinations(pool, k):
                yield n, cs


def _qbf_ok(q):
    return sne_attractor(*qbf_to_sne(q)).verdict == qbf_eval(q)


def _sat_ok(clauses, n):
    return pne(*sat_to_pne(clauses, n)).verdict == brute_sat(clauses, n)


def _aqbf_ok(clauses, n):
    arena, t, strat, start = aqbf_to_sm(clauses, n)
    return sm_memoryless(arena, t, strat, start).verdict == brute_valid(clauses, n)


def test_criterion_7_reduction_oracles():
    with criterion(7, "reductions agree with brute-force oracles (grid + 200 random each)", 300.0) as note:
        counts = {"qbf": 0, "sat": 0, "aqbf": 0}
        for n, cs in _cnf_grid():
            assert _sat_ok(cs, n), cs
            assert _aqbf_ok(cs, n), cs
            for quants in itertools.product((EXISTS, FORALL), repeat=n):
                assert _qbf_ok(QBFInstance(tuple(zip(quants, range(1, n + 1))), cs)), (quants, cs)
                counts["qbf"] += 1
            counts["sat"] += 1
            counts["aqbf"] += 1
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 3)
            cs = random_cnf(rng, n)
            q = QBFInstance(tuple((rng.choice((EXISTS, FORALL)), v) for v in range(1, n + 1)), cs)
            assert _qbf_ok(q) and _sat_ok(cs, n) and _aqbf_ok(cs, n), (q, cs)
            for k in counts:
                counts[k] += 1
        note["detail"] = ", ".join(f"{k} {v}" for k, v in counts.items())


def test_criterion_8_property_suites():
    import test_paths
    import test_solvers
    import test_strees

    suites = [
        test_paths.test_merge_associative,
        test_paths.test_binary_merge_matches_definition,
        test_paths.test_prepend_closure,
        test_paths.test_or_is_union,
        test_paths.test_sand_and_bounded_equations,
        test_solvers.test_witness_round_trip,
        test_strees.test_prefix_transitive,
        test_strees.test_local_iff_global_well_formed,
    ]
    with criterion(8, "property suites (merge, prepend closure, OR union, witness round trip, "
                      "prefix transitivity, local/global well-formedness)", 600.0) as note:
        for fn in suites:
            fn()
        note["detail"] = f"{len(suites)} suites green"


def test_criterion_9_depth_bound_probe():
    with criterion(9, "sne_alg1 with bound |Pos| x n never truncates a YES instance of the corpus", 600.0) as note:
        yes = truncated = deepest = 0
        for arena, t in sne_corpus(seed=0, count=300):
            res = sne_attractor(arena, t)
            if not res.verdict:
                continue
            yes += 1
            deepest = max(deepest, res.witness.depth)
            bound = len(arena.positions) * t.leaf_count
            if not sne_alg1(arena, t, bound=bound, memo=False).verdict:
                truncated += 1
        note["detail"] = f"{yes} YES instances, {truncated} truncated, deepest attractor witness {deepest}"
        assert truncated == 0


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
