import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attacktrees import (
    AND_,
    FALSE,
    OR_,
    SAND_,
    TRUE,
    GameArena,
    Leaf,
    ModelError,
    enum_members,
    leaf,
    merge_sets,
    parse_tree,
    pm_check,
    pm_oracle,
    sync_concat,
)
from attacktrees.paths import NEG_INF, all_paths, concat_sets, merge_pair, segment_table
from attacktrees.random_instances import random_arena, random_path, random_tree


def test_sync_concat():
    assert sync_concat(("a", "a"), ("a", "b")) == ("a", "a", "b")
    with pytest.raises(ModelError):
        sync_concat(("a", "b"), ("a", "b"))


def test_sync_concat_on_thief(thief):
    p1, p2 = ("om", "od1"), ("od1", "d2d1")
    assert thief.is_path(p1) and thief.is_path(p2)
    w = sync_concat(p1, p2)
    assert w == ("om", "od1", "d2d1")
    assert thief.is_path(w)


def test_merge_examples():
    assert merge_sets([{("a", "b")}, {("a",)}]) == {("a", "b")}
    assert merge_sets([{("a",)}, {("b",)}]) == frozenset()


def _small_sets(rng, k):
    words = [w for n in range(1, 4) for w in itertools.product("ab", repeat=n)]
    return [frozenset(rng.sample(words, rng.randint(0, 5))) for _ in range(k)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_merge_associative(seed):
    x, y, z = _small_sets(random.Random(seed), 3)
    left = merge_sets([merge_sets([x, y]), z])
    assert left == merge_sets([x, merge_sets([y, z])])
    assert left == merge_sets([x, y, z])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_binary_merge_matches_definition(seed):
    x, y = _small_sets(random.Random(seed), 2)
    assert merge_sets([x, y]) == merge_pair(x, y)


def test_pm_examples(thief, toy):
    assert pm_oracle(toy, leaf("P"), ("a", "b"))
    door1 = parse_tree("(and D1 (not W))")
    assert pm_oracle(thief, door1, ("om", "d1d2"))
    assert pm_check(thief, door1, ("om", "d1d2"))


def test_simultaneous_objectives():
    a = GameArena(["s"], ["x"], ["u"], {("s", "x", "u"): "s"}, {"s": {"P", "Q"}}, ("P", "Q"))
    for t in (SAND_("P", "Q"), AND_("P", "Q")):
        assert pm_oracle(a, t, ("s",))
        assert pm_check(a, t, ("s",))


def test_segment_table_columns(toy):
    t = SAND_("Q", "P")
    table = segment_table(toy, t, ("a", "a", "b"))
    q, p = t.children
    assert table.L[table.index[id(q)]] == [0, 1, NEG_INF]
    assert table.L[table.index[id(p)]] == [NEG_INF, NEG_INF, 2]
    assert table.start() == 1
    assert pm_oracle(toy, t, ("a", "a", "b"))
    assert not pm_check(toy, t, ("b",))
    assert not pm_oracle(toy, t, ("b",))


def test_true_leaf_accepts_everything(thief):
    for path in all_paths(thief, 3):
        assert pm_check(thief, Leaf(TRUE), path)


def test_invalid_path_rejected(toy):
    with pytest.raises(ModelError):
        pm_check(toy, leaf("P"), ("b", "a"))
    with pytest.raises(ModelError):
        pm_oracle(toy, leaf("P"), ("b", "a"))


def test_enum_members(toy, thief):
    assert enum_members(toy, leaf("P"), 2) == {("b",), ("a", "b"), ("b", "b")}
    assert enum_members(thief, Leaf(FALSE), 4) == frozenset()
    with pytest.raises(ValueError):
        enum_members(toy, leaf("P"), 0)


def _pm_cases(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        arena = random_arena(rng, max_positions=5, max_actions=2)
        t = random_tree(rng, arena.props, max_leaves=4, max_depth=3, max_nodes=7)
        yield arena, t, random_path(rng, arena, 7)


def test_pm_oracle_equivalence_random():
    for arena, t, path in _pm_cases(1000, 11):
        assert pm_check(arena, t, path) == pm_oracle(arena, t, path), (t, path)


def _three_position_system():
    pos = ["x", "y", "z"]
    succ = {"x": ["x", "y"], "y": ["z", "x"], "z": ["z", "y"]}
    delta = {(p, a, "u"): succ[p][k] for p in pos for k, a in enumerate(("a0", "a1"))}
    val = {"x": {"P"}, "y": {"Q"}, "z": {"P", "R"}}
    return GameArena(pos, ["a0", "a1"], ["u"], delta, val, ("P", "Q", "R"))


def _all_trees(max_leaves):
    """Every tree over atoms P Q R (and not P) with at most max_leaves leaves, height <= 3."""
    leaves = [leaf("P"), leaf("Q"), leaf("R"), parse_tree("(not P)")]
    level = list(leaves)
    for _ in range(2):
        nxt = list(leaves)
        for op in (OR_, AND_, SAND_):
            for k in (1, 2):
                for kids in itertools.product(level, repeat=k):
                    t = op(*kids)
                    if t.leaf_count <= max_leaves and t.size <= 7:
                        nxt.append(t)
        level = nxt
    return list(dict.fromkeys(level))


def test_pm_oracle_equivalence_exhaustive():
    a = _three_position_system()
    paths = all_paths(a, 5)
    trees = _all_trees(2)
    assert len(trees) > 100
    for t in trees:
        for path in paths:
            assert pm_check(a, t, path) == pm_oracle(a, t, path), (t, path)


def _closure_cases():
    rng = random.Random(5)
    for _ in range(40):
        arena = random_arena(rng, max_positions=3, max_actions=2)
        t = random_tree(rng, arena.props, max_leaves=3, max_depth=3)
        yield arena, t


def test_prepend_closure():
    k = 5
    for arena, t in _closure_cases():
        members = enum_members(arena, t, k)
        for w in members:
            for q in all_paths(arena, k - len(w) + 1):
                if q[-1] == w[0]:
                    assert sync_concat(q, w) in members


def test_segment_prepend_monotone():
    for arena, t in _closure_cases():
        for path in all_paths(arena, 5):
            for i in range(len(path)):
                hits = [pm_oracle(arena, t, path[j:i + 1]) for j in range(i + 1)]
                first = hits.index(True) if True in hits else None
                # accepted starts form a prefix-closed interval 0..L[i]
                if first is not None:
                    last = max(j for j, h in enumerate(hits) if h)
                    assert all(hits[:last + 1])


def test_or_is_union():
    for arena, t in _closure_cases():
        u = random_tree(random.Random(hash(t) & 0xffff), arena.props, 2, 2)
        assert enum_members(arena, OR_(t, u), 4) == enum_members(arena, t, 4) | enum_members(arena, u, 4)


def test_sand_and_bounded_equations():
    k = 4
    rng = random.Random(9)
    for _ in range(40):
        arena = random_arena(rng, max_positions=3, max_actions=2)
        t1 = random_tree(rng, arena.props, 2, 2)
        t2 = random_tree(rng, arena.props, 2, 2)
        e1, e2 = enum_members(arena, t1, k), enum_members(arena, t2, k)
        glued = {w for w in concat_sets(e1, e2) if len(w) <= k}
        assert enum_members(arena, SAND_(t1, t2), k) == glued
        merged = {w for w in merge_sets([e1, e2]) if len(w) <= k}
        assert enum_members(arena, AND_(t1, t2), k) == merged


def test_enum_members_matches_filter():
    for arena, t in _closure_cases():
        expected = {p for p in all_paths(arena, 4) if pm_check(arena, t, p)}
        assert enum_members(arena, t, 4) == expected
