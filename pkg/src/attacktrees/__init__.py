"""Path and strategy semantics of attack trees over concurrent game arenas."""
from .automaton import SemanticsAutomaton, accepts, bounded_equiv, build_automaton
from .dot import export_dot
from .model import (
    AND,
    AND_,
    FALSE,
    OR,
    OR_,
    SAND,
    SAND_,
    TRUE,
    Atom,
    AutomatonCapExceeded,
    Conj,
    Const,
    Disj,
    GameArena,
    Leaf,
    MemorylessStrategy,
    ModelError,
    Node,
    Not,
    ParseError,
    QueryResult,
    TransitionSystem,
    arena_to_ts,
    eval_formula,
    leaf,
)
from .paths import enum_members, merge_sets, pm_check, pm_oracle, sync_concat
from .reductions import QBFInstance, aqbf_to_sm, qbf_eval, qbf_to_sne, sat_to_pne
from .solvers import pne, pne_dfs, sm_explicit, sm_memoryless, sne_alg1, sne_attractor
from .strees import STree, check_witness, is_prefix, is_well_formed, unfold_strategy, validate_stree
from .syntax import (
    parse_arena,
    parse_formula,
    parse_path,
    parse_strategy,
    parse_stree,
    parse_tree,
    print_arena,
    print_stree,
    print_tree,
)

__version__ = "0.1.0"
