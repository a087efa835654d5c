"""Well-quasi-order decisions for regular and context-free languages under
the prefix, suffix and infix orders, with certificates."""

from .automata import (
    AlphabetMismatch,
    AutomatonError,
    BudgetExceeded,
    Dfa,
    Nfa,
    Transducer,
    apply_transducer,
    boolean_combine,
    closure,
    complement,
    determinize_trim,
    enumerate_words,
    is_empty,
    is_finite,
    is_subset,
    parse_automaton,
    rational_op,
)
from .decision import (
    DecisionReport,
    antichain_branch_witness,
    build_r_language,
    compute_r_bounds,
    decide,
    decide_bounded,
    decide_infix,
    decide_infix_closure_invariance,
    decide_prefix,
    decide_suffix,
    fork_analysis,
    ideal_representation,
    reduction_emptiness_to_prefix,
    reduction_prefix_to_infix,
)
from .grammars import (
    Cfg,
    cfg_bounded,
    cfg_intersect_regular,
    cfg_is_empty,
    cfg_subword_closure,
    decide_cfg,
    parse_cfg,
    reduce_cfg,
)
from .orders import FinitePoset, OrdinalExpr, compare, mine_antichain, ordinal_arith, poset_invariants
from .regex import compile_regex, parse_regex, regex_nfa
from .words import common_power_root, inf_period_chain, minimal_period, period_inheritance_check

__all__ = [
    "AlphabetMismatch",
    "AutomatonError",
    "BudgetExceeded",
    "Cfg",
    "DecisionReport",
    "Dfa",
    "FinitePoset",
    "Nfa",
    "OrdinalExpr",
    "Transducer",
    "antichain_branch_witness",
    "apply_transducer",
    "boolean_combine",
    "build_r_language",
    "cfg_bounded",
    "cfg_intersect_regular",
    "cfg_is_empty",
    "cfg_subword_closure",
    "closure",
    "common_power_root",
    "compare",
    "compile_regex",
    "complement",
    "compute_r_bounds",
    "decide",
    "decide_bounded",
    "decide_cfg",
    "decide_infix",
    "decide_infix_closure_invariance",
    "decide_prefix",
    "decide_suffix",
    "determinize_trim",
    "enumerate_words",
    "fork_analysis",
    "ideal_representation",
    "inf_period_chain",
    "is_empty",
    "is_finite",
    "is_subset",
    "mine_antichain",
    "minimal_period",
    "ordinal_arith",
    "parse_automaton",
    "parse_cfg",
    "parse_regex",
    "period_inheritance_check",
    "poset_invariants",
    "rational_op",
    "reduce_cfg",
    "reduction_emptiness_to_prefix",
    "reduction_prefix_to_infix",
    "regex_nfa",
]

__version__ = "0.1.0"
