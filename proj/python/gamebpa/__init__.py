"""Process terms with player/opponent choice.

Thin wrapper around the native module: terms, parsing, axiom-driven
rewriting, transition semantics, bisimulation checking and game strategies.
"""

from gamebpa._core import (
    BisimResult,
    GameDeclaration,
    GameError,
    GameTree,
    Lts,
    ParseError,
    PlayReport,
    PlaySet,
    RewriteStep,
    RewriteTrace,
    StateLimitError,
    StepLimitError,
    Strategy,
    Term,
    ac_equal,
    ac_flatten,
    bisimilar,
    build_lts,
    count_strategies,
    enumerate_strategies,
    game_tree_from_term,
    intersect_strategies,
    is_basic_term,
    normalize,
    parse_game_decl,
    parse_term,
    print_term,
    rewrite_step,
    run_selftest,
    strategy_to_term,
    transitions,
    validate_ownership,
    verify_play,
    weight,
)

__all__ = [
    "BisimResult",
    "GameDeclaration",
    "GameError",
    "GameTree",
    "Lts",
    "ParseError",
    "PlayReport",
    "PlaySet",
    "RewriteStep",
    "RewriteTrace",
    "StateLimitError",
    "StepLimitError",
    "Strategy",
    "Term",
    "ac_equal",
    "ac_flatten",
    "bisimilar",
    "build_lts",
    "count_strategies",
    "enumerate_strategies",
    "game_tree_from_term",
    "intersect_strategies",
    "is_basic_term",
    "normalize",
    "parse_game_decl",
    "parse_term",
    "print_term",
    "rewrite_step",
    "run_selftest",
    "strategy_to_term",
    "transitions",
    "validate_ownership",
    "verify_play",
    "weight",
]
