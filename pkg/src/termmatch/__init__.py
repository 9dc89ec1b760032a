"""Associative-commutative pattern matching with sequence variables."""
from .bipartite import MatchGraph, enumerate_maximum_matchings, hopcroft_karp
from .constraint_lang import parse_constraint
from .diophantine import SeqVar, distribute, solve_nonneg
from .discrimination_net import DiscriminationNet, build_deterministic_net, match_deterministic
from .errors import (
    IncompleteSubstitutionError,
    InvalidSubjectError,
    MalformedTermError,
    NetFormatError,
    NetTooLargeError,
    NonTerminationError,
    ParseError,
    ShapeError,
    TermMatchError,
    UnsupportedPatternError,
)
from .many_to_one import CommutativeSubMatcher, ManyToOneMatcher, add_pattern, match_many
from .one_to_one import match, match_commutative, match_sequence
from .rewriting import ReplacementRule, RewriteConfig, replace_all, replace_once
from .syntax import (
    format_substitution,
    format_term,
    parse_pattern,
    parse_pattern_file,
    parse_signature_file,
    parse_term,
)
from .terms import (
    Application,
    Constraint,
    Pattern,
    Registry,
    Signature,
    Substitution,
    Symbol,
    Wildcard,
    canonicalize,
    is_syntactic,
    merge,
    substitute,
    total_order,
)

__all__ = [
    "MatchGraph",
    "enumerate_maximum_matchings",
    "hopcroft_karp",
    "parse_constraint",
    "SeqVar",
    "distribute",
    "solve_nonneg",
    "DiscriminationNet",
    "build_deterministic_net",
    "match_deterministic",
    "IncompleteSubstitutionError",
    "InvalidSubjectError",
    "MalformedTermError",
    "NetFormatError",
    "NetTooLargeError",
    "NonTerminationError",
    "ParseError",
    "ShapeError",
    "TermMatchError",
    "UnsupportedPatternError",
    "CommutativeSubMatcher",
    "ManyToOneMatcher",
    "add_pattern",
    "match_many",
    "match",
    "match_commutative",
    "match_sequence",
    "ReplacementRule",
    "RewriteConfig",
    "replace_all",
    "replace_once",
    "format_substitution",
    "format_term",
    "parse_pattern",
    "parse_pattern_file",
    "parse_signature_file",
    "parse_term",
    "Application",
    "Constraint",
    "Pattern",
    "Registry",
    "Signature",
    "Substitution",
    "Symbol",
    "Wildcard",
    "canonicalize",
    "is_syntactic",
    "merge",
    "substitute",
    "total_order",
]

__version__ = "0.1.0"
