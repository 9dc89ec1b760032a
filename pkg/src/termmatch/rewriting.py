"""Replacement rules applied leftmost-innermost, first rule wins."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import NonTerminationError, ShapeError
from .one_to_one import match
from .terms import Application, Pattern, Term, canonicalize, instantiate


@dataclass(frozen=True)
class ReplacementRule:
    """``replacement`` is called with the matched variables as keyword arguments
    and returns a term, or a sequence of terms to splice into the parent."""

    pattern: Pattern
    replacement: Callable[..., object]

    @classmethod
    def from_template(cls, pattern: Pattern, template: Term) -> "ReplacementRule":
        return cls(pattern, lambda **subst: instantiate(template, subst))


@dataclass(frozen=True)
class RewriteConfig:
    max_iterations: int = 10_000
    strategy: str = "leftmost-innermost"

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.strategy != "leftmost-innermost":
            raise ValueError("only the leftmost-innermost strategy is supported")


def _rewrite_at(t: Term, rules: Sequence[ReplacementRule]):
    """Result of the first redex in post-order, or None when t is in normal form.

    The result is a term, or a tuple when a rule returned a sequence.
    """
    if isinstance(t, Application):
        for i, arg in enumerate(t.args):
            new = _rewrite_at(arg, rules)
            if new is None:
                continue
            replacement = new if isinstance(new, tuple) else (new,)
            args = t.args[:i] + replacement + t.args[i + 1:]
            return canonicalize(Application(t.signature, args))
    for rule in rules:
        for subst in match(t, rule.pattern):
            result = rule.replacement(**subst)
            if isinstance(result, list):
                result = tuple(result)
            if isinstance(result, tuple):
                return tuple(canonicalize(r) for r in result)
            return canonicalize(result)
    return None


def replace_once(t: Term, rules: Sequence[ReplacementRule]) -> Optional[Term]:
    """Apply one rule at the leftmost-innermost redex; ``None`` if there is none."""
    result = _rewrite_at(t, rules)
    if isinstance(result, tuple):
        if len(result) != 1:
            raise ShapeError("a replacement at the root must be a single term")
        result = result[0]
    return result


def replace_all(t: Term, rules: Sequence[ReplacementRule], config: RewriteConfig = RewriteConfig()) -> Term:
    """Rewrite to a normal form, raising :class:`NonTerminationError` at the limit."""
    for _ in range(config.max_iterations):
        new = replace_once(t, rules)
        if new is None:
            return t
        t = new
    if replace_once(t, rules) is None:
        return t
    raise NonTerminationError(f"no normal form after {config.max_iterations} rewrites: {t}", t)
