"""Text syntax for terms, signature files and rule files.

Terms::

    f(a, x_, y___)      application with a symbol, a dot and a star wildcard
    A_:Matrix           dot wildcard restricted to symbols of class Matrix
    _  __  ___          anonymous dot, plus and star wildcards
    12                  integer literals are symbols too

Signature files are line oriented, ``#`` starts a comment::

    op Times variadic associative
    op Plus 2+ associative commutative
    op Transpose 1
    class Matrix
    class Triangular < Matrix
    symbol M1 M2 : Matrix
    symbol M3 : Triangular with triangular square

Rule and pattern files hold one ``pattern [| constraint] [=> template]`` per line.
"""
from __future__ import annotations

import re
from typing import List, Mapping, Optional, Tuple

from .errors import ParseError
from .terms import DOT, PLUS, STAR, Application, Pattern, Registry, Signature, Term, Wildcard, canonicalize

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<wild>(?:[A-Za-z][A-Za-z0-9]*)?_{1,3}(?![_A-Za-z0-9]))
  | (?P<name>[A-Za-z][A-Za-z0-9]*|[0-9]+)
  | (?P<punct>[(),:])
    """,
    re.VERBOSE,
)
_KINDS = {1: DOT, 2: PLUS, 3: STAR}


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, registry):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.registry = registry

    def error(self, message, token=None):
        token = token or self.tokens[self.i]
        return ParseError(message, *_position(self.text, token[2]))

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        token = self.tokens[self.i]
        if value is not None and token[1] != value:
            shown = token[1] or "end of input"
            raise self.error(f"expected {value!r}, found {shown!r}")
        self.i += 1
        return token

    def term(self) -> Term:
        kind, value, _ = token = self.take()
        if kind == "wild":
            stripped = value.rstrip("_")
            wc_kind = _KINDS[len(value) - len(stripped)]
            restriction = None
            if self.peek()[1] == ":":
                self.take()
                cls = self.take()
                if cls[0] != "name":
                    raise self.error("expected a class name", cls)
                if wc_kind != DOT:
                    raise self.error("only dot wildcards can be class restricted", cls)
                restriction = cls[1]
            return Wildcard(wc_kind, stripped or None, restriction)
        if kind != "name":
            raise self.error(f"expected a term, found {value or 'end of input'!r}", token)
        if self.peek()[1] != "(":
            return self.registry.symbol(value)
        self.take("(")
        args = []
        if self.peek()[1] != ")":
            args.append(self.term())
            while self.peek()[1] == ",":
                self.take()
                args.append(self.term())
        self.take(")")
        return Application(self.registry.signature(value), tuple(args))


def parse_term(text: str, registry: Optional[Registry] = None, canonical: bool = True) -> Term:
    """Parse one term. Unknown operations get the default signature."""
    parser = _Parser(text, registry if registry is not None else Registry())
    term = parser.term()
    if parser.peek()[0] != "eof":
        raise parser.error(f"unexpected {parser.peek()[1]!r} after term")
    return canonicalize(term) if canonical else term


def format_term(t: Term) -> str:
    return str(t)


def format_binding(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(format_term(v) for v in value) + ")"
    return format_term(value)


def format_substitution(subst: Mapping) -> str:
    """``{x -> a, y -> (b, c)}`` with variables sorted by name."""
    return "{" + ", ".join(f"{k} -> {format_binding(subst[k])}" for k in sorted(subst)) + "}"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_signature_file(text: str, registry: Optional[Registry] = None) -> Registry:
    registry = registry if registry is not None else Registry()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        words = line.split()
        keyword, rest = words[0], words[1:]
        try:
            if keyword == "op":
                registry.add_signature(_parse_op(rest))
            elif keyword == "class":
                if len(rest) == 1:
                    registry.add_class(rest[0])
                elif len(rest) == 3 and rest[1] == "<":
                    registry.add_class(rest[0], rest[2])
                else:
                    raise ValueError("expected 'class NAME [< PARENT]'")
            elif keyword == "symbol":
                _parse_symbols(rest, registry)
            else:
                raise ValueError(f"unknown declaration {keyword!r}")
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1) from None
    return registry


def _parse_op(words: List[str]) -> Signature:
    if not words:
        raise ValueError("missing operation name")
    name, specs = words[0], words[1:]
    arity, variadic = 0, True
    flags = set()
    for spec in specs:
        if spec == "variadic":
            arity, variadic = 0, True
        elif re.fullmatch(r"\d+\+", spec):
            arity, variadic = int(spec[:-1]), True
        elif spec.isdigit():
            arity, variadic = int(spec), False
        elif spec in ("associative", "assoc"):
            flags.add("associative")
        elif spec in ("commutative", "comm"):
            flags.add("commutative")
        else:
            raise ValueError(f"unknown operation attribute {spec!r}")
    return Signature(name, arity, variadic, "associative" in flags, "commutative" in flags)


def _parse_symbols(words: List[str], registry: Registry):
    props: List[str] = []
    if "with" in words:
        at = words.index("with")
        words, props = words[:at], words[at + 1:]
    class_tag = None
    if ":" in words:
        at = words.index(":")
        if len(words) != at + 2:
            raise ValueError("expected exactly one class after ':'")
        words, class_tag = words[:at], words[at + 1]
    if not words:
        raise ValueError("missing symbol name")
    for name in words:
        registry.add_symbol(name, class_tag, props)


def format_signature_file(registry: Registry) -> str:
    lines = []
    for sig in registry.signatures.values():
        arity = (f"{sig.arity}+" if sig.arity else "variadic") if sig.variadic else str(sig.arity)
        flags = [f for f in ("associative", "commutative") if getattr(sig, f)]
        lines.append(" ".join(["op", sig.name, arity] + flags))
    for name, parent in registry.class_parents.items():
        lines.append(f"class {name}" + (f" < {parent}" if parent else ""))
    for sym in registry.symbols.values():
        line = f"symbol {sym.name}"
        if sym.class_tag:
            line += f" : {sym.class_tag}"
        if sym.properties:
            line += " with " + " ".join(sorted(sym.properties))
        lines.append(line)
    return "\n".join(lines) + "\n"


def split_rule_line(line: str) -> Tuple[str, Optional[str], Optional[str]]:
    """Split ``pattern | constraint => template`` into its three parts."""
    template = None
    if "=>" in line:
        line, template = line.split("=>", 1)
        template = template.strip()
    constraint = None
    if "|" in line:
        line, constraint = line.split("|", 1)
        constraint = constraint.strip() or None
    return line.strip(), constraint, template


def parse_pattern(text: str, registry: Optional[Registry] = None) -> Pattern:
    """Parse ``pattern [| constraint]``."""
    from .constraint_lang import parse_constraint

    registry = registry if registry is not None else Registry()
    expr_text, constraint_text, template = split_rule_line(text)
    if template is not None:
        raise ParseError("unexpected '=>' in a pattern")
    expression = parse_term(expr_text, registry)
    constraints = [parse_constraint(constraint_text)] if constraint_text else []
    return Pattern(expression, *constraints)


def parse_pattern_file(text: str, registry: Optional[Registry] = None) -> List[Pattern]:
    registry = registry if registry is not None else Registry()
    patterns = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        try:
            patterns.append(parse_pattern(line, registry))
        except ParseError as exc:
            raise ParseError(f"pattern file: {exc.message}", lineno, exc.column) from None
    return patterns
