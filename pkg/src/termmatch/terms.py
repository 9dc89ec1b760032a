"""Expression data model.

Terms are symbols, wildcards, or applications of an operation signature to an
ordered tuple of arguments. All term objects are immutable and hashable.
Applications of associative operations are kept flattened and arguments of
commutative operations are kept sorted by :func:`sort_key`.
"""
from __future__ import annotations

import inspect
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import IncompleteSubstitutionError, MalformedTermError, ShapeError

DOT = "dot"
PLUS = "plus"
STAR = "star"
_KIND_RANK = {DOT: 0, PLUS: 1, STAR: 2}
_UNDERSCORES = {DOT: "_", PLUS: "__", STAR: "___"}


@dataclass(frozen=True)
class Signature:
    """An operation symbol with its arity and algebraic attributes.

    ``arity`` is the minimum argument count; for non-variadic operations it is
    the exact count. Calling a signature builds a canonical application.
    """

    name: str
    arity: int = 0
    variadic: bool = True
    associative: bool = False
    commutative: bool = False

    def __post_init__(self):
        if self.associative and not self.variadic:
            raise ValueError(f"associative operation {self.name} must be variadic")
        if self.arity < 0:
            raise ValueError("arity must be non-negative")

    def __call__(self, *args: "Term") -> "Application":
        return canonicalize(Application(self, tuple(args)))


def _name_key(name: str):
    # integer literals order numerically and before identifiers
    if name.isdigit():
        return (0, int(name), "")
    return (1, 0, name)


@dataclass(frozen=True, eq=False)
class Symbol:
    """A constant. Two symbols are equal iff their names are equal."""

    name: str
    class_tag: Optional[str] = None
    properties: frozenset = frozenset()
    ancestors: frozenset = field(default=frozenset(), repr=False)

    def __eq__(self, other):
        return isinstance(other, Symbol) and other.name == self.name

    def __hash__(self):
        return hash(("sym", self.name))

    def __repr__(self):
        return f"Symbol({self.name!r})"

    def __str__(self):
        return self.name

    def in_class(self, tag: str) -> bool:
        return tag == self.class_tag or tag in self.ancestors

    @property
    def value(self) -> Optional[int]:
        """Integer value of numeric symbols, ``None`` otherwise."""
        return int(self.name) if self.name.isdigit() else None


@dataclass(frozen=True)
class Wildcard:
    """Placeholder for one (dot), at least one (plus) or any number (star) of terms."""

    kind: str
    name: Optional[str] = None
    class_restriction: Optional[str] = None

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown wildcard kind {self.kind!r}")
        if self.class_restriction is not None and self.kind != DOT:
            raise ValueError("only dot wildcards can carry a class restriction")

    @classmethod
    def dot(cls, name=None):
        return cls(DOT, name)

    @classmethod
    def plus(cls, name=None):
        return cls(PLUS, name)

    @classmethod
    def star(cls, name=None):
        return cls(STAR, name)

    @classmethod
    def symbol(cls, name, class_tag):
        return cls(DOT, name, class_tag)

    def __repr__(self):
        return f"Wildcard({str(self)!r})"

    @property
    def is_sequence(self) -> bool:
        return self.kind != DOT

    def __str__(self):
        text = (self.name or "") + _UNDERSCORES[self.kind]
        if self.class_restriction:
            text += ":" + self.class_restriction
        return text


class Application:
    """An operation applied to an argument tuple.

    The constructor does not canonicalize; use ``signature(*args)`` or
    :func:`canonicalize` for that.
    """

    __slots__ = ("signature", "args", "_hash", "_key", "_ground")

    def __init__(self, signature: Signature, args: Tuple["Term", ...] = ()):
        self.signature = signature
        self.args = tuple(args)
        self._hash = None
        self._key = None
        self._ground = None

    def __setattr__(self, name, value):
        if name in ("signature", "args") and hasattr(self, name):
            raise AttributeError("Application is immutable")
        object.__setattr__(self, name, value)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Application):
            return False
        if hash(self) != hash(other):
            return False
        return self.signature == other.signature and self.args == other.args

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.signature.name, self.args)))
        return self._hash

    def __repr__(self):
        return f"Application({self.signature.name}, {self.args!r})"

    def __str__(self):
        return f"{self.signature.name}({', '.join(str(a) for a in self.args)})"

    @property
    def is_ground(self) -> bool:
        if self._ground is None:
            object.__setattr__(self, "_ground", all(is_ground(a) for a in self.args))
        return self._ground


Term = Union[Symbol, Wildcard, Application]
Binding = Union[Term, Tuple[Term, ...]]


def sort_key(t: Term):
    """Key realizing the total term order.

    Symbols sort before applications, applications before wildcards. Symbols
    by name, applications by operation name, then argument count, then
    argument keys lexicographically; wildcards by kind, name, restriction.
    """
    if isinstance(t, Symbol):
        return (0, _name_key(t.name))
    if isinstance(t, Application):
        if t._key is None:
            key = (1, t.signature.name, len(t.args), tuple(sort_key(a) for a in t.args))
            object.__setattr__(t, "_key", key)
        return t._key
    return (2, _KIND_RANK[t.kind], t.name or "", t.class_restriction or "")


def total_order(a: Term, b: Term) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


def is_ground(t: Term) -> bool:
    if isinstance(t, Symbol):
        return True
    if isinstance(t, Wildcard):
        return False
    return t.is_ground


def _is_seq_wildcard(t):
    return isinstance(t, Wildcard) and t.kind != DOT


def canonicalize(t: Term) -> Term:
    """Flatten associative applications and sort commutative arguments, bottom-up."""
    if not isinstance(t, Application):
        return t
    sig = t.signature
    args = []
    changed = False
    for arg in t.args:
        new = canonicalize(arg)
        changed |= new is not arg
        if sig.associative and isinstance(new, Application) and new.signature == sig:
            args.extend(new.args)
            changed = True
        else:
            args.append(new)
    if sig.commutative:
        ordered = sorted(args, key=sort_key)
        changed |= ordered != args
        args = ordered
    if not any(_is_seq_wildcard(a) for a in args):
        n = len(args)
        if n < sig.arity or (not sig.variadic and n != sig.arity):
            raise MalformedTermError(
                f"{sig.name} expects {'at least ' if sig.variadic else ''}{sig.arity} "
                f"arguments, got {n}"
            )
    return Application(sig, tuple(args)) if changed else t


def preorder(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Application):
        for arg in t.args:
            yield from preorder(arg)


def variables_of(t: Term) -> Counter:
    """Named wildcards with multiplicity, keyed by ``(name, kind)``."""
    return Counter(
        (sub.name, sub.kind) for sub in preorder(t) if isinstance(sub, Wildcard) and sub.name
    )


class Substitution(dict):
    """Mapping from variable names to a term or a tuple of terms."""

    def bind(self, name: str, value: Binding) -> Optional["Substitution"]:
        """Copy extended with ``name -> value``; ``None`` on a conflicting binding."""
        old = self.get(name, _MISSING)
        if old is _MISSING:
            new = Substitution(self)
            new[name] = value
            return new
        return self if old == value else None

    def frozen(self) -> frozenset:
        return frozenset(self.items())

    def __str__(self):
        from .syntax import format_substitution

        return format_substitution(self)


_MISSING = object()


def merge(first: Mapping[str, Binding], second: Mapping[str, Binding]) -> Optional[Substitution]:
    """Union of two substitutions, or ``None`` if some variable is bound to unequal values."""
    result = Substitution(first)
    for name, value in second.items():
        old = result.get(name, _MISSING)
        if old is _MISSING:
            result[name] = value
        elif old != value:
            return None
    return result


def substitute(pattern: Term, subst: Mapping[str, Binding]) -> Term:
    """Replace the named wildcards of ``pattern`` and canonicalize the result."""
    result = _substitute(pattern, subst)
    if isinstance(result, tuple):
        if isinstance(pattern, Wildcard) and len(result) == 1 and pattern.kind == DOT:
            return canonicalize(result[0])
        raise ShapeError(f"sequence {result!r} cannot replace the root term")
    return canonicalize(result)


def instantiate(template: Term, subst: Mapping[str, Binding]) -> Binding:
    """Like :func:`substitute`, but a sequence variable at the root yields a tuple."""
    result = _substitute(template, subst)
    if isinstance(result, tuple):
        return tuple(canonicalize(t) for t in result)
    return canonicalize(result)


def _substitute(t, subst):
    if isinstance(t, Symbol):
        return t
    if isinstance(t, Wildcard):
        if t.name is None:
            raise IncompleteSubstitutionError("anonymous wildcards cannot be substituted")
        if t.name not in subst:
            raise IncompleteSubstitutionError(f"variable {t.name!r} is unbound")
        value = subst[t.name]
        if isinstance(value, list):
            value = tuple(value)
        if t.kind == DOT and isinstance(value, tuple) and len(value) != 1:
            raise ShapeError(f"dot variable {t.name!r} bound to a sequence")
        return value
    args = []
    for arg in t.args:
        new = _substitute(arg, subst)
        if isinstance(new, tuple):
            args.extend(new)
        else:
            args.append(new)
    return Application(t.signature, tuple(args))


class Constraint:
    """Predicate over some pattern variables.

    ``func`` receives the bound values as keyword arguments named after the
    variables. When ``variables`` is omitted it is taken from the parameter
    names of ``func``.
    """

    def __init__(self, func: Callable[..., bool], variables: Iterable[str] = None, source: str = None):
        if variables is None:
            variables = inspect.signature(func).parameters
        self.func = func
        self.variables = frozenset(variables)
        self.source = source

    def __call__(self, subst: Mapping[str, Binding]) -> bool:
        return bool(self.func(**{v: subst[v] for v in self.variables}))

    def __repr__(self):
        return f"Constraint({self.source or self.func!r})"


@dataclass(frozen=True, init=False)
class Pattern:
    expression: Term
    constraints: Tuple[Constraint, ...]

    def __init__(self, expression: Term, *constraints: Constraint):
        expression = canonicalize(expression)
        if _is_seq_wildcard(expression):
            raise ShapeError("a pattern cannot be a bare sequence wildcard")
        names = {name for name, _ in variables_of(expression)}
        for c in constraints:
            missing = c.variables - names
            if missing:
                raise ValueError(f"constraint uses variables absent from the pattern: {sorted(missing)}")
        object.__setattr__(self, "expression", expression)
        object.__setattr__(self, "constraints", tuple(constraints))

    def __str__(self):
        return str(self.expression)


def is_syntactic(p: Union[Pattern, Term]) -> bool:
    """True for patterns without sequence wildcards, A/C operations and constraints."""
    if isinstance(p, Pattern):
        if p.constraints:
            return False
        p = p.expression
    for sub in preorder(p):
        if _is_seq_wildcard(sub):
            return False
        if isinstance(sub, Application) and (sub.signature.associative or sub.signature.commutative):
            return False
    return True


def satisfied_constraints(subst, constraints, names) -> bool:
    """Check every constraint that mentions one of ``names`` and is fully bound."""
    for c in constraints:
        if c.variables.isdisjoint(names):
            continue
        if all(v in subst for v in c.variables) and not c(subst):
            return False
    return True


class Registry:
    """Operation signatures, symbol classes and declared symbols.

    Unknown operation names get the default signature: variadic, neither
    associative nor commutative.
    """

    def __init__(self):
        self.signatures: Dict[str, Signature] = {}
        self.class_parents: Dict[str, Optional[str]] = {}
        self.symbols: Dict[str, Symbol] = {}

    def add_signature(self, sig: Signature) -> Signature:
        old = self.signatures.get(sig.name)
        if old is not None and old != sig:
            raise ValueError(f"operation {sig.name} is already declared differently")
        self.signatures[sig.name] = sig
        return sig

    def signature(self, name: str) -> Signature:
        sig = self.signatures.get(name)
        if sig is None:
            sig = self.add_signature(Signature(name))
        return sig

    def add_class(self, name: str, parent: Optional[str] = None):
        if parent is not None and parent not in self.class_parents:
            raise ValueError(f"unknown parent class {parent!r}")
        self.class_parents[name] = parent

    def ancestors(self, tag: Optional[str]) -> frozenset:
        result = []
        seen = {tag}
        parent = self.class_parents.get(tag)
        while parent is not None and parent not in seen:
            result.append(parent)
            seen.add(parent)
            parent = self.class_parents.get(parent)
        return frozenset(result)

    def add_symbol(self, name: str, class_tag: Optional[str] = None, properties=()) -> Symbol:
        if class_tag is not None and class_tag not in self.class_parents:
            self.add_class(class_tag)
        sym = Symbol(name, class_tag, frozenset(properties), self.ancestors(class_tag))
        self.symbols[name] = sym
        return sym

    def symbol(self, name: str) -> Symbol:
        return self.symbols.get(name) or Symbol(name)
