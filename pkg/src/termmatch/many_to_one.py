"""Many-to-one matching with a generalized non-deterministic discrimination net.

Patterns are inserted as preorder token sequences. The subject is traversed in
preorder while every applicable transition is followed with backtracking.
Compound terms produce an operation-start transition and, once all of their
arguments are consumed, an operation-end transition, which is what makes
variadic operations work. Commutative applications are not inlined: the net
hands their argument multiset to a nested :class:`CommutativeSubMatcher`.
"""
from __future__ import annotations

from collections import Counter
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from .bipartite import (
    MatchGraph,
    combine_edge_substitutions,
    enumerate_maximum_matchings,
    hopcroft_karp,
    is_order_preserving,
)
from .diophantine import SeqVar, distribute
from .errors import InvalidSubjectError
from .terms import (
    DOT,
    PLUS,
    STAR,
    Application,
    Pattern,
    Signature,
    Substitution,
    Symbol,
    Term,
    Wildcard,
    is_ground,
    sort_key,
)

SYMBOL = "sym"
SYMBOL_CLASS = "class"
START = "start"
END = "end"
DOT_VARIABLE = "dot"
SEQUENCE_VARIABLE = "seq"
ASSOCIATIVE_DOT_VARIABLE = "adot"
_VARIABLE_KINDS = (SYMBOL_CLASS, DOT_VARIABLE, SEQUENCE_VARIABLE, ASSOCIATIVE_DOT_VARIABLE)


class Label(NamedTuple):
    """Transition label.

    ``name`` is the symbol, operation or variable name; ``extra`` holds the
    class restriction, the sequence kind, or the associative operation name.
    """

    kind: str
    name: Optional[str] = None
    extra: Optional[str] = None


END_LABEL = Label(END)


class State:
    __slots__ = ("index", "symbols", "starts", "end", "variables", "hooks", "patterns")

    def __init__(self, index: int):
        self.index = index
        self.symbols: Dict[str, State] = {}
        self.starts: Dict[str, State] = {}
        self.end: Optional[State] = None
        self.variables: Dict[Label, State] = {}
        self.hooks: Dict[str, CommutativeSubMatcher] = {}
        self.patterns: List[int] = []

    def transitions(self) -> Iterator[Tuple[Label, "State"]]:
        for name, target in self.symbols.items():
            yield Label(SYMBOL, name), target
        for name, target in self.starts.items():
            yield Label(START, name), target
        if self.end is not None:
            yield END_LABEL, self.end
        yield from self.variables.items()

    def __repr__(self):
        return f"State({self.index}, patterns={self.patterns})"


def _tokens(t: Term, assoc: Optional[Signature]):
    if isinstance(t, Symbol):
        yield Label(SYMBOL, t.name)
    elif isinstance(t, Wildcard):
        if t.kind != DOT:
            yield Label(SEQUENCE_VARIABLE, t.name, t.kind)
        elif assoc is not None and t.class_restriction is None:
            yield Label(ASSOCIATIVE_DOT_VARIABLE, t.name, assoc.name)
        elif t.name is None and t.class_restriction is not None:
            yield Label(SYMBOL_CLASS, None, t.class_restriction)
        else:
            yield Label(DOT_VARIABLE, t.name, t.class_restriction)
    elif t.signature.commutative:
        yield t
    else:
        sig = t.signature
        yield Label(START, sig.name)
        inner = sig if sig.associative else None
        for arg in t.args:
            yield from _tokens(arg, inner)
        yield END_LABEL


def _bind(subst, name, value):
    if name is None:
        return subst
    return subst.bind(name, value)


class ManyToOneMatcher:
    """Non-deterministic discrimination net over a growing pattern set."""

    def __init__(self, patterns=()):
        self.states: List[State] = [State(0)]
        self.patterns: List[Pattern] = []
        for p in patterns:
            self.add(p)

    @property
    def root(self) -> State:
        return self.states[0]

    def _new_state(self) -> State:
        state = State(len(self.states))
        self.states.append(state)
        return state

    def _follow(self, state: State, label: Label) -> State:
        if label.kind == SYMBOL:
            table, key = state.symbols, label.name
        elif label.kind == START:
            table, key = state.starts, label.name
        elif label.kind == END:
            if state.end is None:
                state.end = self._new_state()
            return state.end
        else:
            table, key = state.variables, label
        target = table.get(key)
        if target is None:
            target = table[key] = self._new_state()
        return target

    def add(self, pattern: Pattern) -> int:
        """Insert ``pattern`` sharing existing prefixes; returns its id."""
        if not isinstance(pattern, Pattern):
            pattern = Pattern(pattern)
        pid = len(self.patterns)
        self.patterns.append(pattern)
        state = self.root
        for token in _tokens(pattern.expression, None):
            if isinstance(token, Label):
                state = self._follow(state, token)
                continue
            sig = token.signature
            hook = state.hooks.get(sig.name)
            if hook is None:
                hook = state.hooks[sig.name] = CommutativeSubMatcher(sig)
            sub_id = hook.add(token)
            target = hook.targets.get(sub_id)
            if target is None:
                target = hook.targets[sub_id] = self._new_state()
            state = target
        state.patterns.append(pid)
        return pid

    def match(self, subject: Term) -> Iterator[Tuple[int, Substitution]]:
        """Yield ``(pattern id, substitution)`` for every match, without duplicates."""
        if not is_ground(subject):
            raise InvalidSubjectError(f"subject {subject} contains wildcards")
        seen = set()
        for state, subst in _walk(self.root, (((subject,), 0, None),), Substitution()):
            for pid in state.patterns:
                if not all(c(subst) for c in self.patterns[pid].constraints):
                    continue
                key = (pid, subst.frozen())
                if key not in seen:
                    seen.add(key)
                    yield pid, subst


def _walk(state: State, frames: tuple, subst: Substitution):
    args, i, assoc = frames[-1]
    n = len(args)
    if i == n:
        if len(frames) == 1:
            if state.patterns:
                yield state, subst
        elif state.end is not None:
            yield from _walk(state.end, frames[:-1], subst)
        for label, target in state.variables.items():
            if label.kind == SEQUENCE_VARIABLE and label.extra == STAR:
                new = _bind(subst, label.name, ())
                if new is not None:
                    yield from _walk(target, frames, new)
        return

    t = args[i]
    advanced = frames[:-1] + ((args, i + 1, assoc),)
    if isinstance(t, Symbol):
        target = state.symbols.get(t.name)
        if target is not None:
            yield from _walk(target, advanced, subst)
    else:
        sig = t.signature
        if sig.commutative:
            hook = state.hooks.get(sig.name)
            if hook is not None:
                for sub_id, new in hook.match(t.args, subst):
                    yield from _walk(hook.targets[sub_id], advanced, new)
        else:
            target = state.starts.get(sig.name)
            if target is not None:
                inner = sig if sig.associative else None
                yield from _walk(target, advanced + ((t.args, 0, inner),), subst)

    for label, target in state.variables.items():
        kind = label.kind
        if kind == DOT_VARIABLE or kind == SYMBOL_CLASS:
            restriction = label.extra
            if restriction is not None and not (isinstance(t, Symbol) and t.in_class(restriction)):
                continue
            new = _bind(subst, label.name, t)
            if new is not None:
                yield from _walk(target, advanced, new)
        elif kind == SEQUENCE_VARIABLE:
            for k in range(1 if label.extra == PLUS else 0, n - i + 1):
                new = _bind(subst, label.name, args[i:i + k])
                if new is not None:
                    yield from _walk(target, frames[:-1] + ((args, i + k, assoc),), new)
        else:
            for k in range(1, n - i + 1):
                value = t if k == 1 else Application(assoc, args[i:i + k])
                new = _bind(subst, label.name, value)
                if new is not None:
                    yield from _walk(target, frames[:-1] + ((args, i + k, assoc),), new)


class _SubpatternTable(NamedTuple):
    nodes: Tuple[Term, ...]
    node_ids: Tuple[int, ...]
    seq_vars: Tuple[SeqVar, ...]


def split_commutative_arguments(term: Application):
    """Split pattern arguments into graph nodes and sequence variables.

    Sequence variables, and unrestricted dot variables of associative
    operations, are collected with their multiplicity.
    """
    assoc = term.signature if term.signature.associative else None
    nodes = []
    named = {}
    anonymous = []
    for arg in term.args:
        if isinstance(arg, Wildcard) and (
            arg.kind != DOT or (assoc is not None and arg.class_restriction is None)
        ):
            if arg.name is None:
                anonymous.append(SeqVar(None, arg.kind, 1, assoc))
            else:
                kind, count = named.get(arg.name, (arg.kind, 0))
                named[arg.name] = (kind, count + 1)
        else:
            nodes.append(arg)
    nodes.sort(key=sort_key)
    seq_vars = [SeqVar(name, kind, count, assoc) for name, (kind, count) in sorted(named.items())]
    return tuple(nodes), tuple(seq_vars + anonymous)


class CommutativeSubMatcher:
    """Matches the arguments of one commutative operation against many subpatterns.

    Every subject argument is run through an inner many-to-one net built from
    all non-sequence pattern arguments. The results label a bipartite graph
    per subpattern whose maximum matchings give the candidate assignments.
    """

    def __init__(self, signature: Signature):
        self.signature = signature
        self.inner = ManyToOneMatcher()
        self.node_ids: Dict[Term, int] = {}
        self.subpatterns: List[Application] = []
        self.index: Dict[Application, int] = {}
        self.tables: List[_SubpatternTable] = []
        self.targets: Dict[int, State] = {}

    def add(self, term: Application) -> int:
        sub_id = self.index.get(term)
        if sub_id is not None:
            return sub_id
        nodes, seq_vars = split_commutative_arguments(term)
        ids = []
        for node in nodes:
            if node not in self.node_ids:
                self.node_ids[node] = self.inner.add(Pattern(node))
            ids.append(self.node_ids[node])
        sub_id = len(self.subpatterns)
        self.subpatterns.append(term)
        self.index[term] = sub_id
        self.tables.append(_SubpatternTable(nodes, tuple(ids), seq_vars))
        return sub_id

    def match(self, subjects, prior: Optional[Substitution] = None) -> Iterator[Tuple[int, Substitution]]:
        prior = Substitution() if prior is None else prior
        left = sorted(subjects, key=sort_key)
        by_subject = {}
        for s in left:
            if s not in by_subject:
                found: Dict[int, List[Substitution]] = {}
                for node_id, subst in self.inner.match(s):
                    found.setdefault(node_id, []).append(subst)
                by_subject[s] = found
        for sub_id, table in enumerate(self.tables):
            if len(table.nodes) > len(left):
                continue
            edges = {}
            for li, s in enumerate(left):
                found = by_subject[s]
                for ri, node_id in enumerate(table.node_ids):
                    if node_id in found:
                        edges[(li, ri)] = found[node_id]
            graph = MatchGraph(left, table.nodes, edges)
            if table.nodes:
                if len(hopcroft_karp(graph)) < len(table.nodes):
                    continue
                matchings = enumerate_maximum_matchings(graph)
            else:
                matchings = [frozenset()]
            for matching in matchings:
                if not is_order_preserving(matching, graph):
                    continue
                used = {li for li, _ in matching}
                leftover = Counter(s for li, s in enumerate(left) if li not in used)
                for combined in combine_edge_substitutions(matching, graph, prior):
                    for result in distribute(leftover, table.seq_vars, combined):
                        yield sub_id, result


def add_pattern(net: ManyToOneMatcher, pattern: Pattern) -> int:
    return net.add(pattern)


def match_many(net: ManyToOneMatcher, subject: Term) -> Iterator[Tuple[int, Substitution]]:
    return net.match(subject)


def match_commutative_many(sub: CommutativeSubMatcher, subjects, prior=None):
    return sub.match(subjects, prior)
