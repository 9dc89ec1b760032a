"""Deterministic discrimination net for syntactic pattern sets.

Patterns and subjects are flattened into preorder event streams (symbol,
operation start, operation end). A net state is the set of pattern positions
that are still alive, so matching reads every event once and never backtracks.
A wildcard facing an operation start keeps a depth counter until the matching
end. When every live position is inside such a skipped subterm, whole
subterms are jumped over, which keeps the number of states finite.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidSubjectError, NetTooLargeError, UnsupportedPatternError
from .terms import Application, Pattern, Substitution, Symbol, Term, Wildcard, is_ground, is_syntactic

DEFAULT_MAX_STATES = 100_000

Item = Tuple[int, int, int]  # pattern id, token position, skip depth
END_KEY = ("end",)


def _flatten_pattern(t: Term, out: list) -> list:
    if isinstance(t, Symbol):
        out.append(("sym", t.name))
    elif isinstance(t, Wildcard):
        out.append(("var", t.class_restriction))
    else:
        out.append(("start", t.signature.name))
        for arg in t.args:
            _flatten_pattern(arg, out)
        out.append(END_KEY)
    return out


def _flatten_subject(t: Term, events: list, ends: dict):
    if isinstance(t, Application):
        at = len(events)
        events.append(("start", t.signature.name))
        for arg in t.args:
            _flatten_subject(arg, events, ends)
        ends[at] = len(events)
        events.append(END_KEY)
    else:
        events.append(("sym", t))


def _extract(pattern: Term, subject: Term, subst: Substitution) -> Optional[Substitution]:
    if isinstance(pattern, Wildcard):
        return subst if pattern.name is None else subst.bind(pattern.name, subject)
    if isinstance(pattern, Symbol):
        return subst if pattern == subject else None
    for p, s in zip(pattern.args, subject.args):
        subst = _extract(p, s, subst)
        if subst is None:
            return None
    return subst


class DiscriminationNet:
    """Deterministic net; build with :func:`build_deterministic_net`."""

    def __init__(self, patterns: Sequence[Pattern], class_parents: Mapping[str, Optional[str]] = None,
                 max_states: int = DEFAULT_MAX_STATES):
        self.patterns = list(patterns)
        for p in self.patterns:
            if not is_syntactic(p):
                raise UnsupportedPatternError(f"pattern {p} is not syntactic")
        self.flats = [_flatten_pattern(p.expression, []) for p in self.patterns]
        self.max_states = max_states
        names, sigs, restrictions = set(), set(), set()
        for flat in self.flats:
            for token in flat:
                if token[0] == "sym":
                    names.add(token[1])
                elif token[0] == "start":
                    sigs.add(token[1])
                elif token[0] == "var" and token[1] is not None:
                    restrictions.add(token[1])
        self.names = frozenset(names)
        self.signature_names = frozenset(sigs)
        self.restrictions = frozenset(restrictions)
        satisfied = {frozenset()}
        parents = dict(class_parents or {})
        for cls in set(parents) | restrictions:
            chain, seen = {cls}, {cls}
            parent = parents.get(cls)
            while parent is not None and parent not in seen:
                chain.add(parent)
                seen.add(parent)
                parent = parents.get(parent)
            satisfied.add(frozenset(chain & restrictions))
        self._satisfied = frozenset(satisfied)
        keys: List[tuple] = [END_KEY]
        keys += [("start", s) for s in sorted(sigs)] + [("start", None)]
        for name in sorted(names) + [None]:
            for sat in sorted(satisfied, key=sorted):
                keys.append(("sym", name, sat))
        self.keys = keys
        self.items: List[FrozenSet[Item]] = []
        self.transitions: List[Dict[tuple, int]] = []
        self.skipping: List[bool] = []
        self.finals: List[Tuple[int, ...]] = []
        self._index: Dict[FrozenSet[Item], int] = {}
        self._build()

    def __len__(self):
        return len(self.items)

    def _intern(self, items: FrozenSet[Item]) -> int:
        state = self._index.get(items)
        if state is None:
            if len(self.items) >= self.max_states:
                raise NetTooLargeError(
                    f"deterministic net exceeds {self.max_states} states; "
                    "its size can grow exponentially with the number of patterns"
                )
            state = self._index[items] = len(self.items)
            self.items.append(items)
            self.transitions.append({})
            self.skipping.append(bool(items) and all(skip for _, _, skip in items))
            self.finals.append(tuple(sorted(
                pid for pid, pos, skip in items if skip == 0 and pos == len(self.flats[pid])
            )))
        return state

    def _build(self):
        initial = frozenset((pid, 0, 0) for pid in range(len(self.patterns)))
        queue = deque([self._intern(initial)])
        while queue:
            state = queue.popleft()
            keys = (END_KEY,) if self.skipping[state] else self.keys
            for key in keys:
                nxt = self._step(self.items[state], key)
                if not nxt:
                    continue
                known = len(self.items)
                target = self._intern(nxt)
                if target == known:
                    queue.append(target)
                self.transitions[state][key] = target

    def _step(self, items: FrozenSet[Item], key: tuple) -> FrozenSet[Item]:
        kind = key[0]
        out = set()
        for pid, pos, skip in items:
            if skip:
                if kind == "start":
                    out.add((pid, pos, skip + 1))
                elif kind == "end":
                    out.add((pid, pos + 1, 0) if skip == 1 else (pid, pos, skip - 1))
                else:
                    out.add((pid, pos, skip))
                continue
            flat = self.flats[pid]
            if pos == len(flat):
                continue
            token = flat[pos]
            if token[0] == "var":
                if kind == "sym":
                    if token[1] is None or token[1] in key[2]:
                        out.add((pid, pos + 1, 0))
                elif kind == "start" and token[1] is None:
                    out.add((pid, pos, 1))
            elif token[0] == kind and (kind == "end" or token[1] == key[1]):
                out.add((pid, pos + 1, 0))
        return frozenset(out)

    def _key(self, event) -> tuple:
        kind = event[0]
        if kind == "sym":
            payload = event[1]
            name = payload.name if payload.name in self.names else None
            sat = frozenset(r for r in self.restrictions if payload.in_class(r))
            return ("sym", name, sat)
        if kind == "start":
            return ("start", event[1] if event[1] in self.signature_names else None)
        return END_KEY

    def match(self, subject: Term) -> Iterator[Tuple[int, Substitution]]:
        """Single left-to-right pass over the subject's preorder events."""
        if not is_ground(subject):
            raise InvalidSubjectError(f"subject {subject} contains wildcards")
        events: list = []
        ends: dict = {}
        _flatten_subject(subject, events, ends)
        state: Optional[int] = 0
        items = None  # used only after an event outside the precomputed alphabet
        i = 0
        while i < len(events):
            event = events[i]
            skipping = self.skipping[state] if items is None else all(s for _, _, s in items)
            if skipping and event[0] != "end":
                i = ends[i] + 1 if event[0] == "start" else i + 1
                continue
            key = self._key(event)
            if items is None:
                nxt = self.transitions[state].get(key)
                if nxt is not None:
                    state = nxt
                    i += 1
                    continue
                if key[0] != "sym" or key[2] in self._satisfied:
                    return
                items = self.items[state]
            items = self._step(items, key)
            if not items:
                return
            if items in self._index:
                state, items = self._index[items], None
            i += 1
        if items is None:
            finals = self.finals[state]
        else:
            finals = sorted(p for p, pos, skip in items if skip == 0 and pos == len(self.flats[p]))
        for pid in finals:
            subst = _extract(self.patterns[pid].expression, subject, Substitution())
            if subst is not None:
                yield pid, subst


def build_deterministic_net(patterns: Sequence[Pattern], class_parents=None,
                            max_states: int = DEFAULT_MAX_STATES) -> DiscriminationNet:
    return DiscriminationNet(patterns, class_parents, max_states)


def match_deterministic(net: DiscriminationNet, subject: Term) -> Iterator[Tuple[int, Substitution]]:
    return net.match(subject)
