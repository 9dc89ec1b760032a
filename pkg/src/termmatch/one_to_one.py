"""Lazy one-to-one matching with backtracking.

``match`` yields every distinct substitution under which the pattern equals the
subject. Constraints are checked as soon as all of their variables are bound.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .diophantine import SeqVar, distribute
from .errors import InvalidSubjectError
from .terms import (
    DOT,
    PLUS,
    Application,
    Constraint,
    Pattern,
    Signature,
    Substitution,
    Symbol,
    Term,
    Wildcard,
    is_ground,
    satisfied_constraints,
    sort_key,
)


def match(subject: Term, pattern: Pattern) -> Iterator[Substitution]:
    if not is_ground(subject):
        raise InvalidSubjectError(f"subject {subject} contains wildcards")
    constraints = pattern.constraints
    if not all(c(Substitution()) for c in constraints if not c.variables):
        return
    seen = set()
    for subst in _match((subject,), pattern.expression, Substitution(), constraints):
        key = subst.frozen()
        if key not in seen:
            seen.add(key)
            yield subst


def _bind(subst, name, value, constraints):
    if name is None:
        return subst
    new = subst.bind(name, value)
    if new is None or new is subst:
        return new
    if not satisfied_constraints(new, constraints, (name,)):
        return None
    return new


def _match(subjects: Sequence[Term], pattern: Term, subst, constraints) -> Iterator[Substitution]:
    if isinstance(pattern, Wildcard):
        if pattern.kind == DOT:
            if len(subjects) != 1:
                return
            value = subjects[0]
            if pattern.class_restriction and not (
                isinstance(value, Symbol) and value.in_class(pattern.class_restriction)
            ):
                return
        else:
            if pattern.kind == PLUS and not subjects:
                return
            value = tuple(subjects)
        new = _bind(subst, pattern.name, value, constraints)
        if new is not None:
            yield new
    elif isinstance(pattern, Symbol):
        if len(subjects) == 1 and subjects[0] == pattern:
            yield subst
    else:
        if len(subjects) != 1:
            return
        subject = subjects[0]
        if not isinstance(subject, Application) or subject.signature != pattern.signature:
            return
        sig = pattern.signature
        if sig.commutative:
            yield from match_commutative(subject.args, pattern.args, subst, constraints, sig)
        else:
            yield from match_sequence(
                subject.args, pattern.args, subst, constraints, sig if sig.associative else None
            )


def _length_bounds(p: Term, assoc: Optional[Signature]) -> Tuple[int, Optional[int]]:
    if isinstance(p, Wildcard):
        if p.kind == DOT:
            if assoc is not None and p.class_restriction is None:
                return 1, None
            return 1, 1
        return (1 if p.kind == PLUS else 0), None
    return 1, 1


def _bound_length(p: Term, subst, assoc) -> Optional[int]:
    if not isinstance(p, Wildcard) or p.name is None or p.name not in subst:
        return None
    value = subst[p.name]
    if p.kind != DOT:
        return len(value) if isinstance(value, tuple) else None
    if assoc is not None and isinstance(value, Application) and value.signature == assoc:
        return len(value.args)
    return 1


def match_sequence(
    subjects: Sequence[Term],
    patterns: Sequence[Term],
    subst: Optional[Substitution] = None,
    constraints: Sequence[Constraint] = (),
    assoc: Optional[Signature] = None,
) -> Iterator[Substitution]:
    """Match an ordered argument list, splitting it into consecutive blocks.

    Inside an associative operation ``assoc`` a dot variable may take several
    arguments and is then bound to ``assoc(...)`` of them.
    """
    subst = Substitution() if subst is None else subst
    subjects = tuple(subjects)
    bounds = [_length_bounds(p, assoc) for p in patterns]
    n = len(patterns)
    min_rest = [0] * (n + 1)
    open_rest = [False] * (n + 1)
    for i in range(n - 1, -1, -1):
        lo, hi = bounds[i]
        min_rest[i] = min_rest[i + 1] + lo
        open_rest[i] = open_rest[i + 1] or hi is None or hi > lo
    if len(subjects) < min_rest[0] or (not open_rest[0] and len(subjects) != min_rest[0]):
        return

    def step(i, pos, subst):
        if i == n:
            if pos == len(subjects):
                yield subst
            return
        p = patterns[i]
        lo, hi = bounds[i]
        available = len(subjects) - pos - min_rest[i + 1]
        if not open_rest[i + 1]:
            lengths = (available,) if lo <= available and (hi is None or available <= hi) else ()
        else:
            top = available if hi is None else min(hi, available)
            lengths = range(lo, top + 1)
        fixed = _bound_length(p, subst, assoc)
        if fixed is not None:
            lengths = (fixed,) if fixed in lengths else ()
        for k in lengths:
            block = subjects[pos:pos + k]
            if k > 1 and isinstance(p, Wildcard) and p.kind == DOT:
                candidates = _bind(subst, p.name, Application(assoc, block), constraints)
                candidates = () if candidates is None else (candidates,)
            else:
                candidates = _match(block, p, subst, constraints)
            for new in candidates:
                yield from step(i + 1, pos + k, new)

    yield from step(0, 0, subst)


def _sequence_value_multiset(value, kind, assoc) -> List[Term]:
    if kind == DOT:
        if assoc is not None and isinstance(value, Application) and value.signature == assoc:
            return list(value.args)
        return [value]
    return list(value)


def _sub_multisets(items: List[Tuple[Term, int]], size: int):
    """Distinct sub-multisets of the given size as lists of terms."""
    if size == 0:
        yield []
        return
    if not items:
        return
    (term, count), rest = items[0], items[1:]
    for take in range(min(count, size), -1, -1):
        for tail in _sub_multisets(rest, size - take):
            yield [term] * take + tail


def match_commutative(
    subjects: Iterable[Term],
    patterns: Sequence[Term],
    subst: Optional[Substitution] = None,
    constraints: Sequence[Constraint] = (),
    sig: Optional[Signature] = None,
) -> Iterator[Substitution]:
    """Match the argument multiset of a commutative operation.

    Pattern arguments are handled in this order: constants, variables that are
    already bound, compound subpatterns, variables bound by those, remaining
    regular variables, and finally sequence variables via :func:`distribute`.
    A branch stops as soon as one step fails.
    """
    subst = Substitution() if subst is None else subst
    assoc = sig if sig is not None and sig.associative else None
    remaining = Counter(subjects)

    compounds = []
    regular = {}  # name -> [restriction, multiplicity]
    anonymous_regular = Counter()  # restriction -> count
    sequence = {}  # name -> [kind, multiplicity]
    anonymous_sequence = []
    for p in patterns:
        if isinstance(p, Wildcard):
            seq_like = p.kind != DOT or (assoc is not None and p.class_restriction is None)
            if p.name is None:
                if seq_like:
                    anonymous_sequence.append(p.kind)
                else:
                    anonymous_regular[p.class_restriction] += 1
            elif seq_like:
                sequence.setdefault(p.name, [p.kind, 0])[1] += 1
            else:
                regular.setdefault(p.name, [p.class_restriction, 0])[1] += 1
        elif is_ground(p):
            if remaining[p] <= 0:
                return
            remaining[p] -= 1
        else:
            compounds.append(p)
    compounds.sort(key=sort_key)

    def remove_bound(remaining, subst, regular, sequence):
        for table in (regular, sequence):
            for name in [n for n in table if n in subst]:
                info = table[name]
                kind = DOT if table is regular else info[0]
                value = subst[name]
                if table is regular:
                    if info[0] is not None and not (
                        isinstance(value, Symbol) and value.in_class(info[0])
                    ):
                        return None
                    terms = [value]
                else:
                    terms = _sequence_value_multiset(value, kind, assoc)
                    if kind == PLUS and not terms:
                        return None
                needed = Counter(terms)
                for t, c in needed.items():
                    if remaining[t] < c * info[1]:
                        return None
                    remaining[t] -= c * info[1]
                del table[name]
        return remaining

    remaining = remove_bound(remaining, subst, regular, sequence)
    if remaining is None:
        return

    def match_compounds(i, min_key, remaining, subst):
        if i == len(compounds):
            yield remaining, subst
            return
        p = compounds[i]
        same_as_next = i + 1 < len(compounds) and compounds[i + 1] == p
        for t in sorted((t for t, c in remaining.items() if c > 0), key=sort_key):
            if not isinstance(t, Application) or t.signature != p.signature:
                continue
            key = sort_key(t)
            if min_key is not None and key < min_key:
                continue
            for new in _match((t,), p, subst, constraints):
                rest = remaining.copy()
                rest[t] -= 1
                # identical subpatterns take subjects in non-decreasing order
                yield from match_compounds(i + 1, key if same_as_next else None, rest, new)

    def match_regular(names, remaining, subst):
        if not names:
            yield remaining, subst
            return
        name, rest_names = names[0], names[1:]
        restriction, mult = regular_left[name]
        for t in sorted((t for t, c in remaining.items() if c >= mult), key=sort_key):
            if restriction is not None and not (isinstance(t, Symbol) and t.in_class(restriction)):
                continue
            new = _bind(subst, name, t, constraints)
            if new is None:
                continue
            rest = remaining.copy()
            rest[t] -= mult
            yield from match_regular(rest_names, rest, new)

    def match_anonymous(groups, remaining):
        if not groups:
            yield remaining
            return
        (restriction, count), rest_groups = groups[0], groups[1:]
        eligible = sorted(
            (
                (t, c)
                for t, c in remaining.items()
                if c > 0
                and (restriction is None or (isinstance(t, Symbol) and t.in_class(restriction)))
            ),
            key=lambda tc: sort_key(tc[0]),
        )
        for chosen in _sub_multisets(eligible, count):
            rest = remaining.copy()
            rest.subtract(chosen)
            yield from match_anonymous(rest_groups, rest)

    for remaining3, subst3 in match_compounds(0, None, remaining, subst):
        regular_left = dict(regular)
        sequence_left = dict(sequence)
        remaining4 = remove_bound(remaining3.copy(), subst3, regular_left, sequence_left)
        if remaining4 is None:
            continue
        groups = sorted(anonymous_regular.items(), key=lambda kv: kv[0] or "")
        for remaining5, subst5 in match_regular(sorted(regular_left), remaining4, subst3):
            for remaining6 in match_anonymous(groups, remaining5):
                seq_vars = [
                    SeqVar(name, kind, mult, assoc)
                    for name, (kind, mult) in sorted(sequence_left.items())
                ]
                seq_vars += [SeqVar(None, kind, 1, assoc) for kind in anonymous_sequence]
                names = [v.name for v in seq_vars if v.name]
                for result in distribute(+remaining6, seq_vars, subst5):
                    if satisfied_constraints(result, constraints, names):
                        yield result
