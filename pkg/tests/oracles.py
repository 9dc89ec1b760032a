"""Brute-force reference implementations and seeded random generators.

Nothing here shares code with the matchers under test beyond the term data
types: commutative arguments are handled by trying every permutation of the
subject, and sequence variables by trying every split point.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter

from termmatch.terms import (
    Application,
    Pattern,
    Signature,
    Symbol,
    Wildcard,
    canonicalize,
    sort_key,
)

F = Signature("f")
G = Signature("g", commutative=True)
H = Signature("h", associative=True)
K = Signature("k", associative=True, commutative=True)
U = Signature("u", arity=1, variadic=False)
SYMBOLS = [Symbol(n) for n in "abc"]


# matching ---------------------------------------------------------------

def _bind(subst, name, value):
    if name is None:
        return subst
    if name in subst:
        return subst if subst[name] == value else None
    new = dict(subst)
    new[name] = value
    return new


def _match_term(s, p, subst):
    if isinstance(p, Wildcard):
        if p.class_restriction is not None and not (isinstance(s, Symbol) and s.in_class(p.class_restriction)):
            return []
        new = _bind(subst, p.name, s)
        return [] if new is None else [new]
    if isinstance(p, Symbol):
        return [subst] if s == p else []
    if not isinstance(s, Application) or s.signature != p.signature:
        return []
    sig = p.signature
    orders = set(itertools.permutations(s.args)) if sig.commutative else [s.args]
    out = []
    for order in orders:
        out += _match_args(list(order), list(p.args), subst, sig)
    return out


def _match_args(subjects, patterns, subst, sig):
    if not patterns:
        return [subst] if not subjects else []
    p, rest = patterns[0], patterns[1:]
    out = []
    if isinstance(p, Wildcard) and p.kind != "dot":
        for k in range(0 if p.kind == "star" else 1, len(subjects) + 1):
            chunk = tuple(subjects[:k])
            if sig.commutative:
                chunk = tuple(sorted(chunk, key=sort_key))
            new = _bind(subst, p.name, chunk)
            if new is not None:
                out += _match_args(subjects[k:], rest, new, sig)
        return out
    if isinstance(p, Wildcard) and sig.associative and p.class_restriction is None:
        for k in range(1, len(subjects) + 1):
            chunk = subjects[0] if k == 1 else canonicalize(Application(sig, tuple(subjects[:k])))
            new = _bind(subst, p.name, chunk)
            if new is not None:
                out += _match_args(subjects[k:], rest, new, sig)
        return out
    if not subjects:
        return []
    for new in _match_term(subjects[0], p, subst):
        out += _match_args(subjects[1:], rest, new, sig)
    return out


def brute_match(subject, pattern: Pattern) -> set:
    """All matches as a set of frozen ``(name, value)`` item sets."""
    found = set()
    for subst in _match_term(subject, pattern.expression, {}):
        if all(c(subst) for c in pattern.constraints):
            found.add(frozenset(subst.items()))
    return found


# diophantine, bipartite --------------------------------------------------

def brute_nonneg(coefficients, constant) -> set:
    ranges = [range(constant // a + 1) for a in coefficients]
    return {xs for xs in itertools.product(*ranges) if sum(a * x for a, x in zip(coefficients, xs)) == constant}


def brute_maximum_matchings(n_left, n_right, edges) -> set:
    """Every maximum matching of a bipartite graph given as a set of (l, r) edges.

    Lists all matchings (each left node unmatched or paired with a free
    neighbour) and keeps the largest.
    """
    adj = [sorted(r for l2, r in edges if l2 == l) for l in range(n_left)]
    found = []

    def walk(l, used, chosen):
        if l == n_left:
            found.append(frozenset(chosen))
            return
        walk(l + 1, used, chosen)
        for r in adj[l]:
            if r not in used:
                walk(l + 1, used | {r}, chosen + [(l, r)])

    walk(0, frozenset(), [])
    best = max(len(m) for m in found)
    return {m for m in found if len(m) == best}


def doubly_lexical_graphs(n_left, n_right):
    """Bipartite graphs whose 0/1 matrix has lexicographically sorted rows and columns.

    Every 0/1 matrix can be permuted into this form, so together these cover
    every graph on ``n_left + n_right`` nodes up to relabeling.
    """
    rows_all = list(itertools.product((0, 1), repeat=n_right))
    for rows in itertools.combinations_with_replacement(rows_all, n_left):
        cols = list(zip(*rows)) if n_left else [()] * n_right
        if all(cols[i] <= cols[i + 1] for i in range(len(cols) - 1)):
            yield {(l, r) for l in range(n_left) for r in range(n_right) if rows[l][r]}


# random generators ------------------------------------------------------

def random_ground(rng: random.Random, depth=2, sigs=(F, G, H, K)):
    if depth == 0 or rng.random() < 0.45:
        return rng.choice(SYMBOLS)
    sig = rng.choice(sigs)
    low = 2 if sig.associative else 1
    return canonicalize(Application(sig, tuple(random_ground(rng, depth - 1, sigs) for _ in range(rng.randint(low, 3)))))


def random_pattern_term(rng: random.Random, depth=2, sigs=(F, G, H, K), fresh=None, max_args=3):
    """Random pattern term.

    Dot variables ``x``, ``y`` may repeat anywhere. Sequence variables get a
    name that is only reused among siblings, so each one lives in a single
    argument list.
    """
    fresh = fresh if fresh is not None else itertools.count()
    if depth == 0 or rng.random() < 0.35:
        r = rng.random()
        if r < 0.4:
            return rng.choice(SYMBOLS)
        if r < 0.9:
            return Wildcard.dot(rng.choice("xy"))
        return Wildcard.dot()
    sig = rng.choice(sigs)
    args = []
    seq_names = [f"s{next(fresh)}", f"t{next(fresh)}"]
    kinds = {n: rng.choice(("plus", "star")) for n in seq_names}
    for _ in range(rng.randint(1, max_args)):
        if rng.random() < 0.3:
            name = rng.choice(seq_names + [None])
            kind = kinds[name] if name else rng.choice(("plus", "star"))
            args.append(Wildcard(kind, name))
        else:
            args.append(random_pattern_term(rng, depth - 1, sigs, fresh, max_args))
    return canonicalize(Application(sig, tuple(args)))


def instance_of(rng: random.Random, pattern_term):
    """A ground term obtained by filling in the pattern's variables randomly."""
    values = {}

    def fill(t, sig=None):
        if isinstance(t, Wildcard):
            if t.kind == "dot":
                if t.name is None:
                    return (random_ground(rng, 1),)
                if t.name not in values:
                    values[t.name] = random_ground(rng, 1)
                return (values[t.name],)
            lo = 1 if t.kind == "plus" else 0
            key = (t.name, sig)
            if t.name is None or key not in values:
                chunk = tuple(random_ground(rng, 1) for _ in range(rng.randint(lo, 2)))
                if t.name is None:
                    return chunk
                values[key] = chunk
            return values[key]
        if isinstance(t, Symbol):
            return (t,)
        args = tuple(a for arg in t.args for a in fill(arg, t.signature))
        # one-argument associative applications are degenerate; keep at least two
        while len(args) < (2 if t.signature.associative else 0):
            args += (rng.choice(SYMBOLS),)
        return (Application(t.signature, args),)

    (result,) = fill(pattern_term)
    return canonicalize(result)


def as_set(substs) -> set:
    return {frozenset(s.items()) for s in substs}


def multiset(items) -> Counter:
    return Counter(items)


def widest(t) -> int:
    """Largest argument count of any application inside ``t``."""
    if not isinstance(t, Application):
        return 0
    return max([len(t.args)] + [widest(a) for a in t.args])


def commutative_case(rng: random.Random, sigs=(F, G, H, K), width=4):
    """A (subject, pattern term) pair with at most ``width`` arguments per application, or None."""
    p = random_pattern_term(rng, 2, sigs, max_args=width)
    if not isinstance(p, Application):
        return None
    s = instance_of(rng, p) if rng.random() < 0.7 else random_ground(rng, 2, sigs)
    if widest(s) > width or widest(p) > width:
        return None
    return s, p


def pattern_set_case(rng: random.Random, max_patterns=30, sigs=(F, G, H, K)):
    """Up to ``max_patterns`` patterns and a subject that is an instance of one of them."""
    size = rng.randint(1, max_patterns)
    patterns, subjects = [], []
    for _ in range(size * 4):
        if len(patterns) == size:
            break
        case = commutative_case(rng, sigs)
        if case is not None:
            subjects.append(case[0])
            patterns.append(Pattern(case[1]))
    if not patterns:
        return None
    return patterns, rng.choice(subjects)


CLASS_PARENTS = {"Matrix": None, "Square": "Matrix", "Vector": None}
CLASSED = [
    Symbol("M", "Matrix", ancestors=frozenset({"Matrix"})),
    Symbol("S", "Square", ancestors=frozenset({"Square", "Matrix"})),
    Symbol("v", "Vector", ancestors=frozenset({"Vector"})),
]


def _syntactic_term(rng, depth, ground):
    if depth == 0 or rng.random() < 0.4:
        if not ground and rng.random() < 0.5:
            restriction = rng.choice([None, None, "Matrix", "Square", "Vector"])
            return Wildcard("dot", rng.choice(["x", "y", None]), restriction)
        return rng.choice(SYMBOLS + CLASSED)
    if rng.random() < 0.3:
        return Application(U, (_syntactic_term(rng, depth - 1, ground),))
    return Application(F, tuple(_syntactic_term(rng, depth - 1, ground) for _ in range(rng.randint(0, 3))))


def syntactic_case(rng: random.Random, max_patterns=20):
    """Syntactic patterns over ``f`` and ``u`` plus a few subjects, some of them instances."""
    patterns = [Pattern(_syntactic_term(rng, 3, False)) for _ in range(rng.randint(1, max_patterns))]
    subjects = [_syntactic_term(rng, 3, True) for _ in range(3)]
    for p in rng.sample(patterns, min(3, len(patterns))):
        subjects.append(_ground_instance(rng, p.expression, {}))
    return patterns, subjects


def _ground_instance(rng, t, values):
    if isinstance(t, Wildcard):
        if t.name is not None and t.name in values:
            return values[t.name]
        if t.class_restriction is not None:
            choices = [s for s in CLASSED if t.class_restriction in s.ancestors]
            value = rng.choice(choices)
        else:
            value = _syntactic_term(rng, 1, True)
        if t.name is not None:
            values[t.name] = value
        return value
    if isinstance(t, Symbol):
        return t
    return Application(t.signature, tuple(_ground_instance(rng, a, values) for a in t.args))
