"""Non-negative solutions of linear Diophantine equations.

Used to distribute the leftover arguments of a commutative subject onto the
sequence variables of a pattern: for every distinct subject term with
multiplicity ``c`` the equation ``sum(m_i * x_i) = c`` is solved, where
``m_i`` is how often sequence variable ``i`` occurs in the pattern.
"""
from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple

from .terms import DOT, PLUS, Application, Signature, Substitution, Term, sort_key


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = gcd(a, b)`` and ``a*u + b*v = g``."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    return old_r, old_u, old_v


def _floor_div(a, b):
    return a // b


def _ceil_div(a, b):
    return -((-a) // b)


def solve_two_var(a: int, b: int, d: int) -> Iterator[Tuple[int, int]]:
    """All ``(x, y) >= 0`` with ``a*x + b*y = d``, by increasing ``x``."""
    g, u, v = extended_gcd(a, b)
    if d % g:
        return
    x0, y0 = u * (d // g), v * (d // g)
    step_x, step_y = b // g, a // g
    # x = x0 + step_x*t >= 0 and y = y0 - step_y*t >= 0
    t_min = _ceil_div(-x0, step_x)
    t_max = _floor_div(y0, step_y)
    for t in range(t_min, t_max + 1):
        yield x0 + step_x * t, y0 - step_y * t


@lru_cache(maxsize=None)
def _solve(coefficients: Tuple[int, ...], constant: int) -> Tuple[Tuple[int, ...], ...]:
    if len(coefficients) == 1:
        (a,) = coefficients
        return ((constant // a,),) if constant % a == 0 else ()
    if len(coefficients) == 2:
        return tuple(solve_two_var(coefficients[0], coefficients[1], constant))
    # a*x + g*w = d with g = gcd(rest), then rest . y = g*w
    head, rest = coefficients[0], coefficients[1:]
    g = 0
    for c in rest:
        g = gcd(g, c)
    solutions = []
    for x, w in solve_two_var(head, g, constant):
        for tail in _solve(rest, g * w):
            solutions.append((x,) + tail)
    return tuple(solutions)


def solve_nonneg(coefficients: Sequence[int], constant: int) -> Iterator[Tuple[int, ...]]:
    """Every non-negative solution vector, lexicographically increasing.

    Results are cached per ``(coefficients, constant)``.
    """
    coefficients = tuple(coefficients)
    if not coefficients or any(c < 1 for c in coefficients):
        raise ValueError("coefficients must be positive integers")
    if constant < 0:
        raise ValueError("constant must be non-negative")
    return iter(_solve(coefficients, constant))


def clear_cache():
    _solve.cache_clear()


class SeqVar(NamedTuple):
    """A sequence variable of a commutative pattern.

    ``kind`` is plus or star; ``dot`` marks a regular variable inside an
    associative-commutative operation, which takes at least one term and is
    wrapped into ``wrap(...)`` when it takes more than one.
    """

    name: Optional[str]
    kind: str
    multiplicity: int = 1
    wrap: Optional[Signature] = None


def _binding(var: SeqVar, terms: list):
    if var.kind == DOT:
        return terms[0] if len(terms) == 1 else Application(var.wrap, tuple(terms))
    return tuple(terms)


def _as_multiset(var: SeqVar, value) -> Counter:
    if var.kind == DOT:
        if isinstance(value, Application) and value.signature == var.wrap:
            return Counter(value.args)
        return Counter([value])
    return Counter(value)


def distribute(
    subjects: Iterable[Term] | Counter,
    seq_vars: Sequence[SeqVar],
    prior: Optional[Substitution] = None,
) -> Iterator[Substitution]:
    """Every way to split ``subjects`` onto ``seq_vars``.

    A variable with multiplicity ``m`` receives the same multiset at each of its
    ``m`` occurrences. Plus and dot variables receive at least one term.
    Sequences are sorted by the total term order.
    """
    counts = subjects if isinstance(subjects, Counter) else Counter(subjects)
    prior = Substitution() if prior is None else prior
    terms = sorted((t for t, c in counts.items() if c > 0), key=sort_key)
    if not seq_vars:
        if not terms:
            yield prior
        return
    coefficients = tuple(v.multiplicity for v in seq_vars)
    per_term = []
    for t in terms:
        solutions = _solve(coefficients, counts[t])
        if not solutions:
            return
        per_term.append(solutions)
    non_empty = [i for i, v in enumerate(seq_vars) if v.kind in (PLUS, DOT)]
    for combination in itertools.product(*per_term):
        if any(all(sol[i] == 0 for sol in combination) for i in non_empty):
            continue
        result = prior
        for i, var in enumerate(seq_vars):
            if var.name is None:
                continue
            assigned = []
            for t, sol in zip(terms, combination):
                assigned.extend([t] * sol[i])
            if var.name in result:
                if _as_multiset(var, result[var.name]) != Counter(assigned):
                    result = None
                    break
                continue
            result = result.bind(var.name, _binding(var, assigned))
            if result is None:
                break
        if result is not None:
            yield result
