"""Maximum matchings of the subject/pattern graph of a commutative operation.

Left nodes are subject arguments, right nodes are pattern arguments, both
listed in total term order so that a node's list index is its order index.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .terms import Substitution, merge

Edge = Tuple[int, int]
Matching = FrozenSet[Edge]


@dataclass
class MatchGraph:
    left: Sequence
    right: Sequence
    edges: Dict[Edge, List[Substitution]] = field(default_factory=dict)

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges) -> "MatchGraph":
        """Graph over anonymous nodes ``0..n-1`` with empty edge labels."""
        return cls(list(range(n_left)), list(range(n_right)), {e: [Substitution()] for e in edges})


def _adjacency(edges, n_left) -> List[List[int]]:
    adj = [[] for _ in range(n_left)]
    for l, r in sorted(edges):
        adj[l].append(r)
    return adj


def _hopcroft_karp(adj: List[List[int]], n_right: int) -> Dict[int, int]:
    n_left = len(adj)
    pair_left = [-1] * n_left
    pair_right = [-1] * n_right
    dist = [0] * n_left
    inf = n_left + n_right + 1

    def bfs():
        queue = deque()
        for l in range(n_left):
            if pair_left[l] < 0:
                dist[l] = 0
                queue.append(l)
            else:
                dist[l] = inf
        found = inf
        while queue:
            l = queue.popleft()
            if dist[l] >= found:
                continue
            for r in adj[l]:
                other = pair_right[r]
                if other < 0:
                    found = min(found, dist[l] + 1)
                elif dist[other] == inf:
                    dist[other] = dist[l] + 1
                    queue.append(other)
        return found != inf

    def dfs(l):
        for r in adj[l]:
            other = pair_right[r]
            if other < 0 or (dist[other] == dist[l] + 1 and dfs(other)):
                pair_left[l] = r
                pair_right[r] = l
                return True
        dist[l] = inf
        return False

    while bfs():
        for l in range(n_left):
            if pair_left[l] < 0:
                dfs(l)
    return {l: r for l, r in enumerate(pair_left) if r >= 0}


def hopcroft_karp(graph: MatchGraph) -> Matching:
    """A maximum-cardinality matching in O(E sqrt(V))."""
    adj = _adjacency(graph.edges, len(graph.left))
    return frozenset(_hopcroft_karp(adj, len(graph.right)).items())


def _alternative(edges: Set[Edge], matching: Set[Edge]) -> Optional[Tuple[Set[Edge], Edge]]:
    """Another matching of the same size plus an edge of ``matching`` it drops.

    Looks first for an even alternating path of length two that starts at an
    unmatched vertex, then for an alternating cycle.
    """
    left_of = {r: l for l, r in matching}
    right_of = dict(matching)
    for l, r in sorted(edges - matching):
        if l not in right_of and r in left_of:
            dropped = (left_of[r], r)
            return (matching - {dropped}) | {(l, r)}, dropped
        if r not in left_of and l in right_of:
            dropped = (l, right_of[l])
            return (matching - {dropped}) | {(l, r)}, dropped
    # Directed graph: matched edges left->right, other edges right->left.
    succ: Dict[tuple, List[tuple]] = {}
    for l, r in sorted(edges):
        if (l, r) in matching:
            succ.setdefault(("L", l), []).append(("R", r))
        else:
            succ.setdefault(("R", r), []).append(("L", l))
    color: Dict[tuple, int] = {}
    for start in sorted(succ):
        if start in color:
            continue
        path = [start]
        iters = [iter(succ.get(start, ()))]
        color[start] = 1
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                color[path.pop()] = 2
                iters.pop()
                continue
            state = color.get(nxt, 0)
            if state == 1:
                cycle = path[path.index(nxt):] + [nxt]
                cycle_edges = set()
                for a, b in zip(cycle, cycle[1:]):
                    cycle_edges.add((a[1], b[1]) if a[0] == "L" else (b[1], a[1]))
                dropped = min(cycle_edges & matching)
                return matching ^ cycle_edges, dropped
            if state == 0:
                color[nxt] = 1
                path.append(nxt)
                iters.append(iter(succ.get(nxt, ())))
    return None


def _enumerate(edges: Set[Edge], matching: Set[Edge]) -> Iterator[Set[Edge]]:
    # Yields maximum matchings of `edges` other than `matching` itself.
    found = _alternative(edges, matching)
    if found is None:
        return
    other, dropped = found
    yield other
    l, r = dropped
    restricted = {e for e in edges if e[0] != l and e[1] != r}
    for m in _enumerate(restricted, matching - {dropped}):
        yield m | {dropped}
    yield from _enumerate(edges - {dropped}, other)


def enumerate_maximum_matchings(graph: MatchGraph) -> Iterator[Matching]:
    """Every maximum matching exactly once, starting with the Hopcroft-Karp one.

    Binary partition on an edge of the current matching: matchings that keep
    it and matchings that avoid it, each seeded with a known member found via
    an alternating cycle or an even alternating path.
    """
    seed = set(hopcroft_karp(graph))
    yield frozenset(seed)
    for m in _enumerate(set(graph.edges), seed):
        yield frozenset(m)


def is_order_preserving(matching: Matching, graph: MatchGraph) -> bool:
    """Reject matchings whose edges cross on equal subject nodes.

    For edges ``(s, p)`` and ``(s', p')`` with equal subjects, ``p > p'`` must
    imply ``s > s'``.
    """
    pairs = sorted(matching)
    for (s1, p1), (s2, p2) in itertools.combinations(pairs, 2):
        if graph.left[s1] == graph.left[s2] and (p1 > p2) != (s1 > s2):
            return False
    return True


def combine_edge_substitutions(
    matching: Matching, graph: MatchGraph, prior: Optional[Substitution] = None
) -> Iterator[Substitution]:
    """Merge one candidate substitution per matched edge with ``prior``."""
    prior = Substitution() if prior is None else prior
    labels = [graph.edges[e] for e in sorted(matching, key=lambda e: (e[1], e[0]))]

    def combine(i, acc):
        if i == len(labels):
            yield acc
            return
        for subst in labels[i]:
            merged = merge(acc, subst)
            if merged is not None:
                yield from combine(i + 1, merged)

    yield from combine(0, prior)
