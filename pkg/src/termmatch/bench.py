"""Seeded benchmark corpus and timing harness.

The ``linalg`` suite uses an associative ``Times`` and an associative,
commutative ``Plus`` with sequence variables and property constraints. The
``syntactic`` suite drops sequence variables and associativity and restricts
wildcards by symbol class instead of constraints, so the deterministic net
applies to it.
"""
from __future__ import annotations

import csv
import os
import random
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .constraint_lang import parse_constraint
from .discrimination_net import DiscriminationNet
from .many_to_one import ManyToOneMatcher
from .one_to_one import match
from .syntax import format_term
from .terms import Pattern, Registry, Signature, Term, Wildcard

SUITES = ("linalg", "syntactic")
CSV_HEADER = ["matcher", "patterns", "subjects", "setup_s", "match_s", "matches"]

# class -> properties carried by its symbols
MATRIX_CLASSES = {
    "Matrix": (),
    "Square": ("square",),
    "Symmetric": ("square", "symmetric"),
    "Triangular": ("square", "triangular"),
    "Diagonal": ("square", "symmetric", "triangular", "diagonal"),
}
CLASS_PARENTS = {"Matrix": None, "Square": "Matrix", "Symmetric": "Square",
                 "Triangular": "Square", "Diagonal": "Triangular"}
PROPERTIES = ("square", "symmetric", "triangular", "diagonal")
UNARY = ("Transpose", "Inverse", "InverseTranspose")

# 61 sums, 135 products, 3 single matrices out of 199
SUM_SHARE, SINGLE_SHARE = 61 / 199, 3 / 199


class BenchMismatch(Exception):
    """Matchers disagreed on the matches for a subject."""


@dataclass
class BenchConfig:
    suite: str = "linalg"
    patterns: int = 40
    subjects: int = 100
    seed: Optional[int] = None
    repetitions: int = 1
    matchers: Tuple[str, ...] = ()
    matrices: int = 12
    factor_mean: float = 5.0
    factor_sd: float = 1.0
    product_share: float = 0.7

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.patterns < 1 or self.subjects < 1 or self.repetitions < 1:
            raise ValueError("pattern count, subject count and repetitions must be positive")
        if self.seed is None:
            self.seed = int(os.environ.get("TERMMATCH_SEED", "0"))
        if not self.matchers:
            self.matchers = ("one-to-one", "many-to-one") + (("dn",) if self.suite == "syntactic" else ())


@dataclass
class Corpus:
    registry: Registry
    patterns: List[Pattern]
    subjects: List[Term]
    class_parents: Dict[str, Optional[str]] = field(default_factory=dict)


@dataclass
class BenchRow:
    matcher: str
    patterns: int
    subjects: int
    setup_s: float
    match_s: float
    matches: int

    def as_list(self):
        return [self.matcher, self.patterns, self.subjects, f"{self.setup_s:.6f}", f"{self.match_s:.6f}", self.matches]


def _registry(suite: str, rng: random.Random, matrices: int) -> Registry:
    reg = Registry()
    assoc = suite == "linalg"
    reg.add_signature(Signature("Times", variadic=True, associative=assoc))
    reg.add_signature(Signature("Plus", variadic=True, associative=True, commutative=True))
    for name in UNARY:
        reg.add_signature(Signature(name, arity=1, variadic=False))
    for cls, parent in CLASS_PARENTS.items():
        reg.add_class(cls, parent)
    for i in range(1, matrices + 1):
        cls = rng.choice(list(MATRIX_CLASSES))
        reg.add_symbol(f"M{i}", cls, MATRIX_CLASSES[cls])
    return reg


def _factor_count(rng: random.Random, config: BenchConfig) -> int:
    return max(2, round(rng.gauss(config.factor_mean, config.factor_sd)))


def _decorate(rng: random.Random, reg: Registry, t: Term) -> Term:
    r = rng.random()
    if r < 0.6:
        return t
    return reg.signature(UNARY[min(int((r - 0.6) / 0.4 * 3), 2)])(t)


def generate_subjects(config: BenchConfig, reg: Registry, rng: random.Random) -> List[Term]:
    matrices = [reg.symbol(name) for name in sorted(reg.symbols)]
    times, plus = reg.signature("Times"), reg.signature("Plus")

    def product(k):
        return times(*(_decorate(rng, reg, rng.choice(matrices)) for _ in range(k)))

    subjects = []
    for _ in range(config.subjects):
        if config.suite == "syntactic" or rng.random() < config.product_share:
            subjects.append(product(_factor_count(rng, config)))
        else:
            terms = []
            for _ in range(max(2, round(rng.gauss(3, 1)))):
                k = rng.choice((1, 1, 2, 3))
                terms.append(_decorate(rng, reg, rng.choice(matrices)) if k == 1 else product(k))
            subjects.append(plus(*terms))
    return subjects


def _linalg_factor(rng, reg, name, constraints):
    var = Wildcard.symbol(name, "Matrix")
    if rng.random() < 0.6:
        constraints.append(f'has_property({name}, "{rng.choice(PROPERTIES)}")')
    if rng.random() < 0.6:
        return var
    return reg.signature(rng.choice(UNARY))(var)


def _linalg_pattern(rng, reg, shape) -> Pattern:
    constraints: List[str] = []
    times, plus = reg.signature("Times"), reg.signature("Plus")
    if shape == "single":
        expression = _linalg_factor(rng, reg, "A", constraints)
    elif shape == "product":
        k = 2 if rng.random() < 0.7 else 3
        factors = [_linalg_factor(rng, reg, "ABC"[i], constraints) for i in range(k)]
        expression = times(Wildcard.star("h"), *factors, Wildcard.star("t"))
    else:
        first = times(*(_linalg_factor(rng, reg, v, constraints) for v in "AB"))
        second = _linalg_factor(rng, reg, "C", constraints)
        expression = plus(first, second, Wildcard.star("r"))
    return Pattern(expression, *(parse_constraint(" and ".join(constraints)),) if constraints else ())


def _syntactic_pattern(rng, reg, config) -> Pattern:
    classes = list(MATRIX_CLASSES)
    factors = []
    for i in range(_factor_count(rng, config)):
        var = Wildcard.symbol(f"X{i}", "Matrix" if rng.random() < 0.5 else rng.choice(classes))
        factors.append(var if rng.random() < 0.6 else reg.signature(rng.choice(UNARY))(var))
    return Pattern(reg.signature("Times")(*factors))


def generate_corpus(config: BenchConfig) -> Corpus:
    """Pattern set and subjects; identical for identical configs."""
    rng = random.Random(config.seed)
    reg = _registry(config.suite, rng, config.matrices)
    patterns = []
    if config.suite == "linalg":
        n_sum = round(config.patterns * SUM_SHARE)
        n_single = round(config.patterns * SINGLE_SHARE)
        shapes = ["sum"] * n_sum + ["single"] * n_single
        shapes += ["product"] * (config.patterns - len(shapes))
        rng.shuffle(shapes)
        patterns = [_linalg_pattern(rng, reg, shape) for shape in shapes]
    else:
        patterns = [_syntactic_pattern(rng, reg, config) for _ in range(config.patterns)]
    subjects = generate_subjects(config, reg, rng)
    return Corpus(reg, patterns, subjects, dict(reg.class_parents))


def corpus_text(corpus: Corpus) -> str:
    return "\n".join(format_term(s) for s in corpus.subjects) + "\n"


def _run_one_to_one(corpus: Corpus):
    start = time.perf_counter()
    found = [
        {(pid, subst.frozen()) for pid, p in enumerate(corpus.patterns) for subst in match(s, p)}
        for s in corpus.subjects
    ]
    return 0.0, time.perf_counter() - start, found


def _run_net(corpus: Corpus, build):
    start = time.perf_counter()
    net = build(corpus)
    setup = time.perf_counter() - start
    start = time.perf_counter()
    found = [{(pid, subst.frozen()) for pid, subst in net.match(s)} for s in corpus.subjects]
    return setup, time.perf_counter() - start, found


RUNNERS = {
    "one-to-one": _run_one_to_one,
    "many-to-one": lambda c: _run_net(c, lambda c: ManyToOneMatcher(c.patterns)),
    "dn": lambda c: _run_net(c, lambda c: DiscriminationNet(c.patterns, c.class_parents)),
}


def run_bench(config: BenchConfig, corpus: Optional[Corpus] = None) -> List[BenchRow]:
    """Time every configured matcher and check they agree on every subject.

    Raises :class:`BenchMismatch` on any disagreement.
    """
    corpus = corpus or generate_corpus(config)
    rows, reference = [], None
    for name in config.matchers:
        if name not in RUNNERS:
            raise ValueError(f"unknown matcher {name!r}")
        setups, matches = [], []
        for _ in range(config.repetitions):
            setup, match_time, found = RUNNERS[name](corpus)
            setups.append(setup)
            matches.append(match_time)
        if reference is None:
            reference = (name, found)
        else:
            for i, (expected, got) in enumerate(zip(reference[1], found)):
                if expected != got:
                    raise BenchMismatch(
                        f"{name} and {reference[0]} disagree on subject {format_term(corpus.subjects[i])}"
                    )
        rows.append(BenchRow(name, len(corpus.patterns), len(corpus.subjects),
                             sum(setups) / len(setups), sum(matches) / len(matches),
                             sum(len(f) for f in found)))
    return rows


def write_csv(rows: Sequence[BenchRow], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_list())
