import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import CLASS_PARENTS, F, SYMBOLS, U, syntactic_case
from termmatch.discrimination_net import DiscriminationNet, build_deterministic_net, match_deterministic
from termmatch.errors import InvalidSubjectError, NetTooLargeError, UnsupportedPatternError
from termmatch.many_to_one import ManyToOneMatcher
from termmatch.one_to_one import match
from termmatch.syntax import parse_pattern, parse_term
from termmatch.terms import Pattern, Registry, Signature, Wildcard

a, b, c = SYMBOLS
x, y = Wildcard.dot("x"), Wildcard.dot("y")


def dn_set(net, subject):
    got = [(pid, s.frozen()) for pid, s in net.match(subject)]
    assert len(got) == len(set(got))
    return set(got)


def reference(patterns, subject):
    return {(pid, s.frozen()) for pid, p in enumerate(patterns) for s in match(subject, p)}


def test_three_list_patterns():
    reg = Registry()
    reg.add_signature(Signature("list"))
    patterns = [parse_pattern(t, reg) for t in ("list(1, 0)", "list(y_, 1)", "list(1, x_)")]
    net = build_deterministic_net(patterns)
    assert dn_set(net, parse_term("list(1, 0)", reg)) == reference(patterns, parse_term("list(1, 0)", reg))
    assert {pid for pid, _ in match_deterministic(net, parse_term("list(1, 1)", reg))} == {1, 2}


def test_wildcard_skips_compound_argument():
    patterns = [Pattern(F(x, a)), Pattern(F(F(b), y))]
    net = DiscriminationNet(patterns)
    subject = F(F(b), a)
    assert dn_set(net, subject) == reference(patterns, subject)
    assert len(dn_set(net, subject)) == 2


def test_nonlinear_patterns_are_checked():
    net = DiscriminationNet([Pattern(F(x, x))])
    assert dn_set(net, F(U(a), U(a))) == {(0, frozenset({("x", U(a))}))}
    assert dn_set(net, F(U(a), U(b))) == set()


def test_symbols_outside_the_net():
    net = DiscriminationNet([Pattern(F(x, a))])
    assert dn_set(net, F(Signature("zzz")(c), a)) == {(0, frozenset({("x", Signature("zzz")(c))}))}
    assert dn_set(net, Signature("other")(a)) == set()


def test_rejects_non_syntactic():
    with pytest.raises(UnsupportedPatternError):
        DiscriminationNet([Pattern(F(Wildcard.star("s")))])
    with pytest.raises(UnsupportedPatternError):
        DiscriminationNet([Pattern(Signature("g", commutative=True)(x, a))])


def test_state_budget():
    rng = random.Random(1)
    patterns = [Pattern(F(*[rng.choice([x, a, b, Wildcard.dot()]) for _ in range(6)])) for _ in range(30)]
    with pytest.raises(NetTooLargeError):
        DiscriminationNet(patterns, max_states=20)


def test_subject_must_be_ground():
    with pytest.raises(InvalidSubjectError):
        list(DiscriminationNet([Pattern(F(x))]).match(F(x)))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_equals_one_to_one(seed):
    patterns, subjects = syntactic_case(random.Random(seed))
    net = DiscriminationNet(patterns, CLASS_PARENTS)
    many = ManyToOneMatcher(patterns)
    for subject in subjects:
        expected = reference(patterns, subject)
        assert dn_set(net, subject) == expected
        assert {(pid, s.frozen()) for pid, s in many.match(subject)} == expected
