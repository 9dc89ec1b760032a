import random

import pytest
from hypothesis import given, strategies as st

from oracles import F, G, H, K, U, SYMBOLS
from strategies import ground_terms, pattern_terms, raw_ground
from termmatch.errors import IncompleteSubstitutionError, MalformedTermError, ShapeError
from termmatch.terms import (
    Application,
    Constraint,
    Pattern,
    Registry,
    Signature,
    Substitution,
    Symbol,
    Wildcard,
    canonicalize,
    is_syntactic,
    merge,
    sort_key,
    substitute,
    total_order,
    variables_of,
)

a, b, c = SYMBOLS
x, y = Wildcard.dot("x"), Wildcard.dot("y")


def test_associative_requires_variadic():
    with pytest.raises(ValueError):
        Signature("bad", arity=2, variadic=False, associative=True)


def test_signature_call_builds_canonical_terms():
    assert K(b, K(c, a)) == Application(K, (a, b, c))
    assert H(H(a, b), c).args == (a, b, c)
    assert G(G(b, a), a).args == (a, G(a, b))


def test_arity_checked():
    with pytest.raises(MalformedTermError):
        U(a, b)
    with pytest.raises(MalformedTermError):
        Signature("pair", arity=2, variadic=False)(a)
    # a sequence wildcard can stand for any number of arguments
    assert U(Wildcard.star("s")).args == (Wildcard.star("s"),)


def test_wildcard_class_restriction_only_on_dot():
    assert Wildcard.symbol("A", "Matrix").class_restriction == "Matrix"
    with pytest.raises(ValueError):
        Wildcard("plus", "x", "Matrix")
    with pytest.raises(ValueError):
        Wildcard("triple", "x")


def test_applications_are_immutable():
    t = F(a)
    with pytest.raises(AttributeError):
        t.args = ()


def test_symbol_identity_is_its_name():
    assert Symbol("a", "Matrix", frozenset({"square"})) == Symbol("a")
    assert hash(Symbol("a", "Matrix")) == hash(Symbol("a"))


def test_numeric_symbols_order_numerically():
    keys = sorted([Symbol("10"), Symbol("9"), Symbol("b"), Symbol("0")], key=sort_key)
    assert [s.name for s in keys] == ["0", "9", "10", "b"]


def test_kind_order():
    assert total_order(a, F(a)) == -1
    assert total_order(F(a), x) == -1
    assert total_order(x, x) == 0


@given(ground_terms)
def test_canonicalize_idempotent(t):
    assert canonicalize(t) == t


@given(pattern_terms)
def test_canonicalize_idempotent_on_patterns(t):
    assert canonicalize(t) == t


@given(st.lists(raw_ground, min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_commutative_argument_order_is_irrelevant(args, rng):
    shuffled = list(args)
    rng.shuffle(shuffled)
    assert canonicalize(Application(K, tuple(args))) == canonicalize(Application(K, tuple(shuffled)))
    assert canonicalize(Application(G, tuple(args))) == canonicalize(Application(G, tuple(shuffled)))


@given(ground_terms)
def test_no_nested_associative_applications(t):
    def check(u):
        if isinstance(u, Application):
            for arg in u.args:
                assert not (u.signature.associative and isinstance(arg, Application) and arg.signature == u.signature)
                check(arg)
            if u.signature.commutative:
                assert list(u.args) == sorted(u.args, key=sort_key)

    check(t)


@given(ground_terms, ground_terms, ground_terms)
def test_total_order_is_a_total_order(s, t, u):
    assert total_order(s, t) == -total_order(t, s)
    assert (total_order(s, t) == 0) == (s == t)
    if total_order(s, t) <= 0 and total_order(t, u) <= 0:
        assert total_order(s, u) <= 0


@given(ground_terms, ground_terms)
def test_equal_terms_hash_equal(s, t):
    if s == t:
        assert hash(s) == hash(t)


def test_substitution_bind():
    s = Substitution(x=a)
    assert s.bind("x", a) is s
    assert s.bind("x", b) is None
    t = s.bind("y", (a, b))
    assert t == {"x": a, "y": (a, b)} and s == {"x": a}


def test_merge():
    assert merge({"x": a}, {"y": b}) == {"x": a, "y": b}
    assert merge({"x": a}, {"x": a}) == {"x": a}
    assert merge({"x": a}, {"x": b}) is None


def test_substitute_splices_sequences():
    p = F(x, Wildcard.star("s"), K(Wildcard.plus("t"), y))
    got = substitute(p, {"x": a, "s": (b, c), "t": (c, a), "y": K(b, b)})
    assert got == F(a, b, c, K(a, b, b, c))


def test_substitute_errors():
    with pytest.raises(IncompleteSubstitutionError):
        substitute(F(x), {})
    with pytest.raises(IncompleteSubstitutionError):
        substitute(F(Wildcard.dot()), {})
    with pytest.raises(ShapeError):
        substitute(x, {"x": (a, b)})


def test_pattern_rejects_bare_sequence_and_foreign_constraint_variables():
    with pytest.raises(ShapeError):
        Pattern(Wildcard.star("s"))
    with pytest.raises(ValueError):
        Pattern(F(x), Constraint(lambda y: True))
    p = Pattern(F(x, y), Constraint(lambda x, y: x != y))
    assert p.constraints[0]({"x": a, "y": b})


def test_variables_of_counts_occurrences():
    assert variables_of(F(x, x, Wildcard.star("s"), Wildcard.dot())) == {("x", "dot"): 2, ("s", "star"): 1}


def test_is_syntactic():
    assert is_syntactic(F(x, U(a)))
    assert not is_syntactic(F(Wildcard.star("s")))
    assert not is_syntactic(G(x, a))
    assert not is_syntactic(H(x, a))
    assert not is_syntactic(Pattern(F(x), Constraint(lambda x: True)))


def test_registry_classes():
    reg = Registry()
    reg.add_class("Matrix")
    reg.add_class("Square", "Matrix")
    m = reg.add_symbol("M", "Square", ["square"])
    assert m.in_class("Matrix") and m.in_class("Square") and not m.in_class("Vector")
    assert "square" in m.properties
    with pytest.raises(ValueError):
        reg.add_class("Odd", "Missing")
    reg.add_signature(Signature("f"))
    with pytest.raises(ValueError):
        reg.add_signature(Signature("f", commutative=True))


def test_term_generator_is_seeded():
    from oracles import random_ground

    first = [random_ground(random.Random(5)) for _ in range(3)]
    assert first[0] == first[1] == first[2]
