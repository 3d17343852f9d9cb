import random

import pytest

from stonespace.errors import EmptySpaceError, ParseError
from stonespace.ordinal import ONE, ZERO, ordinal
from stonespace.ordspace import (
    EMPTY,
    ScatteredType,
    SymbolicExtendedPO,
    TABLE,
    canonical_g,
    class_of_type,
    classify,
    derivative_type,
    homeomorphic_ord,
    monoid_add,
    ordinal_of_type,
    parse_type,
    scattered_type_to_extended_po,
    type_of,
)
from stonespace.posys import predicted_invariants
from stonespace.spacecalc import random_ordinal

from oracles import rule_add, random_type_tuple

W = ordinal


def T(text):
    return parse_type(text)


@pytest.mark.parametrize("alpha,cls", [
    ("5", "V(0).5"),
    ("w^2*3", "V(2).2 (+) U(2)"),
    ("w^3*2+w", "V(3).2 (+) U(1)"),
    ("w^2+4", "V(2).1"),
    ("w^w", "U(w)"),
    ("0", "empty"),
])
def test_classify_examples(alpha, cls):
    assert str(classify(W(alpha))) == cls


@pytest.mark.parametrize("alpha,g", [
    ("w^2+4", "w^2+1"),
    ("w^3", "w^3"),
    ("w^3*2+w^2*5+w", "w^3*2+w"),
    ("w^(w+1)", "w^(w+1)"),
])
def test_canonical_g_examples(alpha, g):
    assert canonical_g(W(alpha)) == W(g)


@pytest.mark.parametrize("alpha,t", [("w^2*3+1", "(3,0,3)"), ("w^w", "(w,w)"), ("0", "(0,0)")])
def test_type_of_examples(alpha, t):
    assert type_of(W(alpha)) == T(t)
    assert str(type_of(W(alpha))) == t


@pytest.mark.parametrize("s,t,want", [
    ("(2,2)", "(3,3)", "(3,3)"),
    ("(3,1,2)", "(3,0,4)", "(3,1,6)"),
    ("(4,0,2)", "(3,3)", "(4,3,2)"),
    ("(3,0,1)", "(5,5)", "(5,5)"),
])
def test_monoid_examples(s, t, want):
    assert monoid_add(T(s), T(t)) == T(want)
    assert monoid_add(T(t), T(s)) == T(want)


@pytest.mark.parametrize("a,b,want", [("w^2+4", "w^2+9", True), ("w", "w+1", False), ("w^2*3", "w^2*3", True)])
def test_homeomorphic_ord(a, b, want):
    assert homeomorphic_ord(W(a), W(b)) is want


def test_derivative_type_examples():
    a = W("w^2*3+w*5+4")
    assert derivative_type(a, 0) == a
    # the limits below alpha are w*g for 1 <= g <= w*3+5
    assert derivative_type(a, 1) == W("w*3+6")
    # {w^2, w^2*2}
    assert derivative_type(W("w^2*3"), 2) == W(2)
    assert derivative_type(W("w^2*3+1"), 2) == W(3)


def test_derivative_type_by_enumeration():
    # count the points of rank >= xi below alpha directly when that count is finite
    for c in range(3):
        for d in range(3):
            for e in range(3):
                alpha = W(f"w^2*{c} + w*{d} + {e}")
                tops = [x for x in range(1, c + 1) if (x, 0, 0) < (c, d, e)]
                assert derivative_type(alpha, 2) == len(tops)
                if c == 0:
                    limits = [y for y in range(1, d + 1) if (y, 0) < (d, e)]
                    assert derivative_type(alpha, 1) == len(limits)


@pytest.mark.parametrize("seed", range(5))
def test_derivative_recursion(seed):
    rng = random.Random(seed)
    for _ in range(100):
        a = random_ordinal(rng)
        t = type_of(a)
        for xi in range(0, 4):
            assert derivative_type(a, xi + 1) == derivative_type(derivative_type(a, xi), 1)
        assert derivative_type(a, t.nu) == ZERO


def test_table_partition_and_idempotence():
    rng = random.Random(11)
    for _ in range(500):
        a = random_ordinal(rng, max_exp=5)
        assert sum(row.matches(a) for row in TABLE) == 1
        g = canonical_g(a)
        assert canonical_g(g) == g
        assert type_of(g) == type_of(a)
        assert class_of_type(type_of(a)) == classify(a)
        assert ordinal_of_type(type_of(a)) == g


def test_monoid_laws_random():
    rng = random.Random(5)
    to_type = lambda t: ScatteredType(*t)
    for _ in range(300):
        s, t, u = (random_type_tuple(rng) for _ in range(3))
        S, Tt, U = map(to_type, (s, t, u))
        assert monoid_add(S, Tt) == to_type(rule_add(s, t))
        assert monoid_add(S, Tt) == monoid_add(Tt, S)
        assert monoid_add(monoid_add(S, Tt), U) == monoid_add(S, monoid_add(Tt, U))
        assert monoid_add(S, EMPTY) == S


def test_type_validation():
    with pytest.raises(ValueError):
        ScatteredType(W("w"), ZERO, 1)
    with pytest.raises(ValueError):
        ScatteredType(W(3), W(3), 1)
    with pytest.raises(ValueError):
        ScatteredType(W(3), ONE)
    with pytest.raises(ValueError):
        ScatteredType.limit(0)


@pytest.mark.parametrize("bad", ["3,0,2", "(3)", "(w,w,w,w)", "(x,1)"])
def test_parse_type_errors(bad):
    with pytest.raises(ParseError):
        parse_type(bad)


@pytest.mark.parametrize("t,L,f", [
    ("(3,0,2)", {0, 1, 2}, {2: 2}),
    ("(2,2)", set(), {}),
    ("(2,1,1)", {1}, {1: 1}),
])
def test_type_to_extended_po(t, L, f):
    e = scattered_type_to_extended_po(T(t))
    assert set(e.L) == L and dict(e.f) == f
    pred = predicted_invariants(e)
    typ = T(t)
    assert (pred.nu, pred.rho, pred.n) == (int(typ.nu), int(typ.rho), typ.n)


def test_type_to_extended_po_symbolic_and_empty():
    e = scattered_type_to_extended_po(T("(w+1,3,2)"))
    assert isinstance(e, SymbolicExtendedPO)
    assert "f(w)=2" in e.describe()
    assert "L empty" in scattered_type_to_extended_po(T("(w,w)")).describe()
    with pytest.raises(EmptySpaceError):
        scattered_type_to_extended_po(EMPTY)
