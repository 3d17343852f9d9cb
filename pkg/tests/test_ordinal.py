import pickle

import pytest
from hypothesis import given, strategies as st

from stonespace.errors import ParseError, UnderflowError, ZeroOrdinalError
from stonespace.ordinal import (
    OMEGA,
    ZERO,
    LimitKind,
    Ordinal,
    add,
    cb_rank,
    classify_limit,
    compare,
    format_ordinal,
    left_subtract,
    omega_power,
    ordinal,
    parse_ordinal,
)

W = ordinal


def ordinals(max_depth=2):
    """Hypothesis strategy for CNF ordinals with small nested exponents."""
    if max_depth == 0:
        exps = st.integers(0, 4).map(Ordinal.from_int)
    else:
        exps = st.one_of(st.integers(0, 4).map(Ordinal.from_int), ordinals(max_depth - 1))
    terms = st.lists(st.tuples(exps, st.integers(1, 9)), max_size=3)

    def build(ts):
        merged = {}
        for e, c in ts:
            merged[e] = merged.get(e, 0) + c
        return Ordinal(sorted(merged.items(), key=lambda t: t[0], reverse=True))

    return terms.map(build)


@pytest.mark.parametrize("a,b,want", [
    ("0", "0", 0),
    ("w", "5", 1),
    ("w^2*3+w", "w^2*3+2", 1),
    ("w^w", "w^9*9", 1),
    ("w+1", "w+2", -1),
])
def test_compare_examples(a, b, want):
    assert compare(W(a), W(b)) == want


@pytest.mark.parametrize("a,b,want", [
    ("3", "w", "w"),
    ("w^2*2+w", "w^2", "w^2*3"),
    ("w^2+w", "0", "w^2+w"),
    ("w+5", "3", "w+8"),
])
def test_add_examples(a, b, want):
    assert add(W(a), W(b)) == W(want)


@pytest.mark.parametrize("a,want", [("w^2*3+w*5", "1"), ("7", "0"), ("w^w", "w")])
def test_cb_rank_examples(a, want):
    assert cb_rank(W(a)) == W(want)


def test_cb_rank_of_zero_raises():
    with pytest.raises(ZeroOrdinalError):
        cb_rank(ZERO)


@pytest.mark.parametrize("a,b,want", [("w^2", "w^2", "0"), ("w^2*2", "w^2", "w^2"), ("w+3", "w", "3")])
def test_left_subtract_examples(a, b, want):
    assert left_subtract(W(a), W(b)) == W(want)
    assert add(W(b), W(want)) == W(a)


def test_left_subtract_underflow():
    with pytest.raises(UnderflowError):
        left_subtract(W(3), OMEGA)


@pytest.mark.parametrize("a,kind", [("0", LimitKind.ZERO), ("w*2", LimitKind.LIMIT), ("w^2+1", LimitKind.SUCCESSOR)])
def test_classify_limit(a, kind):
    assert classify_limit(W(a)) is kind


@pytest.mark.parametrize("text", ["w^2*3 + w*5 + 4", "w^(w+1)*2 + 7", "0", "17", "w^(w^2)"])
def test_parse_format_round_trip(text):
    a = parse_ordinal(text)
    assert parse_ordinal(format_ordinal(a)) == a


@pytest.mark.parametrize("bad", ["", "w^", "w*", "3+", "x", "w^(2", "w**2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_ordinal(bad)


def test_shorthand_exponent():
    assert parse_ordinal("w^w") == omega_power(OMEGA)


def test_invalid_construction():
    with pytest.raises(ValueError):
        Ordinal([(ZERO, 0)])
    with pytest.raises(ValueError):
        Ordinal([(ZERO, 1), (OMEGA, 1)])


def test_int_interop_and_pickle():
    assert W(5) == 5 and W("w") > 10**9
    assert int(W("12")) == 12
    assert pickle.loads(pickle.dumps(W("w^2+3"))) == W("w^2+3")
    with pytest.raises(ValueError):
        int(OMEGA)


@given(ordinals(), ordinals(), ordinals())
def test_addition_is_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals())
def test_add_monotone_and_left_subtract_inverse(a, b):
    s = add(a, b)
    assert s >= a and s >= b
    assert left_subtract(s, a) == b


@given(ordinals(), ordinals())
def test_compare_is_antisymmetric_total(a, b):
    assert compare(a, b) == -compare(b, a)
    assert (compare(a, b) == 0) == (a == b)


@given(ordinals())
def test_format_parse_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


@given(ordinals())
def test_successor_classification(a):
    if a.is_zero():
        return
    assert a.succ().is_successor()
    assert a.succ().pred() == a
    assert cb_rank(a.succ()) == ZERO
