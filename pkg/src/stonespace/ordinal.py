"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)`` pairs
with strictly decreasing exponents (themselves ordinals) and positive integer
coefficients.  The empty tuple is 0.

Text grammar (whitespace-insensitive)::

    ord  := "0" | term ("+" term)*
    term := nat | "w" ["^" "(" ord ")" | "^" nat] ["*" nat]

so ``w^2*3 + w*5 + 4``, ``w^(w)*2`` and ``17`` are all ordinals.
"""
from __future__ import annotations

import enum
import re
from functools import total_ordering
from typing import Iterable, Tuple, Union

from .errors import ParseError, UnderflowError, ZeroOrdinalError

__all__ = [
    "Ordinal",
    "LimitKind",
    "ZERO",
    "ONE",
    "OMEGA",
    "compare",
    "add",
    "cb_rank",
    "left_subtract",
    "classify_limit",
    "omega_power",
    "parse_ordinal",
    "format_ordinal",
    "ordinal",
]

OrdinalLike = Union["Ordinal", int, str]


@total_ordering
class Ordinal:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple((ordinal(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise ValueError(f"coefficient must be positive, got {c}")
            if i and not terms[i - 1][0] > e:
                raise ValueError("exponents must be strictly decreasing")
        self._terms = terms
        self._hash = hash(terms)

    # construction -----------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, n),)) if n else cls()

    @property
    def terms(self) -> Tuple[Tuple["Ordinal", int], ...]:
        return self._terms

    # predicates and accessors -----------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def is_finite(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self._terms) and self._terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self._terms) and not self._terms[-1][0].is_zero()

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self._terms[0][1] if self._terms else 0

    def __index__(self) -> int:
        return int(self)

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self._terms:
            raise ZeroOrdinalError("0 has no Cantor normal form terms")
        return self._terms[0][0]

    @property
    def leading_coefficient(self) -> int:
        if not self._terms:
            raise ZeroOrdinalError("0 has no Cantor normal form terms")
        return self._terms[0][1]

    def succ(self) -> "Ordinal":
        return add(self, ONE)

    def pred(self) -> "Ordinal":
        """Immediate predecessor of a successor ordinal."""
        if not self.is_successor():
            raise ValueError(f"{self} is not a successor ordinal")
        *head, (e, c) = self._terms
        return Ordinal(head + ([(e, c - 1)] if c > 1 else []))

    # ordering -----------------------------------------------------------
    def _cmp(self, other: "Ordinal") -> int:
        for (e1, c1), (e2, c2) in zip(self._terms, other._terms):
            k = e1._cmp(e2)
            if k:
                return k
            if c1 != c2:
                return -1 if c1 < c2 else 1
        n1, n2 = len(self._terms), len(other._terms)
        return (n1 > n2) - (n1 < n2)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.from_int(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._terms == other._terms

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.from_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Ordinal)):
            return add(self, ordinal(other))
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, int):
            return add(ordinal(other), self)
        return NotImplemented

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __reduce__(self):
        return (parse_ordinal, (format_ordinal(self),))


def ordinal(x: OrdinalLike) -> Ordinal:
    """Coerce an int, ordinal literal string or :class:`Ordinal`."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(x, int):
        return Ordinal.from_int(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def omega_power(exponent: OrdinalLike, coefficient: int = 1) -> Ordinal:
    """The ordinal w^exponent * coefficient."""
    if coefficient < 0:
        raise ValueError("coefficient must be non-negative")
    if coefficient == 0:
        return ZERO
    return Ordinal(((ordinal(exponent), coefficient),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return ordinal(a)._cmp(ordinal(b))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum ``a + b`` (terms of ``a`` below the leading exponent of ``b`` vanish)."""
    a, b = ordinal(a), ordinal(b)
    if b.is_zero():
        return a
    e = b.terms[0][0]
    head = [t for t in a.terms if t[0] > e]
    same = [c for x, c in a.terms if x == e]
    tail = list(b.terms)
    if same:
        tail[0] = (e, tail[0][1] + same[0])
    return Ordinal(head + tail)


def left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique ``c`` with ``b + c == a``; requires ``b <= a``."""
    a, b = ordinal(a), ordinal(b)
    if b > a:
        raise UnderflowError(f"cannot subtract {b} from {a}")
    i = 0
    while i < len(b.terms) and b.terms[i] == a.terms[i]:
        i += 1
    if i == len(b.terms):
        return Ordinal(a.terms[i:])
    (ea, ca), (eb, cb) = a.terms[i], b.terms[i]
    if ea > eb:
        return Ordinal(a.terms[i:])
    return Ordinal(((ea, ca - cb),) + a.terms[i + 1:])


def cb_rank(b: Ordinal) -> Ordinal:
    """Cantor-Bendixson rank of the point ``b`` in an ordinal space.

    This is the exponent of the last term of the Cantor normal form.
    """
    b = ordinal(b)
    if b.is_zero():
        raise ZeroOrdinalError("the rank h(0) is undefined")
    return b.terms[-1][0]


class LimitKind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


def classify_limit(a: Ordinal) -> LimitKind:
    a = ordinal(a)
    if a.is_zero():
        return LimitKind.ZERO
    return LimitKind.SUCCESSOR if a.is_successor() else LimitKind.LIMIT


# text form ---------------------------------------------------------------

_WS = re.compile(r"\s+")


def format_ordinal(a: Ordinal) -> str:
    a = ordinal(a)
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e.is_finite() and int(e) <= 9:
            s = f"w^{int(e)}"
        else:
            s = f"w^({format_ordinal(e)})"
        if c != 1:
            s += f"*{c}"
        parts.append(s)
    return " + ".join(parts)


class _OrdinalParser:
    """Recursive-descent parser over whitespace-free text, reusable at an offset."""

    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def error(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def term(self) -> Ordinal:
        if self.peek().isdigit():
            return Ordinal.from_int(self.nat())
        if self.peek() != "w":
            self.error("expected a term")
        self.pos += 1
        exp = ONE
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                exp = self.ord()
                self.expect(")")
            elif self.peek() == "w":
                # lenient shorthand: w^w means w^(w)
                self.pos += 1
                exp = OMEGA
            else:
                exp = Ordinal.from_int(self.nat())
        coeff = 1
        if self.peek() == "*":
            self.pos += 1
            coeff = self.nat()
        return omega_power(exp, coeff)

    def ord(self) -> Ordinal:
        result = self.term()
        while self.peek() == "+":
            self.pos += 1
            result = add(result, self.term())
        return result


def parse_ordinal(text: str) -> Ordinal:
    s = _WS.sub("", text)
    p = _OrdinalParser(s)
    result = p.ord()
    if p.pos != len(s):
        p.error("unexpected trailing input")
    return result
