"""Ordinal spaces ``T(alpha)``: homeomorphism class, canonical ordinal, type.

A scattered type is one of ``(0,0)``, ``(mu,mu)`` with ``mu > 0``, or
``(mu+1, rho, n)`` with ``rho <= mu`` and ``n >= 1``.  Types are the complete
invariant here; :class:`SpaceClass` is only a presentation of them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

from .errors import EmptySpaceError, ParseError
from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    add,
    format_ordinal,
    left_subtract,
    omega_power,
    ordinal,
    parse_ordinal,
)
from .posys import ExtendedPOSystem, POSystem, n_system


@dataclass(frozen=True)
class ScatteredType:
    nu: Ordinal
    rho: Ordinal
    n: Optional[int] = None  # None for the (nu, nu) types

    def __post_init__(self):
        object.__setattr__(self, "nu", ordinal(self.nu))
        object.__setattr__(self, "rho", ordinal(self.rho))
        if self.n is None:
            if self.nu != self.rho:
                raise ValueError("a type without n must have rho == nu")
        else:
            if not self.nu.is_successor():
                raise ValueError("a type with n needs a successor first component")
            if not (self.rho < self.nu and self.n >= 1):
                raise ValueError("need rho <= mu and n >= 1")

    @classmethod
    def empty(cls) -> "ScatteredType":
        return cls(ZERO, ZERO)

    @classmethod
    def limit(cls, mu) -> "ScatteredType":
        mu = ordinal(mu)
        if mu.is_zero():
            raise ValueError("(mu,mu) types need mu > 0")
        return cls(mu, mu)

    @classmethod
    def full(cls, mu, rho, n: int) -> "ScatteredType":
        """The type ``(mu+1, rho, n)``."""
        return cls(ordinal(mu).succ(), rho, n)

    @property
    def is_empty(self) -> bool:
        return self.nu.is_zero()

    @property
    def is_full(self) -> bool:
        return self.n is not None

    @property
    def mu(self) -> Ordinal:
        """For ``(mu+1,rho,n)`` the ``mu``; for ``(mu,mu)`` the ``mu``."""
        return self.nu.pred() if self.is_full else self.nu

    def __str__(self):
        if self.n is None:
            return f"({format_ordinal(self.nu)},{format_ordinal(self.rho)})"
        return f"({format_ordinal(self.nu)},{format_ordinal(self.rho)},{self.n})"


EMPTY = ScatteredType.empty()


def parse_type(text: str) -> ScatteredType:
    s = re.sub(r"\s+", "", text)
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("type must be parenthesised", text, 0)
    parts = s[1:-1].split(",")
    try:
        if len(parts) == 2:
            return ScatteredType(parse_ordinal(parts[0]), parse_ordinal(parts[1]))
        if len(parts) == 3:
            return ScatteredType(parse_ordinal(parts[0]), parse_ordinal(parts[1]), int(parts[2]))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"invalid type {text!r}: {exc}") from None
    raise ParseError(f"invalid type {text!r}")


@dataclass(frozen=True)
class SpaceClass:
    """``V(mu).n (+) U(rho)`` with either part possibly absent."""

    compact: Optional[Tuple[Ordinal, int]] = None
    open_rho: Optional[Ordinal] = None

    def __post_init__(self):
        if self.compact is not None and self.compact[1] < 1:
            raise ValueError("V(mu).n needs n >= 1")
        if self.open_rho is not None and self.open_rho.is_zero():
            raise ValueError("U(rho) needs rho > 0")
        if self.compact is not None and self.open_rho is not None and self.open_rho > self.compact[0]:
            raise ValueError("V(mu).n (+) U(rho) needs rho <= mu")

    @property
    def is_empty(self) -> bool:
        return self.compact is None and self.open_rho is None

    def __str__(self):
        parts = []
        if self.compact is not None:
            parts.append(f"V({format_ordinal(self.compact[0])}).{self.compact[1]}")
        if self.open_rho is not None:
            parts.append(f"U({format_ordinal(self.open_rho)})")
        return " (+) ".join(parts) or "empty"


# the table --------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    name: str
    matches: Callable[[Ordinal], bool]
    space_class: Callable[[Ordinal], SpaceClass]
    g: Callable[[Ordinal], Ordinal]
    type_: Callable[[Ordinal], ScatteredType]


def _t(a):
    return a.terms


TABLE: List[TableRow] = [
    TableRow(
        "0",
        lambda a: a.is_zero(),
        lambda a: SpaceClass(),
        lambda a: ZERO,
        lambda a: EMPTY,
    ),
    TableRow(
        "n",
        lambda a: len(_t(a)) == 1 and _t(a)[0][0].is_zero(),
        lambda a: SpaceClass((ZERO, _t(a)[0][1])),
        lambda a: a,
        lambda a: ScatteredType.full(ZERO, ZERO, _t(a)[0][1]),
    ),
    TableRow(
        "w^mu",
        lambda a: len(_t(a)) == 1 and not _t(a)[0][0].is_zero() and _t(a)[0][1] == 1,
        lambda a: SpaceClass(None, _t(a)[0][0]),
        lambda a: a,
        lambda a: ScatteredType.limit(_t(a)[0][0]),
    ),
    TableRow(
        "w^mu*(n+1)",
        lambda a: len(_t(a)) == 1 and not _t(a)[0][0].is_zero() and _t(a)[0][1] > 1,
        lambda a: SpaceClass((_t(a)[0][0], _t(a)[0][1] - 1), _t(a)[0][0]),
        lambda a: a,
        lambda a: ScatteredType.full(_t(a)[0][0], _t(a)[0][0], _t(a)[0][1] - 1),
    ),
    TableRow(
        "k>1, mu_k=0",
        lambda a: len(_t(a)) > 1 and _t(a)[-1][0].is_zero(),
        lambda a: SpaceClass(_t(a)[0]),
        lambda a: add(omega_power(*_t(a)[0]), ONE),
        lambda a: ScatteredType.full(_t(a)[0][0], ZERO, _t(a)[0][1]),
    ),
    TableRow(
        "k>1, mu_k>0",
        lambda a: len(_t(a)) > 1 and not _t(a)[-1][0].is_zero(),
        lambda a: SpaceClass(_t(a)[0], _t(a)[-1][0]),
        lambda a: add(omega_power(*_t(a)[0]), omega_power(_t(a)[-1][0])),
        lambda a: ScatteredType.full(_t(a)[0][0], _t(a)[-1][0], _t(a)[0][1]),
    ),
]


def table_row(alpha) -> TableRow:
    alpha = ordinal(alpha)
    rows = [r for r in TABLE if r.matches(alpha)]
    if len(rows) != 1:
        raise AssertionError(f"{alpha} matches {len(rows)} table rows")
    return rows[0]


def classify(alpha) -> SpaceClass:
    alpha = ordinal(alpha)
    return table_row(alpha).space_class(alpha)


def canonical_g(alpha) -> Ordinal:
    alpha = ordinal(alpha)
    return table_row(alpha).g(alpha)


def type_of(alpha) -> ScatteredType:
    alpha = ordinal(alpha)
    return table_row(alpha).type_(alpha)


def class_of_type(t: ScatteredType) -> SpaceClass:
    if t.is_empty:
        return SpaceClass()
    if not t.is_full:
        return SpaceClass(None, t.nu)
    return SpaceClass((t.mu, t.n), None if t.rho.is_zero() else t.rho)


def ordinal_of_type(t: ScatteredType) -> Ordinal:
    """The least ``alpha`` with ``type_of(alpha) == t``."""
    if t.is_empty:
        return ZERO
    if not t.is_full:
        return omega_power(t.nu)
    mu = t.mu
    if mu.is_zero():
        return Ordinal.from_int(t.n)
    if t.rho == mu:
        return omega_power(mu, t.n + 1)
    if t.rho.is_zero():
        return add(omega_power(mu, t.n), ONE)
    return add(omega_power(mu, t.n), omega_power(t.rho))


def homeomorphic_ord(alpha, beta) -> bool:
    return type_of(alpha) == type_of(beta)


def monoid_add(s: ScatteredType, t: ScatteredType) -> ScatteredType:
    """Type of the disjoint union of spaces of types ``s`` and ``t``."""
    if s.is_empty:
        return t
    if t.is_empty:
        return s
    if not s.is_full and not t.is_full:
        return ScatteredType.limit(max(s.nu, t.nu))
    if s.is_full and t.is_full:
        if s.nu == t.nu:
            return ScatteredType(s.nu, max(s.rho, t.rho), s.n + t.n)
        big = s if s.nu > t.nu else t
        return ScatteredType(big.nu, max(s.rho, t.rho), big.n)
    full, lim = (s, t) if s.is_full else (t, s)
    if full.mu >= lim.nu:
        return ScatteredType(full.nu, max(full.rho, lim.nu), full.n)
    return lim


# derivatives --------------------------------------------------------------------

def derivative_type(alpha, xi) -> Ordinal:
    """Order type of ``{beta < alpha | h(beta) >= xi}``.

    Writing ``alpha = w^xi * delta + eps`` with ``eps < w^xi``, the set is
    ``{w^xi * g | 1 <= g < delta}`` plus ``w^xi * delta`` when ``eps > 0``.
    """
    alpha, xi = ordinal(alpha), ordinal(xi)
    if xi.is_zero():
        return alpha
    high = [(left_subtract(e, xi), c) for e, c in alpha.terms if e >= xi]
    delta = Ordinal(high)
    if delta.is_zero():
        return ZERO
    eps_positive = len(high) < len(alpha.terms)
    base = Ordinal.from_int(int(delta) - 1) if delta.is_finite() else delta
    return base.succ() if eps_positive else base


# bridge to extended PO systems ----------------------------------------------------

@dataclass(frozen=True)
class SymbolicExtendedPO:
    """``(N(nu), {xi >= rho}, f)`` for infinite ``nu``; nothing is materialised."""

    nu: Ordinal
    rho: Ordinal
    n: Optional[int]

    def describe(self) -> str:
        if self.n is None:
            return f"N({format_ordinal(self.nu)}), L empty, f empty"
        f = f"f({format_ordinal(self.nu.pred())})={self.n}"
        return f"N({format_ordinal(self.nu)}), L={{xi | {format_ordinal(self.rho)} <= xi < {format_ordinal(self.nu)}}}, {f}"


def scattered_type_to_extended_po(t: ScatteredType) -> Union[ExtendedPOSystem, SymbolicExtendedPO]:
    if t.is_empty:
        raise EmptySpaceError("the empty type has no associated PO system")
    if not t.nu.is_finite():
        return SymbolicExtendedPO(t.nu, t.rho, t.n)
    nu, rho = int(t.nu), int(t.rho)
    base: POSystem = n_system(nu)
    L = range(rho, nu) if t.is_full else ()
    f = {nu - 1: t.n} if t.is_full else {}
    return ExtendedPOSystem(base, L, f)
